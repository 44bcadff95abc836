#include <doctest.h>

#include <cmath>
#include <limits>
#include <memory>
#include <vector>

#include "beadsim/geometry.hpp"
#include "beadsim/hull.hpp"
#include "beadsim/rng.hpp"
#include "beadsim/samplers.hpp"

using namespace beadsim;

namespace {

double brute_dist(const std::vector<Vec2>& pts, std::size_t first, std::size_t last,
                  Vec2 p) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t s = first; s <= last; ++s)
    best = std::min(best, dist_point_segment(p, pts[s], pts[s + 1]));
  return best;
}

}  // namespace

TEST_CASE("slit hull distance and segment hits") {
  SlitHull s(1.0, 2.0);
  CHECK(s.dist({1.0, 1.0}) == 0.0);
  CHECK(s.dist({1.0, 3.0}) == doctest::Approx(1.0));
  CHECK(s.dist({0.0, 0.0}) == doctest::Approx(1.0));
  CHECK(s.dist({4.0, 2.0}) == doctest::Approx(3.0));
  CHECK(s.diameter() == 2.0);
  CHECK(s.hits_segment({0.0, 1.0}, {2.0, 1.0}));
  CHECK(s.hits_segment({1.0, 2.0}, {1.0, 5.0}));  // touches the tip
  CHECK_FALSE(s.hits_segment({0.0, 3.0}, {2.0, 3.0}));
  CHECK_FALSE(s.hits_segment({-1.0, 0.5}, {0.5, 0.5}));
  CHECK_THROWS_AS(SlitHull(0.0, 0.0), std::invalid_argument);
}

TEST_CASE("semidisk hull distance and segment hits") {
  SemidiskHull d(2.0, 1.0);
  CHECK(d.dist({2.0, 0.5}) == 0.0);  // interior
  CHECK(d.dist({2.0, 2.0}) == doctest::Approx(1.0));
  CHECK(d.dist({0.0, 0.0}) == doctest::Approx(1.0));
  CHECK(d.diameter() == 2.0);
  CHECK(d.hits_segment({2.0, 3.0}, {2.0, 0.8}));
  CHECK(d.hits_segment({0.0, 0.5}, {4.0, 0.5}));
  CHECK_FALSE(d.hits_segment({0.0, 1.5}, {4.0, 1.5}));
  // A chord whose infinite line passes near the centre but whose closest
  // approach would happen below the axis misses the half disk.
  CHECK_FALSE(d.hits_segment({-1.0, 0.2}, {0.8, 0.05}));
  CHECK_THROWS_AS(SemidiskHull(1.0, -1.0), std::invalid_argument);
}

TEST_CASE("polyline hull distance matches brute force") {
  auto p = sample_excursion(600, 1e-3, SeedSequence{5101});
  auto pts = std::make_shared<const std::vector<Vec2>>(p.points());
  PolylineHull hull(pts, 0, 599);
  Rng rng(42);
  for (int i = 0; i < 500; ++i) {
    Vec2 q{rng.uniform(-2, 2), rng.uniform(0, 2)};
    CHECK(hull.dist(q) == doctest::Approx(brute_dist(*pts, 0, 599, q)).epsilon(1e-12));
  }
}

TEST_CASE("polyline prefix distance matches brute force and reports nearest") {
  auto p = sample_excursion(400, 1e-3, SeedSequence{5102});
  auto pts = std::make_shared<const std::vector<Vec2>>(p.points());
  PolylineHull hull(pts, 0, 399);
  Rng rng(43);
  for (int i = 0; i < 300; ++i) {
    Vec2 q{rng.uniform(-2, 2), rng.uniform(0, 2)};
    std::size_t limit = 1 + rng.next_u64() % 399;
    std::size_t nearest = 0;
    double d = hull.dist_prefix(q, limit, &nearest);
    CHECK(d == doctest::Approx(brute_dist(*pts, 0, limit, q)).epsilon(1e-12));
    CHECK(nearest <= limit);
    CHECK(dist_point_segment(q, (*pts)[nearest], (*pts)[nearest + 1]) ==
          doctest::Approx(d).epsilon(1e-12));
  }
}

TEST_CASE("polyline hull segment hits match brute force") {
  auto p = sample_excursion(300, 1e-3, SeedSequence{5103});
  auto pts = std::make_shared<const std::vector<Vec2>>(p.points());
  PolylineHull hull(pts, 0, 299);
  Rng rng(44);
  int hits = 0;
  for (int i = 0; i < 300; ++i) {
    Vec2 a{rng.uniform(-1, 1), rng.uniform(0, 1)};
    Vec2 b{rng.uniform(-1, 1), rng.uniform(0, 1)};
    bool brute = false;
    for (std::size_t s = 0; s < 300 && !brute; ++s)
      brute = segments_intersect(a, b, (*pts)[s], (*pts)[s + 1]);
    CHECK(hull.hits_segment(a, b) == brute);
    hits += brute;
  }
  CHECK(hits > 0);  // the check must exercise both outcomes
}

TEST_CASE("polyline hull diameter is the exact max pairwise distance") {
  auto p = sample_excursion(200, 1e-3, SeedSequence{5104});
  auto pts = std::make_shared<const std::vector<Vec2>>(p.points());
  PolylineHull hull(pts, 0, 199);
  double brute = 0.0;
  for (std::size_t i = 0; i <= 199; ++i)
    for (std::size_t j = i + 1; j <= 200; ++j)
      brute = std::max(brute, dist((*pts)[i], (*pts)[j]));
  CHECK(hull.diameter() == doctest::Approx(brute).epsilon(1e-12));
}

TEST_CASE("polyline hull validates its range") {
  auto pts = std::make_shared<const std::vector<Vec2>>(
      std::vector<Vec2>{{0, 0}, {0, 1}, {1, 1}});
  CHECK_THROWS_AS(PolylineHull(pts, 0, 2), std::invalid_argument);
  CHECK_THROWS_AS(PolylineHull(pts, 2, 1), std::invalid_argument);
  CHECK_NOTHROW(PolylineHull(pts, 0, 1));
}

TEST_CASE("union hull combines parts") {
  auto a = std::make_shared<SlitHull>(-2.0, 1.0);
  auto b = std::make_shared<SlitHull>(2.0, 1.0);
  UnionHull u({a, b});
  CHECK(u.dist({0.0, 0.0}) == doctest::Approx(2.0));
  CHECK(u.dist({2.0, 0.5}) == 0.0);
  CHECK(u.hits_segment({-3.0, 0.5}, {3.0, 0.5}));
  CHECK_FALSE(u.hits_segment({-3.0, 1.5}, {3.0, 1.5}));
  // Box diagonal of [-2,2] x [0,1].
  CHECK(u.diameter() == doctest::Approx(std::sqrt(17.0)));
}
