#include <doctest.h>

#include <cmath>
#include <memory>
#include <numbers>
#include <vector>

#include "beadsim/capacity.hpp"
#include "beadsim/hull.hpp"
#include "beadsim/hull_map.hpp"
#include "beadsim/rng.hpp"
#include "beadsim/samplers.hpp"

using namespace beadsim;

namespace {
constexpr double kPi = std::numbers::pi;

CapEstimate cap0_of(const Hull& A, std::size_t n, std::uint64_t seed) {
  return estimate_cap0(A, n, default_y_start(A), default_eps(A), SeedSequence{seed});
}
CapEstimate cap1_of(const Hull& A, std::size_t n, std::uint64_t seed) {
  return estimate_cap1(A, n, default_y_start(A), default_eps(A), SeedSequence{seed});
}
}  // namespace

TEST_CASE("cap0 of the unit slit is 2/pi") {
  SlitHull s(0.0, 1.0);
  auto e = cap0_of(s, 60000, 101);
  CHECK(e.std_error > 0.0);
  CHECK(std::abs(e.value - 2.0 / kPi) < 3.0 * e.std_error);
}

TEST_CASE("cap1 of the unit slit is 1/2") {
  SlitHull s(0.0, 1.0);
  auto e = cap1_of(s, 60000, 102);
  CHECK(std::abs(e.value - 0.5) < 3.0 * e.std_error);
  // Cross-check against the exact map coefficient.
  CHECK(std::abs(e.value - HullMap::slit(0.0, 1.0).hcap()) < 3.0 * e.std_error);
}

TEST_CASE("cap0 and cap1 of the unit semidisk are 4/pi and 1") {
  SemidiskHull d(0.0, 1.0);
  auto e0 = cap0_of(d, 60000, 103);
  auto e1 = cap1_of(d, 60000, 104);
  CHECK(std::abs(e0.value - 4.0 / kPi) < 3.0 * e0.std_error);
  CHECK(std::abs(e1.value - 1.0) < 3.0 * e1.std_error);
  CHECK(std::abs(e1.value - HullMap::semidisk(0.0, 1.0).hcap()) < 3.0 * e1.std_error);
}

TEST_CASE("a vanishing hull has vanishing mass") {
  SlitHull s(0.0, 1e-7);
  auto e = estimate_cap0(s, 20000, 1.0, 1e-11, SeedSequence{105});
  CHECK(e.value < 1e-4);
}

TEST_CASE("capacity scales as the square of the spatial factor") {
  SlitHull unit(0.0, 1.0), twice(0.0, 2.0);
  auto a = cap1_of(unit, 60000, 106);
  auto b = cap1_of(twice, 60000, 107);
  double ratio = b.value / a.value;
  // Error of the ratio from both estimates combined (delta method).
  double sigma = ratio * std::sqrt(std::pow(a.std_error / a.value, 2) +
                                   std::pow(b.std_error / b.value, 2));
  CHECK(std::abs(ratio - 4.0) < 3.0 * sigma);
}

TEST_CASE("capacity of a union of separated slits is subadditive") {
  auto left = std::make_shared<SlitHull>(-2.0, 1.0);
  auto right = std::make_shared<SlitHull>(2.0, 1.0);
  UnionHull both({left, right});
  auto e_both = cap1_of(both, 60000, 108);
  auto e_left = cap1_of(*left, 60000, 109);
  auto e_right = cap1_of(*right, 60000, 110);
  double sigma = std::sqrt(e_both.std_error * e_both.std_error +
                           e_left.std_error * e_left.std_error +
                           e_right.std_error * e_right.std_error);
  CHECK(e_both.value <= e_left.value + e_right.value + 3.0 * sigma);
  // And the union is at least as big as either part alone.
  CHECK(e_both.value + 3.0 * sigma >= e_left.value);
  CHECK(e_both.value + 3.0 * sigma >= e_right.value);
}

TEST_CASE("a point at height y forces cap1 of at least y^2/4") {
  // Hulls containing the point (x, y): the bound must hold for each.
  SemidiskHull d(0.0, 1.0);  // contains (0, 1)
  auto e = cap1_of(d, 40000, 111);
  CHECK(e.value >= 1.0 / 4.0 - 3.0 * e.std_error);
  SlitHull s(0.5, 2.0);  // contains (0.5, 2)
  auto e2 = cap1_of(s, 40000, 112);
  CHECK(e2.value >= 4.0 / 4.0 - 3.0 * e2.std_error);
}

TEST_CASE("cap0 is comparable to the diameter on test hulls") {
  SlitHull s(0.0, 1.0);
  SemidiskHull d(3.0, 0.5);
  for (const Hull* h : std::initializer_list<const Hull*>{&s, &d}) {
    auto e = cap0_of(*h, 30000, 113);
    CHECK(e.value >= h->diameter() / 10.0);
    CHECK(e.value <= h->diameter() * 10.0);
  }
}

TEST_CASE("halving eps and doubling y_start moves estimates within noise") {
  SlitHull s(0.0, 1.0);
  double y0 = default_y_start(s), e0 = default_eps(s);
  auto a = estimate_cap1(s, 60000, y0, e0, SeedSequence{114});
  auto b = estimate_cap1(s, 60000, 2.0 * y0, 0.5 * e0, SeedSequence{115});
  double sigma = std::sqrt(a.std_error * a.std_error + b.std_error * b.std_error);
  CHECK(std::abs(a.value - b.value) < 2.0 * sigma);
}

TEST_CASE("capacity runs are deterministic and thread-count independent") {
  SlitHull s(0.0, 1.0);
  auto a = estimate_cap1(s, 20000, 20.0, 1e-4, SeedSequence{116}, 100000, 1);
  auto b = estimate_cap1(s, 20000, 20.0, 1e-4, SeedSequence{116}, 100000, 4);
  CHECK(a.value == b.value);
  CHECK(a.std_error == b.std_error);
}

TEST_CASE("capacity rejects launch heights below the safe floor") {
  SlitHull s(0.0, 1.0);
  CHECK_THROWS_AS(estimate_cap1(s, 1000, 5.0, 1e-4, SeedSequence{117}),
                  std::invalid_argument);
  CHECK_THROWS_AS(estimate_cap1(s, 1000, 20.0, 0.0, SeedSequence{117}),
                  std::invalid_argument);
  CHECK_THROWS_AS(estimate_cap1(s, 0, 20.0, 1e-4, SeedSequence{117}),
                  std::invalid_argument);
}

TEST_CASE("prefix capacities of a straight vertical polyline match slit values") {
  // 10 steps straight up to height 1: prefixes ending at vertex 5 and 10 are
  // slits of heights 0.5 and 1.0 with capacities 0.125 and 0.5.
  auto pts = std::make_shared<std::vector<Vec2>>();
  for (int k = 0; k <= 10; ++k) pts->push_back({0.0, 0.1 * k});
  std::vector<std::size_t> ends{5, 10};
  auto res = estimate_prefix_cap1(pts, ends, 60000, SeedSequence{118});
  REQUIRE(res.cap1.size() == 2);
  REQUIRE(res.diff_std_error.size() == 1);
  CHECK(std::abs(res.cap1[0].value - 0.125) < 4.0 * res.cap1[0].std_error);
  CHECK(std::abs(res.cap1[1].value - 0.5) < 4.0 * res.cap1[1].std_error);
  // The paired difference must be close to 0.375 and much tighter than the
  // two independent errors would suggest.
  double diff = res.cap1[1].value - res.cap1[0].value;
  CHECK(std::abs(diff - 0.375) < 4.0 * res.diff_std_error[0] + 1e-9);
  CHECK(res.diff_std_error[0] <= res.cap1[1].std_error + res.cap1[0].std_error);
}

TEST_CASE("prefix capacities are monotone along a real excursion") {
  auto p = sample_excursion(2000, 1e-3, SeedSequence{119});
  auto pts = std::make_shared<const std::vector<Vec2>>(p.points());
  std::vector<std::size_t> ends{500, 1000, 1500, 2000};
  auto res = estimate_prefix_cap1(pts, ends, 20000, SeedSequence{120});
  REQUIRE(res.cap1.size() == 4);
  for (std::size_t i = 0; i + 1 < 4; ++i) {
    double d = res.cap1[i + 1].value - res.cap1[i].value;
    CHECK(d >= -3.0 * res.diff_std_error[i]);
  }
  // Determinism across thread counts for the shared-ensemble walker scheme.
  auto res1 = estimate_prefix_cap1(pts, ends, 4096, SeedSequence{121}, 100000, 1);
  auto res4 = estimate_prefix_cap1(pts, ends, 4096, SeedSequence{121}, 100000, 3);
  for (std::size_t i = 0; i < 4; ++i) CHECK(res1.cap1[i].value == res4.cap1[i].value);
}

TEST_CASE("prefix capacity validates its prefix list") {
  auto pts = std::make_shared<std::vector<Vec2>>(
      std::vector<Vec2>{{0, 0}, {0, 1}, {1, 1}});
  std::vector<std::size_t> bad1{0};
  CHECK_THROWS_AS(estimate_prefix_cap1(pts, bad1, 100, SeedSequence{1}),
                  std::invalid_argument);
  std::vector<std::size_t> bad2{2, 1};
  CHECK_THROWS_AS(estimate_prefix_cap1(pts, bad2, 100, SeedSequence{1}),
                  std::invalid_argument);
  std::vector<std::size_t> bad3{3};
  CHECK_THROWS_AS(estimate_prefix_cap1(pts, bad3, 100, SeedSequence{1}),
                  std::invalid_argument);
}
