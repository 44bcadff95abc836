#include <doctest.h>

#include <algorithm>
#include <cstdint>
#include <sstream>
#include <vector>

#include "beadsim/cuttimes.hpp"
#include "beadsim/geometry.hpp"
#include "beadsim/rng.hpp"
#include "beadsim/samplers.hpp"
#include "beadsim/segment_grid.hpp"

using namespace beadsim;

namespace {

std::vector<std::uint32_t> cuts_of(std::vector<Vec2> pts) {
  return find_cut_vertices(pts).indices;
}

std::vector<std::uint32_t> naive_of(std::vector<Vec2> pts) {
  return find_cut_vertices_naive(pts).indices;
}

}  // namespace

TEST_CASE("L-shaped path has its corner as the only cut vertex") {
  std::vector<Vec2> pts{{0, 0}, {0, 1}, {1, 1}};
  CHECK(cuts_of(pts) == std::vector<std::uint32_t>{1});
  CHECK(naive_of(pts) == std::vector<std::uint32_t>{1});
}

TEST_CASE("a loop that crosses its first segment has no cut vertices") {
  // The last segment [(1,1),(-1,1)] crosses the first [(0,0),(0,2)] at (0,1),
  // so the pair (0,3) eliminates every vertex between them.
  std::vector<Vec2> pts{{0, 0}, {0, 2}, {1, 2}, {1, 1}, {-1, 1}};
  CHECK(cuts_of(pts).empty());
  CHECK(naive_of(pts).empty());
}

TEST_CASE("straight collinear runs make every interior vertex a cut vertex") {
  for (int m : {2, 3, 7, 20}) {
    std::vector<Vec2> pts;
    for (int k = 0; k <= m; ++k) pts.push_back({0.0, double(k)});
    std::vector<std::uint32_t> expect;
    for (int k = 1; k < m; ++k) expect.push_back(std::uint32_t(k));
    CHECK(cuts_of(pts) == expect);
    CHECK(naive_of(pts) == expect);
  }
}

TEST_CASE("two segments crossing at a shared vertex keep it as a cut vertex") {
  // Future touches the past exactly at the candidate vertex: allowed.
  std::vector<Vec2> pts{{0, 0}, {2, 2}, {1, 1}};
  // Vertex 1 is (2,2); segment 1 travels back through the interior of
  // segment 0, so their intersection is a whole sub-segment: no cut vertex.
  CHECK(cuts_of(pts).empty());

  // A genuine single-point re-touch at the vertex itself.
  std::vector<Vec2> ptsB{{0, 0}, {0, 2}, {2, 2}, {2, 4}};
  CHECK(cuts_of(ptsB) == std::vector<std::uint32_t>({1, 2}));
}

TEST_CASE("a future segment passing through an old vertex kills the span") {
  // Segment 2 passes through p1 = (0,1) (not an endpoint of segment 2), so
  // pair (0,2) intersects outside {p_k} for k=1..2 except exactly at p1 when
  // k = 1. The contact point equals p1, so vertex 1 survives; vertex 2 dies.
  std::vector<Vec2> pts{{0, 0}, {0, 1}, {1, 1}, {-1, 1}};
  auto got = cuts_of(pts);
  CHECK(got == naive_of(pts));
  CHECK(got == std::vector<std::uint32_t>{1});
}

TEST_CASE("touch at a point that is no vertex kills the whole span between") {
  // Segment 3 grazes segment 0 at (0, 0.5), which is not a path vertex, so
  // vertices 1..3 all die.
  std::vector<Vec2> pts{{0, 0}, {0, 1}, {1, 1}, {1, 0.5}, {0, 0.5}};
  auto got = cuts_of(pts);
  CHECK(got == naive_of(pts));
  CHECK(got.empty());
}

TEST_CASE("zero-length segments never create intersections by themselves") {
  std::vector<Vec2> pts{{0, 0}, {0, 1}, {0, 1}, {1, 1}};
  auto got = cuts_of(pts);
  CHECK(got == naive_of(pts));
  // The degenerate segment 1 sits at vertex (0,1) = p1 = p2; contacts of
  // s0 and s2 with it happen exactly at those vertices, so 1 and 2 survive.
  CHECK(got == std::vector<std::uint32_t>({1, 2}));
}

TEST_CASE("the naive engine refuses oversized inputs") {
  std::vector<Vec2> pts(30001, Vec2{0, 0});
  for (std::size_t k = 0; k < pts.size(); ++k) pts[k] = {0.0, double(k)};
  CHECK_THROWS_AS(find_cut_vertices_naive(pts), std::invalid_argument);
}

TEST_CASE("grid and naive engines agree on 200 random excursions") {
  SeedSequence seq{777000};
  int nonempty = 0;
  for (int rep = 0; rep < 200; ++rep) {
    std::size_t n = 200 + (seq.stream(std::uint64_t(rep)).next_u64() % 1800);
    auto p = sample_excursion(n, 1e-3, seq.derive(std::uint64_t(rep)));
    auto fast = find_cuttimes(p);
    auto slow = find_cuttimes_naive(p);
    REQUIRE(fast.indices == slow.indices);
    if (!fast.indices.empty()) ++nonempty;
  }
  // Excursions carry plenty of cut vertices; the agreement check must not be
  // passing vacuously on empty sets.
  CHECK(nonempty > 150);
}

TEST_CASE("cut sets are scale-invariant") {
  SeedSequence seq{31415};
  for (int rep = 0; rep < 20; ++rep) {
    auto p = sample_excursion(1000, 1e-3, seq.derive(std::uint64_t(rep)));
    auto base = find_cuttimes(p).indices;
    for (double r : {2.0, 0.25, 1024.0}) {
      auto scaled = find_cuttimes(scale_path(p, r)).indices;
      CHECK(scaled == base);
    }
  }
}

TEST_CASE("appending steps only removes cut vertices at earlier indices") {
  SeedSequence seq{8675309};
  for (int rep = 0; rep < 10; ++rep) {
    auto p = sample_excursion(1200, 1e-3, seq.derive(std::uint64_t(rep)));
    const auto& pts = p.points();
    std::vector<Vec2> prefix(pts.begin(), pts.begin() + 800 + 1);
    auto before = find_cut_vertices(prefix).indices;
    auto after_all = find_cut_vertices(pts).indices;
    // Every cut vertex of the full path with index < 800 must already be a
    // cut vertex of the prefix (extension can only remove, never add).
    for (auto k : after_all) {
      if (k >= 800) continue;
      CHECK(std::binary_search(before.begin(), before.end(), k));
    }
  }
}

TEST_CASE("CutSet::contains matches the index list") {
  std::vector<Vec2> pts{{0, 0}, {0, 1}, {1, 1}, {1, 2}};
  auto cs = find_cut_vertices(pts);
  for (std::uint32_t k = 0; k <= 3; ++k) {
    bool in_list = std::find(cs.indices.begin(), cs.indices.end(), k) != cs.indices.end();
    CHECK(cs.contains(k) == in_list);
  }
}

TEST_CASE("has_cuttime_in honours the closed window and rejects bad windows") {
  // Straight path: every interior vertex is a cut vertex.
  Path p({{0, 0}, {0, 1}, {0, 2}, {0, 3}, {0, 4}}, 0.5, {});
  CHECK(has_cuttime_in(p, 0.4, 0.6));    // k=1 at t=0.5
  CHECK(has_cuttime_in(p, 0.5, 0.5001)); // closed at the left edge
  CHECK(has_cuttime_in(p, 1.4999, 1.5)); // closed at the right edge
  CHECK_FALSE(has_cuttime_in(p, 0.51, 0.99));  // between grid points
  CHECK_FALSE(has_cuttime_in(p, 1.51, 2.0));   // endpoint k=4 is not a cut vertex
  CHECK_THROWS_AS(has_cuttime_in(p, 0.5, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(has_cuttime_in(p, -0.1, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(has_cuttime_in(p, 0.5, 2.1), std::invalid_argument);

  // The looping path crosses its own first segment, so every window misses.
  Path crossing({{0, 0}, {0, 2}, {1, 2}, {1, 1}, {-1, 1}}, 1.0, {});
  CHECK_FALSE(has_cuttime_in(crossing, 1.0, 3.0));
}

TEST_CASE("cut CSV lists one row per cut vertex with times") {
  Path p({{0, 0}, {0, 1}, {1, 1}}, 0.25, {});
  auto cs = find_cuttimes(p);
  std::ostringstream out;
  write_cut_csv(out, p, cs);
  CHECK(out.str() == "k,t,x,y\n1,0.25,0,1\n");
}

TEST_CASE("grid queries return a superset of intersecting segments") {
  SeedSequence seq{5544};
  auto p = sample_excursion(500, 1e-3, seq);
  const auto& pts = p.points();
  SegmentGrid grid(pts);
  Rng rng(909);
  for (int rep = 0; rep < 200; ++rep) {
    std::size_t i = std::size_t(rng.next_u64() % 500);
    Vec2 a = pts[i], b = pts[i + 1];
    auto cand = grid.query(a, b);
    CHECK(std::is_sorted(cand.begin(), cand.end()));
    // Every segment genuinely touching s_i must be among the candidates.
    for (std::size_t j = 0; j < 500; ++j) {
      if (segments_intersect(a, b, pts[j], pts[j + 1]))
        CHECK(std::binary_search(cand.begin(), cand.end(), std::uint32_t(j)));
    }
  }
}
