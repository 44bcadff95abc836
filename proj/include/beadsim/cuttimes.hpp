#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "beadsim/path.hpp"

namespace beadsim {

// The set of cut vertices of a polyline with n steps. A vertex k in 1..n-1
// is a cut vertex when, for every segment pair i < k <= j, the segments
// s_i = [p_i, p_i+1] and s_j = [p_j, p_j+1] meet in at most the point p_k —
// the head and the tail of the walk touch only there.
struct CutSet {
    std::vector<std::uint32_t> indices;  // strictly increasing
    std::uint64_t n = 0;                 // step count of the source polyline

    bool contains(std::uint32_t k) const;
};

// Grid-accelerated engine; exact (no epsilon in any predicate).
CutSet find_cut_vertices(std::span<const Vec2> pts);
CutSet find_cuttimes(const Path& p);

// Quadratic reference implementation that applies the predicate pair by
// pair. Slow and intended for validation; refuses absurd sizes.
CutSet find_cut_vertices_naive(std::span<const Vec2> pts, std::size_t max_n = 20000);
CutSet find_cuttimes_naive(const Path& p, std::size_t max_n = 20000);

// Whether some cut vertex k of p has k*dt inside the closed window [t1, t2].
// Requires 0 <= t1 < t2 <= duration.
bool has_cuttime_in(const Path& p, const CutSet& cuts, double t1, double t2);
bool has_cuttime_in(const Path& p, double t1, double t2);

// CSV with one row per cut vertex: k, t, x, y.
void write_cut_csv(std::ostream& out, const Path& p, const CutSet& cuts);

}  // namespace beadsim
