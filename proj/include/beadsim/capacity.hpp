#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "beadsim/hull.hpp"
#include "beadsim/rng.hpp"

namespace beadsim {

// Monte Carlo capacity reading with its own uncertainty: value is the
// estimator mean, std_error the sample standard deviation over walkers
// divided by sqrt(n_walkers).
struct CapEstimate {
    double value = 0.0;
    double std_error = 0.0;
    std::uint64_t n_walkers = 0;
    double y_start = 0.0;
    double eps = 0.0;
    std::uint64_t budget_exceeded = 0;  // walkers cut off by the step cap
};

// Default launch height and absorption layer for a hull: walkers start at
// i*y_start with y_start = 20 * (diameter + distance from the origin), and
// absorb within eps = 1e-4 * diameter of the hull or the real axis.
double default_y_start(const Hull& A);
double default_eps(const Hull& A);

// Mass of the hull seen from infinity: y_start times the fraction of
// walk-on-spheres walkers from i*y_start that reach the hull before the real
// axis. Requires y_start >= 10 * (diameter + dist(A, 0)) and eps > 0.
CapEstimate estimate_cap0(const Hull& A, std::size_t n_walkers, double y_start, double eps,
                          const SeedSequence& seq, std::size_t max_steps = 100000,
                          unsigned n_threads = 0);

// Half-plane capacity: y_start times the mean height at absorption, counting
// 0 for walkers absorbed on the real axis. Same preconditions.
CapEstimate estimate_cap1(const Hull& A, std::size_t n_walkers, double y_start, double eps,
                          const SeedSequence& seq, std::size_t max_steps = 100000,
                          unsigned n_threads = 0);

// Half-plane capacities of nested prefixes of one polyline, sharing a single
// walker ensemble: walkers are settled against the longest prefix first, and
// when a shorter prefix drops the segment a walker sat on, only that walker
// resumes its walk. Sharing makes consecutive differences much tighter than
// independent runs, so the paired standard error of cap1[i+1] - cap1[i] is
// returned alongside.
//
// prefix_end_vertex: ascending vertex indices k >= 1; prefix i is the hull of
// segments [0, k_i - 1] (the polyline up to vertex k_i).
struct PrefixCapResult {
    std::vector<CapEstimate> cap1;        // one per prefix, same order
    std::vector<double> diff_std_error;   // size = prefixes - 1
};
PrefixCapResult estimate_prefix_cap1(std::shared_ptr<const std::vector<Vec2>> pts,
                                     std::span<const std::size_t> prefix_end_vertex,
                                     std::size_t n_walkers, const SeedSequence& seq,
                                     std::size_t max_steps = 100000, unsigned n_threads = 0);

// cap1 of one prefix (segments [first_seg(), limit_seg]) of an existing
// polyline hull, with launch height and absorption layer supplied by the
// caller — sized for the prefix, not the whole polyline, which keeps the
// estimator variance proportional to the prefix and lets many prefixes of
// one long path share a single tree.
CapEstimate estimate_polyline_prefix_cap1(const PolylineHull& hull, std::size_t limit_seg,
                                          double y_start, double eps, std::size_t n_walkers,
                                          const SeedSequence& seq,
                                          std::size_t max_steps = 100000,
                                          unsigned n_threads = 0);

}  // namespace beadsim
