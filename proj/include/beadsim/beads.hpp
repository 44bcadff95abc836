#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "beadsim/capacity.hpp"
#include "beadsim/cuttimes.hpp"
#include "beadsim/path.hpp"

namespace beadsim {

// One bead: the stretch of a path between two consecutive cut vertices. Its
// size is the increment of the prefix half-plane capacity between the two
// vertices, measured with a walker ensemble shared across the prefixes so
// the increment's standard error is a paired one.
struct BeadRecord {
    std::uint64_t path_seed = 0;
    std::size_t start_idx = 0;
    std::size_t end_idx = 0;
    double duration = 0.0;         // (end_idx - start_idx) * dt
    double delta_a = 0.0;          // cap1 prefix increment
    double delta_std_error = 0.0;  // paired standard error of the increment
    double diameter = 0.0;         // exact max pairwise extent of the sub-path
};

// Beads of a path at the given cut vertices (normally find_cuttimes(p); any
// sorted subset works and coarsens the decomposition). Fewer than two cut
// vertices make no bead. Capacities use n_walkers walk-on-spheres walkers.
std::vector<BeadRecord> extract_beads(const Path& p, const CutSet& cuts,
                                      std::size_t n_walkers, const SeedSequence& seq,
                                      std::size_t max_steps = 100000,
                                      unsigned n_threads = 0);

// CSV: path_seed, start_idx, end_idx, duration, delta_a, stderr, diameter.
void write_bead_csv(std::ostream& out, std::span<const BeadRecord> records);

// Empirical complementary distribution of bead sizes on a log-spaced
// threshold grid spanning the [q10, q99] quantiles of the pooled sizes.
struct TailCurve {
    std::vector<double> y;           // thresholds, ascending
    std::vector<std::size_t> count;  // # sizes strictly above each threshold
    std::vector<double> prob;        // count / total, non-increasing
    std::size_t total = 0;           // # positive sizes pooled
};
TailCurve bead_size_tail(std::span<const BeadRecord> records, std::size_t n_grid = 20,
                         std::size_t min_records = 1000);
TailCurve size_tail(std::vector<double> sizes, std::size_t n_grid = 20,
                    std::size_t min_count = 1000);

// The smallest prefix capacity at a cut vertex that reaches the threshold:
// the capacity process observed at its first passage beyond a0. Monotone in
// the vertex index, so the qualifying vertex is found by bisection with a
// cheap ensemble and the value re-measured with a fresh, larger one. Paths
// with no qualifying cut vertex come back censored.
struct FirstCap {
    std::optional<double> value;
    bool censored = true;
    bool truncated = false;  // copied from the path metadata
};
struct FirstCapBudget {
    std::size_t n_walkers_search = 1500;
    std::size_t n_walkers_final = 4000;
    std::size_t max_steps = 100000;
    unsigned n_threads = 0;
};
FirstCap first_cap_beyond(const Path& p, const CutSet& cuts, double threshold,
                          const SeedSequence& seq, const FirstCapBudget& budget = {});

// Duration quantiles per size decile, with the log-corrected ratio
// duration / (delta_a * max(1, |log delta_a|)) to judge whether lifetimes
// stay proportional to sizes across the size range.
struct LifetimeDecile {
    double size_lo = 0.0, size_hi = 0.0;
    std::size_t count = 0;
    double duration_q50 = 0.0, duration_q90 = 0.0, duration_max = 0.0;
    double ratio_q90 = 0.0;
};
std::vector<LifetimeDecile> bead_lifetime_stats(std::span<const BeadRecord> records);

}  // namespace beadsim
