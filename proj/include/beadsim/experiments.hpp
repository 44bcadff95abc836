#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "beadsim/beads.hpp"
#include "beadsim/hull.hpp"
#include "beadsim/power_law.hpp"
#include "beadsim/rng.hpp"

namespace beadsim {

using ojson = nlohmann::ordered_json;

// One Monte Carlo probability with its binomial standard error.
struct ProbPoint {
    double x = 0.0;  // the abscissa (a time t or a threshold)
    std::uint64_t n_hit = 0;
    double prob = 0.0;
    double std_error = 0.0;
};

// ---------------------------------------------------------------------------
// Cut-freeness exponent: P(no cut time in the open interval (1, t)) ~ t^-alpha.
//
// Each path is an excursion sampled on a uniform grid over [0, t_window],
// then extended with distance-adaptive coarse steps until it reaches y_far,
// so that cut vertices inside the window are decided with (almost) all of
// the relevant future present; the chance the true process returns from
// y_far is the reported truncation bias bound sqrt(max t) / y_far.
// ---------------------------------------------------------------------------
struct ExponentConfig {
    std::vector<double> dt_ladder{4e-3, 1e-3};  // coarse to fine
    std::vector<double> t_grid{2, 4, 8, 16, 32, 64};
    double t_window = 65.0;  // simulated uniform-grid horizon, > max t
    double y_far = 400.0;    // adaptive extension stops here (>= 50 sqrt(max t))
    std::size_t n_paths = 10000;
    std::size_t max_tail_steps = 4000000;
    unsigned n_threads = 0;
};
struct ExponentRung {
    double dt = 0.0;
    std::uint64_t n_paths = 0;
    std::uint64_t n_censored = 0;  // extension step cap hit; excluded
    std::vector<ProbPoint> points;
    PowerLawFit fit;  // log prob vs log t; alpha = -slope
    double alpha = 0.0;
    double alpha_std_error = 0.0;
};
struct ExponentResult {
    std::vector<ExponentRung> rungs;  // ladder order
    double alpha_extrapolated = 0.0;  // linear in sqrt(dt) across the last two rungs
    double alpha_extrapolated_std_error = 0.0;
    double truncation_bias_bound = 0.0;
};
ExponentResult run_exponent_experiment(const ExponentConfig& cfg, const SeedSequence& seq);
ojson to_report_json(const ExponentConfig& cfg, const ExponentResult& res);

// ---------------------------------------------------------------------------
// Avoidance probability: the fraction of excursions whose polyline escapes to
// the configured height without a segment meeting the hull, per dt rung, with
// the same sqrt(dt) extrapolation. Compared against the exact derivative
// value avoid_probability(A).
// ---------------------------------------------------------------------------
struct AvoidanceConfig {
    std::vector<double> dt_ladder{1e-4, 2.5e-5};  // coarse to fine
    std::size_t n_paths = 20000;
    double escape_factor = 10.0;  // escape height = factor * (|x| reach + diameter)
    unsigned n_threads = 0;
};
struct AvoidanceRung {
    double dt = 0.0;
    std::uint64_t n_paths = 0;
    std::uint64_t n_avoided = 0;
    double prob = 0.0;
    double std_error = 0.0;
};
struct AvoidanceResult {
    std::vector<AvoidanceRung> rungs;
    double prob_extrapolated = 0.0;
    double prob_extrapolated_std_error = 0.0;
    double exact = 0.0;  // avoid_probability(A)
    double escape_height = 0.0;
};
AvoidanceResult run_avoidance_experiment(const AvoidanceConfig& cfg, const Hull& A,
                                         const SeedSequence& seq);
ojson to_report_json(const AvoidanceConfig& cfg, const AvoidanceResult& res,
                     const ojson& hull_desc);

// ---------------------------------------------------------------------------
// Subordinator first-passage tail: pool first_cap_beyond over excursions and
// fit the complementary distribution of the passage values on a fixed window.
// Each path runs on the uniform grid until it clears y_window (so the prefix
// capacities around the threshold are well resolved), then extends adaptively
// to y_far before cut vertices are read off.
//
// A window whose passage happens beyond its own end is not dropped: prefix
// capacity is monotone and the window polyline joins the real axis to height
// y_window, so its total capacity is at least y_window^2 / 4 and the passage
// value certainly exceeds that floor. Such windows enter the pool at the
// floor value, which keeps every count at thresholds below the floor exact;
// the config therefore requires fit_hi <= y_window^2 / 4.
// ---------------------------------------------------------------------------
struct TailConfig {
    double dt = 1e-3;
    double threshold = 1.0;  // capacity level the passage must clear
    double y_window = 9.0;   // floor y_window^2/4 = 20.25 covers fit_hi
    double y_far = 400.0;
    double fit_lo = 1.5;
    double fit_hi = 20.0;
    std::size_t n_paths = 10000;
    std::size_t n_grid = 20;
    std::size_t min_pooled = 200;  // least pooled passages for a tail curve
    std::size_t max_window_steps = 400000;
    double max_censoring = 0.20;  // limit on the unresolved-window fraction
    FirstCapBudget probe;
    unsigned n_threads = 0;
};
struct TailResult {
    std::uint64_t n_paths = 0;
    std::uint64_t n_censored = 0;  // unresolved: a step cap fired; dropped
    std::uint64_t n_ceiling = 0;   // passage beyond the window; pooled at the floor
    double censoring_fraction = 0.0;
    double ceiling_fraction = 0.0;
    TailCurve curve;
    PowerLawFit fit;
    double truncation_bias_bound = 0.0;  // y_window / y_far
};
// Throws runtime_error when the unresolved fraction exceeds the configured
// limit (raise the step caps, or lower the threshold).
TailResult run_subordinator_tail(const TailConfig& cfg, const SeedSequence& seq);
ojson to_report_json(const TailConfig& cfg, const TailResult& res);

// ---------------------------------------------------------------------------
// Bead decomposition ensemble: sample excursions to a stopping height, cut
// them at their cut vertices, and pool the bead records (capacity increment,
// duration, diameter) across paths, with the size-tail curve and an optional
// power-law fit over a configured window.
// ---------------------------------------------------------------------------
struct BeadsConfig {
    double dt = 1e-3;
    double y_stop = 4.0;  // excursions run until the height clears this
    std::size_t n_paths = 200;
    std::size_t n_walkers = 4000;  // shared prefix ensemble per path
    std::size_t n_grid = 20;
    std::size_t min_pooled = 200;  // records needed for a tail curve
    double fit_lo = 0.0;           // both positive: fit the curve there
    double fit_hi = 0.0;
    std::size_t max_window_steps = 400000;
    unsigned n_threads = 0;
};
struct BeadsResult {
    std::uint64_t n_paths = 0;
    std::uint64_t n_truncated = 0;  // step cap fired; path dropped
    std::vector<BeadRecord> records;
    TailCurve curve;  // empty when fewer than min_pooled records pooled
    std::optional<PowerLawFit> fit;
    std::vector<LifetimeDecile> lifetimes;
};
BeadsResult run_beads_experiment(const BeadsConfig& cfg, const SeedSequence& seq);
ojson to_report_json(const BeadsConfig& cfg, const BeadsResult& res);

// ---------------------------------------------------------------------------
// Fitter gate: the fitting pipeline must recover known exponents before any
// fitted Brownian slope is trusted. Exact power laws are recovered to
// machine precision; the sampled oracle is the first-passage time of 1-D
// Brownian motion across level 1 (Levy-1/2 law), pushed through the same
// tail-curve + weighted-fit machinery on the same window as the tail
// experiment, expected at -0.5 +- 0.05.
// ---------------------------------------------------------------------------
struct GateResult {
    PowerLawFit exact_half;  // p = x^-1/2 grid
    PowerLawFit exact_two;   // p = c x^-2 grid
    PowerLawFit levy;        // sampled first-passage tail on [1.5, 20]
    bool pass = false;
};
GateResult run_fitter_gate(std::size_t n_samples, const SeedSequence& seq,
                           unsigned n_threads = 0);
ojson to_report_json(const GateResult& res);

// ---------------------------------------------------------------------------
// Capacity validation: the conformal invariant suite as one report — exact
// map values vs Monte Carlo, the r^2 scaling law, subadditivity, the point
// lower bound, and the Im-contraction of hull maps.
// ---------------------------------------------------------------------------
struct ValidationCheck {
    std::string name;
    double value = 0.0;
    double target = 0.0;
    double tolerance = 0.0;
    bool two_sided = true;  // false: pass when value <= target + tolerance
    bool pass = false;
};
struct ValidationResult {
    std::vector<ValidationCheck> checks;
    bool all_pass = false;
};
ValidationResult run_capacity_validation(std::size_t n_walkers, const SeedSequence& seq,
                                         unsigned n_threads = 0);
ojson to_report_json(const ValidationResult& res);

}  // namespace beadsim
