#pragma once

#include <cstddef>
#include <span>

namespace beadsim {

// Weighted least-squares line through (log x, log p). slope_std_error is the
// propagated error sqrt(1 / sum w (log x - mean)^2), exact when each weight
// is the inverse variance of its log p value and a scale otherwise.
struct PowerLawFit {
    double slope = 0.0;
    double intercept = 0.0;  // of log p at log x = 0
    double slope_std_error = 0.0;
    std::size_t n_points = 0;
};

// Fit p ~ exp(intercept) * x^slope. Needs >= 3 points, positive x and p, and
// positive weights when given (empty weight span means equal weights).
PowerLawFit fit_power_law(std::span<const double> x, std::span<const double> p,
                          std::span<const double> weight = {});

// Fit an empirical complementary distribution given as exceedance counts out
// of a total, restricted to thresholds in [y_lo, y_hi]. Points with zero or
// full counts carry no log information and are skipped; the rest are weighted
// by their inverse binomial variance on the log scale.
PowerLawFit fit_count_tail(std::span<const double> y, std::span<const std::size_t> count,
                           std::size_t total, double y_lo, double y_hi);

}  // namespace beadsim
