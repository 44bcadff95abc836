#include "beadsim/power_law.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace beadsim {

PowerLawFit fit_power_law(std::span<const double> x, std::span<const double> p,
                          std::span<const double> weight) {
    if (x.size() != p.size())
        throw std::invalid_argument("fit_power_law: x and p sizes differ");
    if (!weight.empty() && weight.size() != x.size())
        throw std::invalid_argument("fit_power_law: weight size differs");
    if (x.size() < 3) throw std::invalid_argument("fit_power_law: need at least three points");

    double sw = 0.0, sx = 0.0, sy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!(x[i] > 0.0) || !(p[i] > 0.0))
            throw std::invalid_argument("fit_power_law: x and p must be positive");
        const double w = weight.empty() ? 1.0 : weight[i];
        if (!(w > 0.0)) throw std::invalid_argument("fit_power_law: weights must be positive");
        sw += w;
        sx += w * std::log(x[i]);
        sy += w * std::log(p[i]);
    }
    const double mx = sx / sw, my = sy / sw;

    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double w = weight.empty() ? 1.0 : weight[i];
        const double dx = std::log(x[i]) - mx;
        sxx += w * dx * dx;
        sxy += w * dx * (std::log(p[i]) - my);
    }
    if (!(sxx > 0.0))
        throw std::invalid_argument("fit_power_law: x values do not span a range");

    PowerLawFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    fit.slope_std_error = std::sqrt(1.0 / sxx);
    fit.n_points = x.size();
    return fit;
}

PowerLawFit fit_count_tail(std::span<const double> y, std::span<const std::size_t> count,
                           std::size_t total, double y_lo, double y_hi) {
    if (y.size() != count.size())
        throw std::invalid_argument("fit_count_tail: y and count sizes differ");
    if (total == 0) throw std::invalid_argument("fit_count_tail: total must be positive");
    if (!(y_lo < y_hi)) throw std::invalid_argument("fit_count_tail: empty threshold window");

    std::vector<double> xs, ps, ws;
    for (std::size_t j = 0; j < y.size(); ++j) {
        if (y[j] < y_lo || y[j] > y_hi) continue;
        if (count[j] == 0 || count[j] >= total) continue;
        const double p = double(count[j]) / double(total);
        // Var(log p-hat) ~ (1 - p) / (p * total) by the delta method.
        const double var_log = (1.0 - p) / (p * double(total));
        xs.push_back(y[j]);
        ps.push_back(p);
        ws.push_back(1.0 / var_log);
    }
    if (xs.size() < 3)
        throw std::invalid_argument(
            "fit_count_tail: fewer than three usable points in the window");
    return fit_power_law(xs, ps, ws);
}

}  // namespace beadsim
