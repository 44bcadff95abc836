#include "beadsim/samplers.hpp"

#include <cmath>
#include <stdexcept>

namespace beadsim {

namespace {

void check_step_params(double dt) {
    if (!(dt > 0.0) || !std::isfinite(dt)) throw std::invalid_argument("dt must be positive");
}

// Stream indices under a path's seed node. Keeping them fixed constants means
// the x and y coordinates stay independent and reproducible however the
// caller schedules paths.
constexpr std::uint64_t kStreamX = 0;
constexpr std::uint64_t kStreamY = 1;

}  // namespace

std::vector<double> sample_bm(std::size_t n, double dt, Rng& rng) {
    check_step_params(dt);
    const double s = std::sqrt(dt);
    std::vector<double> w(n + 1);
    w[0] = 0.0;
    for (std::size_t k = 1; k <= n; ++k) w[k] = w[k - 1] + s * rng.gaussian();
    return w;
}

std::vector<double> sample_bes3(std::size_t n, double dt, Rng& rng) {
    check_step_params(dt);
    const double s = std::sqrt(dt);
    std::vector<double> r(n + 1);
    r[0] = 0.0;
    double w1 = 0.0, w2 = 0.0, w3 = 0.0;
    for (std::size_t k = 1; k <= n; ++k) {
        w1 += s * rng.gaussian();
        w2 += s * rng.gaussian();
        w3 += s * rng.gaussian();
        r[k] = std::sqrt(w1 * w1 + w2 * w2 + w3 * w3);
    }
    return r;
}

Path sample_excursion(std::size_t n, double dt, const SeedSequence& seq) {
    check_step_params(dt);
    Rng rx = seq.stream(kStreamX);
    Rng ry = seq.stream(kStreamY);
    const std::vector<double> x = sample_bm(n, dt, rx);
    const std::vector<double> y = sample_bes3(n, dt, ry);
    std::vector<Vec2> pts(n + 1);
    for (std::size_t k = 0; k <= n; ++k) pts[k] = {x[k], y[k]};
    return Path(std::move(pts), dt, PathMeta{seq.root, Scheme::Excursion, false});
}

Path sample_excursion_until_height(double y_max, double dt, const SeedSequence& seq,
                                   std::size_t n_cap) {
    check_step_params(dt);
    if (!(y_max > 0.0)) throw std::invalid_argument("y_max must be positive");
    if (n_cap == 0) throw std::invalid_argument("n_cap must be positive");
    Rng rx = seq.stream(kStreamX);
    Rng ry = seq.stream(kStreamY);
    const double s = std::sqrt(dt);
    std::vector<Vec2> pts;
    pts.reserve(1024);
    pts.push_back({0.0, 0.0});
    double x = 0.0, w1 = 0.0, w2 = 0.0, w3 = 0.0, y = 0.0;
    bool truncated = true;
    for (std::size_t k = 1; k <= n_cap; ++k) {
        x += s * rx.gaussian();
        w1 += s * ry.gaussian();
        w2 += s * ry.gaussian();
        w3 += s * ry.gaussian();
        y = std::sqrt(w1 * w1 + w2 * w2 + w3 * w3);
        pts.push_back({x, y});
        if (y >= y_max) {
            truncated = false;
            break;
        }
    }
    return Path(std::move(pts), dt, PathMeta{seq.root, Scheme::ExcursionToHeight, truncated});
}

Path scale_path(const Path& p, double r) {
    if (!(r > 0.0) || !std::isfinite(r)) throw std::invalid_argument("scale must be positive");
    std::vector<Vec2> pts(p.points().size());
    for (std::size_t k = 0; k < pts.size(); ++k) pts[k] = r * p.point(k);
    PathMeta meta = p.meta();
    meta.scheme = Scheme::Scaled;
    return Path(std::move(pts), r * r * p.dt(), meta);
}

}  // namespace beadsim
