#include "beadsim/capacity.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <stdexcept>

#include "beadsim/parallel.hpp"

namespace beadsim {

namespace {

constexpr std::size_t kBlock = 1024;  // walkers per reduction block

struct WalkOutcome {
    bool on_hull = false;
    double im = 0.0;          // height at absorption when on_hull
    std::size_t seg = 0;      // nearest segment at absorption (prefix walks)
    bool budget_hit = false;  // step cap reached; counted as an escape
};

// One walk-on-spheres trajectory in the half plane minus the hull: jump to a
// uniform point on the largest disk that avoids both the hull and the real
// axis, absorb within eps of either. dist_fn(pos, &seg) must return the
// distance to the hull (filling seg with the nearest piece).
template <typename DistFn>
WalkOutcome walk(Vec2& pos, Rng& rng, double eps, std::size_t max_steps, DistFn&& dist_fn) {
    for (std::size_t step = 0; step < max_steps; ++step) {
        std::size_t seg = 0;
        double d = dist_fn(pos, seg);
        if (d <= eps) return {true, pos.y, seg, false};
        if (pos.y <= eps) return {false, 0.0, 0, false};
        double rho = std::min(d, pos.y);
        double theta = 2.0 * std::numbers::pi * rng.uniform();
        pos.x += rho * std::cos(theta);
        pos.y += rho * std::sin(theta);
    }
    return {false, 0.0, 0, true};
}

struct BlockSums {
    double sum = 0.0;
    double sumsq = 0.0;
    std::uint64_t budget = 0;
};

template <typename DistFn, typename ValueFn>
CapEstimate run_ensemble(DistFn&& dist_fn, std::size_t n_walkers, double y_start, double eps,
                         const SeedSequence& seq, std::size_t max_steps, unsigned n_threads,
                         ValueFn&& value_fn) {
    const std::size_t n_blocks = (n_walkers + kBlock - 1) / kBlock;
    std::vector<BlockSums> blocks(n_blocks);
    parallel_for_blocks(
        n_blocks,
        [&](std::size_t b) {
            BlockSums acc;
            const std::size_t w_end = std::min(n_walkers, (b + 1) * kBlock);
            for (std::size_t w = b * kBlock; w < w_end; ++w) {
                Rng rng = seq.stream(w);
                Vec2 pos{0.0, y_start};
                WalkOutcome out = walk(pos, rng, eps, max_steps, dist_fn);
                if (out.budget_hit) ++acc.budget;
                double x = value_fn(out) * y_start;
                acc.sum += x;
                acc.sumsq += x * x;
            }
            blocks[b] = acc;
        },
        n_threads);

    double sum = 0.0, sumsq = 0.0;
    std::uint64_t budget = 0;
    for (const BlockSums& bs : blocks) {
        sum += bs.sum;
        sumsq += bs.sumsq;
        budget += bs.budget;
    }
    double mean = sum / double(n_walkers);
    double var = std::max(0.0, (sumsq - sum * mean) / double(n_walkers > 1 ? n_walkers - 1 : 1));
    if (budget > 0)
        std::fprintf(stderr, "capacity: %llu of %llu walkers exceeded the step budget\n",
                     (unsigned long long)budget, (unsigned long long)n_walkers);
    return {mean, std::sqrt(var / double(n_walkers)), n_walkers, y_start, eps, budget};
}

template <typename ValueFn>
CapEstimate reduce_walkers(const Hull& A, std::size_t n_walkers, double y_start, double eps,
                           const SeedSequence& seq, std::size_t max_steps, unsigned n_threads,
                           ValueFn&& value_fn) {
    if (n_walkers == 0) throw std::invalid_argument("capacity: need at least one walker");
    if (!(eps > 0.0)) throw std::invalid_argument("capacity: eps must be positive");
    double floor = 10.0 * (A.diameter() + A.dist({0.0, 0.0}));
    if (!(y_start >= floor))
        throw std::invalid_argument("capacity: y_start below 10 * (diameter + origin distance)");
    if (!(A.dist({0.0, y_start}) > eps))
        throw std::invalid_argument("capacity: launch point sits on the hull");
    return run_ensemble([&](Vec2 p, std::size_t&) { return A.dist(p); }, n_walkers, y_start,
                        eps, seq, max_steps, n_threads, value_fn);
}

}  // namespace

double default_y_start(const Hull& A) {
    return 20.0 * (A.diameter() + A.dist({0.0, 0.0}));
}

double default_eps(const Hull& A) { return 1e-4 * A.diameter(); }

CapEstimate estimate_cap0(const Hull& A, std::size_t n_walkers, double y_start, double eps,
                          const SeedSequence& seq, std::size_t max_steps, unsigned n_threads) {
    return reduce_walkers(A, n_walkers, y_start, eps, seq, max_steps, n_threads,
                          [](const WalkOutcome& o) { return o.on_hull ? 1.0 : 0.0; });
}

CapEstimate estimate_cap1(const Hull& A, std::size_t n_walkers, double y_start, double eps,
                          const SeedSequence& seq, std::size_t max_steps, unsigned n_threads) {
    return reduce_walkers(A, n_walkers, y_start, eps, seq, max_steps, n_threads,
                          [](const WalkOutcome& o) { return o.on_hull ? o.im : 0.0; });
}

CapEstimate estimate_polyline_prefix_cap1(const PolylineHull& hull, std::size_t limit_seg,
                                          double y_start, double eps, std::size_t n_walkers,
                                          const SeedSequence& seq, std::size_t max_steps,
                                          unsigned n_threads) {
    if (n_walkers == 0) throw std::invalid_argument("capacity: need at least one walker");
    if (!(eps > 0.0)) throw std::invalid_argument("capacity: eps must be positive");
    if (!(y_start > 0.0)) throw std::invalid_argument("capacity: y_start must be positive");
    if (limit_seg < hull.first_seg())
        throw std::invalid_argument("capacity: prefix limit precedes the hull's first segment");
    if (!(hull.dist_prefix({0.0, y_start}, limit_seg) > eps))
        throw std::invalid_argument("capacity: launch point sits on the hull");
    return run_ensemble(
        [&](Vec2 p, std::size_t&) { return hull.dist_prefix(p, limit_seg); }, n_walkers, y_start,
        eps, seq, max_steps, n_threads, [](const WalkOutcome& o) { return o.on_hull ? o.im : 0.0; });
}

PrefixCapResult estimate_prefix_cap1(std::shared_ptr<const std::vector<Vec2>> pts,
                                     std::span<const std::size_t> prefix_end_vertex,
                                     std::size_t n_walkers, const SeedSequence& seq,
                                     std::size_t max_steps, unsigned n_threads) {
    if (!pts || pts->size() < 2)
        throw std::invalid_argument("estimate_prefix_cap1: need a polyline");
    if (prefix_end_vertex.empty())
        throw std::invalid_argument("estimate_prefix_cap1: need at least one prefix");
    if (n_walkers == 0) throw std::invalid_argument("estimate_prefix_cap1: need walkers");
    for (std::size_t i = 0; i < prefix_end_vertex.size(); ++i) {
        if (prefix_end_vertex[i] < 1 || prefix_end_vertex[i] >= pts->size())
            throw std::invalid_argument("estimate_prefix_cap1: prefix end out of range");
        if (i > 0 && prefix_end_vertex[i] <= prefix_end_vertex[i - 1])
            throw std::invalid_argument("estimate_prefix_cap1: prefixes must ascend");
    }

    const std::size_t n_prefix = prefix_end_vertex.size();
    const std::size_t seg_max = prefix_end_vertex.back() - 1;  // largest prefix
    PolylineHull hull(pts, 0, seg_max);
    const double y_start = 10.0 * (hull.diameter() + hull.dist({0.0, 0.0}));
    const double eps = 1e-4 * hull.diameter();
    if (!(eps > 0.0))
        throw std::invalid_argument("estimate_prefix_cap1: degenerate polyline");

    const std::size_t n_blocks = (n_walkers + kBlock - 1) / kBlock;
    struct PrefixSums {
        std::vector<double> sum, sumsq;      // per prefix
        std::vector<double> dsum, dsumsq;    // per consecutive pair
        std::uint64_t budget = 0;
    };
    std::vector<PrefixSums> blocks(n_blocks);

    parallel_for_blocks(
        n_blocks,
        [&](std::size_t b) {
            PrefixSums acc;
            acc.sum.assign(n_prefix, 0.0);
            acc.sumsq.assign(n_prefix, 0.0);
            acc.dsum.assign(n_prefix > 0 ? n_prefix - 1 : 0, 0.0);
            acc.dsumsq.assign(n_prefix > 0 ? n_prefix - 1 : 0, 0.0);

            const std::size_t w_lo = b * kBlock;
            const std::size_t w_hi = std::min(n_walkers, (b + 1) * kBlock);
            const std::size_t m = w_hi - w_lo;
            struct WalkerState {
                Rng rng{0};
                Vec2 pos;
                bool on_hull = false;
                std::size_t seg = 0;
                double im = 0.0;
            };
            std::vector<WalkerState> st(m);
            std::vector<double> contrib(m, 0.0), prev(m, 0.0);

            // Settle every walker against the longest prefix.
            for (std::size_t j = 0; j < m; ++j) {
                WalkerState& w = st[j];
                w.rng = seq.stream(w_lo + j);
                w.pos = {0.0, y_start};
                WalkOutcome out = walk(w.pos, w.rng, eps, max_steps,
                                       [&](Vec2 p, std::size_t& seg) {
                                           return hull.dist_prefix(p, seg_max, &seg);
                                       });
                if (out.budget_hit) ++acc.budget;
                w.on_hull = out.on_hull;
                w.seg = out.seg;
                w.im = out.im;
            }

            // Walk the prefixes from longest to shortest; a walker moves only
            // when the segment it settled on drops out of the prefix.
            for (std::size_t ip = n_prefix; ip-- > 0;) {
                const std::size_t limit = prefix_end_vertex[ip] - 1;
                for (std::size_t j = 0; j < m; ++j) {
                    WalkerState& w = st[j];
                    if (w.on_hull && w.seg > limit) {
                        WalkOutcome out = walk(w.pos, w.rng, eps, max_steps,
                                               [&](Vec2 p, std::size_t& seg) {
                                                   return hull.dist_prefix(p, limit, &seg);
                                               });
                        if (out.budget_hit) ++acc.budget;
                        w.on_hull = out.on_hull;
                        w.seg = out.seg;
                        w.im = out.im;
                    }
                    contrib[j] = w.on_hull ? y_start * w.im : 0.0;
                    acc.sum[ip] += contrib[j];
                    acc.sumsq[ip] += contrib[j] * contrib[j];
                    if (ip + 1 < n_prefix) {
                        double d = prev[j] - contrib[j];  // cap1[ip+1] - cap1[ip]
                        acc.dsum[ip] += d;
                        acc.dsumsq[ip] += d * d;
                    }
                }
                std::swap(prev, contrib);
            }
            blocks[b] = std::move(acc);
        },
        n_threads);

    PrefixCapResult res;
    res.cap1.resize(n_prefix);
    res.diff_std_error.assign(n_prefix > 0 ? n_prefix - 1 : 0, 0.0);
    std::uint64_t budget = 0;
    for (std::size_t ip = 0; ip < n_prefix; ++ip) {
        double sum = 0.0, sumsq = 0.0;
        for (const PrefixSums& bs : blocks) {
            sum += bs.sum[ip];
            sumsq += bs.sumsq[ip];
        }
        double mean = sum / double(n_walkers);
        double var =
            std::max(0.0, (sumsq - sum * mean) / double(n_walkers > 1 ? n_walkers - 1 : 1));
        res.cap1[ip] = {mean,  std::sqrt(var / double(n_walkers)), n_walkers, y_start, eps, 0};
    }
    for (std::size_t ip = 0; ip + 1 < n_prefix; ++ip) {
        double dsum = 0.0, dsumsq = 0.0;
        for (const PrefixSums& bs : blocks) {
            dsum += bs.dsum[ip];
            dsumsq += bs.dsumsq[ip];
        }
        double mean = dsum / double(n_walkers);
        double var =
            std::max(0.0, (dsumsq - dsum * mean) / double(n_walkers > 1 ? n_walkers - 1 : 1));
        res.diff_std_error[ip] = std::sqrt(var / double(n_walkers));
    }
    for (const PrefixSums& bs : blocks) budget += bs.budget;
    if (budget > 0) {
        std::fprintf(stderr, "capacity: %llu prefix walks exceeded the step budget\n",
                     (unsigned long long)budget);
        for (auto& ce : res.cap1) ce.budget_exceeded = budget;
    }
    return res;
}

}  // namespace beadsim
