#include "beadsim/beads.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <memory>
#include <ostream>
#include <stdexcept>

#include "beadsim/hull.hpp"

namespace beadsim {

namespace {

// Non-owning view of a path's vertex vector, shaped for the hull interfaces.
std::shared_ptr<const std::vector<Vec2>> borrow_points(const Path& p) {
    return {std::shared_ptr<const std::vector<Vec2>>{}, &p.points()};
}

double nearest_rank(const std::vector<double>& sorted, double q) {
    if (sorted.empty()) return 0.0;
    const auto idx = std::size_t(std::llround(q * double(sorted.size() - 1)));
    return sorted[std::min(idx, sorted.size() - 1)];
}

}  // namespace

std::vector<BeadRecord> extract_beads(const Path& p, const CutSet& cuts,
                                      std::size_t n_walkers, const SeedSequence& seq,
                                      std::size_t max_steps, unsigned n_threads) {
    if (cuts.n != p.n())
        throw std::invalid_argument("extract_beads: cut set belongs to a different path");
    if (cuts.indices.size() < 2) return {};

    std::vector<std::size_t> prefixes(cuts.indices.begin(), cuts.indices.end());
    PrefixCapResult caps =
        estimate_prefix_cap1(borrow_points(p), prefixes, n_walkers, seq, max_steps, n_threads);

    std::vector<BeadRecord> out;
    out.reserve(prefixes.size() - 1);
    for (std::size_t i = 0; i + 1 < prefixes.size(); ++i) {
        BeadRecord r;
        r.path_seed = p.meta().seed;
        r.start_idx = prefixes[i];
        r.end_idx = prefixes[i + 1];
        r.duration = double(r.end_idx - r.start_idx) * p.dt();
        r.delta_a = caps.cap1[i + 1].value - caps.cap1[i].value;
        r.delta_std_error = caps.diff_std_error[i];
        r.diameter = point_set_diameter(p.points(), r.start_idx, r.end_idx);
        out.push_back(r);
    }
    return out;
}

void write_bead_csv(std::ostream& out, std::span<const BeadRecord> records) {
    out << "path_seed,start_idx,end_idx,duration,delta_a,stderr,diameter\n";
    char buf[240];
    for (const BeadRecord& r : records) {
        std::snprintf(buf, sizeof buf, "%llu,%zu,%zu,%.17g,%.17g,%.17g,%.17g\n",
                      (unsigned long long)r.path_seed, r.start_idx, r.end_idx, r.duration,
                      r.delta_a, r.delta_std_error, r.diameter);
        out << buf;
    }
}

TailCurve size_tail(std::vector<double> sizes, std::size_t n_grid, std::size_t min_count) {
    if (n_grid < 2) throw std::invalid_argument("size_tail: need at least two grid points");
    std::erase_if(sizes, [](double s) { return !(s > 0.0); });
    if (sizes.size() < min_count)
        throw std::invalid_argument("size_tail: too few positive sizes for a tail estimate");
    std::sort(sizes.begin(), sizes.end());

    const double lo = nearest_rank(sizes, 0.10);
    const double hi = nearest_rank(sizes, 0.99);
    const double llo = std::log(lo), lhi = std::log(hi);

    TailCurve tc;
    tc.y.reserve(n_grid);
    for (std::size_t j = 0; j < n_grid; ++j) {
        const double t = double(j) / double(n_grid - 1);
        const double y = std::exp(llo + t * (lhi - llo));
        if (tc.y.empty() || y > tc.y.back()) tc.y.push_back(y);
    }
    tc.total = sizes.size();
    for (double y : tc.y) {
        const auto above = std::size_t(sizes.end() -
                                       std::upper_bound(sizes.begin(), sizes.end(), y));
        tc.count.push_back(above);
        tc.prob.push_back(double(above) / double(tc.total));
    }
    return tc;
}

TailCurve bead_size_tail(std::span<const BeadRecord> records, std::size_t n_grid,
                         std::size_t min_records) {
    std::vector<double> sizes;
    sizes.reserve(records.size());
    for (const BeadRecord& r : records) sizes.push_back(r.delta_a);
    return size_tail(std::move(sizes), n_grid, min_records);
}

FirstCap first_cap_beyond(const Path& p, const CutSet& cuts, double threshold,
                          const SeedSequence& seq, const FirstCapBudget& budget) {
    if (!(threshold > 0.0))
        throw std::invalid_argument("first_cap_beyond: threshold must be positive");
    if (cuts.n != p.n())
        throw std::invalid_argument("first_cap_beyond: cut set belongs to a different path");

    FirstCap fc;
    fc.truncated = p.meta().truncated;
    if (cuts.indices.empty()) return fc;

    const std::vector<Vec2>& pts = p.points();
    const std::size_t last = cuts.indices.back();
    PolylineHull hull(borrow_points(p), 0, last - 1);

    // Per-prefix launch sizing (bounding-box diagonal) plus deterministic
    // capacity brackets: a prefix is connected and joins the real axis to
    // height max_y, so its capacity is at least max_y^2 / 4; it sits inside
    // the origin half-disk of radius max_r, so its capacity is at most
    // max_r^2. The brackets shrink the bisection range for free.
    std::vector<double> diag(last + 1, 0.0), cap_lo(last + 1, 0.0), cap_hi(last + 1, 0.0);
    {
        double min_x = 0.0, max_x = 0.0, max_y = 0.0, max_r2 = 0.0;
        for (std::size_t k = 1; k <= last; ++k) {
            min_x = std::min(min_x, pts[k].x);
            max_x = std::max(max_x, pts[k].x);
            max_y = std::max(max_y, pts[k].y);
            max_r2 = std::max(max_r2, pts[k].x * pts[k].x + pts[k].y * pts[k].y);
            diag[k] = std::hypot(max_x - min_x, max_y);
            cap_lo[k] = max_y * max_y / 4.0;
            cap_hi[k] = max_r2;
        }
    }

    std::uint64_t probe_counter = 0;
    auto probe = [&](std::size_t k, std::size_t n_walkers) {
        const double d = diag[k];
        return estimate_polyline_prefix_cap1(hull, k - 1, 10.0 * d, 1e-4 * d, n_walkers,
                                             seq.derive(probe_counter++), budget.max_steps,
                                             budget.n_threads);
    };

    // Prefix capacity grows with the vertex index, so first check whether the
    // largest prefix reaches the threshold at all, then bisect for the first
    // cut vertex that does.
    const std::vector<std::uint32_t>& ks = cuts.indices;
    if (cap_hi[ks.back()] <= threshold) return fc;
    if (!(cap_lo[ks.back()] > threshold) &&
        probe(ks.back(), budget.n_walkers_search).value < threshold)
        return fc;

    std::size_t lo = 0, hi = ks.size() - 1;
    while (lo < hi && cap_hi[ks[lo]] <= threshold) ++lo;  // certainly below
    while (hi > lo && cap_lo[ks[hi - 1]] > threshold) --hi;  // earlier one qualifies
    while (lo < hi) {
        const std::size_t mid = lo + (hi - lo) / 2;
        const double sure_lo = cap_lo[ks[mid]], sure_hi = cap_hi[ks[mid]];
        const bool above = sure_lo > threshold ||
                           (sure_hi > threshold &&
                            probe(ks[mid], budget.n_walkers_search).value >= threshold);
        if (above)
            hi = mid;
        else
            lo = mid + 1;
    }
    fc.value = probe(ks[lo], budget.n_walkers_final).value;
    fc.censored = false;
    return fc;
}

std::vector<LifetimeDecile> bead_lifetime_stats(std::span<const BeadRecord> records) {
    std::vector<const BeadRecord*> kept;
    kept.reserve(records.size());
    for (const BeadRecord& r : records)
        if (r.delta_a > 0.0) kept.push_back(&r);
    std::sort(kept.begin(), kept.end(),
              [](const BeadRecord* a, const BeadRecord* b) { return a->delta_a < b->delta_a; });

    std::vector<LifetimeDecile> out;
    const std::size_t n = kept.size();
    for (std::size_t d = 0; d < 10; ++d) {
        const std::size_t begin = d * n / 10, end = (d + 1) * n / 10;
        if (begin >= end) continue;
        LifetimeDecile dec;
        dec.size_lo = kept[begin]->delta_a;
        dec.size_hi = kept[end - 1]->delta_a;
        dec.count = end - begin;
        std::vector<double> dur, ratio;
        dur.reserve(dec.count);
        ratio.reserve(dec.count);
        for (std::size_t i = begin; i < end; ++i) {
            const BeadRecord& r = *kept[i];
            dur.push_back(r.duration);
            ratio.push_back(r.duration /
                            (r.delta_a * std::max(1.0, std::fabs(std::log(r.delta_a)))));
        }
        std::sort(dur.begin(), dur.end());
        std::sort(ratio.begin(), ratio.end());
        dec.duration_q50 = nearest_rank(dur, 0.50);
        dec.duration_q90 = nearest_rank(dur, 0.90);
        dec.duration_max = dur.back();
        dec.ratio_q90 = nearest_rank(ratio, 0.90);
        out.push_back(dec);
    }
    return out;
}

}  // namespace beadsim
