#include "beadsim/cuttimes.hpp"

#include <algorithm>
#include <cstring>
#include <ostream>
#include <stdexcept>

#include "beadsim/geometry.hpp"
#include "beadsim/segment_grid.hpp"

namespace beadsim {

namespace {

// A conflicting segment pair (i, j) disqualifies every vertex in (i, j]
// except those sitting exactly at the single touch point. The exceptions are
// rare (they need a vertex coordinate to coincide with the contact), so kills
// are accumulated as +1/-1 interval marks in a difference array.
class KillMarks {
  public:
    explicit KillMarks(std::size_t n_vertices) : diff_(n_vertices + 1, 0) {}

    void kill_range(std::uint32_t lo, std::uint32_t hi) {  // inclusive
        if (lo > hi) return;
        ++diff_[lo];
        --diff_[hi + 1];
    }

    // Kill (i, j] minus the sorted exception indices.
    void kill_with_exceptions(std::uint32_t lo, std::uint32_t hi,
                              const std::vector<std::uint32_t>& exceptions) {
        std::uint32_t start = lo;
        for (std::uint32_t m : exceptions) {
            if (m < lo || m > hi) continue;
            if (m > start) kill_range(start, m - 1);
            start = m + 1;
        }
        if (start <= hi) kill_range(start, hi);
    }

    // Interior vertices (1..n_steps-1) not covered by any kill interval.
    std::vector<std::uint32_t> survivors(std::size_t n_steps) const {
        std::vector<std::uint32_t> out;
        long running = 0;
        for (std::size_t k = 1; k < n_steps; ++k) {
            running += diff_[k];
            if (running == 0) out.push_back(std::uint32_t(k));
        }
        return out;
    }

  private:
    std::vector<long> diff_;
};

// Sorted index of vertices keyed by their exact coordinate bits, for "which
// vertices sit at this exact point" lookups.
class PointIndex {
  public:
    explicit PointIndex(std::span<const Vec2> pts) : pts_(pts), order_(pts.size()) {
        for (std::size_t i = 0; i < order_.size(); ++i) order_[i] = std::uint32_t(i);
        std::sort(order_.begin(), order_.end(), [&](std::uint32_t a, std::uint32_t b) {
            return key(pts_[a]) < key(pts_[b]);
        });
    }

    // Vertex indices located exactly at q, ascending.
    void at(Vec2 q, std::vector<std::uint32_t>& out) const {
        out.clear();
        const auto k = key(q);
        auto it = std::lower_bound(order_.begin(), order_.end(), k,
                                   [&](std::uint32_t a, const Key& kk) { return key(pts_[a]) < kk; });
        for (; it != order_.end() && key(pts_[*it]) == k; ++it) out.push_back(*it);
        std::sort(out.begin(), out.end());
    }

  private:
    using Key = std::pair<std::uint64_t, std::uint64_t>;
    static Key key(Vec2 v) {
        std::uint64_t a, b;
        std::memcpy(&a, &v.x, 8);
        std::memcpy(&b, &v.y, 8);
        return {a, b};
    }

    std::span<const Vec2> pts_;
    std::vector<std::uint32_t> order_;
};

// Vertices lying exactly on non-adjacent segments. Needed only for the
// corner case of a proper crossing passing through a later/earlier vertex,
// where the touch point is not representable exactly and has to be matched
// through incidence instead of coordinates.
std::vector<std::vector<std::uint32_t>> vertex_incidence(std::span<const Vec2> pts,
                                                         const SegmentGrid& grid) {
    const std::size_t nseg = pts.size() - 1;
    std::vector<std::vector<std::uint32_t>> on_seg(nseg);
    std::vector<std::uint32_t> cand;
    for (std::uint32_t m = 0; m < pts.size(); ++m) {
        cand.clear();
        grid.for_candidates(pts[m], pts[m], [&](std::uint32_t s) { cand.push_back(s); });
        std::sort(cand.begin(), cand.end());
        cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
        for (std::uint32_t s : cand) {
            if (s + 1 == m || s == m) continue;  // own endpoints are not incidences
            if (on_segment(pts[s], pts[s + 1], pts[m])) on_seg[s].push_back(m);
        }
    }
    return on_seg;
}

void apply_pair(KillMarks& marks, const PointIndex& points, const SegIntersection& cls,
                std::uint32_t i, std::uint32_t j, const std::vector<std::uint32_t>* incid_i,
                const std::vector<std::uint32_t>* incid_j,
                std::vector<std::uint32_t>& scratch) {
    if (cls.kind == SegTouch::None) return;
    if (cls.kind == SegTouch::Overlap) {
        marks.kill_range(i + 1, j);
        return;
    }
    // Single touch point: find every vertex index equal to it.
    if (cls.exact) {
        points.at(cls.q, scratch);
    } else {
        // Proper crossing: the touch point equals a vertex only if that
        // vertex lies exactly on both segments.
        scratch.clear();
        if (incid_i && incid_j && !incid_i->empty() && !incid_j->empty())
            std::set_intersection(incid_i->begin(), incid_i->end(), incid_j->begin(),
                                  incid_j->end(), std::back_inserter(scratch));
    }
    marks.kill_with_exceptions(i + 1, j, scratch);
}

bool boxes_overlap(Vec2 a0, Vec2 a1, Vec2 b0, Vec2 b1) {
    return std::min(a0.x, a1.x) <= std::max(b0.x, b1.x) &&
           std::min(b0.x, b1.x) <= std::max(a0.x, a1.x) &&
           std::min(a0.y, a1.y) <= std::max(b0.y, b1.y) &&
           std::min(b0.y, b1.y) <= std::max(a0.y, a1.y);
}

}  // namespace

bool CutSet::contains(std::uint32_t k) const {
    return std::binary_search(indices.begin(), indices.end(), k);
}

CutSet find_cut_vertices(std::span<const Vec2> pts) {
    CutSet cs;
    cs.n = pts.size() >= 1 ? pts.size() - 1 : 0;
    if (pts.size() < 3) return cs;
    const std::size_t nseg = pts.size() - 1;

    const SegmentGrid grid(pts);
    const PointIndex points(pts);
    const auto incidence = vertex_incidence(pts, grid);

    KillMarks marks(pts.size());
    std::vector<std::uint32_t> stamp(nseg, std::uint32_t(-1));
    std::vector<std::uint32_t> scratch;
    for (std::uint32_t i = 0; i + 1 < nseg; ++i) {
        const Vec2 a0 = pts[i], a1 = pts[i + 1];
        grid.for_candidates(a0, a1, [&](std::uint32_t j) {
            if (j <= i || stamp[j] == i) return;
            stamp[j] = i;
            const Vec2 b0 = pts[j], b1 = pts[j + 1];
            if (!boxes_overlap(a0, a1, b0, b1)) return;
            const SegIntersection cls = classify_segments(a0, a1, b0, b1);
            if (cls.kind == SegTouch::None) return;
            apply_pair(marks, points, cls, i, j, cls.exact ? nullptr : &incidence[i],
                       cls.exact ? nullptr : &incidence[j], scratch);
        });
    }
    cs.indices = marks.survivors(cs.n);
    return cs;
}

CutSet find_cut_vertices_naive(std::span<const Vec2> pts, std::size_t max_n) {
    if (pts.size() > max_n + 1)
        throw std::invalid_argument("find_cut_vertices_naive: polyline too long for O(n^2)");
    CutSet cs;
    cs.n = pts.size() >= 1 ? pts.size() - 1 : 0;
    if (pts.size() < 3) return cs;
    const std::size_t nseg = pts.size() - 1;

    std::vector<char> killed(pts.size(), 0);
    for (std::uint32_t i = 0; i + 1 < nseg; ++i)
        for (std::uint32_t j = i + 1; j < nseg; ++j) {
            const Vec2 a0 = pts[i], a1 = pts[i + 1], b0 = pts[j], b1 = pts[j + 1];
            if (!boxes_overlap(a0, a1, b0, b1)) continue;
            const SegIntersection cls = classify_segments(a0, a1, b0, b1);
            if (cls.kind == SegTouch::None) continue;
            for (std::uint32_t k = i + 1; k <= j; ++k) {
                if (killed[k]) continue;
                bool allowed = false;
                if (cls.kind == SegTouch::Point) {
                    allowed = cls.exact
                                  ? pts[k] == cls.q
                                  : (on_segment(a0, a1, pts[k]) && on_segment(b0, b1, pts[k]));
                }
                if (!allowed) killed[k] = 1;
            }
        }
    for (std::uint32_t k = 1; k + 1 < pts.size(); ++k)
        if (!killed[k]) cs.indices.push_back(k);
    return cs;
}

CutSet find_cuttimes(const Path& p) { return find_cut_vertices(p.points()); }

CutSet find_cuttimes_naive(const Path& p, std::size_t max_n) {
    return find_cut_vertices_naive(p.points(), max_n);
}

bool has_cuttime_in(const Path& p, const CutSet& cuts, double t1, double t2) {
    if (!(0.0 <= t1) || !(t1 < t2) || !(t2 <= p.duration()))
        throw std::invalid_argument("has_cuttime_in: window must satisfy 0 <= t1 < t2 <= duration");
    const double dt = p.dt();
    // First cut vertex with k*dt >= t1, then check it is inside the window.
    auto it = std::lower_bound(cuts.indices.begin(), cuts.indices.end(), t1,
                               [dt](std::uint32_t k, double t) { return double(k) * dt < t; });
    return it != cuts.indices.end() && double(*it) * dt <= t2;
}

bool has_cuttime_in(const Path& p, double t1, double t2) {
    return has_cuttime_in(p, find_cuttimes(p), t1, t2);
}

void write_cut_csv(std::ostream& out, const Path& p, const CutSet& cuts) {
    out << "k,t,x,y\n";
    char buf[160];
    for (std::uint32_t k : cuts.indices) {
        const Vec2 v = p.point(k);
        std::snprintf(buf, sizeof buf, "%u,%.17g,%.17g,%.17g\n", k, double(k) * p.dt(), v.x, v.y);
        out << buf;
    }
}

}  // namespace beadsim
