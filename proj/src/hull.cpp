#include "beadsim/hull.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>

#include "beadsim/geometry.hpp"

namespace beadsim {

// ---------------------------------------------------------------- SlitHull

double SlitHull::dist(Vec2 p) const {
    return dist_point_segment(p, {x0_, 0.0}, {x0_, h_});
}

bool SlitHull::hits_segment(Vec2 a, Vec2 b) const {
    return segments_intersect(a, b, {x0_, 0.0}, {x0_, h_});
}

// ------------------------------------------------------------ SemidiskHull

double SemidiskHull::dist(Vec2 p) const {
    // The filled half-disk; points below the axis see the nearest rim point.
    double dx = p.x - x0_;
    if (p.y >= 0.0) {
        double d = std::hypot(dx, p.y) - r_;
        return std::max(0.0, d);
    }
    // Mirror arguments do not arise in half-plane walks, but keep it total:
    // nearest point of the half-disk is on the diameter segment.
    return dist_point_segment(p, {x0_ - r_, 0.0}, {x0_ + r_, 0.0});
}

bool SemidiskHull::hits_segment(Vec2 a, Vec2 b) const {
    // The filled region: either an endpoint is inside, or the segment passes
    // within r of the centre while above the axis.
    if (dist(a) == 0.0 || dist(b) == 0.0) return true;
    Vec2 c{x0_, 0.0};
    if (dist_point_segment(c, a, b) > r_) return false;
    // The closest approach must happen at a point with y >= 0 to count.
    Vec2 q = closest_point_segment(c, a, b);
    if (q.y >= 0.0) return true;
    // Otherwise check the two crossings of the axis, if any.
    if ((a.y > 0.0) == (b.y > 0.0)) return false;
    double t = a.y / (a.y - b.y);
    double x_cross = a.x + t * (b.x - a.x);
    return std::abs(x_cross - x0_) <= r_;
}

// ------------------------------------------------------------ PolylineHull

PolylineHull::PolylineHull(std::shared_ptr<const std::vector<Vec2>> pts,
                           std::size_t first_seg, std::size_t last_seg)
    : pts_(std::move(pts)), first_(first_seg), last_(last_seg) {
    if (!pts_ || pts_->size() < 2) throw std::invalid_argument("PolylineHull: need >= 2 points");
    if (first_ > last_ || last_ + 1 >= pts_->size())
        throw std::invalid_argument("PolylineHull: segment range out of bounds");
    nodes_.reserve(2 * (last_ - first_ + 1) / 8 + 4);
    build(std::uint32_t(first_), std::uint32_t(last_ + 1));
    diam_ = point_set_diameter(*pts_, first_, last_ + 1);
}

int PolylineHull::build(std::uint32_t begin, std::uint32_t end) {
    const auto& pts = *pts_;
    int idx = int(nodes_.size());
    nodes_.push_back({});
    Node nd;
    nd.begin = begin;
    nd.end = end;
    nd.min_x = nd.max_x = pts[begin].x;
    nd.min_y = nd.max_y = pts[begin].y;
    // The box of segments [begin, end) covers points begin .. end.
    for (std::uint32_t k = begin; k <= end; ++k) {
        nd.min_x = std::min(nd.min_x, pts[k].x);
        nd.max_x = std::max(nd.max_x, pts[k].x);
        nd.min_y = std::min(nd.min_y, pts[k].y);
        nd.max_y = std::max(nd.max_y, pts[k].y);
    }
    if (end - begin > 8) {
        std::uint32_t mid = begin + (end - begin) / 2;
        nd.left = build(begin, mid);
        nd.right = build(mid, end);
    }
    nodes_[std::size_t(idx)] = nd;
    return idx;
}

double PolylineHull::box_dist(const Node& nd, Vec2 p) const {
    double dx = std::max({nd.min_x - p.x, 0.0, p.x - nd.max_x});
    double dy = std::max({nd.min_y - p.y, 0.0, p.y - nd.max_y});
    return std::hypot(dx, dy);
}

bool PolylineHull::box_overlaps(const Node& nd, Vec2 a, Vec2 b) const {
    double lo_x = std::min(a.x, b.x), hi_x = std::max(a.x, b.x);
    double lo_y = std::min(a.y, b.y), hi_y = std::max(a.y, b.y);
    return !(hi_x < nd.min_x || nd.max_x < lo_x || hi_y < nd.min_y || nd.max_y < lo_y);
}

double PolylineHull::dist(Vec2 p) const { return dist_prefix(p, last_); }

double PolylineHull::dist_prefix(Vec2 p, std::size_t limit_seg, std::size_t* nearest) const {
    const auto& pts = *pts_;
    std::uint32_t limit = std::uint32_t(std::min(limit_seg, last_)) + 1;  // exclusive
    double best = std::numeric_limits<double>::infinity();
    std::uint32_t best_seg = std::uint32_t(first_);
    // Depth-first with nearer child first; prune on box distance.
    std::int32_t stack[64];
    int top = 0;
    stack[top++] = 0;
    while (top > 0) {
        const Node& nd = nodes_[std::size_t(stack[--top])];
        if (nd.begin >= limit) continue;
        if (box_dist(nd, p) >= best) continue;
        if (nd.left < 0) {
            std::uint32_t stop = std::min(nd.end, limit);
            for (std::uint32_t s = nd.begin; s < stop; ++s) {
                double d = dist_point_segment(p, pts[s], pts[s + 1]);
                if (d < best) {
                    best = d;
                    best_seg = s;
                }
            }
            continue;
        }
        const Node& l = nodes_[std::size_t(nd.left)];
        const Node& r = nodes_[std::size_t(nd.right)];
        double dl = box_dist(l, p), dr = box_dist(r, p);
        // Push the farther child first so the nearer one is explored first.
        if (dl <= dr) {
            if (dr < best && r.begin < limit) stack[top++] = nd.right;
            if (dl < best && l.begin < limit) stack[top++] = nd.left;
        } else {
            if (dl < best && l.begin < limit) stack[top++] = nd.left;
            if (dr < best && r.begin < limit) stack[top++] = nd.right;
        }
    }
    if (nearest) *nearest = best_seg;
    return best;
}

bool PolylineHull::hits_segment(Vec2 a, Vec2 b) const {
    const auto& pts = *pts_;
    std::int32_t stack[64];
    int top = 0;
    stack[top++] = 0;
    while (top > 0) {
        const Node& nd = nodes_[std::size_t(stack[--top])];
        if (!box_overlaps(nd, a, b)) continue;
        if (nd.left < 0) {
            for (std::uint32_t s = nd.begin; s < nd.end; ++s)
                if (segments_intersect(a, b, pts[s], pts[s + 1])) return true;
            continue;
        }
        stack[top++] = nd.left;
        stack[top++] = nd.right;
    }
    return false;
}

BBox PolylineHull::bbox() const {
    const Node& root = nodes_[0];
    return {root.min_x, root.min_y, root.max_x, root.max_y};
}

// --------------------------------------------------------------- UnionHull

UnionHull::UnionHull(std::vector<std::shared_ptr<const Hull>> parts)
    : parts_(std::move(parts)) {
    if (parts_.empty()) throw std::invalid_argument("UnionHull: need at least one part");
    box_ = parts_[0]->bbox();
    for (std::size_t i = 1; i < parts_.size(); ++i) {
        BBox b = parts_[i]->bbox();
        box_.min_x = std::min(box_.min_x, b.min_x);
        box_.min_y = std::min(box_.min_y, b.min_y);
        box_.max_x = std::max(box_.max_x, b.max_x);
        box_.max_y = std::max(box_.max_y, b.max_y);
    }
}

double UnionHull::dist(Vec2 p) const {
    double d = std::numeric_limits<double>::infinity();
    for (const auto& h : parts_) d = std::min(d, h->dist(p));
    return d;
}

bool UnionHull::hits_segment(Vec2 a, Vec2 b) const {
    for (const auto& h : parts_)
        if (h->hits_segment(a, b)) return true;
    return false;
}

double UnionHull::diameter() const {
    return std::hypot(box_.max_x - box_.min_x, box_.max_y - box_.min_y);
}

// ---------------------------------------------------- point set diameter

double point_set_diameter(const std::vector<Vec2>& pts, std::size_t first,
                          std::size_t last) {
    if (first >= last || last >= pts.size()) return 0.0;
    std::vector<Vec2> v(pts.begin() + std::ptrdiff_t(first),
                        pts.begin() + std::ptrdiff_t(last) + 1);
    std::sort(v.begin(), v.end(), [](Vec2 a, Vec2 b) {
        return a.x < b.x || (a.x == b.x && a.y < b.y);
    });
    v.erase(std::unique(v.begin(), v.end()), v.end());
    if (v.size() == 1) return 0.0;
    if (v.size() == 2) return dist(v[0], v[1]);

    // Monotone-chain convex hull.
    auto cross = [](Vec2 o, Vec2 a, Vec2 b) {
        return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
    };
    std::vector<Vec2> h(2 * v.size());
    std::size_t m = 0;
    for (const Vec2& p : v) {
        while (m >= 2 && cross(h[m - 2], h[m - 1], p) <= 0) --m;
        h[m++] = p;
    }
    for (std::size_t i = v.size() - 1, lower = m + 1; i-- > 0;) {
        while (m >= lower && cross(h[m - 2], h[m - 1], v[i]) <= 0) --m;
        h[m++] = v[i];
    }
    h.resize(m - 1);
    if (h.size() == 1) return 0.0;
    if (h.size() == 2) return dist(h[0], h[1]);

    // Rotating calipers over antipodal pairs.
    double best = 0.0;
    std::size_t k = 1;
    const std::size_t n = h.size();
    auto area2 = [&](std::size_t i, std::size_t j, std::size_t l) {
        return std::abs(cross(h[i], h[j], h[l]));
    };
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t j = (i + 1) % n;
        while (area2(i, j, (k + 1) % n) > area2(i, j, k)) k = (k + 1) % n;
        best = std::max({best, dist(h[i], h[k]), dist(h[j], h[k])});
    }
    return best;
}

}  // namespace beadsim
