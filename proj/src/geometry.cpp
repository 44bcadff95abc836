#include "beadsim/geometry.hpp"

#include <algorithm>
#include <cmath>

#include <boost/multiprecision/cpp_int.hpp>

namespace beadsim {

namespace {

using rational = boost::multiprecision::cpp_rational;

int sign_of(const rational& r) {
    if (r > 0) return 1;
    if (r < 0) return -1;
    return 0;
}

// Conversion from double to cpp_rational is exact, so this evaluates the
// determinant with no rounding at all.
int orient_exact(Vec2 a, Vec2 b, Vec2 c) {
    const rational ax(a.x), ay(a.y), bx(b.x), by(b.y), cx(c.x), cy(c.y);
    const rational det = (bx - ax) * (cy - ay) - (by - ay) * (cx - ax);
    return sign_of(det);
}

// Shewchuk's first-stage error bound for the 2-D orientation determinant.
constexpr double kEps = 1.1102230246251565e-16;  // 2^-53
constexpr double kOrientErrBound = (3.0 + 16.0 * kEps) * kEps;

}  // namespace

int orient(Vec2 a, Vec2 b, Vec2 c) {
    const double l = (b.x - a.x) * (c.y - a.y);
    const double r = (b.y - a.y) * (c.x - a.x);
    const double det = l - r;
    const double detsum = std::abs(l) + std::abs(r);
    // Trust the double result only when it is safely outside the rounding
    // band and no underflow can have occurred.
    if (std::abs(det) > kOrientErrBound * detsum && detsum > 1e-290)
        return det > 0.0 ? 1 : -1;
    return orient_exact(a, b, c);
}

bool on_segment(Vec2 a, Vec2 b, Vec2 p) {
    if (orient(a, b, p) != 0) return false;
    return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) &&
           std::min(a.y, b.y) <= p.y && p.y <= std::max(a.y, b.y);
}

namespace {

// Collinear, non-degenerate segments on a common line: classify their
// 1-D overlap along the dominant coordinate of that line.
SegIntersection classify_collinear(Vec2 a0, Vec2 a1, Vec2 b0, Vec2 b1) {
    const bool use_x = std::abs(a1.x - a0.x) >= std::abs(a1.y - a0.y);
    const auto coord = [use_x](Vec2 v) { return use_x ? v.x : v.y; };
    Vec2 alo = a0, ahi = a1, blo = b0, bhi = b1;
    if (coord(alo) > coord(ahi)) std::swap(alo, ahi);
    if (coord(blo) > coord(bhi)) std::swap(blo, bhi);
    const Vec2 lo = coord(alo) >= coord(blo) ? alo : blo;  // max of lower ends
    const Vec2 hi = coord(ahi) <= coord(bhi) ? ahi : bhi;  // min of upper ends
    if (coord(lo) > coord(hi)) return {SegTouch::None, false, {}};
    if (coord(lo) == coord(hi)) return {SegTouch::Point, true, lo};
    return {SegTouch::Overlap, false, {}};
}

bool in_box(Vec2 a, Vec2 b, Vec2 p) {
    return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) &&
           std::min(a.y, b.y) <= p.y && p.y <= std::max(a.y, b.y);
}

}  // namespace

SegIntersection classify_segments(Vec2 a0, Vec2 a1, Vec2 b0, Vec2 b1) {
    const bool a_pt = a0 == a1;
    const bool b_pt = b0 == b1;
    if (a_pt && b_pt)
        return a0 == b0 ? SegIntersection{SegTouch::Point, true, a0}
                        : SegIntersection{SegTouch::None, false, {}};
    if (a_pt)
        return on_segment(b0, b1, a0) ? SegIntersection{SegTouch::Point, true, a0}
                                      : SegIntersection{SegTouch::None, false, {}};
    if (b_pt)
        return on_segment(a0, a1, b0) ? SegIntersection{SegTouch::Point, true, b0}
                                      : SegIntersection{SegTouch::None, false, {}};

    const int o1 = orient(a0, a1, b0);
    const int o2 = orient(a0, a1, b1);
    const int o3 = orient(b0, b1, a0);
    const int o4 = orient(b0, b1, a1);

    if (o1 == 0 && o2 == 0) return classify_collinear(a0, a1, b0, b1);

    // Endpoint touches: the touch point is a known vertex, hence exact.
    if (o1 == 0 && in_box(a0, a1, b0)) return {SegTouch::Point, true, b0};
    if (o2 == 0 && in_box(a0, a1, b1)) return {SegTouch::Point, true, b1};
    if (o3 == 0 && in_box(b0, b1, a0)) return {SegTouch::Point, true, a0};
    if (o4 == 0 && in_box(b0, b1, a1)) return {SegTouch::Point, true, a1};

    if ((o1 > 0) != (o2 > 0) && (o3 > 0) != (o4 > 0) && o1 != 0 && o2 != 0 && o3 != 0 &&
        o4 != 0) {
        // Proper interior crossing; the coordinates are only needed as a
        // rendering/diagnostic hint, so double precision is fine here.
        const double d1x = a1.x - a0.x, d1y = a1.y - a0.y;
        const double d2x = b1.x - b0.x, d2y = b1.y - b0.y;
        const double denom = d1x * d2y - d1y * d2x;
        const double t = ((b0.x - a0.x) * d2y - (b0.y - a0.y) * d2x) / denom;
        return {SegTouch::Point, false, {a0.x + t * d1x, a0.y + t * d1y}};
    }
    return {SegTouch::None, false, {}};
}

bool segments_intersect(Vec2 a0, Vec2 a1, Vec2 b0, Vec2 b1) {
    return classify_segments(a0, a1, b0, b1).kind != SegTouch::None;
}

}  // namespace beadsim
