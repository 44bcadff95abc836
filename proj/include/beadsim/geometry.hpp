#pragma once

#include "beadsim/vec2.hpp"

namespace beadsim {

// Sign of the cross product (b-a) x (c-a): +1 for a counterclockwise turn,
// -1 for clockwise, 0 for exactly collinear. A floating-point error filter
// decides the easy cases; anything within the error bound is re-evaluated in
// exact rational arithmetic, so the sign is always correct and there is no
// epsilon anywhere.
int orient(Vec2 a, Vec2 b, Vec2 c);

// Whether p lies on the closed segment [a, b]. Exact.
bool on_segment(Vec2 a, Vec2 b, Vec2 p);

enum class SegTouch { None, Point, Overlap };

struct SegIntersection {
    SegTouch kind = SegTouch::None;
    // For Point: whether q is known exactly (the touch point is an endpoint
    // of one of the segments). Proper interior crossings get a best-effort
    // double approximation and exact = false.
    bool exact = false;
    Vec2 q{};
};

// Classifies the intersection of closed segments [a0,a1] and [b0,b1]:
// empty, a single point, or a shared collinear sub-segment. Degenerate
// segments are treated as points. All case decisions are exact.
SegIntersection classify_segments(Vec2 a0, Vec2 a1, Vec2 b0, Vec2 b1);

// Whether the closed segments share at least one point. Exact.
bool segments_intersect(Vec2 a0, Vec2 a1, Vec2 b0, Vec2 b1);

}  // namespace beadsim
