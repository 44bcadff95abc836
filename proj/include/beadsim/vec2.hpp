#pragma once

#include <cmath>
#include <complex>

namespace beadsim {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    friend Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
    friend Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
    friend Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
    friend bool operator==(Vec2 a, Vec2 b) { return a.x == b.x && a.y == b.y; }
    friend bool operator!=(Vec2 a, Vec2 b) { return !(a == b); }
};

inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double norm2(Vec2 a) { return a.x * a.x + a.y * a.y; }
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }
inline double dist(Vec2 a, Vec2 b) { return norm(a - b); }

inline std::complex<double> to_complex(Vec2 a) { return {a.x, a.y}; }
inline Vec2 to_vec(std::complex<double> z) { return {z.real(), z.imag()}; }

// Distance from p to the closed segment [a, b]; handles degenerate a == b.
inline double dist_point_segment(Vec2 p, Vec2 a, Vec2 b) {
    const Vec2 ab = b - a;
    const double len2 = norm2(ab);
    if (len2 == 0.0) return dist(p, a);
    double t = dot(p - a, ab) / len2;
    t = t < 0.0 ? 0.0 : (t > 1.0 ? 1.0 : t);
    return dist(p, a + t * ab);
}

// Closest point of the closed segment [a, b] to p.
inline Vec2 closest_point_segment(Vec2 p, Vec2 a, Vec2 b) {
    const Vec2 ab = b - a;
    const double len2 = norm2(ab);
    if (len2 == 0.0) return a;
    double t = dot(p - a, ab) / len2;
    t = t < 0.0 ? 0.0 : (t > 1.0 ? 1.0 : t);
    return a + t * ab;
}

}  // namespace beadsim
