#pragma once

#include <complex>
#include <span>
#include <vector>

#include "beadsim/hull.hpp"
#include "beadsim/path.hpp"

namespace beadsim {

using Cplx = std::complex<double>;

// Hydrodynamically normalized conformal map removing a hull from the upper
// half plane: f maps H minus the hull onto H with f(z) - z -> 0 at infinity.
// Stored as a composition of exactly evaluable primitives:
//   vertical slit at x0, height h:  f(z) = x0 + sqrt((z-x0)^2 + h^2),
//     branch asymptotic to z - x0, capacity h^2/2;
//   half disk at x0, radius r:  f(z) = z + r^2/(z-x0), capacity r^2.
// Compositions apply left to right and add capacities.
class HullMap {
  public:
    static HullMap identity();
    static HullMap slit(double x0, double h);      // h = 0 degenerates to identity
    static HullMap semidisk(double x0, double r);  // r = 0 degenerates to identity
    static HullMap compose(std::span<const HullMap> maps);

    // Value and derivative at z. The point must lie outside the removed hull
    // of each stage (on-hull evaluation throws std::domain_error).
    Cplx map(Cplx z) const;
    Cplx derivative(Cplx z) const;

    // Half-plane capacity: the 1/z coefficient of f at infinity.
    double hcap() const { return hcap_; }

    bool is_identity() const { return prims_.empty(); }

    // Whether the polyline touches any stage's removed hull (each stage is
    // checked against the image of the polyline under the previous stages).
    bool hits_polyline(std::span<const Vec2> pts) const;

  private:
    struct Prim {
        enum class Kind { Slit, Semidisk } kind;
        double x0;
        double size;  // h for slits, r for half disks
    };
    static Cplx prim_map(const Prim& pr, Cplx z);
    static Cplx prim_deriv(const Prim& pr, Cplx z);
    static void check_domain(const Prim& pr, Cplx z);

    std::vector<Prim> prims_;
    double hcap_ = 0.0;
};

// P(an excursion from 0 avoids the hull) = f'(0) of the normalized map,
// shifted so 0 stays fixed (the shift does not change the derivative).
// Defined for analytic hulls whose closure misses the origin; polyline or
// union hulls are rejected.
double avoid_probability(const Hull& A);
double avoid_probability_slit(double x0, double h);
double avoid_probability_semidisk(double x0, double r);

// Image of a path under the map: each vertex is mapped, each step's duration
// is reweighted by |f'(segment midpoint)|^2, the image is shifted so it
// starts at the origin, and the result is re-gridded onto a uniform step by
// linear interpolation in the new time (same step count as the input).
// The path must not touch any stage's removed hull.
Path f_transform(const HullMap& m, const Path& p);

}  // namespace beadsim
