#include "beadsim/hull_map.hpp"

#include <cmath>
#include <stdexcept>

namespace beadsim {

HullMap HullMap::identity() { return {}; }

HullMap HullMap::slit(double x0, double h) {
    if (h < 0.0) throw std::invalid_argument("HullMap::slit: negative height");
    HullMap m;
    if (h > 0.0) {
        m.prims_.push_back({Prim::Kind::Slit, x0, h});
        m.hcap_ = h * h / 2.0;
    }
    return m;
}

HullMap HullMap::semidisk(double x0, double r) {
    if (r < 0.0) throw std::invalid_argument("HullMap::semidisk: negative radius");
    HullMap m;
    if (r > 0.0) {
        m.prims_.push_back({Prim::Kind::Semidisk, x0, r});
        m.hcap_ = r * r;
    }
    return m;
}

HullMap HullMap::compose(std::span<const HullMap> maps) {
    if (maps.empty()) throw std::invalid_argument("HullMap::compose: empty list");
    HullMap out;
    for (const HullMap& m : maps) {
        out.prims_.insert(out.prims_.end(), m.prims_.begin(), m.prims_.end());
        out.hcap_ += m.hcap_;
    }
    return out;
}

void HullMap::check_domain(const Prim& pr, Cplx z) {
    if (pr.kind == Prim::Kind::Slit) {
        if (z.real() == pr.x0 && z.imag() >= 0.0 && z.imag() <= pr.size)
            throw std::domain_error("HullMap: point lies on the removed slit");
    } else {
        double d = std::hypot(z.real() - pr.x0, z.imag());
        if (d <= pr.size && z.imag() >= 0.0)
            throw std::domain_error("HullMap: point lies in the removed half disk");
    }
}

Cplx HullMap::prim_map(const Prim& pr, Cplx z) {
    check_domain(pr, z);
    Cplx u = z - pr.x0;
    if (pr.kind == Prim::Kind::Semidisk) return z + pr.size * pr.size / u;
    // sqrt(u^2 + h^2) on the branch asymptotic to u: u * sqrt(1 + (h/u)^2)
    // with the principal square root. Off the slit, 1 + (h/u)^2 avoids the
    // negative real axis, so the principal branch is analytic there and the
    // product tends to u at infinity.
    Cplx w = pr.size / u;
    return pr.x0 + u * std::sqrt(1.0 + w * w);
}

Cplx HullMap::prim_deriv(const Prim& pr, Cplx z) {
    check_domain(pr, z);
    Cplx u = z - pr.x0;
    if (pr.kind == Prim::Kind::Semidisk) return 1.0 - pr.size * pr.size / (u * u);
    Cplx w = pr.size / u;
    // d/dz sqrt(u^2 + h^2) = u / sqrt(u^2 + h^2) = 1 / sqrt(1 + (h/u)^2).
    return 1.0 / std::sqrt(1.0 + w * w);
}

Cplx HullMap::map(Cplx z) const {
    for (const Prim& pr : prims_) z = prim_map(pr, z);
    return z;
}

Cplx HullMap::derivative(Cplx z) const {
    Cplx d = 1.0;
    for (const Prim& pr : prims_) {
        d *= prim_deriv(pr, z);
        z = prim_map(pr, z);
    }
    return d;
}

bool HullMap::hits_polyline(std::span<const Vec2> pts) const {
    std::vector<Vec2> cur(pts.begin(), pts.end());
    for (const Prim& pr : prims_) {
        if (pr.kind == Prim::Kind::Slit) {
            SlitHull h(pr.x0, pr.size);
            for (std::size_t k = 0; k + 1 < cur.size(); ++k)
                if (h.hits_segment(cur[k], cur[k + 1])) return true;
        } else {
            SemidiskHull h(pr.x0, pr.size);
            for (std::size_t k = 0; k + 1 < cur.size(); ++k)
                if (h.hits_segment(cur[k], cur[k + 1])) return true;
        }
        for (Vec2& v : cur) {
            Cplx w = prim_map(pr, Cplx(v.x, v.y));
            v = {w.real(), w.imag()};
        }
    }
    return false;
}

double avoid_probability_slit(double x0, double h) {
    if (!(h > 0.0)) throw std::invalid_argument("avoid_probability: slit height must be positive");
    if (x0 == 0.0) throw std::invalid_argument("avoid_probability: hull touches the origin");
    // f'(0) = 1/sqrt(1 + (h/x0)^2) = |x0| / sqrt(x0^2 + h^2).
    double w = h / x0;
    return 1.0 / std::sqrt(1.0 + w * w);
}

double avoid_probability_semidisk(double x0, double r) {
    if (!(r > 0.0)) throw std::invalid_argument("avoid_probability: radius must be positive");
    if (std::abs(x0) <= r) throw std::invalid_argument("avoid_probability: hull touches the origin");
    return 1.0 - (r * r) / (x0 * x0);
}

double avoid_probability(const Hull& A) {
    if (const auto* s = dynamic_cast<const SlitHull*>(&A))
        return avoid_probability_slit(s->x0(), s->h());
    if (const auto* d = dynamic_cast<const SemidiskHull*>(&A))
        return avoid_probability_semidisk(d->x0(), d->r());
    throw std::invalid_argument("avoid_probability: needs an analytic hull");
}

Path f_transform(const HullMap& m, const Path& p) {
    const std::size_t n = p.n();
    const auto& pts = p.points();
    if (m.hits_polyline(pts))
        throw std::domain_error("f_transform: the path touches the removed hull");

    // Map every vertex, measure every step's duration in transformed time.
    std::vector<Cplx> image(n + 1);
    for (std::size_t k = 0; k <= n; ++k)
        image[k] = m.map(Cplx(pts[k].x, pts[k].y));
    Cplx origin = image[0];

    std::vector<double> s(n + 1, 0.0);  // cumulative transformed time
    for (std::size_t k = 0; k < n; ++k) {
        Cplx mid(0.5 * (pts[k].x + pts[k + 1].x), 0.5 * (pts[k].y + pts[k + 1].y));
        double speed = std::abs(m.derivative(mid));
        s[k + 1] = s[k] + speed * speed * p.dt();
    }
    const double total = s[n];

    if (n == 0) return Path({{0.0, 0.0}}, p.dt(), {p.meta().seed, Scheme::Transformed,
                                                   p.meta().truncated});

    // Re-grid onto a uniform step by linear interpolation in transformed
    // time; the image is shifted so the path starts at the origin.
    const double dt_out = total / double(n);
    std::vector<Vec2> out(n + 1);
    out[0] = {0.0, 0.0};
    std::size_t k = 0;
    for (std::size_t mth = 1; mth < n; ++mth) {
        double u = double(mth) * dt_out;
        while (k + 1 < n && s[k + 1] < u) ++k;
        double span = s[k + 1] - s[k];
        double t = span > 0.0 ? (u - s[k]) / span : 0.0;
        Cplx q = image[k] + t * (image[k + 1] - image[k]) - origin;
        out[mth] = {q.real(), q.imag()};
    }
    Cplx last = image[n] - origin;
    out[n] = {last.real(), last.imag()};

    return Path(std::move(out), dt_out, {p.meta().seed, Scheme::Transformed,
                                         p.meta().truncated});
}

}  // namespace beadsim
