#pragma once

#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "beadsim/vec2.hpp"

namespace beadsim {

// How a path came to be; carried in the metadata so downstream consumers can
// tell censored samples and derived paths from plain ones.
enum class Scheme : std::uint8_t {
    Excursion,         // (x, y) = (Brownian motion, 3-D Bessel) on a uniform grid
    ExcursionToHeight, // same, stopped at the first grid time with y >= y_max
    Scaled,            // Brownian-scaled copy of another path
    Transformed,       // image under a hull map, re-gridded to uniform dt
    FromFile,          // loaded from a BBPATH01 file
    Synthetic,         // hand-built (tests, tools)
};

struct PathMeta {
    std::uint64_t seed = 0;
    Scheme scheme = Scheme::Synthetic;
    bool truncated = false;  // step cap hit before the stopping rule fired
};

// A sampled upper-half-plane path on a uniform time grid: points[k] is the
// position at time k*dt. Immutable after construction. Invariants: dt > 0,
// points[0] = (0,0), and y > 0 for every later vertex.
class Path {
  public:
    Path() = default;
    Path(std::vector<Vec2> points, double dt, PathMeta meta)
        : points_(std::move(points)), dt_(dt), meta_(meta) {
        if (points_.empty()) throw std::invalid_argument("Path: needs at least one point");
        if (!(dt_ > 0.0)) throw std::invalid_argument("Path: dt must be positive");
        if (points_[0] != Vec2{0.0, 0.0})
            throw std::invalid_argument("Path: must start at the origin");
        for (std::size_t k = 1; k < points_.size(); ++k)
            if (!(points_[k].y > 0.0))
                throw std::invalid_argument("Path: interior vertices must have y > 0");
    }

    // Number of steps; the path has n()+1 vertices.
    std::size_t n() const { return points_.size() - 1; }
    double dt() const { return dt_; }
    double duration() const { return double(n()) * dt_; }
    const PathMeta& meta() const { return meta_; }

    Vec2 point(std::size_t k) const { return points_[k]; }
    const std::vector<Vec2>& points() const { return points_; }

  private:
    std::vector<Vec2> points_;
    double dt_ = 1.0;
    PathMeta meta_;
};

}  // namespace beadsim
