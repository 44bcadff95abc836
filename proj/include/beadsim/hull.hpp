#pragma once

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <vector>

#include "beadsim/vec2.hpp"

namespace beadsim {

struct BBox {
    double min_x = 0.0, min_y = 0.0, max_x = 0.0, max_y = 0.0;
};

// A compact obstacle attached to the real axis, seen from the upper half
// plane. Walk-on-spheres needs four things from it: the distance from a
// point, whether a segment hits it, its diameter, and its bounding box.
class Hull {
  public:
    virtual ~Hull() = default;

    // Euclidean distance from p to the hull (0 when p is on or inside it).
    virtual double dist(Vec2 p) const = 0;

    // Whether the closed segment [a, b] meets the hull.
    virtual bool hits_segment(Vec2 a, Vec2 b) const = 0;

    // Max pairwise extent. Union hulls may round up to the box diagonal.
    virtual double diameter() const = 0;

    virtual BBox bbox() const = 0;
};

// Vertical segment from (x0, 0) up to (x0, h).
class SlitHull final : public Hull {
  public:
    SlitHull(double x0, double h) : x0_(x0), h_(h) {
        if (!(h > 0.0)) throw std::invalid_argument("SlitHull: height must be positive");
    }
    double dist(Vec2 p) const override;
    bool hits_segment(Vec2 a, Vec2 b) const override;
    double diameter() const override { return h_; }
    BBox bbox() const override { return {x0_, 0.0, x0_, h_}; }
    double x0() const { return x0_; }
    double h() const { return h_; }

  private:
    double x0_, h_;
};

// Upper half of the disk of radius r centred at (x0, 0), boundary included.
class SemidiskHull final : public Hull {
  public:
    SemidiskHull(double x0, double r) : x0_(x0), r_(r) {
        if (!(r > 0.0)) throw std::invalid_argument("SemidiskHull: radius must be positive");
    }
    double dist(Vec2 p) const override;
    bool hits_segment(Vec2 a, Vec2 b) const override;
    double diameter() const override { return 2.0 * r_; }
    BBox bbox() const override { return {x0_ - r_, 0.0, x0_ + r_, r_}; }
    double x0() const { return x0_; }
    double r() const { return r_; }

  private:
    double x0_, r_;
};

// A contiguous run of polyline segments treated as a hull (the path image is
// the obstacle). Distance queries go through a bounding-volume tree over the
// segment index range, so a million-segment path still answers quickly, and
// any prefix of the same path can be queried from the same tree.
class PolylineHull final : public Hull {
  public:
    // Hull over segments [first_seg, last_seg] of the polyline, inclusive.
    PolylineHull(std::shared_ptr<const std::vector<Vec2>> pts, std::size_t first_seg,
                 std::size_t last_seg);

    double dist(Vec2 p) const override;
    bool hits_segment(Vec2 a, Vec2 b) const override;
    double diameter() const override { return diam_; }
    BBox bbox() const override;

    // Distance restricted to segments [first_seg, limit_seg] (inclusive,
    // clamped to last_seg); the tree stores contiguous index ranges, so a
    // prefix query just prunes sub-trees that start beyond the limit. When
    // nearest is given it receives the index of the closest segment.
    double dist_prefix(Vec2 p, std::size_t limit_seg, std::size_t* nearest = nullptr) const;

    std::size_t first_seg() const { return first_; }
    std::size_t last_seg() const { return last_; }

  private:
    struct Node {
        double min_x, min_y, max_x, max_y;
        std::uint32_t begin, end;  // segment index range [begin, end)
        std::int32_t left = -1, right = -1;
    };
    int build(std::uint32_t begin, std::uint32_t end);
    double box_dist(const Node& nd, Vec2 p) const;
    bool box_overlaps(const Node& nd, Vec2 a, Vec2 b) const;

    std::shared_ptr<const std::vector<Vec2>> pts_;
    std::size_t first_, last_;
    std::vector<Node> nodes_;
    double diam_ = 0.0;
};

// Union of hulls (for multi-piece obstacles).
class UnionHull final : public Hull {
  public:
    explicit UnionHull(std::vector<std::shared_ptr<const Hull>> parts);
    double dist(Vec2 p) const override;
    bool hits_segment(Vec2 a, Vec2 b) const override;
    // Box diagonal: an upper bound within sqrt(2) of the true diameter,
    // enough for sizing walker launch heights conservatively.
    double diameter() const override;
    BBox bbox() const override { return box_; }

  private:
    std::vector<std::shared_ptr<const Hull>> parts_;
    BBox box_{};
};

// Exact diameter of a point set (convex hull + rotating calipers).
double point_set_diameter(const std::vector<Vec2>& pts, std::size_t first, std::size_t last);

}  // namespace beadsim
