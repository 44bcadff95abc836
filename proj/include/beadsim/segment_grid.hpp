#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "beadsim/vec2.hpp"

namespace beadsim {

// Uniform hash grid over segment bounding boxes. Built once for a polyline;
// segment i is [pts[i], pts[i+1]]. The cell size is 4x the median segment
// length, so a typical segment touches one or two cells. Queries enumerate
// every segment whose bounding box shares a cell with the query box, which is
// a superset of every segment actually intersecting it.
class SegmentGrid {
  public:
    explicit SegmentGrid(std::span<const Vec2> pts);

    double cell_size() const { return cell_; }
    std::size_t segment_count() const { return nseg_; }

    // Candidate segment indices for the box of [a, b], deduplicated, sorted.
    std::vector<std::uint32_t> query(Vec2 a, Vec2 b) const;

    // Low-level visitation: calls f(seg_index) for each candidate, possibly
    // more than once when boxes span several shared cells. Callers that care
    // deduplicate themselves (cheaper than doing it here in hot loops).
    template <typename F>
    void for_candidates(Vec2 a, Vec2 b, F&& f) const {
        std::int64_t x0, y0, x1, y1;
        cell_range(a, b, x0, y0, x1, y1);
        for (std::int64_t cy = y0; cy <= y1; ++cy)
            for (std::int64_t cx = x0; cx <= x1; ++cx) {
                const std::int64_t slot = find_slot(cx, cy);
                if (slot < 0) continue;
                for (std::int32_t e = head_[std::size_t(slot)]; e >= 0;
                     e = next_[std::size_t(e)])
                    f(seg_of_entry_[std::size_t(e)]);
            }
    }

  private:
    void cell_range(Vec2 a, Vec2 b, std::int64_t& x0, std::int64_t& y0, std::int64_t& x1,
                    std::int64_t& y1) const;
    std::int64_t find_slot(std::int64_t cx, std::int64_t cy) const;

    double cell_ = 1.0;
    std::size_t nseg_ = 0;
    std::size_t mask_ = 0;  // table size - 1 (power of two)
    std::vector<std::uint64_t> key_;
    std::vector<char> used_;
    std::vector<std::int32_t> head_;
    std::vector<std::int32_t> next_;
    std::vector<std::uint32_t> seg_of_entry_;
};

}  // namespace beadsim
