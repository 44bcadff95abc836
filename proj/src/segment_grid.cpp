#include "beadsim/segment_grid.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "beadsim/rng.hpp"

namespace beadsim {

namespace {

std::uint64_t cell_key(std::int64_t cx, std::int64_t cy) {
    // Interleave-free packing; mix64 scatters it over the table.
    return (std::uint64_t(cx) << 32) ^ (std::uint64_t(cy) & 0xffffffffull) ^ 0x9e3779b97f4a7c15ull;
}

}  // namespace

SegmentGrid::SegmentGrid(std::span<const Vec2> pts) {
    nseg_ = pts.size() >= 2 ? pts.size() - 1 : 0;
    if (nseg_ == 0) {
        mask_ = 0;
        used_.assign(1, 0);
        key_.assign(1, 0);
        head_.assign(1, -1);
        return;
    }

    std::vector<double> lens(nseg_);
    for (std::size_t i = 0; i < nseg_; ++i) lens[i] = dist(pts[i], pts[i + 1]);
    std::vector<double> tmp = lens;
    std::nth_element(tmp.begin(), tmp.begin() + tmp.size() / 2, tmp.end());
    double median = tmp[tmp.size() / 2];
    if (median <= 0.0) median = *std::max_element(lens.begin(), lens.end());
    cell_ = median > 0.0 ? 4.0 * median : 1.0;

    // Count cell entries, then build the open-addressed table and chains.
    std::size_t entries = 0;
    for (std::size_t i = 0; i < nseg_; ++i) {
        std::int64_t x0, y0, x1, y1;
        cell_range(pts[i], pts[i + 1], x0, y0, x1, y1);
        entries += std::size_t(x1 - x0 + 1) * std::size_t(y1 - y0 + 1);
    }
    const std::size_t table = std::bit_ceil(std::max<std::size_t>(16, 2 * entries));
    mask_ = table - 1;
    key_.assign(table, 0);
    used_.assign(table, 0);
    head_.assign(table, -1);
    next_.reserve(entries);
    seg_of_entry_.reserve(entries);

    for (std::size_t i = 0; i < nseg_; ++i) {
        std::int64_t x0, y0, x1, y1;
        cell_range(pts[i], pts[i + 1], x0, y0, x1, y1);
        for (std::int64_t cy = y0; cy <= y1; ++cy)
            for (std::int64_t cx = x0; cx <= x1; ++cx) {
                const std::uint64_t key = cell_key(cx, cy);
                std::size_t slot = std::size_t(mix64(key)) & mask_;
                while (used_[slot] && key_[slot] != key) slot = (slot + 1) & mask_;
                if (!used_[slot]) {
                    used_[slot] = 1;
                    key_[slot] = key;
                }
                next_.push_back(head_[slot]);
                seg_of_entry_.push_back(std::uint32_t(i));
                head_[slot] = std::int32_t(next_.size() - 1);
            }
    }
}

void SegmentGrid::cell_range(Vec2 a, Vec2 b, std::int64_t& x0, std::int64_t& y0,
                             std::int64_t& x1, std::int64_t& y1) const {
    x0 = std::int64_t(std::floor(std::min(a.x, b.x) / cell_));
    x1 = std::int64_t(std::floor(std::max(a.x, b.x) / cell_));
    y0 = std::int64_t(std::floor(std::min(a.y, b.y) / cell_));
    y1 = std::int64_t(std::floor(std::max(a.y, b.y) / cell_));
}

std::int64_t SegmentGrid::find_slot(std::int64_t cx, std::int64_t cy) const {
    const std::uint64_t key = cell_key(cx, cy);
    std::size_t slot = std::size_t(mix64(key)) & mask_;
    while (used_[slot]) {
        if (key_[slot] == key) return std::int64_t(slot);
        slot = (slot + 1) & mask_;
    }
    return -1;
}

std::vector<std::uint32_t> SegmentGrid::query(Vec2 a, Vec2 b) const {
    std::vector<std::uint32_t> out;
    for_candidates(a, b, [&](std::uint32_t s) { out.push_back(s); });
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

}  // namespace beadsim
