#include "beadsim/svg.hpp"

#include <algorithm>
#include <cstdio>
#include <stdexcept>

namespace beadsim {

namespace {

void append_num(std::string& out, double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    out += buf;
}

}  // namespace

std::string render_path_svg(const Path& p, const CutSet& cuts, double width_px) {
    if (!cuts.indices.empty() && cuts.n != p.n())
        throw std::invalid_argument("svg: cut set belongs to a different path");
    if (!(width_px > 0.0)) throw std::invalid_argument("svg: width must be positive");

    const std::vector<Vec2>& pts = p.points();
    double min_x = 0.0, max_x = 0.0, max_y = 0.0;
    for (const Vec2& q : pts) {
        min_x = std::min(min_x, q.x);
        max_x = std::max(max_x, q.x);
        max_y = std::max(max_y, q.y);
    }

    // Region [min_x, max_x] x [0, max_y] with 5% margins on every side;
    // degenerate extents get a unit span so a single point still renders.
    double span_x = max_x - min_x, span_y = max_y;
    if (!(span_x > 0.0)) span_x = 1.0;
    if (!(span_y > 0.0)) span_y = 1.0;
    const double mx = 0.05 * span_x, my = 0.05 * span_y;
    const double x0 = min_x - mx, x1 = max_x + mx;
    const double y1 = max_y + my;  // top of the drawn region; bottom is -my
    const double scale = width_px / (x1 - x0);
    const double height_px = (y1 + my) * scale;

    // SVG's y axis points down; the half-plane's points up.
    auto sx = [&](double x) { return (x - x0) * scale; };
    auto sy = [&](double y) { return (y1 - y) * scale; };

    std::string out;
    out.reserve(64 * pts.size() + 1024);
    out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"";
    append_num(out, width_px);
    out += "\" height=\"";
    append_num(out, height_px);
    out += "\" viewBox=\"0 0 ";
    append_num(out, width_px);
    out += " ";
    append_num(out, height_px);
    out += "\">\n";

    // Real-axis baseline across the full width.
    out += "<line x1=\"0\" y1=\"";
    append_num(out, sy(0.0));
    out += "\" x2=\"";
    append_num(out, width_px);
    out += "\" y2=\"";
    append_num(out, sy(0.0));
    out += "\" stroke=\"#888888\" stroke-width=\"1\"/>\n";

    out += "<polyline fill=\"none\" stroke=\"#1f4e9c\" stroke-width=\"1\" points=\"";
    for (std::size_t k = 0; k < pts.size(); ++k) {
        if (k) out += ' ';
        append_num(out, sx(pts[k].x));
        out += ',';
        append_num(out, sy(pts[k].y));
    }
    out += "\"/>\n";

    // Cut vertices drawn after the polyline so they sit above it.
    const double r = std::max(2.0, 0.004 * width_px);
    for (std::uint32_t k : cuts.indices) {
        out += "<circle cx=\"";
        append_num(out, sx(pts[k].x));
        out += "\" cy=\"";
        append_num(out, sy(pts[k].y));
        out += "\" r=\"";
        append_num(out, r);
        out += "\" fill=\"#c22f2f\"/>\n";
    }
    out += "</svg>\n";
    return out;
}

}  // namespace beadsim
