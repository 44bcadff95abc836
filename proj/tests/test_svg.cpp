#include <doctest.h>

#include <string>

#include "beadsim/cuttimes.hpp"
#include "beadsim/samplers.hpp"
#include "beadsim/svg.hpp"

using namespace beadsim;

TEST_CASE("svg: structure, layering, and viewport") {
    const Path p = sample_excursion(400, 1e-3, SeedSequence(5150));
    const CutSet cuts = find_cut_vertices(p.points());
    const std::string svg = render_path_svg(p, cuts);

    CHECK(svg.rfind("<?xml", 0) == 0);
    CHECK(svg.find("<svg") != std::string::npos);
    CHECK(svg.find("</svg>") != std::string::npos);
    CHECK(svg.find("<polyline") != std::string::npos);

    // one dot per cut vertex, all drawn after the path so they sit on top
    std::size_t n_circles = 0;
    for (std::size_t at = svg.find("<circle"); at != std::string::npos;
         at = svg.find("<circle", at + 1))
        ++n_circles;
    CHECK(n_circles == cuts.indices.size());
    if (!cuts.indices.empty())
        CHECK(svg.find("<polyline") < svg.find("<circle"));

    // the baseline spans the viewport on the real axis
    CHECK(svg.find("<line") != std::string::npos);
}

TEST_CASE("svg: well-formed XML") {
    const Path p = sample_excursion(200, 1e-3, SeedSequence(77));
    const CutSet cuts = find_cut_vertices(p.points());
    const std::string svg = render_path_svg(p, cuts);

    // cheap well-formedness scan: tags balance and attributes are quoted
    int depth = 0;
    for (std::size_t i = 0; i < svg.size(); ++i) {
        if (svg[i] != '<') continue;
        if (svg.compare(i, 2, "<?") == 0) continue;
        const std::size_t close = svg.find('>', i);
        REQUIRE(close != std::string::npos);
        if (svg[i + 1] == '/')
            --depth;
        else if (svg[close - 1] != '/')
            ++depth;
        REQUIRE(depth >= 0);
    }
    CHECK(depth == 0);

    std::size_t quotes = 0;
    for (char c : svg)
        if (c == '"') ++quotes;
    CHECK(quotes % 2 == 0);
}

TEST_CASE("svg: rejects mismatched cut set and bad width") {
    const Path p = sample_excursion(100, 1e-3, SeedSequence(3));
    CutSet wrong;
    wrong.n = 9999;
    wrong.indices = {4};
    CHECK_THROWS_AS(render_path_svg(p, wrong), std::invalid_argument);
    CHECK_THROWS_AS(render_path_svg(p, find_cut_vertices(p.points()), -1.0),
                    std::invalid_argument);
}

TEST_CASE("svg: deterministic output") {
    const Path p = sample_excursion(300, 1e-3, SeedSequence(11));
    const CutSet cuts = find_cut_vertices(p.points());
    CHECK(render_path_svg(p, cuts) == render_path_svg(p, cuts));
}
