#include <doctest.h>

#include <cmath>
#include <regex>
#include <set>
#include <sstream>

#include "bmo/config.hpp"
#include "bmo/svg.hpp"

using namespace bmo;

namespace {

std::size_t count(const std::string& s, const std::string& needle)
{
    std::size_t n = 0;
    for (std::size_t at = s.find(needle); at != std::string::npos; at = s.find(needle, at + 1)) ++n;
    return n;
}

struct Pt {
    double x, y;
};

std::vector<std::vector<Pt>> polylines(const std::string& svg)
{
    std::vector<std::vector<Pt>> out;
    const std::regex line("<polyline[^>]*points=\"([^\"]*)\"");
    for (auto it = std::sregex_iterator(svg.begin(), svg.end(), line); it != std::sregex_iterator(); ++it) {
        std::vector<Pt> pts;
        std::istringstream is((*it)[1].str());
        std::string tok;
        while (is >> tok) {
            const auto comma = tok.find(',');
            pts.push_back({std::stod(tok.substr(0, comma)), std::stod(tok.substr(comma + 1))});
        }
        out.push_back(pts);
    }
    return out;
}

}  // namespace

TEST_CASE("single stationary agent: one degenerate polyline and a bounds rectangle")
{
    Trace t;
    for (std::size_t r = 0; r < 5; ++r) {
        IterationRecord rec;
        rec.iter = r;
        rec.agents.push_back(AgentRecord{Vec{2.0, 3.0}, 1.0, 1.0, 0.0, std::nullopt});
        t.records.push_back(rec);
    }
    const std::string svg = render_svg(t);
    CHECK(count(svg, "<polyline") == 1);
    CHECK(count(svg, "<rect") == 1);
    const auto lines = polylines(svg);
    REQUIRE(lines.size() == 1);
    REQUIRE(lines[0].size() == 5);
    for (const Pt& p : lines[0]) {
        CHECK(p.x == lines[0][0].x);
        CHECK(p.y == lines[0][0].y);
    }
    CHECK(render_svg(t) == svg);
}

TEST_CASE("one hue per agent")
{
    Trace t;
    IterationRecord rec;
    for (int i = 0; i < 6; ++i) rec.agents.push_back(AgentRecord{Vec{double(i), 0.0}, 0, 0, 0, std::nullopt});
    t.records = {rec, rec};
    const std::string svg = render_svg(t);
    const std::regex hue("stroke=\"hsl\\(([0-9.]+),");
    std::set<std::string> hues;
    for (auto it = std::sregex_iterator(svg.begin(), svg.end(), hue); it != std::sregex_iterator(); ++it)
        hues.insert((*it)[1].str());
    CHECK(hues.size() == 6);
}

TEST_CASE("four-bot paths end inside the source's capture marker")
{
    const ExperimentConfig cfg = load_config(std::filesystem::path(BMO_CONFIG_DIR) / "four_bot.yaml");
    Trace t = simulate(cfg.scenario_for(1, std::nullopt));
    t.config = cfg.single_run_config(1, std::nullopt);
    const PlotFrame frame = frame_for(t);
    REQUIRE(frame.markers.size() == 1);
    CHECK(frame.markers[0] == Vec{5.0, 5.0});
    CHECK(frame.marker_radius == 0.5);

    const std::string svg = render_svg(t, frame);
    CHECK(svg == render_svg(t));
    const std::regex marker("<circle cx=\"([0-9.]+)\" cy=\"([0-9.]+)\" r=\"([0-9.]+)\" fill=\"none\"");
    std::smatch m;
    REQUIRE(std::regex_search(svg, m, marker));
    const double cx = std::stod(m[1]), cy = std::stod(m[2]), r = std::stod(m[3]);
    const auto lines = polylines(svg);
    REQUIRE(lines.size() == 4);
    for (const auto& line : lines) {
        REQUIRE(line.size() == t.records.size());
        CHECK(std::hypot(line.back().x - cx, line.back().y - cy) <= r);
    }
}
