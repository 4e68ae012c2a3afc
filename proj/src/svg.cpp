#include "bmo/svg.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

#include "bmo/config.hpp"

namespace bmo {

namespace {

constexpr double kCanvas = 600.0;
constexpr double kMargin = 20.0;

std::string num(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    return buf;
}

struct Mapper {
    Box b;
    double scale;

    explicit Mapper(const Box& bounds) : b(bounds)
    {
        const double w = b.upper[0] - b.lower[0];
        const double h = b.upper[1] - b.lower[1];
        scale = (kCanvas - 2 * kMargin) / std::max(w, h);
    }
    double x(double v) const { return kMargin + (v - b.lower[0]) * scale; }
    double y(double v) const { return kCanvas - kMargin - (v - b.lower[1]) * scale; }
};

}  // namespace

PlotFrame frame_for(const Trace& trace)
{
    PlotFrame frame;
    if (!trace.config.empty()) {
        const ExperimentConfig cfg = parse_config(trace.config, "<embedded config>");
        frame.bounds = cfg.scenario.field.bounds();
        const std::size_t last = trace.records.empty() ? 0 : trace.records.back().iter;
        if (auto peaks = cfg.scenario.field.known_peaks(last)) frame.markers = *peaks;
        frame.marker_radius = cfg.scenario.capture_radius;
        return frame;
    }

    Vec lo{0.0, 0.0}, hi{0.0, 0.0};
    bool first = true;
    for (const auto& rec : trace.records) {
        for (const auto& a : rec.agents) {
            for (std::size_t k = 0; k < 2; ++k) {
                if (first || a.position[k] < lo[k]) lo[k] = a.position[k];
                if (first || a.position[k] > hi[k]) hi[k] = a.position[k];
            }
            first = false;
        }
    }
    for (std::size_t k = 0; k < 2; ++k) {
        const double pad = hi[k] > lo[k] ? 0.05 * (hi[k] - lo[k]) : 1.0;
        lo[k] -= pad;
        hi[k] += pad;
    }
    frame.bounds = {lo, hi};
    return frame;
}

std::string render_svg(const Trace& trace, const PlotFrame& frame)
{
    const Mapper m(frame.bounds);
    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(kCanvas) << "\" height=\"" << num(kCanvas)
       << "\" viewBox=\"0 0 " << num(kCanvas) << ' ' << num(kCanvas) << "\">\n";
    os << "<rect x=\"" << num(m.x(frame.bounds.lower[0])) << "\" y=\"" << num(m.y(frame.bounds.upper[1]))
       << "\" width=\"" << num((frame.bounds.upper[0] - frame.bounds.lower[0]) * m.scale) << "\" height=\""
       << num((frame.bounds.upper[1] - frame.bounds.lower[1]) * m.scale)
       << "\" fill=\"none\" stroke=\"#000000\" stroke-width=\"1\"/>\n";

    for (const Vec& p : frame.markers) {
        if (frame.marker_radius > 0.0)
            os << "<circle cx=\"" << num(m.x(p[0])) << "\" cy=\"" << num(m.y(p[1])) << "\" r=\""
               << num(frame.marker_radius * m.scale)
               << "\" fill=\"none\" stroke=\"#555555\" stroke-dasharray=\"4 3\"/>\n";
        os << "<circle cx=\"" << num(m.x(p[0])) << "\" cy=\"" << num(m.y(p[1]))
           << "\" r=\"4.000\" fill=\"#d4a017\" stroke=\"#000000\"/>\n";
    }

    const std::size_t n = trace.n_agents();
    for (std::size_t i = 0; i < n; ++i) {
        const double hue = n ? 360.0 * static_cast<double>(i) / static_cast<double>(n) : 0.0;
        os << "<polyline fill=\"none\" stroke=\"hsl(" << num(hue) << ",70%,40%)\" stroke-width=\"1.5\" points=\"";
        for (std::size_t r = 0; r < trace.records.size(); ++r) {
            const Vec& p = trace.records[r].agents[i].position;
            os << (r ? " " : "") << num(m.x(p[0])) << ',' << num(m.y(p[1]));
        }
        os << "\"/>\n";
    }
    os << "</svg>\n";
    return os.str();
}

}  // namespace bmo
