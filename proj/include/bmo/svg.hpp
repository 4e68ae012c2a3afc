#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bmo/trace.hpp"
#include "bmo/types.hpp"

namespace bmo {

struct PlotFrame {
    Box bounds;                 ///< plotted region (x0, x1)
    std::vector<Vec> markers;   ///< peak or source positions
    double marker_radius = 0;   ///< capture radius drawn around markers; 0 for none
};

/// Frame from the trace's embedded config (bounds, known peaks at the last
/// step, capture radius). Traces without a config get the padded bounding box
/// of their positions and no markers.
PlotFrame frame_for(const Trace& trace);

/// Static path plot: a bounds rectangle, one polyline per agent in distinct
/// hues, and circle markers. Output is a pure function of the inputs.
std::string render_svg(const Trace& trace, const PlotFrame& frame);

inline std::string render_svg(const Trace& trace) { return render_svg(trace, frame_for(trace)); }

}  // namespace bmo
