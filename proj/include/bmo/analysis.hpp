#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "bmo/trace.hpp"
#include "bmo/types.hpp"

namespace bmo {

/// Peak occupancy at the final recorded state.
struct CaptureReport {
    std::vector<std::size_t> counts;  ///< agents within radius, per peak
    std::vector<bool> captured;       ///< counts[k] >= min_count
    bool all_captured = false;
};

CaptureReport peak_capture(const Trace& trace, std::span<const Vec> peaks, double radius, std::size_t min_count);

/// Per-iteration mean, min, max and population standard deviation.
struct SeriesStats {
    std::vector<double> mean, min, max, stddev;
};

struct ConvergenceSeries {
    SeriesStats uv;
    SeriesStats fitness_meas;
};

ConvergenceSeries uv_convergence(const Trace& trace);

struct PathSmoothness {
    double mean_turning_angle = 0.0;  ///< radians; 0 when fewer than two moving segments
    std::optional<double> path_ratio;  ///< path length / net displacement; none when displacement is 0
};

/// One entry per agent. Needs at least three records; zero-length segments
/// are skipped when measuring turns.
std::vector<PathSmoothness> path_smoothness(const Trace& trace);

/// Per-agent fraction of consecutive iterations whose l-mate changed
/// (gaining or losing an l-mate counts). Record 0 carries no l-mate and is
/// excluded.
std::vector<double> lmate_variation(const Trace& trace);

/// Single-linkage clusters at threshold `radius`: two points closer than or
/// at `radius` share a cluster. Clusters are ordered by their smallest index
/// and list indices ascending.
std::vector<std::vector<std::size_t>> cluster_detect(std::span<const Vec> positions, double radius);

/// Spearman rank correlation with average ranks for ties. Returns 0 when
/// either input is constant.
double spearman(std::span<const double> x, std::span<const double> y);

}  // namespace bmo
