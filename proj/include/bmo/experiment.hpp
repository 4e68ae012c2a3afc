#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "bmo/analysis.hpp"
#include "bmo/config.hpp"

namespace bmo {

/// Output directory could not be created or written.
class OutputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Figures of merit for one run.
struct RunSummary {
    std::uint64_t seed = 0;
    std::optional<std::string> sweep_parameter;
    std::optional<double> sweep_value;
    std::string trace_file;

    std::optional<CaptureReport> capture;  ///< none when the field has no known peaks
    std::size_t n_clusters = 0;            ///< single-linkage at capture_radius, final state
    double uv_mean = 0, uv_min = 0, uv_max = 0, uv_std = 0;
    double fitness_mean = 0, fitness_min = 0, fitness_max = 0, fitness_std = 0;
    std::optional<double> mean_turning_angle;  ///< mean over agents; none for traces under three records
    std::optional<double> mean_path_ratio;     ///< mean over agents with a defined ratio
    double mean_lmate_switch_rate = 0;
    std::optional<std::size_t> co_location_step;
};

/// Computes every metric of a run from its trace.
RunSummary summarize(const Trace& trace, const Scenario& scenario, const AnalysisSpec& analysis);

/// Serializes summaries as a JSON document {"runs": [...]}.
std::string summaries_to_json(const std::vector<RunSummary>& runs);

struct RunOptions {
    std::optional<std::filesystem::path> out_dir;  ///< overrides output.dir
    std::optional<std::uint64_t> seed_override;    ///< replaces the seed list
    unsigned threads = 0;                          ///< 0: hardware concurrency
    bool quiet = false;
};

struct ExperimentResult {
    std::vector<RunSummary> runs;  ///< ordered by (sweep index, seed position)
    std::vector<std::filesystem::path> files;
};

/// Runs every (sweep value x seed) combination, writing one trace per run,
/// optional SVGs, and one summary.json. Runs may execute concurrently; the
/// outputs do not depend on scheduling.
ExperimentResult run_experiment(const ExperimentConfig& config, const RunOptions& options = {});

/// Trace file name for one run, e.g. "trace_seed-3.csv" or
/// "trace_step_size-2_seed-3.csv" (sweep index, not value).
std::string trace_file_name(const ExperimentConfig& config, std::uint64_t seed,
                            std::optional<std::size_t> sweep_index);

/// Co-location target for a scenario; none when "source" is requested but
/// the field does not have exactly one known peak at the final step.
std::optional<CoLocationTarget> resolve_co_location(const Scenario& scenario, const AnalysisSpec& analysis);

}  // namespace bmo
