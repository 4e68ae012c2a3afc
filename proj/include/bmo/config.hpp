#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "bmo/sim.hpp"

namespace bmo {

/// Invalid experiment config. what() reads "<origin>:<line>: <message>".
class ConfigError : public std::runtime_error {
public:
    ConfigError(const std::string& origin, std::size_t line, const std::string& message);
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

struct SweepAxis {
    std::string parameter;
    std::vector<double> values;
};

struct AnalysisSpec {
    enum class Target { source, mutual, point };

    std::size_t min_count = 1;
    Target co_location = Target::source;
    Vec co_location_point;
};

struct OutputSpec {
    std::filesystem::path dir = "results";
    bool trace = true;
    bool summary = true;
    bool svg = false;
};

/// A parsed experiment: one scenario, an ensemble of seeds and an optional
/// one-parameter sweep. See docs/config.md for the file schema.
struct ExperimentConfig {
    static constexpr int kSchemaVersion = 1;

    explicit ExperimentConfig(Scenario s) : scenario(std::move(s)) {}

    Scenario scenario;
    AnalysisSpec analysis;
    std::vector<std::uint64_t> seeds;
    std::optional<SweepAxis> sweep;
    OutputSpec output;
    std::string source;  ///< original config text
    std::string origin;  ///< file name used in diagnostics

    /// Scenario with the seed set and, if given, the sweep value applied.
    Scenario scenario_for(std::uint64_t seed, std::optional<std::size_t> sweep_index) const;

    /// Self-contained config text for a single run (one seed, sweep value
    /// folded into the scenario, no sweep section). Parsing it yields a config
    /// whose scenario_for(seed, none) equals scenario_for(seed, sweep_index).
    std::string single_run_config(std::uint64_t seed, std::optional<std::size_t> sweep_index) const;
};

ExperimentConfig parse_config(std::string_view text, std::string origin = "<config>");

/// Reads and parses a config file; an unreadable file is a ConfigError at line 0.
ExperimentConfig load_config(const std::filesystem::path& path);

/// Names accepted as a sweep axis.
const std::vector<std::string>& sweepable_parameters();

/// Returns a copy of `scenario` with one numeric parameter replaced.
Scenario with_parameter(Scenario scenario, const std::string& name, double value);

}  // namespace bmo
