#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bmo/types.hpp"

namespace bmo {

struct AgentRecord {
    Vec position;
    double fitness_true = 0.0;
    double fitness_meas = 0.0;  ///< equals fitness_true for noise-free runs
    double uv = 0.0;
    std::optional<std::size_t> lmate;

    bool operator==(const AgentRecord&) const = default;
};

/// Swarm state after one iteration (record 0 is the initial state). Positions
/// are post-move; fitness, uv and lmate are the values the step computed from
/// the positions it started at.
struct IterationRecord {
    std::size_t iter = 0;
    std::vector<AgentRecord> agents;

    bool operator==(const IterationRecord&) const = default;
};

/// Append-only run history plus self-describing metadata.
struct Trace {
    std::size_t dim = 2;
    std::vector<std::pair<std::string, std::string>> metadata;  ///< single-line key/value pairs
    std::string config;  ///< embedded experiment config (may be empty)
    std::vector<IterationRecord> records;

    std::size_t n_agents() const { return records.empty() ? 0 : records.front().agents.size(); }
    std::optional<std::string> meta(const std::string& key) const;
    void set_meta(const std::string& key, std::string value);

    bool operator==(const Trace&) const = default;
};

/// Trace CSV layout:
///
///   # bmo-trace 1
///   # key: value            (metadata, one per line)
///   #| config line          (embedded config, verbatim)
///   iter,agent_id,x0,x1[,x2],fitness_true,fitness_meas,uv,lmate
///   0,0,...
///
/// Reals are printed with 17 significant digits, so reading back is exact.
void write_trace(std::ostream& os, const Trace& trace);
Trace read_trace(std::istream& is);

/// Writes to a temporary sibling and renames it into place.
void write_trace_file(const std::filesystem::path& path, const Trace& trace);
Trace read_trace_file(const std::filesystem::path& path);

/// Atomically replaces `path` with `content`.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

/// Formats a double with 17 significant digits ("%.17g").
std::string format_real(double v);

}  // namespace bmo
