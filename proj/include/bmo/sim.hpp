#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <variant>

#include "bmo/field.hpp"
#include "bmo/kernel.hpp"
#include "bmo/params.hpp"
#include "bmo/trace.hpp"

namespace bmo {

/// One fully specified experiment: point agents with noisy luminescence
/// sensing inside the field's bounds.
struct Scenario {
    std::string name;
    FitnessField field;
    BmoParams params;
    double sensor_sigma = 0.0;  ///< signal units, >= 0
    InitSpec init = UniformInit{};
    double capture_radius = 0.5;

    /// Throws ContractViolation on invalid params, init or radius.
    void validate() const;
};

/// Runs the kernel with measured fitness feeding phase (a). The trace records
/// both true and measured fitness. sensor_sigma = 0 reproduces run() exactly.
Trace simulate(const Scenario& scenario);

/// Target of a co-location query: a fixed position, or the swarm's own
/// centroid at each step ("mutual").
struct Mutual {};
using CoLocationTarget = std::variant<Vec, Mutual>;

/// First record index at which every agent lies within `radius` of the target.
std::optional<std::size_t> co_location_time(const Trace& trace, double radius, const CoLocationTarget& target);

/// Centroid of the agents' positions in one record.
Vec centroid(const IterationRecord& record);

/// Four bots in the corners of a 10 x 10 arena, one source at its center.
Scenario four_bot_scenario();

}  // namespace bmo
