#pragma once

// The four phases of Butterfly Mating Optimization and their composition.
//
// One iteration, all phases reading the start-of-step snapshot:
//   (a) UV update        uv_i <- (1 - rho) uv_i + gamma J_i
//   (b) UV distribution  r_ij = uv_j exp(-d_ij / lambda_d)
//   (c) l-mate selection among agents fitter than i by more than fitness_eps,
//                        weighted by r_ij (argmax or roulette)
//   (d) movement         step_size towards the l-mate, snapping onto it when closer

#include <cstddef>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "bmo/field.hpp"
#include "bmo/params.hpp"
#include "bmo/rng.hpp"
#include "bmo/trace.hpp"
#include "bmo/types.hpp"

namespace bmo {

struct Bfly {
    std::size_t id = 0;
    Vec position;
    double uv = 0.0;
    double fitness = 0.0;  ///< last evaluated (measured) signal strength
    std::optional<std::size_t> lmate;

    bool operator==(const Bfly&) const = default;
};

struct SwarmState {
    std::size_t iter = 0;
    std::vector<Bfly> agents;

    std::size_t size() const { return agents.size(); }

    /// Positions in structure-of-arrays layout (coords[k * n + i]).
    std::vector<double> coords() const;

    /// Throws ContractViolation unless ids are 0..n-1 in order and
    /// dimensions agree.
    void validate() const;

    bool operator==(const SwarmState&) const = default;
};

/// Received UV: at(i, j) is agent j's UV as received by agent i.
class ReceivedUv {
public:
    ReceivedUv() = default;
    explicit ReceivedUv(std::size_t n) : n_(n), r_(n * n, 0.0) {}

    std::size_t size() const { return n_; }
    double at(std::size_t i, std::size_t j) const { return r_[i * n_ + j]; }
    double& at(std::size_t i, std::size_t j) { return r_[i * n_ + j]; }
    std::span<const double> row(std::size_t i) const { return {r_.data() + i * n_, n_}; }

private:
    std::size_t n_ = 0;
    std::vector<double> r_;
};

/// Phase (a). Returns the new UV per agent.
std::vector<double> uv_update(const SwarmState& state, std::span<const double> fitness, const BmoParams& params);

/// Phase (b), using each agent's current uv.
ReceivedUv uv_distribution(const SwarmState& state, const BmoParams& params);

/// Phase (c) for one agent. Candidates are taken from each agent's `fitness`.
/// In stochastic mode exactly one uniform draw is consumed from `rng`, even
/// when there are no candidates, so the stream stays aligned across agents.
std::optional<std::size_t> lmate_select(std::size_t agent_index, const SwarmState& state, const ReceivedUv& received,
                                        Rng& rng, const BmoParams& params);

/// Phase (d). Agents without an l-mate stay put; results are clamped to bounds.
std::vector<Vec> movement(const SwarmState& state, std::span<const std::optional<std::size_t>> lmates,
                          const Box& bounds, const BmoParams& params);

/// Additive Gaussian sensor noise on the fitness fed to phase (a):
/// J_meas = max(0, J_true + sigma * N(0, 1)).
struct SensorNoise {
    double sigma = 0.0;
    Rng* rng = nullptr;  ///< required when sigma > 0
};

struct StepResult {
    SwarmState state;
    IterationRecord record;
};

/// One synchronous iteration: evaluate the field at time state.iter, then
/// phases (a) to (d). Throws RunError on a non-finite field value.
StepResult bmo_step(const SwarmState& state, const FitnessField& field, Rng& rng, const BmoParams& params,
                    SensorNoise sensor = {});

/// Initial placement: uniform within bounds from the run seed, or explicit.
struct UniformInit {};
struct ExplicitInit {
    std::vector<Vec> positions;
};
using InitSpec = std::variant<UniformInit, ExplicitInit>;

/// Builds iteration 0: agents placed, uv = 0, fitness evaluated at t = 0.
/// Throws ContractViolation for out-of-bounds or miscounted explicit positions.
SwarmState initial_state(const FitnessField& field, const BmoParams& params, const InitSpec& init);

/// Runs max_iters iterations. The trace holds the initial state plus one
/// record per iteration and embeds params and field identity as metadata.
Trace run(const FitnessField& field, const BmoParams& params, const InitSpec& init, double sensor_sigma = 0.0);

/// Record of a state as stored in traces (true and measured fitness equal).
IterationRecord snapshot(const SwarmState& state);

}  // namespace bmo
