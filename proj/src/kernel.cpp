#include "bmo/kernel.hpp"

#include <cmath>
#include <string>

#include "bmo/simd.hpp"

namespace bmo {

std::vector<double> SwarmState::coords() const
{
    const std::size_t n = agents.size();
    const std::size_t dim = n ? agents.front().position.size() : 0;
    std::vector<double> out(n * dim);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < dim; ++k) out[k * n + i] = agents[i].position[k];
    return out;
}

void SwarmState::validate() const
{
    const std::size_t dim = agents.empty() ? 0 : agents.front().position.size();
    for (std::size_t i = 0; i < agents.size(); ++i) {
        if (agents[i].id != i) throw ContractViolation("swarm state: agent ids must be 0..n-1 in order");
        if (agents[i].position.size() != dim) throw ContractViolation("swarm state: mixed position dimensions");
    }
}

std::vector<double> uv_update(const SwarmState& state, std::span<const double> fitness, const BmoParams& params)
{
    if (fitness.size() != state.size())
        throw ContractViolation("uv_update: expected " + std::to_string(state.size()) + " fitness values, got " +
                                std::to_string(fitness.size()));
    const double keep = 1.0 - params.rho;
    std::vector<double> out(state.size());
    for (std::size_t i = 0; i < state.size(); ++i) {
        const double v = keep * state.agents[i].uv + params.gamma * fitness[i];
        out[i] = v < 0.0 ? 0.0 : v;
    }
    return out;
}

ReceivedUv uv_distribution(const SwarmState& state, const BmoParams& params)
{
    const std::size_t n = state.size();
    ReceivedUv received(n);
    if (n == 0) return received;
    const std::size_t dim = state.agents.front().position.size();

    const std::vector<double> coords = state.coords();
    std::vector<double> dist(n * n);
    simd::pairwise_distances(coords, n, dim, dist);

    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            received.at(i, j) = state.agents[j].uv * std::exp(-(dist[i * n + j] / params.lambda_d));
    return received;
}

std::optional<std::size_t> lmate_select(std::size_t agent_index, const SwarmState& state, const ReceivedUv& received,
                                        Rng& rng, const BmoParams& params)
{
    const std::size_t n = state.size();
    if (agent_index >= n)
        throw ContractViolation("lmate_select: agent index " + std::to_string(agent_index) + " out of range");
    if (received.size() != n) throw ContractViolation("lmate_select: received UV does not match swarm size");

    const double u = params.selection_mode == SelectionMode::stochastic ? rng.uniform() : 0.0;
    const double threshold = state.agents[agent_index].fitness + params.fitness_eps;
    const auto row = received.row(agent_index);

    auto is_candidate = [&](std::size_t j) { return j != agent_index && state.agents[j].fitness > threshold; };

    if (params.selection_mode == SelectionMode::deterministic) {
        std::optional<std::size_t> best;
        for (std::size_t j = 0; j < n; ++j)
            if (is_candidate(j) && (!best || row[j] > row[*best])) best = j;
        return best;
    }

    std::size_t count = 0;
    double total = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        if (!is_candidate(j)) continue;
        ++count;
        total += row[j];
    }
    if (count == 0) return std::nullopt;

    if (!(total > 0.0)) {
        auto pick = static_cast<std::size_t>(u * static_cast<double>(count));
        for (std::size_t j = 0; j < n; ++j) {
            if (!is_candidate(j)) continue;
            if (pick == 0) return j;
            --pick;
        }
    }

    const double target = u * total;
    double cumulative = 0.0;
    std::optional<std::size_t> last;
    for (std::size_t j = 0; j < n; ++j) {
        if (!is_candidate(j)) continue;
        last = j;
        cumulative += row[j];
        if (target < cumulative) return j;
    }
    return last;
}

std::vector<Vec> movement(const SwarmState& state, std::span<const std::optional<std::size_t>> lmates,
                          const Box& bounds, const BmoParams& params)
{
    if (lmates.size() != state.size()) throw ContractViolation("movement: one l-mate slot per agent required");
    std::vector<Vec> out;
    out.reserve(state.size());
    for (std::size_t i = 0; i < state.size(); ++i) {
        const Vec& here = state.agents[i].position;
        if (!lmates[i]) {
            out.push_back(bounds.clamp(here));
            continue;
        }
        if (*lmates[i] == i || *lmates[i] >= state.size())
            throw ContractViolation("movement: invalid l-mate for agent " + std::to_string(i));
        const Vec& mate = state.agents[*lmates[i]].position;
        const double d = distance(here, mate);
        if (d <= params.step_size) {
            out.push_back(bounds.clamp(mate));
            continue;
        }
        Vec next = here;
        for (std::size_t k = 0; k < here.size(); ++k) next[k] = here[k] + params.step_size * ((mate[k] - here[k]) / d);
        out.push_back(bounds.clamp(next));
    }
    return out;
}

StepResult bmo_step(const SwarmState& state, const FitnessField& field, Rng& rng, const BmoParams& params,
                    SensorNoise sensor)
{
    const std::size_t n = state.size();
    const std::size_t dim = field.dimension();
    for (const auto& a : state.agents)
        if (a.position.size() != dim) throw ContractViolation("bmo_step: field dimension does not match positions");

    const std::vector<double> coords = state.coords();
    std::vector<double> truth(n);
    field.eval_batch(coords, n, state.iter, truth);
    for (std::size_t i = 0; i < n; ++i)
        if (!std::isfinite(truth[i]))
            throw RunError("non-finite field value at iteration " + std::to_string(state.iter) + " for agent " +
                           std::to_string(i) + " at " + to_string(state.agents[i].position));

    std::vector<double> measured = truth;
    if (sensor.sigma > 0.0) {
        if (!sensor.rng) throw ContractViolation("bmo_step: sensor noise needs an RNG");
        for (double& m : measured) {
            m += sensor.sigma * sensor.rng->normal();
            if (m < 0.0) m = 0.0;
        }
    }

    // Phase (a); later phases see the refreshed UV and fitness at the
    // unchanged start-of-step positions.
    SwarmState snap = state;
    const std::vector<double> uv = uv_update(state, measured, params);
    for (std::size_t i = 0; i < n; ++i) {
        snap.agents[i].uv = uv[i];
        snap.agents[i].fitness = measured[i];
    }

    const ReceivedUv received = uv_distribution(snap, params);

    std::vector<std::optional<std::size_t>> lmates(n);
    for (std::size_t i = 0; i < n; ++i) lmates[i] = lmate_select(i, snap, received, rng, params);

    std::vector<Vec> moved = movement(snap, lmates, field.bounds(), params);

    StepResult result;
    result.state.iter = state.iter + 1;
    result.state.agents = std::move(snap.agents);
    result.record.iter = result.state.iter;
    result.record.agents.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        Bfly& a = result.state.agents[i];
        a.position = moved[i];
        a.lmate = lmates[i];
        result.record.agents[i] = AgentRecord{a.position, truth[i], measured[i], a.uv, a.lmate};
    }
    return result;
}

SwarmState initial_state(const FitnessField& field, const BmoParams& params, const InitSpec& init)
{
    params.validate();
    const Box& bounds = field.bounds();
    const std::size_t dim = field.dimension();

    SwarmState state;
    state.agents.resize(params.n_agents);
    if (const auto* explicit_init = std::get_if<ExplicitInit>(&init)) {
        if (explicit_init->positions.size() != params.n_agents)
            throw ContractViolation("init: " + std::to_string(explicit_init->positions.size()) +
                                    " explicit positions for " + std::to_string(params.n_agents) + " agents");
        for (std::size_t i = 0; i < params.n_agents; ++i) {
            const Vec& p = explicit_init->positions[i];
            if (p.size() != dim || !bounds.contains(p))
                throw ContractViolation("init: position " + to_string(p) + " of agent " + std::to_string(i) +
                                        " is outside the bounds");
            state.agents[i].position = p;
        }
    } else {
        Rng rng(params.seed, Stream::init);
        for (std::size_t i = 0; i < params.n_agents; ++i) {
            Vec p(dim);
            for (std::size_t k = 0; k < dim; ++k)
                p[k] = bounds.lower[k] + rng.uniform() * (bounds.upper[k] - bounds.lower[k]);
            state.agents[i].position = bounds.clamp(p);
        }
    }

    const std::vector<double> coords = state.coords();
    std::vector<double> fitness(params.n_agents);
    field.eval_batch(coords, params.n_agents, 0, fitness);
    for (std::size_t i = 0; i < params.n_agents; ++i) {
        state.agents[i].id = i;
        state.agents[i].fitness = fitness[i];
    }
    return state;
}

IterationRecord snapshot(const SwarmState& state)
{
    IterationRecord rec;
    rec.iter = state.iter;
    rec.agents.reserve(state.size());
    for (const auto& a : state.agents) rec.agents.push_back({a.position, a.fitness, a.fitness, a.uv, a.lmate});
    return rec;
}

Trace run(const FitnessField& field, const BmoParams& params, const InitSpec& init, double sensor_sigma)
{
    if (!(sensor_sigma >= 0.0)) throw ContractViolation("sensor_sigma must be >= 0");
    SwarmState state = initial_state(field, params, init);

    Trace trace;
    trace.dim = field.dimension();
    trace.set_meta("field", field.describe());
    trace.set_meta("rho", format_real(params.rho));
    trace.set_meta("gamma", format_real(params.gamma));
    trace.set_meta("lambda_d", format_real(params.lambda_d));
    trace.set_meta("step_size", format_real(params.step_size));
    trace.set_meta("n_agents", std::to_string(params.n_agents));
    trace.set_meta("max_iters", std::to_string(params.max_iters));
    trace.set_meta("seed", std::to_string(params.seed));
    trace.set_meta("selection_mode", std::string(to_string(params.selection_mode)));
    trace.set_meta("fitness_eps", format_real(params.fitness_eps));
    trace.set_meta("sensor_sigma", format_real(sensor_sigma));
    trace.records.reserve(params.max_iters + 1);
    trace.records.push_back(snapshot(state));

    Rng selection(params.seed, Stream::selection);
    Rng sensor_rng(params.seed, Stream::sensor);
    const SensorNoise sensor{sensor_sigma, &sensor_rng};
    for (std::size_t it = 0; it < params.max_iters; ++it) {
        StepResult step = bmo_step(state, field, selection, params, sensor);
        state = std::move(step.state);
        trace.records.push_back(std::move(step.record));
    }
    return trace;
}

}  // namespace bmo
