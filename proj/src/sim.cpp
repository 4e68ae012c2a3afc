#include "bmo/sim.hpp"

namespace bmo {

void Scenario::validate() const
{
    params.validate();
    if (!(sensor_sigma >= 0.0)) throw ContractViolation("scenario " + name + ": sensor_sigma must be >= 0");
    if (!(capture_radius > 0.0)) throw ContractViolation("scenario " + name + ": capture_radius must be > 0");
    if (const auto* e = std::get_if<ExplicitInit>(&init)) {
        for (const auto& p : e->positions)
            if (p.size() != field.dimension() || !field.bounds().contains(p))
                throw ContractViolation("scenario " + name + ": init position " + to_string(p) +
                                        " outside the arena");
    }
}

Trace simulate(const Scenario& scenario)
{
    scenario.validate();
    Trace trace = run(scenario.field, scenario.params, scenario.init, scenario.sensor_sigma);
    trace.set_meta("scenario", scenario.name);
    trace.set_meta("capture_radius", format_real(scenario.capture_radius));
    return trace;
}

Vec centroid(const IterationRecord& record)
{
    if (record.agents.empty()) throw ContractViolation("centroid of an empty record");
    const std::size_t dim = record.agents.front().position.size();
    Vec c(dim);
    for (const auto& a : record.agents)
        for (std::size_t k = 0; k < dim; ++k) c[k] += a.position[k];
    for (std::size_t k = 0; k < dim; ++k) c[k] /= static_cast<double>(record.agents.size());
    return c;
}

std::optional<std::size_t> co_location_time(const Trace& trace, double radius, const CoLocationTarget& target)
{
    if (!(radius > 0.0)) throw ContractViolation("co_location_time: radius must be > 0");
    for (std::size_t r = 0; r < trace.records.size(); ++r) {
        const auto& rec = trace.records[r];
        const Vec center = std::holds_alternative<Mutual>(target) ? centroid(rec) : std::get<Vec>(target);
        bool all_in = true;
        for (const auto& a : rec.agents) {
            if (distance(a.position, center) > radius) {
                all_in = false;
                break;
            }
        }
        if (all_in) return r;
    }
    return std::nullopt;
}

Scenario four_bot_scenario()
{
    const Box arena{Vec{0.0, 0.0}, Vec{10.0, 10.0}};
    SourceSpec source;
    source.intensity = 1.0;
    source.position = Vec{5.0, 5.0};
    source.kappa = 1.0;

    Scenario s{
        .name = "four_bot_single_source",
        .field = FitnessField::point_sources({source}, arena),
        .params = {},
        .sensor_sigma = 0.02,
        .init = ExplicitInit{{Vec{1.0, 1.0}, Vec{9.0, 1.0}, Vec{1.0, 9.0}, Vec{9.0, 9.0}}},
        .capture_radius = 0.5,
    };
    s.params.n_agents = 4;
    s.params.max_iters = 500;
    s.params.step_size = 0.05;
    s.params.lambda_d = default_lambda_d(arena.diagonal());
    s.params.selection_mode = SelectionMode::stochastic;
    return s;
}

}  // namespace bmo
