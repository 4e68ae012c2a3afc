#include "bmo/params.hpp"

#include <cmath>

#include "bmo/types.hpp"

namespace bmo {

std::string_view to_string(SelectionMode mode)
{
    return mode == SelectionMode::deterministic ? "deterministic" : "stochastic";
}

std::optional<SelectionMode> parse_selection_mode(std::string_view text)
{
    if (text == "deterministic") return SelectionMode::deterministic;
    if (text == "stochastic") return SelectionMode::stochastic;
    return std::nullopt;
}

void BmoParams::validate() const
{
    if (!(rho >= 0.0 && rho <= 1.0)) throw ContractViolation("rho must lie in [0, 1]");
    if (!(gamma > 0.0) || !std::isfinite(gamma)) throw ContractViolation("gamma must be > 0");
    if (!(lambda_d > 0.0) || !std::isfinite(lambda_d)) throw ContractViolation("lambda_d must be > 0");
    if (!(step_size >= 0.0) || !std::isfinite(step_size)) throw ContractViolation("step_size must be >= 0");
    if (n_agents < 1) throw ContractViolation("n_agents must be >= 1");
    if (!(fitness_eps >= 0.0)) throw ContractViolation("fitness_eps must be >= 0");
}

double default_lambda_d(double bounds_diagonal) { return 0.1 * bounds_diagonal; }

}  // namespace bmo
