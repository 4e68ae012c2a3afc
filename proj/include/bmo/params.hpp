#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace bmo {

enum class SelectionMode { deterministic, stochastic };

std::string_view to_string(SelectionMode mode);
std::optional<SelectionMode> parse_selection_mode(std::string_view text);

/// Algorithm constants and run controls.
struct BmoParams {
    double rho = 0.4;         ///< UV decay factor, [0, 1]
    double gamma = 0.6;       ///< UV fitness gain, > 0
    double lambda_d = 1.0;    ///< distribution decay length (position units), > 0
    double step_size = 0.1;   ///< movement per iteration (position units), >= 0
    std::size_t n_agents = 10;
    std::size_t max_iters = 100;
    std::uint64_t seed = 1;
    SelectionMode selection_mode = SelectionMode::stochastic;
    double fitness_eps = 0.0;  ///< minimal fitness superiority for l-mate candidacy

    /// Throws ContractViolation naming the first violated invariant.
    void validate() const;
};

/// Distribution length used when a scenario leaves lambda_d unspecified:
/// 10% of the bounds diagonal.
double default_lambda_d(double bounds_diagonal);

}  // namespace bmo
