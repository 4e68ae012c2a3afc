#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "bmo/types.hpp"

namespace bmo {

/// How a luminescent source moves over time.
struct SourceMotion {
    enum class Kind { fixed, relocate, linear };

    Kind kind = Kind::fixed;
    std::size_t relocate_at = 0;  ///< relocate: first time step at the new position
    Vec relocate_to;              ///< relocate: new position
    Vec velocity;                 ///< linear: displacement per time step

    static SourceMotion fixed_in_place() { return {}; }
    static SourceMotion relocate(std::size_t at, Vec to) { return {Kind::relocate, at, to, {}}; }
    static SourceMotion linear(Vec velocity) { return {Kind::linear, 0, {}, velocity}; }
};

struct SourceSpec {
    double intensity = 1.0;  ///< signal units, > 0
    Vec position;
    double kappa = 1.0;      ///< falloff constant, 1/position-units^2, > 0
    SourceMotion motion;

    /// Source position at time step t. Linear motion is clamped to bounds.
    Vec position_at(std::size_t t, const Box& bounds) const;
};

/// Time-dependent non-negative scalar field over an axis-aligned box.
///
/// Immutable after construction; evaluation is reentrant.
class FitnessField {
public:
    /// J(x) = sum_k a_k exp(-||x - c_k||^2 / sigma^2).
    static FitnessField gaussian_peaks(std::vector<Vec> centers, std::vector<double> amplitudes, double sigma,
                                       Box bounds);

    /// J(x, y) = max(0, offset - H(x, y)) with H the Himmelblau polynomial.
    static FitnessField himmelblau(Box bounds = default_himmelblau_bounds(), double offset = kHimmelblauOffset);

    /// J(x, t) = sum_k I_k / (1 + kappa_k ||x - p_k(t)||^2).
    static FitnessField point_sources(std::vector<SourceSpec> sources, Box bounds);

    static constexpr double kHimmelblauOffset = 200.0;
    static Box default_himmelblau_bounds() { return {Vec{-6.0, -6.0}, Vec{6.0, 6.0}}; }

    /// The four zeros of the Himmelblau polynomial.
    static std::vector<Vec> himmelblau_roots();

    std::size_t dimension() const { return bounds_.dim(); }
    const Box& bounds() const { return bounds_; }

    double eval(const Vec& x, std::size_t t) const;

    /// Evaluates n points stored structure-of-arrays (coords[k * n + i]).
    void eval_batch(std::span<const double> coords, std::size_t n, std::size_t t, std::span<double> out) const;

    /// Peak positions at time t, when the field's peaks are known and well separated.
    std::optional<std::vector<Vec>> known_peaks(std::size_t t) const;

    /// Upper bound of eval over the whole domain and all times.
    double max_value() const;

    bool is_static() const;

    /// Short identity string, e.g. "gaussian_peaks(k=3,sigma=0.8)".
    std::string describe() const;

    /// Copy with amplitudes, intensities or gain multiplied by c. Values scale
    /// by c up to rounding, exactly when c is a power of two.
    FitnessField scaled(double c) const;

private:
    struct Gaussian {
        std::vector<Vec> centers;
        std::vector<double> amplitudes;
        double sigma;
    };
    struct Himmelblau {
        double offset;
        double gain = 1.0;
    };
    struct PointSources {
        std::vector<SourceSpec> sources;
    };

    FitnessField(Box bounds, std::variant<Gaussian, Himmelblau, PointSources> model)
        : bounds_(std::move(bounds)), model_(std::move(model))
    {
    }

    Box bounds_;
    std::variant<Gaussian, Himmelblau, PointSources> model_;
};

}  // namespace bmo
