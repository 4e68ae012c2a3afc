#include "bmo/field.hpp"

#include <cmath>
#include <sstream>

#include "bmo/simd.hpp"

namespace bmo {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

bool pairwise_separated(const std::vector<Vec>& points, double min_separation)
{
    for (std::size_t a = 0; a < points.size(); ++a)
        for (std::size_t b = a + 1; b < points.size(); ++b)
            if (!(distance(points[a], points[b]) > min_separation)) return false;
    return true;
}

double himmelblau_poly(double x, double y)
{
    const double a = x * x + y - 11.0;
    const double b = x + y * y - 7.0;
    return a * a + b * b;
}

}  // namespace

Vec SourceSpec::position_at(std::size_t t, const Box& bounds) const
{
    switch (motion.kind) {
    case SourceMotion::Kind::fixed:
        return position;
    case SourceMotion::Kind::relocate:
        return t >= motion.relocate_at ? motion.relocate_to : position;
    case SourceMotion::Kind::linear: {
        Vec p = position;
        const double steps = static_cast<double>(t);
        for (std::size_t k = 0; k < p.size(); ++k) p[k] += motion.velocity[k] * steps;
        return bounds.clamp(p);
    }
    }
    return position;
}

FitnessField FitnessField::gaussian_peaks(std::vector<Vec> centers, std::vector<double> amplitudes, double sigma,
                                          Box bounds)
{
    bounds.validate();
    if (centers.empty()) throw ContractViolation("gaussian_peaks: at least one center required");
    if (centers.size() != amplitudes.size())
        throw ContractViolation("gaussian_peaks: centers and amplitudes differ in length");
    if (!(sigma > 0.0)) throw ContractViolation("gaussian_peaks: sigma must be > 0");
    for (std::size_t k = 0; k < centers.size(); ++k) {
        if (!bounds.contains(centers[k]))
            throw ContractViolation("gaussian_peaks: center " + to_string(centers[k]) + " outside bounds");
        if (!(amplitudes[k] > 0.0)) throw ContractViolation("gaussian_peaks: amplitudes must be > 0");
    }
    return FitnessField(std::move(bounds), Gaussian{std::move(centers), std::move(amplitudes), sigma});
}

FitnessField FitnessField::himmelblau(Box bounds, double offset)
{
    bounds.validate();
    if (bounds.dim() != 2) throw ContractViolation("himmelblau: field is 2-D only");
    if (!(offset > 0.0)) throw ContractViolation("himmelblau: offset must be > 0");
    return FitnessField(std::move(bounds), Himmelblau{offset});
}

FitnessField FitnessField::point_sources(std::vector<SourceSpec> sources, Box bounds)
{
    bounds.validate();
    if (sources.empty()) throw ContractViolation("point_sources: at least one source required");
    for (const auto& s : sources) {
        if (!(s.intensity > 0.0)) throw ContractViolation("point_sources: intensity must be > 0");
        if (!(s.kappa > 0.0)) throw ContractViolation("point_sources: kappa must be > 0");
        if (!bounds.contains(s.position))
            throw ContractViolation("point_sources: source " + to_string(s.position) + " outside bounds");
        if (s.motion.kind == SourceMotion::Kind::relocate && !bounds.contains(s.motion.relocate_to))
            throw ContractViolation("point_sources: relocation target " + to_string(s.motion.relocate_to) +
                                    " outside bounds");
        if (s.motion.kind == SourceMotion::Kind::linear && s.motion.velocity.size() != bounds.dim())
            throw ContractViolation("point_sources: velocity dimension mismatch");
    }
    return FitnessField(std::move(bounds), PointSources{std::move(sources)});
}

std::vector<Vec> FitnessField::himmelblau_roots()
{
    return {
        Vec{3.0, 2.0},
        Vec{-2.805118086952745, 3.131312518250573},
        Vec{-3.779310253377747, -3.283185991286170},
        Vec{3.584428340330492, -1.848126526964404},
    };
}

double FitnessField::eval(const Vec& x, std::size_t t) const
{
    if (x.size() != dimension()) throw ContractViolation("eval: position dimension mismatch");
    double out = 0.0;
    // A single point in structure-of-arrays layout is just its coordinates.
    eval_batch(std::span<const double>(x.begin(), x.size()), 1, t, std::span<double>(&out, 1));
    return out;
}

void FitnessField::eval_batch(std::span<const double> coords, std::size_t n, std::size_t t,
                              std::span<double> out) const
{
    const std::size_t dim = dimension();
    if (coords.size() < n * dim || out.size() < n) throw ContractViolation("eval_batch: buffer too small");

    std::visit(Overloaded{
                   [&](const Gaussian& g) {
                       std::vector<double> d2(n);
                       const double s2 = g.sigma * g.sigma;
                       for (std::size_t i = 0; i < n; ++i) out[i] = 0.0;
                       for (std::size_t c = 0; c < g.centers.size(); ++c) {
                           simd::squared_distances_to(coords, n, dim,
                                                      std::span<const double>(g.centers[c].begin(), dim), d2);
                           for (std::size_t i = 0; i < n; ++i) out[i] += g.amplitudes[c] * std::exp(-(d2[i] / s2));
                       }
                   },
                   [&](const Himmelblau& h) {
                       for (std::size_t i = 0; i < n; ++i) {
                           const double v = h.offset - himmelblau_poly(coords[i], coords[n + i]);
                           out[i] = h.gain * (v < 0.0 ? 0.0 : v);
                       }
                   },
                   [&](const PointSources& ps) {
                       for (std::size_t i = 0; i < n; ++i) out[i] = 0.0;
                       for (const auto& s : ps.sources) {
                           const Vec p = s.position_at(t, bounds_);
                           simd::accumulate_inverse_square(coords, n, dim, std::span<const double>(p.begin(), dim),
                                                           s.intensity, s.kappa, out);
                       }
                   },
               },
               model_);

    for (std::size_t i = 0; i < n; ++i)
        if (out[i] < 0.0) out[i] = 0.0;
}

std::optional<std::vector<Vec>> FitnessField::known_peaks(std::size_t t) const
{
    return std::visit(Overloaded{
                          [&](const Gaussian& g) -> std::optional<std::vector<Vec>> {
                              if (!pairwise_separated(g.centers, 3.0 * g.sigma)) return std::nullopt;
                              return g.centers;
                          },
                          [&](const Himmelblau&) -> std::optional<std::vector<Vec>> { return himmelblau_roots(); },
                          [&](const PointSources& ps) -> std::optional<std::vector<Vec>> {
                              std::vector<Vec> peaks;
                              double max_kappa_inv = 0.0;
                              for (const auto& s : ps.sources) {
                                  peaks.push_back(s.position_at(t, bounds_));
                                  max_kappa_inv = std::max(max_kappa_inv, 1.0 / s.kappa);
                              }
                              if (!pairwise_separated(peaks, 3.0 * std::sqrt(max_kappa_inv))) return std::nullopt;
                              return peaks;
                          },
                      },
                      model_);
}

double FitnessField::max_value() const
{
    return std::visit(Overloaded{
                          [](const Gaussian& g) {
                              double sum = 0.0;
                              for (double a : g.amplitudes) sum += a;
                              return sum;
                          },
                          [](const Himmelblau& h) { return h.gain * h.offset; },
                          [](const PointSources& ps) {
                              double sum = 0.0;
                              for (const auto& s : ps.sources) sum += s.intensity;
                              return sum;
                          },
                      },
                      model_);
}

bool FitnessField::is_static() const
{
    if (const auto* ps = std::get_if<PointSources>(&model_)) {
        for (const auto& s : ps->sources)
            if (s.motion.kind != SourceMotion::Kind::fixed) return false;
    }
    return true;
}

std::string FitnessField::describe() const
{
    std::ostringstream os;
    os.precision(17);
    std::visit(Overloaded{
                   [&](const Gaussian& g) { os << "gaussian_peaks(k=" << g.centers.size() << ",sigma=" << g.sigma << ")"; },
                   [&](const Himmelblau& h) { os << "himmelblau(offset=" << h.offset << ",gain=" << h.gain << ")"; },
                   [&](const PointSources& ps) {
                       os << "point_sources(k=" << ps.sources.size() << (is_static() ? ",static" : ",dynamic") << ")";
                   },
               },
               model_);
    os << " bounds=" << to_string(bounds_.lower) << "-" << to_string(bounds_.upper);
    return os.str();
}

FitnessField FitnessField::scaled(double c) const
{
    if (!(c > 0.0)) throw ContractViolation("scaled: factor must be > 0");
    FitnessField copy = *this;
    std::visit(Overloaded{
                   [&](Gaussian& g) {
                       for (double& a : g.amplitudes) a *= c;
                   },
                   [&](Himmelblau& h) { h.gain *= c; },
                   [&](PointSources& ps) {
                       for (auto& s : ps.sources) s.intensity *= c;
                   },
               },
               copy.model_);
    return copy;
}

std::string to_string(const Vec& v)
{
    std::ostringstream os;
    os.precision(17);
    os << "(";
    for (std::size_t k = 0; k < v.size(); ++k) os << (k ? "," : "") << v[k];
    os << ")";
    return os.str();
}

}  // namespace bmo
