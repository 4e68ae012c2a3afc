#include <cmath>

#include "bmo/simd.hpp"

namespace bmo::simd::detail {

namespace {

void pairwise_distances(const double* coords, std::size_t n, std::size_t dim, double* out)
{
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            double acc = 0.0;
            for (std::size_t k = 0; k < dim; ++k) {
                const double d = coords[k * n + i] - coords[k * n + j];
                acc += d * d;
            }
            out[i * n + j] = std::sqrt(acc);
        }
    }
}

void squared_distances_to(const double* coords, std::size_t n, std::size_t dim, const double* center, double* out)
{
    for (std::size_t i = 0; i < n; ++i) {
        double acc = 0.0;
        for (std::size_t k = 0; k < dim; ++k) {
            const double d = coords[k * n + i] - center[k];
            acc += d * d;
        }
        out[i] = acc;
    }
}

void accumulate_inverse_square(const double* coords, std::size_t n, std::size_t dim, const double* center,
                               double intensity, double kappa, double* acc)
{
    for (std::size_t i = 0; i < n; ++i) {
        double d2 = 0.0;
        for (std::size_t k = 0; k < dim; ++k) {
            const double d = coords[k * n + i] - center[k];
            d2 += d * d;
        }
        acc[i] += intensity / (1.0 + kappa * d2);
    }
}

const Kernels kScalar{Backend::scalar, pairwise_distances, squared_distances_to, accumulate_inverse_square};

}  // namespace

const Kernels& scalar_kernels() { return kScalar; }

}  // namespace bmo::simd::detail
