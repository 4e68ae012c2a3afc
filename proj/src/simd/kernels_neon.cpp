#include <arm_neon.h>

#include <cmath>

#include "bmo/simd.hpp"

namespace bmo::simd::detail {

namespace {

constexpr std::size_t kLanes = 2;

void pairwise_distances(const double* coords, std::size_t n, std::size_t dim, double* out)
{
    const std::size_t vec_end = n - n % kLanes;
    for (std::size_t i = 0; i < n; ++i) {
        double* row = out + i * n;
        std::size_t j = 0;
        for (; j < vec_end; j += kLanes) {
            float64x2_t acc = vdupq_n_f64(0.0);
            for (std::size_t k = 0; k < dim; ++k) {
                const float64x2_t d = vsubq_f64(vdupq_n_f64(coords[k * n + i]), vld1q_f64(coords + k * n + j));
                acc = vaddq_f64(acc, vmulq_f64(d, d));
            }
            vst1q_f64(row + j, vsqrtq_f64(acc));
        }
        for (; j < n; ++j) {
            double acc = 0.0;
            for (std::size_t k = 0; k < dim; ++k) {
                const double d = coords[k * n + i] - coords[k * n + j];
                acc += d * d;
            }
            row[j] = std::sqrt(acc);
        }
    }
}

inline float64x2_t squared_distance_block(const double* coords, std::size_t n, std::size_t dim, const double* center,
                                          std::size_t i)
{
    float64x2_t acc = vdupq_n_f64(0.0);
    for (std::size_t k = 0; k < dim; ++k) {
        const float64x2_t d = vsubq_f64(vld1q_f64(coords + k * n + i), vdupq_n_f64(center[k]));
        acc = vaddq_f64(acc, vmulq_f64(d, d));
    }
    return acc;
}

inline double squared_distance_one(const double* coords, std::size_t n, std::size_t dim, const double* center,
                                   std::size_t i)
{
    double acc = 0.0;
    for (std::size_t k = 0; k < dim; ++k) {
        const double d = coords[k * n + i] - center[k];
        acc += d * d;
    }
    return acc;
}

void squared_distances_to(const double* coords, std::size_t n, std::size_t dim, const double* center, double* out)
{
    const std::size_t vec_end = n - n % kLanes;
    std::size_t i = 0;
    for (; i < vec_end; i += kLanes) vst1q_f64(out + i, squared_distance_block(coords, n, dim, center, i));
    for (; i < n; ++i) out[i] = squared_distance_one(coords, n, dim, center, i);
}

void accumulate_inverse_square(const double* coords, std::size_t n, std::size_t dim, const double* center,
                               double intensity, double kappa, double* acc)
{
    const std::size_t vec_end = n - n % kLanes;
    const float64x2_t vi = vdupq_n_f64(intensity);
    const float64x2_t vk = vdupq_n_f64(kappa);
    const float64x2_t one = vdupq_n_f64(1.0);
    std::size_t i = 0;
    for (; i < vec_end; i += kLanes) {
        const float64x2_t d2 = squared_distance_block(coords, n, dim, center, i);
        const float64x2_t term = vdivq_f64(vi, vaddq_f64(one, vmulq_f64(vk, d2)));
        vst1q_f64(acc + i, vaddq_f64(vld1q_f64(acc + i), term));
    }
    for (; i < n; ++i) acc[i] += intensity / (1.0 + kappa * squared_distance_one(coords, n, dim, center, i));
}

const Kernels kNeon{Backend::neon, pairwise_distances, squared_distances_to, accumulate_inverse_square};

}  // namespace

const Kernels* neon_kernels() { return &kNeon; }

}  // namespace bmo::simd::detail
