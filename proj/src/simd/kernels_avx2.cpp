// Compiled with -mavx2; only reached after a runtime CPU check.
#include <immintrin.h>

#include <cmath>

#include "bmo/simd.hpp"

namespace bmo::simd::detail {

namespace {

constexpr std::size_t kLanes = 4;

void pairwise_distances(const double* coords, std::size_t n, std::size_t dim, double* out)
{
    const std::size_t vec_end = n - n % kLanes;
    for (std::size_t i = 0; i < n; ++i) {
        double* row = out + i * n;
        std::size_t j = 0;
        for (; j < vec_end; j += kLanes) {
            __m256d acc = _mm256_setzero_pd();
            for (std::size_t k = 0; k < dim; ++k) {
                const __m256d xi = _mm256_set1_pd(coords[k * n + i]);
                const __m256d xj = _mm256_loadu_pd(coords + k * n + j);
                const __m256d d = _mm256_sub_pd(xi, xj);
                acc = _mm256_add_pd(acc, _mm256_mul_pd(d, d));
            }
            _mm256_storeu_pd(row + j, _mm256_sqrt_pd(acc));
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

inline __m256d squared_distance_block(const double* coords, std::size_t n, std::size_t dim, const double* center,
                                      std::size_t i)
{
    __m256d acc = _mm256_setzero_pd();
    for (std::size_t k = 0; k < dim; ++k) {
        const __m256d x = _mm256_loadu_pd(coords + k * n + i);
        const __m256d d = _mm256_sub_pd(x, _mm256_set1_pd(center[k]));
        acc = _mm256_add_pd(acc, _mm256_mul_pd(d, d));
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
    for (; i < vec_end; i += kLanes)
        _mm256_storeu_pd(out + i, squared_distance_block(coords, n, dim, center, i));
    for (; i < n; ++i) out[i] = squared_distance_one(coords, n, dim, center, i);
}

void accumulate_inverse_square(const double* coords, std::size_t n, std::size_t dim, const double* center,
                               double intensity, double kappa, double* acc)
{
    const std::size_t vec_end = n - n % kLanes;
    const __m256d vi = _mm256_set1_pd(intensity);
    const __m256d vk = _mm256_set1_pd(kappa);
    const __m256d one = _mm256_set1_pd(1.0);
    std::size_t i = 0;
    for (; i < vec_end; i += kLanes) {
        const __m256d d2 = squared_distance_block(coords, n, dim, center, i);
        const __m256d term = _mm256_div_pd(vi, _mm256_add_pd(one, _mm256_mul_pd(vk, d2)));
        _mm256_storeu_pd(acc + i, _mm256_add_pd(_mm256_loadu_pd(acc + i), term));
    }
    for (; i < n; ++i) acc[i] += intensity / (1.0 + kappa * squared_distance_one(coords, n, dim, center, i));
}

const Kernels kAvx2{Backend::avx2, pairwise_distances, squared_distances_to, accumulate_inverse_square};

}  // namespace

const Kernels* avx2_kernels() { return &kAvx2; }

}  // namespace bmo::simd::detail
