#pragma once

// Data-parallel inner loops of the swarm kernel.
//
// Every kernel has a scalar reference and SIMD variants (AVX2 on x86-64,
// NEON on AArch64). The variant is picked once at startup from the CPU's
// feature flags. All variants perform the same IEEE operations in the same
// order per lane (no FMA, no reassociation), so their results are bit-identical
// to the scalar reference; the equivalence tests assert exact equality.
//
// Point sets are passed structure-of-arrays: coordinate k of point i lives at
// coords[k * n + i].

#include <cstddef>
#include <span>
#include <string_view>

namespace bmo::simd {

enum class Backend { scalar, avx2, neon };

std::string_view to_string(Backend b);

struct Kernels {
    Backend backend;

    /// out[i * n + j] = ||p_i - p_j||, differences taken as p_i - p_j.
    void (*pairwise_distances)(const double* coords, std::size_t n, std::size_t dim, double* out);

    /// out[i] = ||p_i - center||^2.
    void (*squared_distances_to)(const double* coords, std::size_t n, std::size_t dim, const double* center,
                                 double* out);

    /// acc[i] += intensity / (1 + kappa * ||p_i - center||^2).
    void (*accumulate_inverse_square)(const double* coords, std::size_t n, std::size_t dim, const double* center,
                                      double intensity, double kappa, double* acc);
};

/// Kernels of the active backend.
const Kernels& kernels();

Backend active_backend();

/// True when the backend is compiled in and the CPU supports it.
bool available(Backend b);

/// Kernels of a specific backend; throws ContractViolation if unavailable.
const Kernels& kernels_for(Backend b);

/// Overrides runtime selection. Not synchronized with concurrent kernel use.
void select_backend(Backend b);

/// Restores the previously active backend on scope exit.
class ScopedBackend {
public:
    explicit ScopedBackend(Backend b) : saved_(active_backend()) { select_backend(b); }
    ~ScopedBackend() { select_backend(saved_); }
    ScopedBackend(const ScopedBackend&) = delete;
    ScopedBackend& operator=(const ScopedBackend&) = delete;

private:
    Backend saved_;
};

// Convenience wrappers over the active backend.

inline void pairwise_distances(std::span<const double> coords, std::size_t n, std::size_t dim,
                               std::span<double> out)
{
    kernels().pairwise_distances(coords.data(), n, dim, out.data());
}

inline void squared_distances_to(std::span<const double> coords, std::size_t n, std::size_t dim,
                                 std::span<const double> center, std::span<double> out)
{
    kernels().squared_distances_to(coords.data(), n, dim, center.data(), out.data());
}

inline void accumulate_inverse_square(std::span<const double> coords, std::size_t n, std::size_t dim,
                                      std::span<const double> center, double intensity, double kappa,
                                      std::span<double> acc)
{
    kernels().accumulate_inverse_square(coords.data(), n, dim, center.data(), intensity, kappa, acc.data());
}

namespace detail {
const Kernels& scalar_kernels();
const Kernels* avx2_kernels();  // nullptr when not compiled in
const Kernels* neon_kernels();
}  // namespace detail

}  // namespace bmo::simd
