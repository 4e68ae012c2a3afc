#include <atomic>

#include "bmo/simd.hpp"
#include "bmo/types.hpp"

namespace bmo::simd {

namespace detail {
#if !(defined(__x86_64__) || defined(_M_X64))
const Kernels* avx2_kernels() { return nullptr; }
#endif
#if !(defined(__aarch64__) || defined(_M_ARM64))
const Kernels* neon_kernels() { return nullptr; }
#endif
}  // namespace detail

namespace {

bool cpu_supports(Backend b)
{
    switch (b) {
    case Backend::scalar:
        return true;
    case Backend::avx2:
#if defined(__x86_64__) && (defined(__GNUC__) || defined(__clang__))
        return __builtin_cpu_supports("avx2");
#else
        return false;
#endif
    case Backend::neon:
        // Advanced SIMD is mandatory on AArch64.
        return detail::neon_kernels() != nullptr;
    }
    return false;
}

const Kernels* lookup(Backend b)
{
    switch (b) {
    case Backend::scalar:
        return &detail::scalar_kernels();
    case Backend::avx2:
        return detail::avx2_kernels();
    case Backend::neon:
        return detail::neon_kernels();
    }
    return nullptr;
}

const Kernels* detect()
{
    for (Backend b : {Backend::avx2, Backend::neon})
        if (available(b)) return lookup(b);
    return &detail::scalar_kernels();
}

std::atomic<const Kernels*>& active()
{
    static std::atomic<const Kernels*> ptr{detect()};
    return ptr;
}

}  // namespace

std::string_view to_string(Backend b)
{
    switch (b) {
    case Backend::scalar:
        return "scalar";
    case Backend::avx2:
        return "avx2";
    case Backend::neon:
        return "neon";
    }
    return "unknown";
}

bool available(Backend b) { return lookup(b) != nullptr && cpu_supports(b); }

const Kernels& kernels_for(Backend b)
{
    if (!available(b)) throw ContractViolation("SIMD backend not available: " + std::string(to_string(b)));
    return *lookup(b);
}

const Kernels& kernels() { return *active().load(std::memory_order_relaxed); }

Backend active_backend() { return kernels().backend; }

void select_backend(Backend b) { active().store(&kernels_for(b), std::memory_order_relaxed); }

}  // namespace bmo::simd
