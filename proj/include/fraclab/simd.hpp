#pragma once
// Vector kernels used by the convolution and solver inner loops.
//
// Every kernel has a scalar reference implementation and optional AVX2 / NEON
// variants. The variant is chosen once at runtime from the host CPU.

#include <cstddef>
#include <string_view>

#if defined(__x86_64__) || defined(_M_X64)
#define FRACLAB_SIMD_X86 1
#else
#define FRACLAB_SIMD_X86 0
#endif

#if defined(__aarch64__) || defined(__ARM_NEON)
#define FRACLAB_SIMD_NEON 1
#else
#define FRACLAB_SIMD_NEON 0
#endif

namespace fraclab::simd {

enum class Isa { scalar, avx2, neon };

struct KernelSet {
    Isa isa;
    // sum_i a[i] * b[i]
    double (*dot)(const double* a, const double* b, std::size_t n);
    // y[i] += alpha * x[i]
    void (*axpy)(double alpha, const double* x, double* y, std::size_t n);
    // out[i] = a[i] + s * b[i]
    void (*add_scaled)(const double* a, double s, const double* b, double* out, std::size_t n);
    // max_i x[i]; -inf for n == 0
    double (*max_value)(const double* x, std::size_t n);
    // max_i |a[i] - b[i]|
    double (*max_abs_diff)(const double* a, const double* b, std::size_t n);
};

const KernelSet& scalar_kernels();
#if FRACLAB_SIMD_X86
const KernelSet& avx2_kernels();
#endif
#if FRACLAB_SIMD_NEON
const KernelSet& neon_kernels();
#endif

bool isa_available(Isa isa);

// Kernel set in use. Defaults to the widest available ISA; the environment
// variable FRACLAB_SIMD=scalar forces the reference path.
const KernelSet& active();

// Overrides the active set (tests and benchmarks). Throws if unavailable.
void force(Isa isa);

std::string_view isa_name(Isa isa);

inline double dot(const double* a, const double* b, std::size_t n) { return active().dot(a, b, n); }
inline void axpy(double alpha, const double* x, double* y, std::size_t n) { active().axpy(alpha, x, y, n); }
inline void add_scaled(const double* a, double s, const double* b, double* out, std::size_t n) {
    active().add_scaled(a, s, b, out, n);
}
inline double max_value(const double* x, std::size_t n) { return active().max_value(x, n); }
inline double max_abs_diff(const double* a, const double* b, std::size_t n) { return active().max_abs_diff(a, b, n); }

}  // namespace fraclab::simd
