#include "fraclab/simd.hpp"

#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace fraclab::simd {
namespace {

const KernelSet* detect() {
    if (const char* env = std::getenv("FRACLAB_SIMD")) {
        if (std::string(env) == "scalar") return &scalar_kernels();
    }
#if FRACLAB_SIMD_X86
    if (isa_available(Isa::avx2)) return &avx2_kernels();
#endif
#if FRACLAB_SIMD_NEON
    return &neon_kernels();
#endif
    return &scalar_kernels();
}

std::atomic<const KernelSet*>& slot() {
    static std::atomic<const KernelSet*> s{detect()};
    return s;
}

}  // namespace

bool isa_available(Isa isa) {
    switch (isa) {
        case Isa::scalar:
            return true;
        case Isa::avx2:
#if FRACLAB_SIMD_X86 && (defined(__GNUC__) || defined(__clang__))
            return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
            return false;
#endif
        case Isa::neon:
            return FRACLAB_SIMD_NEON != 0;
    }
    return false;
}

const KernelSet& active() { return *slot().load(std::memory_order_relaxed); }

void force(Isa isa) {
    if (!isa_available(isa)) throw std::runtime_error("SIMD variant not available on this CPU: " + std::string(isa_name(isa)));
    switch (isa) {
        case Isa::scalar:
            slot().store(&scalar_kernels());
            break;
        case Isa::avx2:
#if FRACLAB_SIMD_X86
            slot().store(&avx2_kernels());
#endif
            break;
        case Isa::neon:
#if FRACLAB_SIMD_NEON
            slot().store(&neon_kernels());
#endif
            break;
    }
}

std::string_view isa_name(Isa isa) {
    switch (isa) {
        case Isa::scalar:
            return "scalar";
        case Isa::avx2:
            return "avx2";
        case Isa::neon:
            return "neon";
    }
    return "unknown";
}

}  // namespace fraclab::simd
