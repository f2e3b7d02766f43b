#include <doctest.h>

#include <cmath>
#include <vector>

#include "fraclab/semigroup.hpp"
#include "fraclab/simd.hpp"

using namespace fraclab;

namespace {

// deterministic, irregular test data
std::vector<double> wave(std::size_t n, double phase) {
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = std::sin(1.7 * double(i) + phase) * std::exp(0.01 * double(i));
    return v;
}

struct ForceGuard {
    simd::Isa saved = simd::active().isa;
    ~ForceGuard() { simd::force(saved); }
};

}  // namespace

TEST_CASE("scalar kernels") {
    const auto& k = simd::scalar_kernels();
    const std::vector<double> a{1, 2, 3, 4, 5}, b{5, 4, 3, 2, 1};
    CHECK(k.dot(a.data(), b.data(), 5) == 35.0);
    CHECK(k.max_value(a.data(), 5) == 5.0);
    CHECK(std::isinf(k.max_value(a.data(), 0)));
    CHECK(k.max_abs_diff(a.data(), b.data(), 5) == 4.0);
    std::vector<double> y = b;
    k.axpy(2.0, a.data(), y.data(), 5);
    CHECK(y == std::vector<double>{7, 8, 9, 10, 11});
    std::vector<double> out(5);
    k.add_scaled(a.data(), -1.0, b.data(), out.data(), 5);
    CHECK(out == std::vector<double>{-4, -2, 0, 2, 4});
}

TEST_CASE("vector kernels agree with the scalar reference") {
    std::vector<const simd::KernelSet*> sets;
#if FRACLAB_SIMD_X86
    if (simd::isa_available(simd::Isa::avx2)) sets.push_back(&simd::avx2_kernels());
#endif
#if FRACLAB_SIMD_NEON
    if (simd::isa_available(simd::Isa::neon)) sets.push_back(&simd::neon_kernels());
#endif
    if (sets.empty()) MESSAGE("no vector ISA on this host; scalar path only");
    const auto& ref = simd::scalar_kernels();
    for (const auto* ks : sets) {
        for (std::size_t n : {0u, 1u, 2u, 3u, 4u, 5u, 7u, 8u, 9u, 15u, 16u, 17u, 63u, 64u, 65u, 1000u}) {
            CAPTURE(n);
            const auto a = wave(n, 0.3), b = wave(n, 1.1);
            double scale = 0.0;
            for (std::size_t i = 0; i < n; ++i) scale += std::fabs(a[i] * b[i]);
            CHECK(std::fabs(ks->dot(a.data(), b.data(), n) - ref.dot(a.data(), b.data(), n)) <= 1e-14 * (scale + 1));
            if (n > 0) CHECK(ks->max_value(a.data(), n) == ref.max_value(a.data(), n));
            CHECK(ks->max_abs_diff(a.data(), b.data(), n) == ref.max_abs_diff(a.data(), b.data(), n));
            std::vector<double> y1 = b, y2 = b;
            ks->axpy(0.37, a.data(), y1.data(), n);
            ref.axpy(0.37, a.data(), y2.data(), n);
            // fused and unfused multiply-add differ by rounding of the product
            for (std::size_t i = 0; i < n; ++i) CHECK(std::fabs(y1[i] - y2[i]) <= 0x1p-52 * (0.37 * std::fabs(a[i]) + std::fabs(b[i])));
            std::vector<double> o1(n), o2(n);
            ks->add_scaled(a.data(), -2.5, b.data(), o1.data(), n);
            ref.add_scaled(a.data(), -2.5, b.data(), o2.data(), n);
            for (std::size_t i = 0; i < n; ++i) CHECK(std::fabs(o1[i] - o2[i]) <= 0x1p-52 * (std::fabs(a[i]) + 2.5 * std::fabs(b[i])));
        }
    }
}

TEST_CASE("semigroup action is the same on every kernel set") {
    ForceGuard guard;
    const FracParams fp(1, 1.5);
    const GridSpec g(1, 8.0, 512);
    GridFunction f(g);
    for (std::size_t k = 0; k < g.size(); ++k) {
        const double x = g.center_of(k)[0];
        f.values[k] = std::exp(-x * x) * (2.0 + std::sin(3.0 * x));
    }
    simd::force(simd::Isa::scalar);
    const GridFunction ref = Semigroup(fp, g).apply(f, 0.3);
    for (simd::Isa isa : {simd::Isa::avx2, simd::Isa::neon}) {
        if (!simd::isa_available(isa)) continue;
        simd::force(isa);
        const GridFunction v = Semigroup(fp, g).apply(f, 0.3);
        double diff = 0.0;
        for (std::size_t k = 0; k < g.size(); ++k) diff = std::max(diff, std::fabs(v.values[k] - ref.values[k]));
        CHECK(diff < 1e-13);
    }
}

TEST_CASE("two-dimensional convolution is the same on every kernel set") {
    ForceGuard guard;
    const FracParams fp(2, 2.0);
    const GridSpec g(2, 4.0, 48);
    GridFunction f(g);
    for (std::size_t k = 0; k < g.size(); ++k) {
        const auto c = g.center_of(k);
        f.values[k] = std::exp(-c[0] * c[0] - 2 * c[1] * c[1]);
    }
    simd::force(simd::Isa::scalar);
    const GridFunction ref = Semigroup(fp, g).apply(f, 0.2);
    for (simd::Isa isa : {simd::Isa::avx2, simd::Isa::neon}) {
        if (!simd::isa_available(isa)) continue;
        simd::force(isa);
        const GridFunction v = Semigroup(fp, g).apply(f, 0.2);
        double diff = 0.0;
        for (std::size_t k = 0; k < g.size(); ++k) diff = std::max(diff, std::fabs(v.values[k] - ref.values[k]));
        CHECK(diff < 1e-13);
    }
}
