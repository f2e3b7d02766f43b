#include <doctest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "fraclab/kernel.hpp"
#include "fraclab/semigroup.hpp"

using namespace fraclab;
using std::numbers::pi;

namespace {

double k1(const FracParams& fp, double x, double t) {
    const double y[1] = {x};
    return kernel_value(fp, y, t);
}

// large-|x| constant of the stable density, written independently of the library
double tail_constant(int N, double th) {
    return th * std::pow(2.0, th - 1.0) * std::pow(pi, -0.5 * N - 1.0) * std::sin(pi * th / 2) *
           std::tgamma(0.5 * (N + th)) * std::tgamma(0.5 * th);
}

}  // namespace

TEST_CASE("Gaussian kernel in closed form") {
    const FracParams fp(1, 2.0);
    CHECK(kernel_profile(fp)->mode() == KernelMode::closed_form);
    for (double t : {0.01, 0.5, 3.0})
        for (double x : {0.0, 0.3, 2.0}) CHECK(k1(fp, x, t) == doctest::Approx(std::exp(-x * x / (4 * t)) / std::sqrt(4 * pi * t)).epsilon(1e-12));
    const FracParams fp3(3, 2.0);
    const double x3[3] = {0.5, -0.2, 1.0};
    const double r2 = 0.25 + 0.04 + 1.0;
    CHECK(kernel_value(fp3, x3, 0.7) == doctest::Approx(std::exp(-r2 / 2.8) / std::pow(2.8 * pi, 1.5)).epsilon(1e-12));
}

TEST_CASE("Cauchy kernel in closed form") {
    const FracParams fp(1, 1.0);
    for (double t : {0.1, 1.0})
        for (double x : {0.0, 0.5, 40.0}) CHECK(k1(fp, x, t) == doctest::Approx(t / (pi * (t * t + x * x))).epsilon(1e-12));
    const FracParams fp2(2, 1.0);
    const double x2[2] = {0.6, 0.8};
    CHECK(kernel_value(fp2, x2, 0.5) == doctest::Approx(0.5 / (2 * pi * std::pow(1.25, 1.5))).epsilon(1e-12));
}

TEST_CASE("peak value of the quadrature kernel") {
    // Gamma(0,1) = |S^{N-1}| Gamma(N/theta) / (theta (2 pi)^N)
    const FracParams fp(1, 1.5);
    CHECK(kernel_profile(fp)->mode() == KernelMode::quadrature);
    CHECK(k1(fp, 0.0, 1.0) == doctest::Approx(2.0 * std::tgamma(1.0 / 1.5) / (1.5 * 2 * pi)).epsilon(1e-7));
    CHECK(kernel_peak(fp) == doctest::Approx(2.0 * std::tgamma(1.0 / 1.5) / (1.5 * 2 * pi)).epsilon(1e-14));
}

TEST_CASE("kernel has unit mass") {
    for (double th : {1.0, 1.5, 2.0}) {
        CAPTURE(th);
        CHECK(std::fabs(kernel_profile(FracParams(1, th))->total_mass() - 1.0) < 1e-6);
    }
}

TEST_CASE("power-law tail for theta < 2") {
    for (double th : {1.0, 1.5}) {
        CAPTURE(th);
        const FracParams fp(1, th);
        CHECK(kernel_tail_constant(fp) == doctest::Approx(tail_constant(1, th)).epsilon(1e-12));
        const double r = 200.0;
        CHECK(k1(fp, r, 1.0) * std::pow(r, 1 + th) == doctest::Approx(tail_constant(1, th)).epsilon(1e-2));
    }
}

TEST_CASE("self-similarity Gamma(x,t) = t^{-N/theta} Gamma(t^{-1/theta} x, 1)") {
    const FracParams fp(1, 1.5);
    for (double t : {0.01, 0.3, 4.0})
        for (double x : {0.0, 0.1, 1.0, 7.0}) {
            const double s = std::pow(t, -1.0 / 1.5);
            CHECK(k1(fp, x, t) == doctest::Approx(s * k1(fp, s * x, 1.0)).epsilon(1e-12));
        }
}

TEST_CASE("radial profile is positive and nonincreasing") {
    for (double th : {0.5, 1.0, 1.5, 2.0}) {
        const auto k = kernel_profile(FracParams(1, th));
        double prev = k->value(0.0);
        for (int i = 1; i <= 400; ++i) {
            const double v = k->value(0.05 * i);
            CHECK(v > 0.0);
            CHECK(v <= prev * (1 + 1e-12));
            prev = v;
        }
    }
}

TEST_CASE("two-sided bound ratio for the Cauchy kernel") {
    // ratio = (1 + r)^2 / (pi (1 + r^2)) lies in [1/pi, 2/pi]
    const FracParams fp(1, 1.0);
    for (double r : {0.0, 0.5, 1.0, 3.0, 100.0}) {
        const double x[1] = {r};
        CHECK(kernel_bound_ratio(fp, x, 1.0) == doctest::Approx((1 + r) * (1 + r) / (pi * (1 + r * r))).epsilon(1e-10));
    }
    const double x[1] = {1.0};
    CHECK_THROWS_AS(kernel_bound_ratio(FracParams(1, 2.0), x, 1.0), ParameterError);
}

TEST_CASE("Chapman-Kolmogorov on the grid") {
    const GridSpec g(1, 50.0, 4096);
    CHECK(chapman_kolmogorov_check(FracParams(1, 2.0), 2.0, 1.0, g).discrepancy < 1e-10);
    CHECK(chapman_kolmogorov_check(FracParams(1, 1.0), 2.0, 1.0, g).discrepancy < 1e-4);
}

TEST_CASE("table round trip") {
    const KernelProfile k(FracParams(1, 1.5));
    std::stringstream ss;
    k.write(ss);
    const KernelProfile r = KernelProfile::read(ss);
    for (double x : {0.0, 0.7, 5.0, 300.0}) CHECK(r.value(x) == doctest::Approx(k.value(x)).epsilon(1e-12));
}

TEST_CASE("invalid parameters") {
    CHECK_THROWS_AS(FracParams(1, 2.5), ParameterError);
    CHECK_THROWS_AS(FracParams(0, 1.0), ParameterError);
    const double x0[1] = {0.0};
    CHECK_THROWS_AS(kernel_value(FracParams(1, 2.0), std::span<const double>(x0), -1.0), DomainError);
}
