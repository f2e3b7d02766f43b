#include <doctest.h>

#include <cmath>

#include "fraclab/asymptotics.hpp"

using namespace fraclab;

TEST_CASE("regularly varying inverse round trip") {
    for (auto [a, b, c] : {std::tuple{1.5, 2.0, -1.0}, {1.0, 1.0, 0.0}, {2.0, 1.0, 0.0}, {2.0, -2.0, 0.0}, {1.0, 0.0, 0.0}}) {
        const RegVarFunction phi(a, b, c);
        for (double y : {1e4, 1e8, 1e12, 1e100}) {
            const double tau = regvar_inverse(phi, y);
            CHECK(phi(tau) == doctest::Approx(y).epsilon(1e-12));
        }
    }
    const RegVarFunction id(1.0, 0.0, 0.0);
    CHECK(regvar_inverse(id, 12345.0) == doctest::Approx(12345.0).epsilon(1e-13));
}

TEST_CASE("inverse stays in a narrow band around the asymptotic formula") {
    for (auto [a, b, c] : {std::tuple{1.5, 2.0, -1.0}, {1.0, 1.0, 0.0}, {2.0, 1.0, 0.0}, {2.0, -2.0, 0.0}}) {
        const RegVarFunction phi(a, b, c);
        double lo = INFINITY, hi = 0.0;
        for (double ly = 4.0; ly <= 12.0; ly += 0.25) {
            const double y = std::pow(10.0, ly);
            const double r = regvar_inverse(phi, y) / phi.asymptotic_inverse(y);
            lo = std::min(lo, r), hi = std::max(hi, r);
        }
        CAPTURE(a);
        CAPTURE(b);
        CHECK(hi / lo < 3.0);
        CHECK(hi / lo > 1.0);
    }
}

TEST_CASE("values below the monotone range are rejected") {
    const RegVarFunction phi(1.0, -2.0, 0.0);  // tau / log^2 tau decreases below e^2
    CHECK(phi.threshold() == doctest::Approx(std::exp(2.0)).epsilon(1e-6));
    CHECK_THROWS_AS(regvar_inverse(phi, 0.5 * phi(phi.threshold())), DomainError);
}

TEST_CASE("integral bound closed forms") {
    const IntegralBound a = integral_bound_check(1.0, 1.0, 0.0, 10.0, 1000.0);
    CHECK(a.lhs == doctest::Approx(std::log(100.0)));
    const IntegralBound b = integral_bound_check(2.0, 1.0, 0.0, 10.0, 1000.0);
    CHECK(b.lhs == doctest::Approx(990.0));
    CHECK(b.rhs == doctest::Approx(100.0 / 1000.0 * std::log(100.0)));
}

TEST_CASE("critical scale h and its companions") {
    const CriticalScale s0(0.0, 2.0), s1(-1.0, 2.0);
    for (double t : {0.0, 1.0, 1e3, 1e10}) {
        CHECK(s0.h(t) == doctest::Approx(std::log(std::exp(1.0) + t)));
        CHECK(s1.h(t) == doctest::Approx(std::log(std::exp(1.0) + std::log(std::exp(1.0) + t))));
        CHECK(s0.psi_plus(t) == doctest::Approx(t * std::pow(s0.h(t), 2.0)));
        CHECK(s0.psi_minus(t) == doctest::Approx(t * std::pow(s0.h(t), -2.0)));
    }
    CHECK(s0.log_h_of_log(2000.0) == doctest::Approx(std::log(2000.0)).epsilon(1e-12));
}

TEST_CASE("Phi and its inverse") {
    for (double q : {-1.0, 0.0, 1.5}) {
        const CriticalScale s(q, 2.0);
        for (double y : {1e-3, 0.5, 3.0, 1e2, 1e6, 1e12}) CHECK(s.phi_inverse(s.phi(y)) == doctest::Approx(y).epsilon(1e-10));
        // Psi increasing
        double prev = 0.0;
        for (double t = 1e-3; t < 1e12; t *= 2) {
            const double v = s.phi_inverse(t);
            CHECK(v > prev);
            prev = v;
        }
    }
}

TEST_CASE("dilation ratios of h match a direct evaluation") {
    const CriticalScale s(-1.0, 1.0);
    const HRelationsReport r = h_relations_check(s, 10.0, 1.0, 0.0, 1e2, 1e12, 10);
    double lo = INFINITY, hi = 0.0;
    for (int i = 0; i <= 100; ++i) {
        const double t = std::pow(10.0, 2.0 + 0.1 * i);
        const double v = s.h(10 * t) / s.h(t);
        lo = std::min(lo, v), hi = std::max(hi, v);
    }
    CHECK(r.dilation.min == doctest::Approx(lo).epsilon(1e-9));
    CHECK(r.dilation.max == doctest::Approx(hi).epsilon(1e-9));
    CHECK(r.round_trip.min == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(r.round_trip.max == doctest::Approx(1.0).epsilon(1e-12));
}
