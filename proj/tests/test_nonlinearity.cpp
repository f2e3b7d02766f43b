#include <doctest.h>

#include <cmath>
#include <sstream>

#include "fraclab/nonlinearity.hpp"

using namespace fraclab;

TEST_CASE("prototype values") {
    const Nonlinearity F = Nonlinearity::prototype(3.0, -1.0, 2.0);
    CHECK(F(0.0) == 0.0);
    CHECK(F(2.0) == doctest::Approx(8.0 / std::log(4.0)).epsilon(1e-15));
    const Nonlinearity G = Nonlinearity::prototype(2.0, 1.0);  // L = 1 uses log1p
    CHECK(G(1e-8) == doctest::Approx(1e-16 * std::log1p(1e-8)).epsilon(1e-14));
    CHECK(G.truncated(10.0, 5.0) == 5.0);
    std::vector<double> u{0.0, 1.0, 3.0}, out(3);
    G.apply(u, out, INFINITY);
    CHECK(out[2] == doctest::Approx(9.0 * std::log(4.0)));
    CHECK(Nonlinearity::zero()(7.0) == 0.0);
    CHECK_FALSE(Nonlinearity::zero().has_descriptor());
}

TEST_CASE("tabulated nonlinearity interpolates and extends") {
    const Nonlinearity F = Nonlinearity::tabulated({0.0, 1.0, 2.0}, {0.0, 1.0, 4.0}, 2.0, 0.0);
    CHECK(F(0.5) == doctest::Approx(0.5));
    CHECK(F(1.5) == doctest::Approx(2.5));
    CHECK(F(4.0) == doctest::Approx(16.0).epsilon(1e-12));
}

TEST_CASE("nested integral tables reproduce closed forms") {
    // p = 2, q = 0, d = 1, from 0: I(s) = s, O(t) = t, g = t^2
    const ComparisonFunction g = build_majorant(2.0, 0.0, 1.0, 0.0);
    for (double t : {1e-6, 0.3, 1.0, 17.0, 1e6}) CHECK(g(t) == doctest::Approx(t * t).epsilon(1e-9));
    // p = 3, q = 0, d = 2, from R: t (t - R)^2 / 2
    const double R = 0.5;
    const ComparisonFunction f = build_minorant(3.0, 2.0, 0.0, R, 1.0);
    CHECK(f(0.2) == 0.0);
    for (double t : {0.51, 0.7, 2.0, 40.0, 1e5}) {
        CHECK(f(t) == doctest::Approx(t * (t - R) * (t - R) / 2).epsilon(1e-8));
        CHECK(f.derivative(t) == doctest::Approx((t - R) * (t - R) / 2 + t * (t - R)).epsilon(1e-7));
    }
}

TEST_CASE("comparison functions are convex") {
    const ComparisonFunction f = build_minorant(3.5, 2.0, -1.0, 1.0, 1.0);
    double prev = f.derivative(1.0 + 1e-6);
    for (double t = 1.1; t < 1e4; t *= 1.3) {
        const double d = f.derivative(t);
        CHECK(d >= prev * (1 - 1e-9));
        prev = d;
    }
    CHECK_THROWS_AS(build_minorant(3.0, 3.0, 0.0, 0.0, 1.0), ParameterError);
}

TEST_CASE("fitted majorant dominates the prototype") {
    const Nonlinearity F = Nonlinearity::prototype(3.0, -1.0, std::exp(1.0));
    const ComparisonFunction g = fit_majorant(F);
    // frozen from the doubling search
    CHECK(g.kappa() == 4.0);
    CHECK(g.L() == 4.0);
    const DominationReport r = check_domination(g, F);
    CHECK(r.holds);
    CHECK(r.samples > 1000);
    CHECK_FALSE(check_domination(g.with_constants(1.0, 0.0), F).holds);
}

TEST_CASE("fitted minorant sits below the prototype") {
    const Nonlinearity F = Nonlinearity::prototype(4.0, 0.0);
    const ComparisonFunction f = fit_minorant(F, 2.0, 1.0);
    CHECK(check_domination(f, F).holds);
    CHECK(f.kappa() <= 1.0);
}

TEST_CASE("integral criterion") {
    const FracParams fp(1, 2.0);  // p_theta = 3
    const IntegralCriterion a = integral_criterion(Nonlinearity::prototype(2.0, 0.0), fp);
    CHECK(a.finite);
    CHECK(a.partial == doctest::Approx(1.0 - 1e-12).epsilon(1e-9));
    CHECK_FALSE(integral_criterion(Nonlinearity::prototype(4.0, 0.0), fp).finite);
    CHECK_FALSE(integral_criterion(Nonlinearity::prototype(3.0, -1.0), fp).finite);
    CHECK(integral_criterion(Nonlinearity::prototype(3.0, -2.0), fp).finite);
}

TEST_CASE("csv export") {
    std::ostringstream os;
    build_majorant(2.0, 0.0, 1.0, 0.0).write_csv(os);
    CHECK(os.str().rfind("tau,", 0) == 0);
}
