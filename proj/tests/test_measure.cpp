#include <doctest.h>

#include <cmath>

#include "fraclab/cases.hpp"
#include "fraclab/measure.hpp"

using namespace fraclab;

namespace {

const FracParams kHeat1(1, 2.0);

SingularProfile prof(double p, double q, double c, double R) { return SingularProfile(label_case(kHeat1, p, q), c, R); }

}  // namespace

TEST_CASE("case labels") {
    CHECK(label_case(kHeat1, 2.0, 5.0).kind == CaseKind::Subcritical);
    CHECK(label_case(kHeat1, 3.0, -2.0).kind == CaseKind::CriticalIntegrable);
    CHECK(label_case(kHeat1, 3.0, -1.0).kind == CaseKind::CriticalBorderline);
    CHECK(label_case(kHeat1, 3.0, 0.0).kind == CaseKind::CriticalLog);
    CHECK(label_case(kHeat1, 5.0, -3.0).kind == CaseKind::Supercritical);
    CHECK(label_case(FracParams(2, 1.0), 1.5, 0.0).kind == CaseKind::CriticalLog);
    CHECK_THROWS_AS(label_case(kHeat1, 1.0, 0.0), ParameterError);
    for (auto k : {CaseKind::Subcritical, CaseKind::CriticalIntegrable, CaseKind::CriticalBorderline,
                   CaseKind::CriticalLog, CaseKind::Supercritical})
        CHECK(parse_case(case_name(k)) == k);
}

TEST_CASE("ball masses of the singular profiles") {
    // one-dimensional primitives of the three shapes near 0
    const double c = 0.7;
    for (double s : {1e-1, 1e-3, 1e-6}) {
        CAPTURE(s);
        const double L = -std::log(s);
        CHECK(ball_mass(prof(5, 0, c, 1.0), {0, 0, 0}, s) == doctest::Approx(4 * c * std::sqrt(s)).epsilon(1e-9));
        CHECK(ball_mass(prof(3, 0, c, 0.5), {0, 0, 0}, s) == doctest::Approx(4 * c / std::sqrt(L)).epsilon(1e-9));
        if (s < 0.3)
            CHECK(ball_mass(prof(3, -1, c, 0.3), {0, 0, 0}, s) == doctest::Approx(4 * c / std::sqrt(std::log(L))).epsilon(1e-9));
    }
}

TEST_CASE("ball mass far below double range stays finite and ordered") {
    const SingularProfile p = prof(3, -1, 1.0, 0.3);
    double prev = INFINITY;
    for (double s : {1e-10, 1e-100, 1e-300}) {
        const double m = ball_mass(p, {0, 0, 0}, s);
        CHECK(std::isfinite(m));
        CHECK(m > 0.0);
        CHECK(m < prev);
        prev = m;
    }
}

TEST_CASE("power transform averages") {
    // average of (c|x|^{-1/2})^{3/2} over (-s, s) is 4 c^{3/2} s^{-3/4}
    const InitialMeasure mu = InitialMeasure::from_profile(prof(5, 0, 0.3, 1.0));
    for (double s : {0.5, 1e-2, 1e-5})
        CHECK(ball_average(mu, DensityTransform::power(1.5), {0, 0, 0}, s) ==
              doctest::Approx(4 * std::pow(0.3, 1.5) * std::pow(s, -0.75)).epsilon(1e-8));
    CHECK(std::isinf(ball_integral(InitialMeasure::dirac(1), DensityTransform::power(2.0), {0, 0, 0}, 0.1)));
}

TEST_CASE("atoms, background and scaling") {
    InitialMeasure mu = InitialMeasure::dirac(1, 2.0, {0.5, 0, 0});
    mu.background = 0.25;
    CHECK(ball_mass(mu, {0, 0, 0}, 1.0) == doctest::Approx(2.0 + 0.5));
    CHECK(ball_mass(mu, {0, 0, 0}, 0.4) == doctest::Approx(0.2));
    CHECK(ball_mass(mu.scaled(3.0), {0, 0, 0}, 1.0) == doctest::Approx(7.5));
    CHECK_THROWS_AS(mu.scaled(-1.0), ParameterError);
}

TEST_CASE("discretization keeps the mass of a profile") {
    const GridSpec g(1, 2.0, 400);
    const SingularProfile p = prof(5, 0, 1.0, 1.0);
    const GridFunction d = discretize(InitialMeasure::from_profile(p), g);
    double m = 0.0;
    for (double v : d.values) m += v * g.dx();
    CHECK(m == doctest::Approx(4.0).epsilon(1e-9));
}

TEST_CASE("sup of the ball mass sits on the singularity") {
    const InitialMeasure mu = InitialMeasure::from_profile(prof(5, 0, 1.0, 1.0));
    const BallSup s = sup_ball_mass(mu, 1e-3, 1.5);
    CHECK(std::fabs(s.center[0]) < 1e-3);
    CHECK(s.value == doctest::Approx(4 * std::sqrt(1e-3)).epsilon(1e-6));
}

TEST_CASE("profile cutoffs") {
    CHECK_THROWS_AS(prof(3, -1, 1.0, 0.5), ParameterError);  // log log factor needs R < 1/e
    CHECK_THROWS_AS(prof(3, 0, 1.0, 1.0), ParameterError);
    CHECK_NOTHROW(prof(5, 0, 1.0, 1.0));
    CHECK_THROWS_AS(SingularProfile(label_case(kHeat1, 2.0, 0.0), 1.0, 0.5), ParameterError);
}
