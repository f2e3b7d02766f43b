#include <doctest.h>

#include <cmath>

#include "fraclab/solver.hpp"

using namespace fraclab;

namespace {

SolverConfig ode_config(int M) {
    SolverConfig c;
    c.params = FracParams(1, 2.0);
    c.grid = GridSpec(1, 2.0, 16);
    c.T = 0.5;
    c.M = M;
    return c;
}

}  // namespace

TEST_CASE("uniform data follows the ODE u' = u^2") {
    // u(T) = 1 / (1 - T) = 2; the time rule is first order
    double prev = 0.0;
    for (int M : {256, 512, 1024}) {
        const SolverOutcome o = solve(InitialMeasure::constant(1, 1.0), Nonlinearity::prototype(2, 0), ode_config(M));
        REQUIRE(o.verdict == Verdict::Converged);
        CHECK(o.trajectory.monotone);
        const double err = std::fabs(o.trajectory.final_sup() - 2.0);
        CHECK(err < 0.2);
        if (prev > 0) CHECK(prev / err == doctest::Approx(2.0).epsilon(0.05));
        prev = err;
    }
}

TEST_CASE("zero nonlinearity gives the linear flow") {
    SolverConfig c = ode_config(32);
    c.grid = GridSpec(1, 6.0, 256);
    const InitialMeasure mu = InitialMeasure::dirac(1, 1.0);
    c.mollification = 8;
    const SolverOutcome o = solve(mu, Nonlinearity::zero(), c);
    REQUIRE(o.verdict == Verdict::Converged);
    const Semigroup S(c.params, c.grid);
    const GridFunction ref = S.apply(mu, c.T + 2.0 / 8);
    double diff = 0.0;
    for (std::size_t k = 0; k < ref.values.size(); ++k)
        diff = std::max(diff, std::fabs(ref.values[k] - o.trajectory.slices.back().values[k]));
    CHECK(diff < 1e-12);
}

TEST_CASE("zero data stays zero") {
    const SolverOutcome o = solve(InitialMeasure::zero(1), Nonlinearity::prototype(3, 0), ode_config(16));
    CHECK(o.verdict == Verdict::Converged);
    CHECK(o.trajectory.sup() == 0.0);
}

TEST_CASE("large data are witnessed to diverge") {
    // blow-up time of u' = u^2 from 10 is 0.1 < T
    const SolverOutcome o = solve(InitialMeasure::constant(1, 10.0), Nonlinearity::prototype(2, 0), ode_config(128));
    CHECK(o.verdict == Verdict::Diverged);
    CHECK(o.diverged_norm > 1e8);
    // a Picard iterate lies below the discrete solution, so it cannot overflow before blow-up
    CHECK(o.diverged_time > 0.09);
    CHECK(o.diverged_time <= 0.5);
}

TEST_CASE("truncation keeps the iteration bounded") {
    SolverConfig c = ode_config(64);
    c.truncation = 1.0;
    // u' <= 1, so u(T) <= 10 + T
    const SolverOutcome o = solve(InitialMeasure::constant(1, 10.0), Nonlinearity::prototype(2, 0), c);
    REQUIRE(o.verdict == Verdict::Converged);
    CHECK(o.trajectory.final_sup() == doctest::Approx(10.5).epsilon(1e-9));
}

TEST_CASE("sweeps increase monotonically from the linear part") {
    SolverConfig c = ode_config(64);
    c.grid = GridSpec(1, 4.0, 128);
    c.mollification = 16;
    const MildSolver s(InitialMeasure::dirac(1, 0.5), Nonlinearity::prototype(2, 0), c);
    SolutionTrajectory u = s.initial_iterate();
    for (int k = 0; k < 5; ++k) {
        const SolutionTrajectory v = s.sweep(u);
        for (std::size_t j = 0; j < u.slices.size(); ++j)
            for (std::size_t i = 0; i < u.slices[j].values.size(); ++i)
                CHECK(v.slices[j].values[i] + v.slices[j].background >= u.slices[j].values[i] + u.slices[j].background - 1e-14);
        u = v;
    }
}

TEST_CASE("converged solutions satisfy the Duhamel equation") {
    SolverConfig c = ode_config(128);
    c.grid = GridSpec(1, 4.0, 128);
    c.mollification = 16;
    const InitialMeasure mu = InitialMeasure::dirac(1, 0.5);
    const Nonlinearity F = Nonlinearity::prototype(2, 0);
    const SolverOutcome o = solve(mu, F, c);
    REQUIRE(o.verdict == Verdict::Converged);
    CHECK(duhamel_residual(o, mu, F, c) < 0.02 * o.trajectory.sup());
    const SolverOutcome big = solve(InitialMeasure::constant(1, 10.0), F, ode_config(32));
    CHECK_THROWS_AS(duhamel_residual(big, InitialMeasure::constant(1, 10.0), F, ode_config(32)), PreconditionError);
}

TEST_CASE("atoms need mollification") {
    CHECK_THROWS_AS(solve(InitialMeasure::dirac(1), Nonlinearity::prototype(2, 0), ode_config(8)), PreconditionError);
    SolverConfig bad = ode_config(8);
    bad.T = -1;
    CHECK_THROWS_AS(bad.validate(), ParameterError);
}

TEST_CASE("mollification ladder for Dirac data") {
    SolverConfig c;
    c.params = FracParams(1, 2.0);
    c.grid = GridSpec(1, 5.0, 512);
    c.T = 0.5;
    c.M = 256;
    std::vector<LadderRung> ladder;
    for (int n : {4, 16, 64}) ladder.push_back({INFINITY, n, 256});
    const LadderReport sub = refine_and_compare(InitialMeasure::dirac(1, 0.5), Nonlinearity::prototype(2, 0), c, ladder);
    CHECK(sub.nondecreasing);
    for (const auto& e : sub.entries) CHECK(e.verdict == Verdict::Converged);
    // frozen from the reference run
    CHECK(sub.entries[2].final_sup == doctest::Approx(0.2216).epsilon(2e-3));
    const LadderReport sup = refine_and_compare(InitialMeasure::dirac(1, 2.0), Nonlinearity::prototype(4, 0), c, ladder);
    CHECK(sup.entries[0].verdict == Verdict::Converged);
    CHECK(sup.entries[2].verdict == Verdict::Diverged);
}
