// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "fraclab/asymptotics.hpp"
#include "fraclab/classifier.hpp"
#include "fraclab/experiment.hpp"
#include "fraclab/kernel.hpp"
#include "fraclab/semigroup.hpp"
#include "fraclab/solver.hpp"
#include "fraclab/supersolution.hpp"

using namespace fraclab;

namespace {

struct Result {
    bool pass = false;
    std::string detail;
};

std::string fmt(double x) {
    std::ostringstream os;
    os.precision(4);
    os << x;
    return os.str();
}

// 1. unit mass of Gamma(., 1)
Result kernel_normalization() {
    Result r{true, ""};
    double worst = 0.0;
    for (int N : {1, 2})
        for (double theta : {1.0, 1.5, 2.0}) {
            const double err = std::fabs(kernel_profile(FracParams(N, theta))->total_mass() - 1.0);
            worst = std::max(worst, err);
            if (!(err <= 1e-6)) {
                r.pass = false;
                r.detail += "N=" + std::to_string(N) + " theta=" + fmt(theta) + " err=" + fmt(err) + "; ";
            }
        }
    r.detail += "max |mass - 1| = " + fmt(worst);
    return r;
}

// 2. Gamma(t) = Gamma(t - s) * Gamma(s)
Result chapman_kolmogorov() {
    Result r{true, ""};
    for (double theta : {1.0, 1.5, 2.0}) {
        const auto ck = chapman_kolmogorov_check(FracParams(1, theta), 2.0, 1.0, GridSpec(1, 50.0, 4096));
        r.pass = r.pass && ck.discrepancy < 1e-4;
        r.detail += "theta=" + fmt(theta) + ": " + fmt(ck.discrepancy) + "  ";
    }
    return r;
}

// 3. two-sided bound for theta < 2
Result bound_band() {
    Result r{true, ""};
    for (int N : {1, 2})
        for (double theta : {1.0, 1.5}) {
            const auto k = kernel_profile(FracParams(N, theta));
            double lo = INFINITY, hi = 0.0;
            for (int it = 0; it <= 20; ++it) {
                const double t = std::pow(10.0, -2.0 + 2.0 * it / 20);
                for (int i = 0; i <= 1000; ++i) {
                    const double x[2] = {100.0 * i / 1000.0, 0.0};
                    const double q = kernel_bound_ratio(*k, std::span<const double>(x, std::size_t(N)), t);
                    lo = std::min(lo, q), hi = std::max(hi, q);
                }
            }
            r.pass = r.pass && lo > 0.0 && hi / lo <= 100.0;
            r.detail += "N=" + std::to_string(N) + " theta=" + fmt(theta) + ": [" + fmt(lo) + ", " + fmt(hi) + "]  ";
        }
    return r;
}

// 4. ||S(t) delta|| t^{N/theta} / sup ball mass is flat in t
Result smoothing() {
    Result r{true, ""};
    for (double theta : {1.0, 1.5, 2.0}) {
        const FracParams fp(1, theta);
        double lo = INFINITY, hi = 0.0;
        for (int i = 0; i <= 6; ++i) {
            const double t = std::pow(10.0, -3.0 + 0.5 * i);
            // box scaled with the kernel width so each t is resolved alike
            const double q = smoothing_ratio(InitialMeasure::dirac(1), t, GridSpec(1, 50.0 * std::pow(t, 1.0 / theta), 4096), fp);
            lo = std::min(lo, q), hi = std::max(hi, q);
        }
        r.pass = r.pass && hi / lo < 2.0;
        r.detail += "theta=" + fmt(theta) + ": max/min " + fmt(hi / lo) + "  ";
    }
    return r;
}

// 5. u' = u^2, u(0) = 1 gives u(0.5) = 2
Result ode_oracle() {
    auto run = [](int M) {
        SolverConfig c;
        c.params = FracParams(1, 2.0);
        c.grid = GridSpec(1, 2.0, 16);
        c.T = 0.5;
        c.M = M;
        const SolverOutcome o = solve(InitialMeasure::constant(1, 1.0), Nonlinearity::prototype(2, 0), c);
        return o.verdict == Verdict::Converged ? o.trajectory.final_sup() : NAN;
    };
    const double u256 = run(256), u512 = run(512);
    const double e256 = std::fabs(u256 - 2.0), e512 = std::fabs(u512 - 2.0);
    const double order = e256 / e512;
    Result r;
    r.pass = std::fabs(u512 - 2.0) <= 0.2 && order > 1.6 && order < 2.4;
    r.detail = "u(T) = " + fmt(u512) + " at M=512, error ratio M=256/M=512 = " + fmt(order);
    return r;
}

// 6. threshold bracket for c |x|^{-1/2} on B(0, 1), p = 5
Result dichotomy() {
    ConfigMap cfg = default_config();
    set_value(cfg, "problem.p", "5");
    set_value(cfg, "data.kind", "profile");
    set_value(cfg, "data.R", "1");
    set_value(cfg, "solver.points", "256");
    set_value(cfg, "solver.M", "256");
    const ExperimentConfig e = ExperimentConfig::from_map(cfg);
    const auto t0 = std::chrono::steady_clock::now();
    Result r;
    try {
        const SweepReport s = sweep_threshold([&](double c) { return build_measure(e, c); }, build_nonlinearity(e),
                                              e.solver, e.c_lo, e.c_hi, e.sweep_tolerance, e.workers, e.U_max_check);
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        const double ratio = s.c_plus / s.c_minus;
        r.pass = s.bracketed && s.monotone && ratio <= 1.1 && secs < 600.0;
        r.detail = "[" + fmt(s.c_minus) + ", " + fmt(s.c_plus) + "] ratio " + fmt(ratio) +
                   (s.monotone ? " monotone" : " non-monotone: " + s.anomaly) + ", " + fmt(secs) + " s";
    } catch (const NoDichotomy& err) {
        r.pass = false;
        r.detail = err.what();
    }
    return r;
}

// 7. mollification ladder for Dirac data
Result dirac_ladder() {
    SolverConfig c;
    c.params = FracParams(1, 2.0);
    c.grid = GridSpec(1, 5.0, 512);
    c.T = 0.5;
    c.M = 256;
    std::vector<LadderRung> ladder;
    for (int n : {4, 16, 64, 256}) ladder.push_back({INFINITY, n, 256});

    Result r{true, ""};
    const LadderReport sub = refine_and_compare(InitialMeasure::dirac(1, 0.5), Nonlinearity::prototype(2, 0), c, ladder);
    bool all_converged = true;
    for (const auto& e : sub.entries) all_converged = all_converged && e.verdict == Verdict::Converged;
    const double last = sub.entries[3].final_sup / sub.entries[2].final_sup;
    const bool saturates = all_converged && std::fabs(last - 1.0) <= 0.05;
    r.detail += "p=2: last ratio " + fmt(last) + "; p=4:";

    const LadderReport sup = refine_and_compare(InitialMeasure::dirac(1, 2.0), Nonlinearity::prototype(4, 0), c, ladder);
    bool grows = true, capped = false;
    for (std::size_t i = 1; i < sup.entries.size(); ++i) {
        const auto& prev = sup.entries[i - 1];
        const auto& cur = sup.entries[i];
        if (prev.verdict == Verdict::Diverged) capped = true;
        if (capped) {
            grows = grows && cur.verdict == Verdict::Diverged;
            r.detail += " capped";
            continue;
        }
        if (cur.verdict == Verdict::Diverged) {
            r.detail += " diverged";
            continue;
        }
        const double g = cur.final_sup / prev.final_sup;
        grows = grows && g >= 2.0;
        r.detail += " x" + fmt(g);
    }
    const bool v2 = dirac_solvable(Nonlinearity::prototype(2, 0), c.params).solvable;
    const bool v4 = dirac_solvable(Nonlinearity::prototype(4, 0), c.params).solvable;
    r.detail += std::string("; classifier p=2 ") + (v2 ? "solvable" : "unsolvable") + ", p=4 " +
                (v4 ? "solvable" : "unsolvable");
    r.pass = saturates && grows && v2 && !v4;
    return r;
}

// 8. numerical inverse against the asymptotic inverse
Result regvar_band() {
    Result r{true, ""};
    struct Abc {
        double a, b, c;
    };
    // the last two are (theta/N, q, 0) with N = 1, theta = 2 for q = 1 and q = -2
    for (const Abc& t : {Abc{1.5, 2.0, -1.0}, Abc{1.0, 1.0, 0.0}, Abc{2.0, 1.0, 0.0}, Abc{2.0, -2.0, 0.0}}) {
        const RegVarFunction phi(t.a, t.b, t.c);
        double lo = INFINITY, hi = 0.0;
        for (int i = 0; i <= 80; ++i) {
            const double y = std::pow(10.0, 4.0 + 8.0 * i / 80);
            const double q = regvar_inverse(phi, y) / phi.asymptotic_inverse(y);
            lo = std::min(lo, q), hi = std::max(hi, q);
        }
        r.pass = r.pass && hi / lo <= 3.0;
        r.detail += "(" + fmt(t.a) + "," + fmt(t.b) + "," + fmt(t.c) + "): " + fmt(hi / lo) + "  ";
    }
    return r;
}

// 9. small multiples pass the sufficient check, 10x multiples break the envelope bound
Result classifier_consistency() {
    const FracParams fp(1, 2.0);
    const auto sig = dyadic_sigmas(3, 12);
    struct Case {
        double p, q, R, alpha;
    };
    Result r{true, ""};
    for (const Case& k : {Case{3, -1, 0.03, 0.25}, Case{3, 0, 0.2, 0.25}, Case{5, 0, 0.5, 1.5}}) {
        const CaseLabel lab = label_case(fp, k.p, k.q);
        const SingularProfile small(lab, 0.1, k.R);
        const InitialMeasure mu = InitialMeasure::from_profile(small);
        const ConditionReport suff = lab.kind == CaseKind::Supercritical
                                         ? sufficient_check_C(mu, fp, k.p, k.q, k.alpha, 1.0, sig)
                                         : sufficient_check_B(mu, fp, k.q, k.alpha, 1.0, sig);
        // envelope constant calibrated on the solvable multiple
        const ConditionReport base = necessary_envelope(mu, fp, k.p, k.q, sig);
        double C = 0.0;
        for (const auto& row : base.rows) C = std::max(C, row.ratio);
        const ConditionReport big =
            necessary_envelope(InitialMeasure::from_profile(small.with_coefficient(1.0)), fp, k.p, k.q, sig, C);
        bool above = true, monotone = true;
        for (std::size_t i = 0; i < big.rows.size(); ++i) {
            above = above && big.rows[i].ratio > C;
            // sigmas are decreasing
            if (i > 0) monotone = monotone && big.rows[i].ratio >= big.rows[i - 1].ratio * (1.0 - 1e-6);
        }
        const bool ok = suff.satisfied && !big.satisfied && above && monotone;
        r.pass = r.pass && ok;
        r.detail += std::string(case_name(lab.kind)) + ": sufficient " + (suff.satisfied ? "ok" : "FAILED") +
                    ", 10x quotient " + fmt(big.rows.front().ratio) + ".." + fmt(big.rows.back().ratio) + " vs C " +
                    fmt(C) + "  ";
    }
    return r;
}

// 10. the three supersolution families
Result supersolutions() {
    const FracParams fp(1, 2.0);
    const GridSpec grid(1, 4.0, 256);
    struct Case {
        std::string name;
        Family family;
        double p, q, T;
        InitialMeasure mu;
        SupersolutionOptions opt;
    };
    GridFunction bump = apply_semigroup(InitialMeasure::dirac(1, 0.1), 0.01, grid, fp);
    bump.warnings.clear();
    const InitialMeasure dirac_multiple = InitialMeasure::from_density(bump);
    SupersolutionOptions a, b, c;
    a.R = 1.0;
    b.L = 2.0;
    c.R = 0.5;
    const InitialMeasure prof = InitialMeasure::from_profile(SingularProfile(label_case(fp, 7, 0), 0.1, 0.5));
    const std::vector<Case> cases = {
        {"A", Family::A, 2, 0, 0.05, dirac_multiple, a},
        {"B q=-1", Family::B, 3, -1, 0.01, dirac_multiple, b},
        {"B q=0", Family::B, 3, 0, 0.01, dirac_multiple, b},
        {"C p=7", Family::C, 7, 0, 0.01, prof, c},
    };
    Result r{true, ""};
    for (const Case& k : cases) {
        const Nonlinearity F = Nonlinearity::prototype(k.p, k.q);
        try {
            const Supersolution w = build_supersolution(k.family, k.mu, F, fp, grid, k.opt);
            const VerificationReport v = verify_supersolution(w, k.mu, F, k.T, 64);
            SolverConfig s;
            s.params = fp;
            s.grid = grid;
            s.T = k.T;
            s.M = 64;
            const SolverOutcome u = solve(k.mu, F, s);
            const bool dom = u.verdict == Verdict::Converged && domination_check(u, w).holds;
            r.pass = r.pass && v.passed && dom;
            r.detail += k.name + ": violation " + fmt(v.max_violation) + " tol " + fmt(v.tolerance) +
                        (dom ? " dominated" : " NOT dominated") + "  ";
        } catch (const Error& err) {
            r.pass = false;
            r.detail += k.name + ": " + err.what() + "  ";
        }
    }
    return r;
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Result()>>> criteria = {
        {"kernel normalization", kernel_normalization},
        {"Chapman-Kolmogorov", chapman_kolmogorov},
        {"two-sided kernel bound", bound_band},
        {"smoothing constant", smoothing},
        {"ODE oracle", ode_oracle},
        {"threshold sweep", dichotomy},
        {"Dirac ladder", dirac_ladder},
        {"regularly varying inverse", regvar_band},
        {"classifier consistency", classifier_consistency},
        {"supersolution verification", supersolutions},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto t0 = std::chrono::steady_clock::now();
        Result r;
        try {
            r = criteria[i].second();
        } catch (const std::exception& e) {
            r.pass = false;
            r.detail = std::string("exception: ") + e.what();
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (!r.pass) ++failed;
        std::printf("%-4s criterion %zu (%s): %s [%.1f s]\n", r.pass ? "PASS" : "FAIL", i + 1,
                    criteria[i].first.c_str(), r.detail.c_str(), secs);
        std::fflush(stdout);
    }
    return failed == 0 ? 0 : 1;
}
