#include "fraclab/supersolution.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>

namespace fraclab {
namespace {

std::vector<double> log_samples(double lo, double hi, int per_decade) {
    const int n = std::max(2, int(std::ceil(std::log10(hi / lo) * per_decade)) + 1);
    std::vector<double> out(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) out[std::size_t(i)] = lo * std::pow(hi / lo, double(i) / (n - 1));
    return out;
}

// First sample where f drops by more than roundoff, or NaN.
template <class Fn>
double first_decrease(const std::vector<double>& tau, Fn f) {
    double prev = f(tau.front());
    for (std::size_t i = 1; i < tau.size(); ++i) {
        const double v = f(tau[i]);
        if (!std::isfinite(v) || v < prev - 1e-10 * std::fabs(prev) - 1e-12) return tau[i];
        prev = v;
    }
    return std::numeric_limits<double>::quiet_NaN();
}

std::string num(double x) {
    std::ostringstream os;
    os.precision(6);
    os << x;
    return os.str();
}

void require_increasing_F(const Nonlinearity& F, const std::vector<double>& tau) {
    const double bad = first_decrease(tau, [&](double s) { return F(s); });
    if (std::isfinite(bad)) throw ConstructionError("F increasing", "F decreases near tau = " + num(bad));
}

// mu^alpha is locally integrable near the singular point of the profile.
bool power_integrable(const SingularProfile& p, double alpha) {
    const auto e = p.exponents();
    const double N = p.dim();
    const double a = alpha * e[0], b = alpha * e[1], c = alpha * e[2];
    constexpr double eps = 1e-12;
    if (a > -N + eps) return true;
    if (a < -N - eps) return false;
    if (b < -1.0 - eps) return true;
    if (b > -1.0 + eps) return false;
    return c < -1.0 - eps;
}

// values + background -> g(values + background) - g(background), background g(background)
GridFunction transform(const GridFunction& f, const std::function<double(double)>& g) {
    GridFunction out(f.spec, g(f.background), f.time);
    for (std::size_t k = 0; k < f.values.size(); ++k) out.values[k] = g(f.values[k] + f.background) - out.background;
    return out;
}

}  // namespace

std::string_view family_name(Family f) {
    switch (f) {
        case Family::A: return "A";
        case Family::B: return "B";
        case Family::C: return "C";
    }
    return "?";
}

Family parse_family(std::string_view s) {
    if (s == "A" || s == "a") return Family::A;
    if (s == "B" || s == "b") return Family::B;
    if (s == "C" || s == "c") return Family::C;
    throw ParameterError("unknown supersolution family '" + std::string(s) + "'");
}

double Supersolution::inner(double m) const {
    switch (family_) {
        case Family::A: return m;
        case Family::B: return scale_->phi(m + opt_.L);
        case Family::C: return std::pow(m, opt_.alpha);
    }
    return m;
}

double Supersolution::outer(double v) const {
    switch (family_) {
        case Family::A: return opt_.R + 2.0 * v;
        case Family::B: return 2.0 * scale_->phi_inverse(v);
        case Family::C: return 2.0 * std::pow(std::max(v, 0.0), 1.0 / opt_.alpha) + opt_.R;
    }
    return v;
}

GridFunction Supersolution::evaluate(double t) const {
    if (t < 0.0) throw DomainError("supersolution time must be >= 0");
    GridFunction v = t > 0.0 ? S_->apply_parts(data_, atoms_, t, false) : data_;
    v.time = t;
    if (t == 0.0 && !atoms_.empty()) throw DomainError("w(0) is not a function for atomic data");
    GridFunction w(v.spec, outer(v.background), t);
    w.warnings = v.warnings;
    for (std::size_t k = 0; k < v.values.size(); ++k) w.values[k] = outer(v.values[k] + v.background) - w.background;
    return w;
}

Supersolution build_supersolution(Family family, const InitialMeasure& mu, const Nonlinearity& F,
                                  const FracParams& params, const GridSpec& grid, const SupersolutionOptions& opt) {
    mu.validate();
    if (mu.N != params.N || grid.N != params.N) throw ParameterError("dimensions of mu, grid and params differ");
    if (!(opt.R >= 0.0)) throw ConstructionError("R >= 0", "R = " + num(opt.R));
    if (!(opt.tau_max > std::max(opt.R, 1.0))) throw ParameterError("tau_max must exceed max(R, 1)");

    Supersolution s;
    s.family_ = family;
    s.opt_ = opt;
    const double lo = std::max(opt.R, 1e-3);
    const auto tau = log_samples(lo, opt.tau_max, opt.per_decade);
    const double pth = params.p_theta;

    switch (family) {
        case Family::A: {
            const double bad = first_decrease(tau, [&](double x) { return F(x) / x; });
            if (std::isfinite(bad))
                throw ConstructionError("tau^-1 F(tau) increasing above R", "decreases near tau = " + num(bad));
            if (F.has_descriptor() && !integral_criterion(F, params).finite)
                throw ConstructionError("int^inf tau^{-p_theta-1} F(tau) dtau < inf",
                                        "the tail integral diverges for " + F.describe());
            break;
        }
        case Family::B: {
            if (!F.has_descriptor() || !is_critical(params, F.p()))
                throw ConstructionError("F ~ tau^{p_theta} G(tau)", "needs p = p_theta = " + num(pth));
            if (F.q() < -1.0) throw ConstructionError("q >= -1", "q = " + num(F.q()));
            if (!(opt.alpha > 0.0)) throw ConstructionError("alpha > 0", "alpha = " + num(opt.alpha));
            if (!(opt.L > opt.R)) throw ConstructionError("L > R", "L = " + num(opt.L) + ", R = " + num(opt.R));
            require_increasing_F(F, tau);
            s.scale_.emplace(F.q(), opt.alpha);
            const CriticalScale& cs = *s.scale_;
            const double floor = cs.phi_inverse(cs.phi_threshold());
            if (opt.L < floor)
                throw ConstructionError("Phi convex and increasing on [L, inf)",
                                        "needs L >= " + num(floor) + " (Psi at its monotonicity threshold)");
            // tau^eta h^{-alpha} G increasing for some eta in (0, theta/N), G = tau^{-p_theta} F
            const auto upper = log_samples(std::max(lo, opt.L), opt.tau_max, opt.per_decade);
            bool found = false;
            for (int k = 1; k < 8 && !found; ++k) {
                const double eta = params.theta / params.N * k / 8.0;
                found = !std::isfinite(first_decrease(upper, [&](double x) {
                    return std::exp(eta * std::log(x) - opt.alpha * cs.log_h(x) + std::log(F(x)) - pth * std::log(x));
                }));
            }
            if (!found)
                throw ConstructionError("tau^eta h^{-alpha} G increasing", "no eta in (0, theta/N) works on the sample");
            break;
        }
        case Family::C: {
            if (!F.has_descriptor()) throw ConstructionError("tau^-d F(tau) positive", "F vanishes");
            if (!(opt.alpha >= 1.0)) throw ConstructionError("alpha > 1", "alpha = " + num(opt.alpha));
            const double p = F.p();
            double d = opt.d;
            if (!std::isfinite(d)) d = F.q() >= 0.0 ? p : 0.5 * (1.0 + p);
            if (!(d > 1.0)) throw ConstructionError("d > 1", "d = " + num(d));
            if (!(p >= d && p < d + 1.0))
                throw ConstructionError("p in [d, d+1)", "p = " + num(p) + ", d = " + num(d));
            require_increasing_F(F, tau);
            for (double x : tau)
                if (!(F(x) > 0.0)) throw ConstructionError("tau^-d F(tau) positive", "F vanishes at " + num(x));
            const double bad = first_decrease(tau, [&](double x) { return std::log(F(x)) - d * std::log(x); });
            if (std::isfinite(bad))
                throw ConstructionError("tau^-d F(tau) increasing above R", "decreases near tau = " + num(bad));
            bool found = false;
            for (int k = 1; k < 8 && !found; ++k) {
                const double delta = k / 8.0;
                found = !std::isfinite(first_decrease(
                    tau, [&](double x) { return -(std::log(F(x)) - p * std::log(x) - delta * std::log(x)); }));
            }
            if (!found)
                throw ConstructionError("tau^-delta G(tau) decreasing", "no delta in (0, 1) works on the sample");
            if (mu.profile && mu.profile->coefficient() > 0.0 && !power_integrable(*mu.profile, opt.alpha))
                throw ConstructionError("mu^alpha locally integrable",
                                        "alpha = " + num(opt.alpha) + " is too large for the profile singularity");
            break;
        }
    }
    if (family != Family::A && mu.has_atoms())
        throw ConstructionError("mu is a function", "families B and C need data without atoms");

    s.S_ = std::make_shared<Semigroup>(params, grid);
    GridFunction dens = discretize(mu, grid);
    if (family == Family::A) {
        s.data_ = std::move(dens);
        s.atoms_ = mu.atoms;
    } else {
        s.data_ = transform(dens, [&](double m) { return s.inner(m); });
    }
    return s;
}

VerificationReport verify_supersolution(const Supersolution& w, const InitialMeasure& mu, const Nonlinearity& F,
                                        double T, int M, const std::vector<int>& checkpoints) {
    if (!(T > 0.0) || M < 1) throw ParameterError("verification needs T > 0 and M >= 1");
    const Semigroup& S = w.semigroup();
    const GridFunction dens = discretize(mu, S.spec());

    // RHS at the slices of an m-step grid; k-th entry at t = (k + 1) T / m.
    auto rhs = [&](int m) {
        const double dt = T / m;
        std::vector<GridFunction> out;
        out.reserve(std::size_t(m));
        GridFunction D(S.spec(), 0.0, 0.0);
        for (int j = 1; j <= m; ++j) {
            const GridFunction ws = w.evaluate((j - 0.5) * dt);
            GridFunction Fw(S.spec(), F(ws.background), 0.0);
            for (std::size_t k = 0; k < ws.values.size(); ++k)
                Fw.values[k] = F(ws.values[k] + ws.background) - Fw.background;
            GridFunction a = j > 1 ? S.apply(D, dt) : D;
            const GridFunction b = S.apply(Fw, 0.5 * dt);
            for (std::size_t k = 0; k < a.values.size(); ++k) a.values[k] += dt * b.values[k];
            a.background += dt * b.background;
            a.warnings.clear();
            D = std::move(a);
            GridFunction lin = S.apply_parts(dens, mu.atoms, j * dt, false);
            GridFunction r(S.spec(), lin.background + D.background, j * dt);
            for (std::size_t k = 0; k < r.values.size(); ++k) r.values[k] = lin.values[k] + D.values[k];
            out.push_back(std::move(r));
        }
        return out;
    };

    std::vector<int> cps = checkpoints;
    if (cps.empty())
        for (int j = 1; j <= M; ++j) cps.push_back(j);
    for (int j : cps)
        if (j < 1 || j > M) throw ParameterError("checkpoint index outside 1..M");

    const auto coarse = rhs(M);
    const auto fine = rhs(2 * M);
    VerificationReport rep;
    for (int j : cps) {
        const GridFunction& c = coarse[std::size_t(j - 1)];
        const GridFunction& f = fine[std::size_t(2 * j - 1)];
        const GridFunction wt = w.evaluate(c.time);
        double viol = -std::numeric_limits<double>::infinity(), qe = 0.0;
        for (std::size_t k = 0; k < c.values.size(); ++k) {
            const double fv = f.values[k] + f.background;
            viol = std::max(viol, fv - (wt.values[k] + wt.background));
            qe = std::max(qe, std::fabs(fv - (c.values[k] + c.background)));
        }
        rep.rows.push_back({c.time, viol});
        rep.max_violation = std::max(rep.max_violation, viol);
        rep.quadrature_error = std::max(rep.quadrature_error, qe);
    }
    rep.tolerance = 2.0 * rep.quadrature_error;
    rep.passed = rep.max_violation <= rep.tolerance;
    return rep;
}

SupersolutionDomination domination_check(const SolverOutcome& outcome, const Supersolution& w) {
    if (outcome.verdict != Verdict::Converged)
        throw PreconditionError("domination check needs a converged solve");
    SupersolutionDomination rep;
    const auto& slices = outcome.trajectory.slices;
    for (std::size_t j = 0; j < slices.size(); ++j) {
        const GridFunction& u = slices[j];
        if (!(u.spec == w.grid())) throw ParameterError("solution and supersolution grids differ");
        GridFunction wt;
        try {
            wt = w.evaluate(u.time);
        } catch (const DomainError&) {
            continue;  // atoms have no value at t = 0
        }
        for (std::size_t k = 0; k < u.values.size(); ++k) {
            const double wv = wt.values[k] + wt.background;
            const double ex = (u.values[k] + u.background) - wv;
            rep.tolerance = std::max(rep.tolerance, 1e-9 * std::max(1.0, wv));
            if (ex > rep.max_excess) {
                rep.max_excess = ex;
                rep.worst_slice = int(j);
            }
        }
    }
    rep.holds = rep.max_excess <= rep.tolerance;
    return rep;
}

void write_verification_csv(const VerificationReport& r, const std::string& path) {
    std::ofstream os(path);
    if (!os) throw Error("cannot write " + path);
    os.precision(12);
    os << "t,max_violation\n";
    for (const auto& row : r.rows) os << row.t << ',' << row.violation << '\n';
}

}  // namespace fraclab
