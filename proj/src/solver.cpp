#include "fraclab/solver.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "fraclab/simd.hpp"

namespace fraclab {
namespace {

bool all_zero(const GridFunction& f) {
    return std::all_of(f.values.begin(), f.values.end(), [](double v) { return v == 0.0; });
}

// S(t) f without warning bookkeeping; constant functions skip the convolution.
GridFunction shift(const Semigroup& S, const GridFunction& f, double t) {
    if (all_zero(f)) {
        GridFunction out(f.spec, f.background, f.time + t);
        return out;
    }
    GridFunction g = f;
    g.warnings.clear();
    GridFunction out = S.apply(g, t);
    out.warnings.clear();
    return out;
}

// out = a + s b (values and background)
void combine(const GridFunction& a, double s, const GridFunction& b, GridFunction& out) {
    out.values.resize(a.values.size());
    simd::add_scaled(a.values.data(), s, b.values.data(), out.values.data(), a.values.size());
    out.background = a.background + s * b.background;
}

double slice_change(const GridFunction& a, const GridFunction& b) {
    return simd::max_abs_diff(a.values.data(), b.values.data(), a.values.size()) + std::fabs(a.background - b.background);
}

}  // namespace

void SolverConfig::validate() const {
    if (grid.N != params.N) throw ParameterError("solver grid dimension differs from N");
    if (!(T > 0.0)) throw ParameterError("horizon T must be positive");
    if (M < 1) throw ParameterError("time steps M must be positive");
    if (!(truncation > 0.0)) throw ParameterError("truncation level m must be positive");
    if (mollification < 0) throw ParameterError("mollification index n must be >= 0");
    if (max_sweeps < 0) throw ParameterError("sweep limit K must be >= 0");
    if (!(U_max > 0.0)) throw ParameterError("divergence cap must be positive");
    if (!(tolerance > 0.0)) throw ParameterError("convergence tolerance must be positive");
}

double SolutionTrajectory::sup() const {
    double s = 0.0;
    for (const auto& g : slices) s = std::max(s, g.sup());
    return s;
}

double SolutionTrajectory::final_sup() const { return slices.empty() ? 0.0 : slices.back().sup(); }

std::string_view verdict_name(Verdict v) {
    switch (v) {
        case Verdict::Converged: return "converged";
        case Verdict::Diverged: return "diverged";
        case Verdict::Inconclusive: return "inconclusive";
    }
    return "?";
}

MildSolver::MildSolver(const InitialMeasure& mu, Nonlinearity F, SolverConfig config)
    : mu_(mu), F_(std::move(F)), cfg_(std::move(config)), S_(cfg_.params, cfg_.grid) {
    cfg_.validate();
    mu_.validate();
    if (mu_.N != cfg_.params.N) throw ParameterError("initial measure dimension differs from N");
    if (cfg_.mollification == 0 && mu_.has_atoms())
        throw PreconditionError("atomic initial data need mollification (n > 0)");
    const GridFunction dens = discretize(mu_, cfg_.grid);
    const double shift0 = cfg_.mollification > 0 ? 2.0 / cfg_.mollification : 0.0;
    lin_.reserve(std::size_t(cfg_.M) + 1);
    for (int j = 0; j <= cfg_.M; ++j) {
        const double s = j * cfg_.dt();
        const double t = s + shift0;
        GridFunction g = t > 0.0 ? S_.apply_parts(dens, mu_.atoms, t, false) : dens;
        g.time = s;
        lin_.push_back(std::move(g));
    }
}

SolutionTrajectory MildSolver::initial_iterate() const {
    SolutionTrajectory u;
    u.slices = lin_;
    for (auto& g : u.slices) {
        for (auto& w : g.warnings)
            if (std::find(u.warnings.begin(), u.warnings.end(), w) == u.warnings.end()) u.warnings.push_back(w);
        g.warnings.clear();
    }
    if (S_.kernel(0.5 * cfg_.dt()).under_resolved) {
        std::ostringstream os;
        os << "kernel under-resolved at the half step " << 0.5 * cfg_.dt();
        u.warnings.push_back(os.str());
    }
    u.sup_history.push_back(u.sup());
    return u;
}

void MildSolver::reaction(const GridFunction& u, GridFunction& out) const {
    const double m = cfg_.truncation;
    const double Fb = std::min(F_(u.background), m);
    out = GridFunction(u.spec, Fb, u.time);
    if (F_.kind() == Nonlinearity::Kind::zero) {
        out.background = 0.0;
        return;
    }
    for (std::size_t k = 0; k < u.values.size(); ++k) {
        const double v = u.values[k];
        out.values[k] = v == 0.0 ? 0.0 : std::max(0.0, std::min(F_(v + u.background), m) - Fb);
    }
}

SolutionTrajectory MildSolver::sweep(const SolutionTrajectory& uk, int* overflow_slice) const {
    if (uk.slices.size() != lin_.size()) throw PreconditionError("iterate does not live on the solver time grid");
    if (overflow_slice) *overflow_slice = -1;
    const double dt = cfg_.dt();
    SolutionTrajectory next;
    next.warnings = uk.warnings;
    next.sup_history = uk.sup_history;
    next.monotone = uk.monotone;
    next.sweeps = uk.sweeps + 1;
    next.slices.reserve(lin_.size());
    next.slices.push_back(lin_[0]);

    GridFunction B(cfg_.grid, 0.0, 0.0), Fprev, uj(cfg_.grid);
    reaction(uk.slices[0], Fprev);
    double supall = lin_[0].sup();
    for (int j = 1; j <= cfg_.M; ++j) {
        const GridFunction X = shift(S_, B, dt);
        const GridFunction Y = shift(S_, Fprev, dt);
        const GridFunction Z = shift(S_, Fprev, 0.5 * dt);
        GridFunction tmp(cfg_.grid);
        combine(lin_[j], 1.0, X, tmp);
        combine(tmp, dt, Z, uj);
        uj.time = lin_[j].time;
        for (double& v : uj.values) v = std::max(v, 0.0);
        combine(X, dt, Y, B);

        const GridFunction& old = uk.slices[std::size_t(j)];
        for (std::size_t k = 0; k < uj.values.size() && next.monotone; ++k) {
            const double a = uj.values[k] + uj.background, b = old.values[k] + old.background;
            if (a < b - 1e-12 * std::max(1.0, std::fabs(b))) next.monotone = false;
        }
        const double s = uj.sup();
        supall = std::max(supall, std::isfinite(s) ? s : INFINITY);
        next.slices.push_back(uj);
        if (!(s <= cfg_.U_max)) {
            if (overflow_slice) *overflow_slice = j;
            next.sup_history.push_back(supall);
            return next;
        }
        reaction(old, Fprev);
    }
    next.sup_history.push_back(supall);
    return next;
}

SolverOutcome MildSolver::solve() const {
    SolverOutcome out;
    SolutionTrajectory u = initial_iterate();
    for (std::size_t j = 0; j < u.slices.size(); ++j) {
        const double s = u.slices[j].sup();
        if (!(s <= cfg_.U_max)) {
            out.verdict = Verdict::Diverged;
            out.diverged_slice = int(j);
            out.diverged_sweep = 0;
            out.diverged_time = u.slices[j].time;
            out.diverged_norm = s;
            out.trajectory = std::move(u);
            return out;
        }
    }
    const int K = cfg_.sweeps_limit();
    for (int k = 1; k <= K; ++k) {
        int ov = -1;
        SolutionTrajectory next = sweep(u, &ov);
        if (ov >= 0) {
            out.verdict = Verdict::Diverged;
            out.diverged_slice = ov;
            out.diverged_sweep = k;
            out.diverged_time = next.slices.back().time;
            out.diverged_norm = next.slices.back().sup();
            out.trajectory = std::move(next);
            return out;
        }
        const double change = slice_change(next.slices.back(), u.slices.back());
        const double scale = next.slices.back().sup();
        u = std::move(next);
        if (change <= cfg_.tolerance * scale || change == 0.0) {
            out.verdict = Verdict::Converged;
            u.residual = duhamel_residual(u);
            out.trajectory = std::move(u);
            return out;
        }
    }
    out.verdict = Verdict::Inconclusive;
    out.trajectory = std::move(u);
    return out;
}

double MildSolver::duhamel_residual(const SolutionTrajectory& traj, const std::vector<int>& checkpoints) const {
    if (traj.slices.size() != lin_.size()) throw PreconditionError("residual needs a complete trajectory");
    std::vector<char> want(lin_.size(), checkpoints.empty() ? 1 : 0);
    for (int c : checkpoints) {
        if (c < 0 || c > cfg_.M) throw ParameterError("checkpoint outside the time grid");
        want[std::size_t(c)] = 1;
    }
    const double h = 0.5 * cfg_.dt();
    GridFunction B(cfg_.grid, 0.0, 0.0), Fprev, ui(cfg_.grid), tmp(cfg_.grid);
    reaction(traj.slices[0], Fprev);
    double worst = 0.0;
    for (int i = 1; i <= 2 * cfg_.M; ++i) {
        const GridFunction X = shift(S_, B, h);
        const GridFunction Y = shift(S_, Fprev, h);
        if (i % 2 == 0 && want[std::size_t(i / 2)]) {
            const GridFunction Z = shift(S_, Fprev, 0.5 * h);
            combine(lin_[std::size_t(i / 2)], 1.0, X, tmp);
            combine(tmp, h, Z, ui);
            worst = std::max(worst, slice_change(ui, traj.slices[std::size_t(i / 2)]));
        }
        combine(X, h, Y, B);
        if (i % 2 == 0) {
            reaction(traj.slices[std::size_t(i / 2)], Fprev);
        } else {
            const GridFunction& a = traj.slices[std::size_t(i / 2)];
            const GridFunction& b = traj.slices[std::size_t(i / 2) + 1];
            combine(a, 1.0, b, tmp);
            for (double& v : tmp.values) v *= 0.5;
            tmp.background *= 0.5;
            reaction(tmp, Fprev);
        }
    }
    return worst;
}

SolutionTrajectory picard_sweep(const SolutionTrajectory& uk, const InitialMeasure& mu, const Nonlinearity& F,
                                const SolverConfig& config) {
    MildSolver s(mu, F, config);
    return s.sweep(uk);
}

SolverOutcome solve(const InitialMeasure& mu, const Nonlinearity& F, const SolverConfig& config) {
    MildSolver s(mu, F, config);
    return s.solve();
}

double duhamel_residual(const SolverOutcome& outcome, const InitialMeasure& mu, const Nonlinearity& F,
                        const SolverConfig& config, const std::vector<int>& checkpoints) {
    if (outcome.verdict != Verdict::Converged) throw PreconditionError("Duhamel residual needs a converged trajectory");
    MildSolver s(mu, F, config);
    return s.duhamel_residual(outcome.trajectory, checkpoints);
}

LadderReport refine_and_compare(const InitialMeasure& mu, const Nonlinearity& F, const SolverConfig& base,
                                const std::vector<LadderRung>& ladder) {
    LadderReport rep;
    for (std::size_t i = 1; i < ladder.size(); ++i) {
        const auto& a = ladder[i - 1];
        const auto& b = ladder[i];
        if (b.m < a.m || b.n < a.n || b.M < a.M) throw ParameterError("ladder must be sorted increasing in (m, n, M)");
    }
    for (const auto& r : ladder) {
        SolverConfig c = base;
        c.truncation = r.m;
        c.mollification = r.n;
        c.M = r.M;
        const SolverOutcome o = solve(mu, F, c);
        LadderEntry e{r, o.verdict, o.verdict == Verdict::Diverged ? o.diverged_norm : o.trajectory.final_sup()};
        if (!rep.entries.empty() && e.final_sup < rep.entries.back().final_sup * (1.0 - 1e-9)) rep.nondecreasing = false;
        rep.entries.push_back(e);
    }
    return rep;
}

}  // namespace fraclab
