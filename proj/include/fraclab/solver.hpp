#pragma once
// Picard iteration for the Duhamel equation
//   u(t) = S(t) mu_n + int_0^t S(t-s) min(F(u(s)), m) ds
// on a uniform time grid s_j = j T / M.

#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "fraclab/grid.hpp"
#include "fraclab/measure.hpp"
#include "fraclab/nonlinearity.hpp"
#include "fraclab/semigroup.hpp"

namespace fraclab {

struct SolverConfig {
    FracParams params;
    GridSpec grid;
    double T = 0.5;
    int M = 256;
    double truncation = std::numeric_limits<double>::infinity();  // m
    int mollification = 0;  // n; 0 keeps mu itself at s_0
    int max_sweeps = 0;     // K; 0 means M + 2
    double U_max = 1e8;
    double tolerance = 1e-6;

    int sweeps_limit() const noexcept { return max_sweeps > 0 ? max_sweeps : M + 2; }
    double dt() const noexcept { return T / M; }
    void validate() const;
};

struct SolutionTrajectory {
    std::vector<GridFunction> slices;  // u(s_j), j = 0..M
    std::vector<double> sup_history;   // sup over all slices, one entry per sweep
    bool monotone = true;              // every sweep dominated the previous one
    double residual = std::numeric_limits<double>::quiet_NaN();
    int sweeps = 0;
    std::vector<std::string> warnings;

    double time(std::size_t j) const { return slices.at(j).time; }
    double sup() const;          // over all slices
    double final_sup() const;    // sup of u(T)
};

enum class Verdict { Converged, Diverged, Inconclusive };

std::string_view verdict_name(Verdict v);

struct SolverOutcome {
    Verdict verdict = Verdict::Inconclusive;
    SolutionTrajectory trajectory;  // last complete iterate (the witnessing one when diverged)
    int diverged_slice = -1;
    int diverged_sweep = -1;
    double diverged_time = 0.0;
    double diverged_norm = 0.0;
};

// Holds the linear part S(s_j) mu_n and the cached step kernels of one problem.
class MildSolver {
public:
    MildSolver(const InitialMeasure& mu, Nonlinearity F, SolverConfig config);

    const SolverConfig& config() const noexcept { return cfg_; }
    const Nonlinearity& nonlinearity() const noexcept { return F_; }
    const std::vector<GridFunction>& linear_part() const noexcept { return lin_; }

    // u_0 = linear part.
    SolutionTrajectory initial_iterate() const;
    // One sweep; stops early (returning the partial iterate and the slice index)
    // once a slice exceeds U_max.
    SolutionTrajectory sweep(const SolutionTrajectory& uk, int* overflow_slice = nullptr) const;
    SolverOutcome solve() const;
    // sup over checkpoint slices of |RHS_{2M} - u|, with u interpolated linearly in time.
    double duhamel_residual(const SolutionTrajectory& traj, const std::vector<int>& checkpoints = {}) const;

private:
    void reaction(const GridFunction& u, GridFunction& out) const;
    InitialMeasure mu_;
    Nonlinearity F_;
    SolverConfig cfg_;
    Semigroup S_;
    std::vector<GridFunction> lin_;
};

SolutionTrajectory picard_sweep(const SolutionTrajectory& uk, const InitialMeasure& mu, const Nonlinearity& F,
                                const SolverConfig& config);
SolverOutcome solve(const InitialMeasure& mu, const Nonlinearity& F, const SolverConfig& config);
// Refuses anything but a converged outcome (PreconditionError).
double duhamel_residual(const SolverOutcome& outcome, const InitialMeasure& mu, const Nonlinearity& F,
                        const SolverConfig& config, const std::vector<int>& checkpoints = {});

struct LadderRung {
    double m = 0.0;
    int n = 0;
    int M = 0;
};

struct LadderEntry {
    LadderRung rung;
    Verdict verdict = Verdict::Inconclusive;
    double final_sup = 0.0;  // sup of u(T), or the overflowing norm when diverged
};

struct LadderReport {
    std::vector<LadderEntry> entries;
    bool nondecreasing = true;  // final_sup never drops along the ladder
};

LadderReport refine_and_compare(const InitialMeasure& mu, const Nonlinearity& F, const SolverConfig& base,
                                const std::vector<LadderRung>& ladder);

}  // namespace fraclab
