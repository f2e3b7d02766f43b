#pragma once
// Explicit supersolutions of the Duhamel equation and their numerical check.
//   A: w = R + 2 S(t) mu
//   B: w = 2 Phi^{-1}(S(t) Phi(mu + L)),  Phi^{-1}(tau) = tau h(tau)^{-alpha}
//   C: w = 2 [S(t) mu^alpha]^{1/alpha} + R

#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "fraclab/asymptotics.hpp"
#include "fraclab/grid.hpp"
#include "fraclab/measure.hpp"
#include "fraclab/nonlinearity.hpp"
#include "fraclab/semigroup.hpp"
#include "fraclab/solver.hpp"

namespace fraclab {

enum class Family { A, B, C };

std::string_view family_name(Family f);
Family parse_family(std::string_view s);

struct SupersolutionOptions {
    double R = 1.0;
    double L = 1.0;      // B only
    double alpha = 2.0;  // B and C
    // C: exponent with tau^{-d} F increasing above R; NaN picks p when q >= 0
    // and (1 + p) / 2 otherwise.
    double d = std::numeric_limits<double>::quiet_NaN();
    // Hypotheses are sampled on [max(R, 1e-3), tau_max].
    double tau_max = 1e12;
    int per_decade = 40;
};

class Supersolution {
public:
    Family family() const noexcept { return family_; }
    const SupersolutionOptions& options() const noexcept { return opt_; }
    const GridSpec& grid() const noexcept { return S_->spec(); }
    const Semigroup& semigroup() const noexcept { return *S_; }

    // w(., t) on the grid; one semigroup application and pointwise maps.
    GridFunction evaluate(double t) const;
    // The transformed data g(mu) that the semigroup acts on.
    const GridFunction& transformed_data() const noexcept { return data_; }
    // Pointwise outer map: w = outer(S(t) g(mu)).
    double outer(double v) const;
    double inner(double mu) const;

private:
    friend Supersolution build_supersolution(Family, const InitialMeasure&, const Nonlinearity&, const FracParams&,
                                             const GridSpec&, const SupersolutionOptions&);
    Family family_ = Family::A;
    SupersolutionOptions opt_;
    std::shared_ptr<const Semigroup> S_;
    std::optional<CriticalScale> scale_;
    GridFunction data_;
    std::vector<Atom> atoms_;  // A only
};

// Samples the hypotheses of the chosen family and prepares the evaluator.
// Throws ConstructionError naming the failed condition.
Supersolution build_supersolution(Family family, const InitialMeasure& mu, const Nonlinearity& F,
                                  const FracParams& params, const GridSpec& grid,
                                  const SupersolutionOptions& options = {});

struct VerificationRow {
    double t = 0.0;
    double violation = 0.0;  // sup_x (RHS - w)
};

struct VerificationReport {
    std::vector<VerificationRow> rows;
    double max_violation = -std::numeric_limits<double>::infinity();
    double quadrature_error = 0.0;  // sup |RHS_M - RHS_2M| over the checkpoints
    double tolerance = 0.0;         // 2 quadrature_error
    bool passed = false;
};

// RHS(t) = S(t) mu + int_0^t S(t-s) F(w(s)) ds by the midpoint rule on M and 2M
// steps; violation is measured with the 2M sum at the checkpoint slices
// (indices into the M-step grid, default all j >= 1).
VerificationReport verify_supersolution(const Supersolution& w, const InitialMeasure& mu, const Nonlinearity& F,
                                        double T, int M = 64, const std::vector<int>& checkpoints = {});

struct SupersolutionDomination {
    bool holds = true;
    double max_excess = -std::numeric_limits<double>::infinity();  // sup (u - w)
    int worst_slice = -1;
    double tolerance = 0.0;
};

// Every trajectory slice below w at the same time. PreconditionError unless converged.
SupersolutionDomination domination_check(const SolverOutcome& outcome, const Supersolution& w);

void write_verification_csv(const VerificationReport& r, const std::string& path);

}  // namespace fraclab
