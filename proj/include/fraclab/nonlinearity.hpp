#pragma once
// Reaction term F and the comparison functions built from the nested
// integrals  tau^d int_a^tau s^{-d} int_a^s xi^{p-2} [log(e+xi)]^q dxi ds.

#include <functional>
#include <iosfwd>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fraclab/params.hpp"

namespace fraclab {

class Nonlinearity {
public:
    enum class Kind { prototype, tabulated, custom, zero };

    // F(tau) = tau^p [log(L + tau)]^q.
    static Nonlinearity prototype(double p, double q, double L = 1.0);
    // Monotone table; linear between nodes, tau^p (log tau)^q shape beyond the last node.
    static Nonlinearity tabulated(std::vector<double> tau, std::vector<double> F, double p, double q);
    static Nonlinearity custom(std::function<double(double)> f, double p, double q, std::string name);
    static Nonlinearity zero();

    Kind kind() const noexcept { return kind_; }
    // Asymptotic descriptor F(tau) ~ tau^p (log tau)^q; absent for F = 0.
    bool has_descriptor() const noexcept { return kind_ != Kind::zero; }
    double p() const noexcept { return p_; }
    double q() const noexcept { return q_; }
    double L() const noexcept { return L_; }
    std::string describe() const;

    double operator()(double tau) const;
    // min(F(tau), m)
    double truncated(double tau, double m) const;
    // out[i] = min(F(u[i]), m); m = +inf disables the truncation.
    void apply(std::span<const double> u, std::span<double> out, double m) const;

private:
    Kind kind_ = Kind::zero;
    double p_ = 2.0, q_ = 0.0, L_ = 1.0;
    std::vector<double> tau_, val_;
    std::function<double(double)> fn_;
    std::string name_;
};

double eval_F(const Nonlinearity& F, double tau);

// kappa tau^d O(tau) + L with O(tau) = int_R^tau s^{-d} I(s) ds and
// I(s) = int_R^s xi^{p-2}[log(e+xi)]^q dxi; identically L on [0, R].
// Tabulated on a log grid in tau - R with cubic Hermite interpolation in
// log-log coordinates using the exact derivative.
class ComparisonFunction {
public:
    enum class Role { minorant, majorant };

    static constexpr int kNodesPerDecade = 64;

    ComparisonFunction(Role role, double p, double d, double q, double R, double kappa, double L);

    Role role() const noexcept { return role_; }
    double p() const noexcept { return p_; }
    double d() const noexcept { return d_; }
    double q() const noexcept { return q_; }
    double R() const noexcept { return R_; }
    double kappa() const noexcept { return kappa_; }
    double L() const noexcept { return L_; }

    double operator()(double tau) const;
    double derivative(double tau) const;
    // I(tau) and O(tau) from the cumulative tables.
    double inner(double tau) const;
    double outer(double tau) const;

    ComparisonFunction with_constants(double kappa, double L) const;

    // Rows tau, inner, outer, value.
    void write_csv(std::ostream& os) const;

private:
    struct Local {
        std::size_t k;
        double t;  // position inside interval, 0..1
    };
    double core(double tau) const;  // tau^d O(tau)
    double tau_at(double z) const { return R_ + z; }

    Role role_;
    double p_, d_, q_, R_, kappa_, L_;
    double lz0_, hstep_;
    std::vector<double> lz_;      // log(tau - R) nodes
    std::vector<double> inner_;   // I at nodes
    std::vector<double> outer_;   // O at nodes
    std::vector<double> lcore_;   // log(tau^d O)
    std::vector<double> slope_;   // d log core / d log z
};

// Convex minorant; requires 1 < d < p, R >= 0, kappa > 0.
ComparisonFunction build_minorant(double p, double d, double q, double R, double kappa);
// kappa g + L with g the d-version nested integral from 0 (d = 1 by default).
ComparisonFunction build_majorant(double p, double q, double kappa, double L, double d = 1.0);

struct DominationReport {
    bool holds = true;
    double worst_tau = 0.0;   // first failing sample, or the tightest one
    double worst_ratio = 0.0; // f/F (majorant) or F/f (minorant) at worst_tau
    std::size_t samples = 0;
};

// Checks f >= F (majorant) or f <= F (minorant) at tau = 0 and on
// `per_decade` geometric samples per decade over [tau_lo, tau_hi].
DominationReport check_domination(const ComparisonFunction& f, const Nonlinearity& F, double tau_lo = 1e-8,
                                  double tau_hi = 1e12, int per_decade = 1000);

// Smallest kappa = L = 2^k (k >= 0) for which the majorant dominates F on the
// sampled range; throws ConstructionError naming the failing tau otherwise.
ComparisonFunction fit_majorant(const Nonlinearity& F, double d = 1.0, double tau_hi = 1e12, int max_doublings = 60);

// Largest kappa = 2^{-k} for which the minorant sits below F on the sampled range.
ComparisonFunction fit_minorant(const Nonlinearity& F, double d, double R, double tau_hi = 1e12, int max_halvings = 80);

struct IntegralCriterion {
    bool finite = false;
    double partial = 0.0;  // int_1^cutoff tau^{-p_theta-1} F(tau) dtau
    double cutoff = 0.0;
};

IntegralCriterion integral_criterion(const Nonlinearity& F, const FracParams& params, double cutoff = 1e12);

}  // namespace fraclab
