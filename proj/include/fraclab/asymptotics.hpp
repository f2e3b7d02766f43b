#pragma once
// Regularly varying scales: phi = tau^a (log tau)^b (log log tau)^c, the
// critical-case h, psi^+-, and the map Phi_alpha used by the log-corrected
// supersolution.

#include <vector>

#include "fraclab/measure.hpp"

namespace fraclab {

class RegVarFunction {
public:
    RegVarFunction(double a, double b, double c);

    double a() const noexcept { return a_; }
    double b() const noexcept { return b_; }
    double c() const noexcept { return c_; }
    // phi is strictly increasing on (threshold, inf).
    double threshold() const noexcept { return L_; }

    double operator()(double tau) const;
    // log phi in terms of u = log tau.
    double log_value(double u) const;
    // y^{1/a} (log y)^{-b/a} (log log y)^{-c/a}
    double asymptotic_inverse(double y) const;

private:
    double bracket(double u) const;  // sign of phi'/phi * tau
    double a_, b_, c_;
    double udom_;  // phi defined for log tau > udom_
    double L_;
};

// tau with |phi(tau) - y| <= 1e-12 y. Throws DomainError for y <= phi(threshold).
double regvar_inverse(const RegVarFunction& phi, double y);

struct IntegralBound {
    double lhs = 0.0;    // int_A^B tau^{a-b-1} (log tau)^c dtau
    double rhs = 0.0;    // A^a B^{-b} (log A)^c log(B/A)
    double ratio = 0.0;  // lhs / rhs
};

IntegralBound integral_bound_check(double a, double b, double c, double A, double B);

class CriticalScale {
public:
    CriticalScale(double q, double alpha);

    double q() const noexcept { return q_; }
    double alpha() const noexcept { return alpha_; }

    // h(tau) = (log(e+tau))^{q+1} for q > -1, log(e + log(e+tau)) for q = -1.
    double h(double tau) const;
    double log_h(double tau) const;
    // log h(e^u), usable past the double range of tau.
    double log_h_of_log(double u) const;
    double psi_plus(double tau) const;
    double psi_minus(double tau) const;
    // psi_minus is strictly increasing on (psi_minus_threshold, inf).
    double psi_minus_threshold() const noexcept { return psi_minus_L_; }

    // Psi(tau) = tau h(tau)^{-alpha} on [tau*, inf) where it is increasing and
    // concave, extended linearly through the origin below tau*.
    double phi_inverse(double tau) const;
    // Inverse of phi_inverse (bisection in log tau, relative 1e-13).
    double phi(double y) const;
    double phi_threshold() const noexcept { return tau_star_; }

    // psi^+ as a ball-integral transform.
    DensityTransform psi_plus_transform() const;

private:
    double log_h_from_L(double L) const;  // L = log log(e + tau)
    double q_, alpha_;
    double psi_minus_L_ = 0.0;
    double tau_star_ = 0.0;
    double slope_star_ = 1.0;  // Psi(tau*) / tau*
};

struct RatioRange {
    double min = 0.0, max = 0.0;
};

struct HRelationsReport {
    RatioRange dilation;     // h(a tau^b) / h(tau)
    RatioRange composite;    // h(tau^b h(tau)^c) / h(tau)
    RatioRange phi_order;    // Phi(tau) / (tau h(tau)^alpha)
    RatioRange round_trip;   // phi_inverse(phi(tau)) / tau
    RatioRange near_inverse; // psi^-(psi^+(tau)) / tau
};

// Ratios of the asserted order relations over a geometric sample of [lo, hi].
HRelationsReport h_relations_check(const CriticalScale& s, double a, double b, double c, double lo, double hi,
                                   int per_decade = 20);

}  // namespace fraclab
