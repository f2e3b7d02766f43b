#pragma once
// Regime labels, optimal singular profiles, and the necessary / sufficient
// ball-functional conditions for solvability.

#include <array>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fraclab/asymptotics.hpp"
#include "fraclab/cases.hpp"
#include "fraclab/measure.hpp"
#include "fraclab/nonlinearity.hpp"

namespace fraclab {

struct ProfileDescriptor {
    std::array<double, 3> exponents{};  // |x|, |log|x||, log|log|x||
    std::string formula;
};

struct Classification {
    CaseLabel label;
    std::optional<ProfileDescriptor> profile;  // singular cases only
    std::string criterion;                      // what decides solvability in this regime
};

Classification classify(const FracParams& params, double p, double q);

// Exponent as a reduced fraction when one with denominator <= 64 matches, else decimal.
std::string format_exponent(double x);
std::string profile_formula(const CaseLabel& label);

struct ConditionRow {
    double sigma = 0.0;
    double lhs = 0.0;
    double rhs = 0.0;
    double ratio = 0.0;
    Point witness{0, 0, 0};
};

struct ConditionReport {
    std::string id;
    double worst_ratio = 0.0;
    Point witness{0, 0, 0};
    double sigma = 0.0;
    double constant = 0.0;  // constant the verdict was tested against
    bool satisfied = true;
    bool growing = false;   // envelope quotient nondecreasing as sigma decreases, with net growth
    std::string verdict;
    std::vector<ConditionRow> rows;
};

std::vector<double> dyadic_sigmas(int k0 = 3, int k1 = 12);

// Half-width of a box holding the non-constant part of mu, padded by sigma.
double search_radius(const InitialMeasure& mu, double sigma);

// int_lo^hi s^{-p_theta-1} f(s) ds
double necessary_integral(const std::function<double(double)>& f, double p_theta, double lo, double hi);

using BallSample = std::pair<Point, double>;  // (z, sigma)

ConditionReport necessary_check(const InitialMeasure& mu, const std::function<double(double)>& f,
                                const FracParams& params, double T, double gamma,
                                const std::vector<BallSample>& samples);
ConditionReport necessary_check(const InitialMeasure& mu, const ComparisonFunction& f, const FracParams& params,
                                double T, double gamma, const std::vector<BallSample>& samples);

// Smallest gamma = 2^k for which necessary_check holds on the samples.
double calibrate_gamma(const InitialMeasure& mu, const std::function<double(double)>& f, const FracParams& params,
                       double T, const std::vector<BallSample>& samples, int max_doublings = 60);

// Case envelope of sup_z mu(B(z, sigma)).
double necessary_envelope_value(const FracParams& params, double p, double q, double sigma);

// Quotients sup_z mu(B(z,sigma)) / envelope(sigma). With a finite calibrated_C
// the verdict is "all quotients <= C"; otherwise the quotient at the smallest
// sigma must stay within 2x of the one at the largest.
ConditionReport necessary_envelope(const InitialMeasure& mu, const FracParams& params, double p, double q,
                                   const std::vector<double>& sigmas,
                                   double calibrated_C = std::numeric_limits<double>::quiet_NaN());

ConditionReport sufficient_check_A(const InitialMeasure& mu);

ConditionReport sufficient_check_B(const InitialMeasure& mu, const FracParams& params, double q, double alpha,
                                   double epsilon, const std::vector<double>& sigmas);

ConditionReport sufficient_check_C(const InitialMeasure& mu, const FracParams& params, double p, double q,
                                   double alpha, double epsilon, const std::vector<double>& sigmas);

struct DiracVerdict {
    bool solvable = false;
    bool monotone_sampled = true;  // F nondecreasing on the sample
    IntegralCriterion criterion;
};

DiracVerdict dirac_solvable(const Nonlinearity& F, const FracParams& params);

}  // namespace fraclab
