#include "fraclab/asymptotics.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <limits>
#include <numbers>

namespace fraclab {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// log(e + e^u) without overflow
double log_e_plus_exp(double u) {
    if (u > 1.0) return u + std::log1p(std::exp(1.0 - u));
    return 1.0 + std::log1p(std::exp(u - 1.0));
}

// Last point of a log-spaced scan where `bad` holds, refined by bisection
// against the following good point. Returns lo when no point is bad.
template <class Bad>
double last_failure(Bad bad, double lo, double hi, int per_decade) {
    const double l0 = std::log(lo), l1 = std::log(hi);
    const int n = int(std::ceil((l1 - l0) / std::log(10.0) * per_decade));
    int last = -1;
    for (int i = 0; i <= n; ++i) {
        if (bad(std::exp(l0 + (l1 - l0) * i / n))) last = i;
    }
    if (last < 0) return lo;
    if (last == n) return hi;
    double a = l0 + (l1 - l0) * last / n, b = l0 + (l1 - l0) * (last + 1) / n;
    for (int it = 0; it < 200 && b - a > 1e-15 * std::max(1.0, std::fabs(b)); ++it) {
        const double m = 0.5 * (a + b);
        (bad(std::exp(m)) ? a : b) = m;
    }
    return std::exp(b);
}

}  // namespace

RegVarFunction::RegVarFunction(double a, double b, double c) : a_(a), b_(b), c_(c) {
    if (!(a > 0.0)) throw ParameterError("regularly varying function needs a > 0");
    if (!std::isfinite(b) || !std::isfinite(c)) throw ParameterError("exponents must be finite");
    udom_ = c != 0.0 ? 1.0 : (b != 0.0 ? 0.0 : -kInf);
    if (udom_ == -kInf) {
        L_ = 0.0;
        return;
    }
    // scan s = u - udom on a log grid; the bracket is positive for large u
    auto bad = [&](double s) { return bracket(udom_ + s) <= 0.0; };
    const double s = last_failure(bad, 1e-12, 1e4, 200);
    L_ = std::exp(udom_ + s);
}

double RegVarFunction::bracket(double u) const {
    double r = a_;
    if (b_ != 0.0) r += b_ / u;
    if (c_ != 0.0) r += c_ / (u * std::log(u));
    return r;
}

double RegVarFunction::log_value(double u) const {
    if (!(u > udom_)) throw DomainError("regularly varying function evaluated outside its domain");
    double r = a_ * u;
    if (b_ != 0.0) r += b_ * std::log(u);
    if (c_ != 0.0) r += c_ * std::log(std::log(u));
    return r;
}

double RegVarFunction::operator()(double tau) const {
    if (!(tau > 0.0)) throw DomainError("regularly varying function needs tau > 0");
    return std::exp(log_value(std::log(tau)));
}

double RegVarFunction::asymptotic_inverse(double y) const {
    const double ly = std::log(y);
    double r = ly / a_;
    if (b_ != 0.0) r -= b_ / a_ * std::log(ly);
    if (c_ != 0.0) r -= c_ / a_ * std::log(std::log(ly));
    return std::exp(r);
}

double regvar_inverse(const RegVarFunction& phi, double y) {
    if (!(y > 0.0)) throw DomainError("regvar_inverse needs y > 0");
    const double ly = std::log(y);
    if (phi.b() == 0.0 && phi.c() == 0.0) return std::exp(ly / phi.a());
    const double uL = std::log(phi.threshold());
    if (!(ly > phi.log_value(uL))) throw DomainError("regvar_inverse: y below the monotone range");
    double lo = uL, hi = uL + 1.0;
    while (phi.log_value(hi) < ly) hi = uL + 2.0 * (hi - uL);
    for (int it = 0; it < 400; ++it) {
        const double m = 0.5 * (lo + hi);
        const double v = phi.log_value(m);
        if (std::fabs(v - ly) <= 4e-16 * std::max(1.0, std::fabs(ly))) return std::exp(m);
        (v < ly ? lo : hi) = m;
        if (hi - lo <= 1e-16 * std::max(1.0, std::fabs(hi))) break;
    }
    return std::exp(0.5 * (lo + hi));
}

IntegralBound integral_bound_check(double a, double b, double c, double A, double B) {
    if (!(A >= 2.0)) throw DomainError("integral bound needs A >= 2");
    if (!(B >= A)) throw DomainError("integral bound needs A <= B");
    if (!(a > 0.0) || !(b >= 0.0)) throw ParameterError("integral bound needs a > 0, b >= 0");
    auto f = [&](double x) { return std::exp((a - b) * x) * std::pow(x, c); };
    IntegralBound r;
    r.lhs = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, std::log(A), std::log(B), 20, 1e-13);
    r.rhs = std::pow(A, a) * std::pow(B, -b) * std::pow(std::log(A), c) * std::log(B / A);
    r.ratio = r.rhs > 0.0 ? r.lhs / r.rhs : kInf;
    return r;
}

// ---------------------------------------------------------------------------

CriticalScale::CriticalScale(double q, double alpha) : q_(q), alpha_(alpha) {
    if (!(q >= -1.0)) throw ParameterError("critical scale needs q >= -1");
    if (!(alpha > 0.0)) throw ParameterError("critical scale needs alpha > 0");

    // elasticity e(tau) = tau h'(tau) / h(tau)
    auto elasticity = [&](double tau) {
        const double l = std::log(std::numbers::e + tau);
        const double base = tau / ((std::numbers::e + tau) * l);
        if (q_ > -1.0) return (q_ + 1.0) * base;
        return base / std::log(std::numbers::e + l);
    };
    psi_minus_L_ = last_failure([&](double t) { return 1.0 - alpha_ * elasticity(t) <= 0.0; }, 1e-12, 1e300, 50);
    if (psi_minus_L_ == 1e-12) psi_minus_L_ = 0.0;

    // Psi increasing and concave: 1 - alpha e > 0 and e(1 - alpha e) + tau e' >= 0
    auto bad = [&](double t) {
        const double e = elasticity(t);
        if (1.0 - alpha_ * e <= 0.0) return true;
        const double dl = 1e-4;
        const double de = (elasticity(t * std::exp(dl)) - elasticity(t * std::exp(-dl))) / (2 * dl);
        return e * (1.0 - alpha_ * e) + de < -1e-12;
    };
    tau_star_ = std::max(1e-8, last_failure(bad, 1e-8, 1e300, 50));
    slope_star_ = std::exp(-alpha_ * log_h(tau_star_));
}

double CriticalScale::log_h_from_L(double L) const {
    if (q_ > -1.0) return (q_ + 1.0) * L;
    return std::log(log_e_plus_exp(L));
}

double CriticalScale::log_h(double tau) const { return log_h_of_log(std::log(tau)); }

double CriticalScale::log_h_of_log(double u) const { return log_h_from_L(std::log(log_e_plus_exp(u))); }

double CriticalScale::h(double tau) const {
    if (!(tau >= 0.0)) throw DomainError("h needs tau >= 0");
    const double l = std::log(std::numbers::e + tau);
    if (q_ > -1.0) return std::pow(l, q_ + 1.0);
    return std::log(std::numbers::e + l);
}

double CriticalScale::psi_plus(double tau) const {
    if (tau == 0.0) return 0.0;
    return tau * std::pow(h(tau), alpha_);
}

double CriticalScale::psi_minus(double tau) const {
    if (tau == 0.0) return 0.0;
    return tau * std::pow(h(tau), -alpha_);
}

double CriticalScale::phi_inverse(double tau) const {
    if (!(tau >= 0.0)) throw DomainError("Phi inverse needs tau >= 0");
    if (tau <= tau_star_) return slope_star_ * tau;
    return tau * std::pow(h(tau), -alpha_);
}

double CriticalScale::phi(double y) const {
    if (!(y >= 0.0)) throw DomainError("Phi needs y >= 0");
    if (y <= slope_star_ * tau_star_) return y / slope_star_;
    const double ly = std::log(y);
    auto logPsi = [&](double u) { return u - alpha_ * log_h_of_log(u); };
    double lo = std::log(tau_star_), hi = std::max(lo, ly) + 1.0;
    while (logPsi(hi) < ly) hi = lo + 2.0 * (hi - lo);
    for (int it = 0; it < 300 && hi - lo > 1e-16 * std::max(1.0, std::fabs(hi)); ++it) {
        const double m = 0.5 * (lo + hi);
        (logPsi(m) < ly ? lo : hi) = m;
    }
    return std::exp(0.5 * (lo + hi));
}

DensityTransform CriticalScale::psi_plus_transform() const {
    DensityTransform t;
    const CriticalScale s = *this;
    t.g = [s](double m) { return s.psi_plus(m); };
    t.log_rN_g = [s](const DensityTransform::LogArgs& a) {
        if (!std::isfinite(a.lrNum) || !std::isfinite(a.L)) return a.lrNum;
        return a.lrNum + s.alpha() * s.log_h_from_L(a.L);
    };
    t.superlinear = true;
    return t;
}

HRelationsReport h_relations_check(const CriticalScale& s, double a, double b, double c, double lo, double hi,
                                   int per_decade) {
    if (!(lo > 0.0) || !(hi > lo)) throw DomainError("h relations need 0 < lo < hi");
    HRelationsReport r;
    auto init = [](RatioRange& x) { x = {kInf, -kInf}; };
    init(r.dilation);
    init(r.composite);
    init(r.phi_order);
    init(r.round_trip);
    init(r.near_inverse);
    auto upd = [](RatioRange& x, double v) {
        x.min = std::min(x.min, v);
        x.max = std::max(x.max, v);
    };
    auto log_h_u = [&](double u) { return s.log_h_of_log(u); };
    const double l0 = std::log(lo), l1 = std::log(hi);
    const int n = std::max(1, int(std::ceil((l1 - l0) / std::log(10.0) * per_decade)));
    for (int i = 0; i <= n; ++i) {
        const double u = l0 + (l1 - l0) * i / n;
        const double tau = std::exp(u);
        const double lh = s.log_h(tau);
        upd(r.dilation, std::exp(log_h_u(std::log(a) + b * u) - lh));
        upd(r.composite, std::exp(log_h_u(b * u + c * lh) - lh));
        const double P = s.phi(tau);
        upd(r.phi_order, P / (tau * std::exp(s.alpha() * lh)));
        upd(r.round_trip, s.phi_inverse(P) / tau);
        const double up = u + s.alpha() * lh;
        upd(r.near_inverse, std::exp(up - s.alpha() * log_h_u(up) - u));
    }
    return r;
}

}  // namespace fraclab
