#include "fraclab/classifier.hpp"

#include <algorithm>
#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <numeric>
#include <sstream>

namespace fraclab {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void absorb(ConditionReport& rep, const ConditionRow& row) {
    if (rep.rows.empty() || row.ratio > rep.worst_ratio) {
        rep.worst_ratio = row.ratio;
        rep.witness = row.witness;
        rep.sigma = row.sigma;
    }
    rep.rows.push_back(row);
}

}  // namespace

std::string format_exponent(double x) {
    if (x == std::round(x)) return std::to_string(long(x));
    for (int d = 2; d <= 64; ++d) {
        const double n = std::round(x * d);
        if (std::fabs(x * d - n) < 1e-9 * d) {
            long a = long(n), b = d;
            long g = std::gcd(std::labs(a), b);
            std::ostringstream os;
            os << a / g << '/' << b / g;
            return os.str();
        }
    }
    std::ostringstream os;
    os.precision(12);
    os << x;
    return os.str();
}

std::string profile_formula(const CaseLabel& label) {
    if (!label.singular()) return "";
    const SingularProfile p(label, 1.0, 0.25);
    const auto e = p.exponents();
    std::string s = "|x|^{" + format_exponent(e[0]) + "}";
    if (e[1] != 0.0) s += " |log|x||^{" + format_exponent(e[1]) + "}";
    if (e[2] != 0.0) s += " [log|log|x||]^{" + format_exponent(e[2]) + "}";
    return s;
}

Classification classify(const FracParams& params, double p, double q) {
    Classification c;
    c.label = label_case(params, p, q);
    switch (c.label.kind) {
        case CaseKind::Subcritical:
        case CaseKind::CriticalIntegrable:
            c.criterion = "solvable iff sup_z mu(B(z,1)) < inf";
            break;
        case CaseKind::CriticalBorderline:
        case CaseKind::CriticalLog:
        case CaseKind::Supercritical: {
            ProfileDescriptor d;
            d.exponents = SingularProfile(c.label, 1.0, 0.25).exponents();
            d.formula = profile_formula(c.label);
            c.profile = d;
            c.criterion = "solvable for eps*profile + K with small eps; unsolvable for data >= gamma*profile near 0 with large gamma";
            break;
        }
    }
    return c;
}

std::vector<double> dyadic_sigmas(int k0, int k1) {
    std::vector<double> s;
    for (int k = k0; k <= k1; ++k) s.push_back(std::ldexp(1.0, -k));
    return s;
}

double search_radius(const InitialMeasure& mu, double sigma) {
    double r = 0.0;
    if (mu.profile) r = std::max(r, mu.profile->cutoff());
    if (mu.density) r = std::max(r, mu.density->spec.half_width);
    for (const auto& a : mu.atoms)
        for (int d = 0; d < mu.N; ++d) r = std::max(r, std::fabs(a.x[d]));
    return r + sigma;
}

double necessary_integral(const std::function<double(double)>& f, double p_theta, double lo, double hi) {
    if (!(hi > lo) || !(lo > 0.0)) return 0.0;
    auto g = [&](double x) {
        const double v = std::exp(-p_theta * x) * f(std::exp(x));
        return std::isfinite(v) ? v : 0.0;  // overflow far out in an integrable tail
    };
    const double a = std::log(lo), b = std::log(hi);
    if (std::isinf(b)) return boost::math::quadrature::exp_sinh<double>().integrate(g, a, b, 1e-12);
    double s = 0.0;
    for (double x = a; x < b; x += 1.0)
        s += boost::math::quadrature::gauss_kronrod<double, 21>::integrate(g, x, std::min(x + 1.0, b), 8, 1e-12);
    return s;
}

ConditionReport necessary_check(const InitialMeasure& mu, const std::function<double(double)>& f,
                                const FracParams& params, double T, double gamma,
                                const std::vector<BallSample>& samples) {
    if (!(gamma >= 1.0)) throw ParameterError("necessary check needs gamma >= 1");
    if (!(T > 0.0)) throw ParameterError("necessary check needs T > 0");
    ConditionReport rep;
    rep.id = "necessary-ball";
    rep.constant = gamma;
    const int N = params.N;
    const double pt = params.p_theta;
    for (const auto& [z, sigma] : samples) {
        ConditionRow row;
        row.sigma = sigma;
        row.witness = z;
        const double m = ball_mass(mu, z, sigma);
        const double lo = m / (gamma * std::pow(T, N / params.theta));
        const double hi = m / (gamma * std::pow(sigma, N));
        if (!(m > 0.0) || !(hi > lo)) {
            row.rhs = kInf;
            absorb(rep, row);
            continue;
        }
        row.lhs = necessary_integral(f, pt, lo, hi);
        row.rhs = std::pow(gamma, pt + 1.0) * std::pow(m, -params.theta / N);
        row.ratio = row.lhs / row.rhs;
        absorb(rep, row);
    }
    rep.satisfied = rep.worst_ratio <= 1.0;
    rep.verdict = rep.satisfied ? "satisfied at gamma" : "violated at gamma";
    return rep;
}

ConditionReport necessary_check(const InitialMeasure& mu, const ComparisonFunction& f, const FracParams& params,
                                double T, double gamma, const std::vector<BallSample>& samples) {
    return necessary_check(mu, [&f](double s) { return f(s); }, params, T, gamma, samples);
}

double calibrate_gamma(const InitialMeasure& mu, const std::function<double(double)>& f, const FracParams& params,
                       double T, const std::vector<BallSample>& samples, int max_doublings) {
    for (int k = 0; k <= max_doublings; ++k) {
        const double g = std::ldexp(1.0, k);
        if (necessary_check(mu, f, params, T, g, samples).satisfied) return g;
    }
    throw ConstructionError("gamma calibration", "no gamma = 2^k satisfies the necessary condition");
}

double necessary_envelope_value(const FracParams& params, double p, double q, double sigma) {
    if (!(sigma > 0.0 && sigma < 1.0)) throw DomainError("envelope needs 0 < sigma < 1");
    const double ls = std::fabs(std::log(sigma));
    const int N = params.N;
    if (!is_critical(params, p))
        return std::pow(sigma, N - params.theta / (p - 1.0)) * std::pow(ls, -q / (p - 1.0));
    if (q != -1.0) return std::pow(ls, -N * (q + 1.0) / params.theta);
    if (!(ls > 1.0)) throw DomainError("borderline envelope needs sigma < 1/e");
    return std::pow(std::log(ls), -N / params.theta);
}

ConditionReport necessary_envelope(const InitialMeasure& mu, const FracParams& params, double p, double q,
                                   const std::vector<double>& sigmas, double calibrated_C) {
    ConditionReport rep;
    rep.id = "necessary-envelope";
    std::vector<double> s = sigmas;
    std::sort(s.begin(), s.end(), std::greater<>());
    for (double sigma : s) {
        const BallSup b = sup_ball_mass(mu, sigma, search_radius(mu, sigma));
        ConditionRow row;
        row.sigma = sigma;
        row.lhs = b.value;
        row.rhs = necessary_envelope_value(params, p, q, sigma);
        row.ratio = row.lhs / row.rhs;
        row.witness = b.center;
        absorb(rep, row);
    }
    bool nondecreasing = true;
    for (std::size_t i = 1; i < rep.rows.size(); ++i)
        if (rep.rows[i].ratio < rep.rows[i - 1].ratio * (1.0 - 1e-6)) nondecreasing = false;
    const double first = rep.rows.empty() ? 0.0 : rep.rows.front().ratio;
    const double last = rep.rows.empty() ? 0.0 : rep.rows.back().ratio;
    rep.growing = nondecreasing && last > first * (1.0 + 1e-6);
    if (std::isfinite(calibrated_C)) {
        rep.constant = calibrated_C;
        rep.satisfied = rep.worst_ratio <= calibrated_C;
    } else {
        rep.constant = rep.worst_ratio;
        rep.satisfied = last <= 2.0 * first;
    }
    rep.verdict = rep.satisfied ? "bounded" : "unbounded";
    return rep;
}

ConditionReport sufficient_check_A(const InitialMeasure& mu) {
    ConditionReport rep;
    rep.id = "sufficient-A";
    const BallSup b = sup_ball_mass(mu, 1.0, search_radius(mu, 1.0));
    ConditionRow row;
    row.sigma = 1.0;
    row.lhs = row.ratio = b.value;
    row.rhs = kInf;
    row.witness = b.center;
    absorb(rep, row);
    rep.satisfied = std::isfinite(b.value);
    rep.constant = b.value;
    rep.verdict = rep.satisfied ? "finite" : "infinite";
    return rep;
}

ConditionReport sufficient_check_B(const InitialMeasure& mu, const FracParams& params, double q, double alpha,
                                   double epsilon, const std::vector<double>& sigmas) {
    if (!(q >= -1.0)) throw ParameterError("sufficient check B needs q >= -1");
    if (!(epsilon > 0.0)) throw ParameterError("sufficient check B needs epsilon > 0");
    const CriticalScale scale(q, alpha);
    const DensityTransform psi = scale.psi_plus_transform();
    ConditionReport rep;
    rep.id = "sufficient-B";
    rep.constant = epsilon;
    const int N = params.N;
    for (double sigma : sigmas) {
        const BallSup b = sup_over_centers(N, sigma, search_radius(mu, sigma), [&](const Point& z) {
            const double avg = ball_average(mu, psi, z, sigma);
            return std::isfinite(avg) ? scale.psi_minus(avg) : kInf;
        });
        ConditionRow row;
        row.sigma = sigma;
        row.lhs = b.value;
        row.rhs = epsilon * std::pow(sigma, -N) * std::pow(scale.h(1.0 / sigma), -N / params.theta);
        row.ratio = row.lhs / row.rhs;
        row.witness = b.center;
        absorb(rep, row);
    }
    rep.satisfied = rep.worst_ratio <= 1.0;
    rep.verdict = rep.satisfied ? "satisfied at epsilon" : "violated at epsilon";
    return rep;
}

ConditionReport sufficient_check_C(const InitialMeasure& mu, const FracParams& params, double p, double q,
                                   double alpha, double epsilon, const std::vector<double>& sigmas) {
    if (!(p > params.p_theta) || is_critical(params, p)) throw ParameterError("sufficient check C needs p > p_theta");
    if (!(alpha > 1.0)) throw ParameterError("sufficient check C needs alpha > 1");
    if (!(alpha * params.theta / (p - 1.0) < params.N)) {
        std::ostringstream os;
        os << "alpha theta/(p-1) must be < N; choose 1 < alpha < " << params.N * (p - 1.0) / params.theta;
        throw ParameterError(os.str());
    }
    if (!(epsilon > 0.0)) throw ParameterError("sufficient check C needs epsilon > 0");
    const DensityTransform g = DensityTransform::power(alpha);
    ConditionReport rep;
    rep.id = "sufficient-C";
    rep.constant = epsilon;
    const int N = params.N;
    for (double sigma : sigmas) {
        const BallSup b = sup_over_centers(N, sigma, search_radius(mu, sigma), [&](const Point& z) {
            return std::pow(ball_average(mu, g, z, sigma), 1.0 / alpha);
        });
        ConditionRow row;
        row.sigma = sigma;
        row.lhs = b.value;
        row.rhs = epsilon * std::pow(sigma, -params.theta / (p - 1.0)) *
                  std::pow(std::fabs(std::log(sigma)), -q / (p - 1.0));
        row.ratio = row.lhs / row.rhs;
        row.witness = b.center;
        absorb(rep, row);
    }
    rep.satisfied = rep.worst_ratio <= 1.0;
    rep.verdict = rep.satisfied ? "satisfied at epsilon" : "violated at epsilon";
    return rep;
}

DiracVerdict dirac_solvable(const Nonlinearity& F, const FracParams& params) {
    DiracVerdict v;
    double prev = F(0.0);
    for (int i = 0; i <= 240; ++i) {
        const double cur = F(std::pow(10.0, -6.0 + i * 0.075));
        if (cur < prev * (1.0 - 1e-12)) v.monotone_sampled = false;
        prev = cur;
    }
    if (!v.monotone_sampled) throw PreconditionError("F is not nondecreasing on the sampled range");
    v.criterion = integral_criterion(F, params);
    v.solvable = v.criterion.finite;
    return v;
}

}  // namespace fraclab
