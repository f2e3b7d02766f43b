#include "fraclab/nonlinearity.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <limits>
#include <numbers>
#include <ostream>
#include <sstream>

namespace fraclab {

Nonlinearity Nonlinearity::prototype(double p, double q, double L) {
    if (!(p > 1.0)) throw ParameterError("prototype nonlinearity needs p > 1");
    if (!(L >= 1.0)) throw ParameterError("prototype nonlinearity needs L >= 1");
    if (!std::isfinite(q)) throw ParameterError("q must be finite");
    Nonlinearity F;
    F.kind_ = Kind::prototype;
    F.p_ = p;
    F.q_ = q;
    F.L_ = L;
    return F;
}

Nonlinearity Nonlinearity::tabulated(std::vector<double> tau, std::vector<double> val, double p, double q) {
    if (tau.size() < 2 || tau.size() != val.size()) throw ParameterError("tabulated nonlinearity needs matching tables of size >= 2");
    for (std::size_t i = 0; i < tau.size(); ++i) {
        if (!(val[i] >= 0.0) || !std::isfinite(val[i])) throw ParameterError("tabulated F must be finite and nonnegative");
        if (i > 0 && !(tau[i] > tau[i - 1])) throw ParameterError("tabulated abscissae must increase");
        if (i > 0 && val[i] < val[i - 1]) throw ParameterError("tabulated F must be nondecreasing");
    }
    if (tau.front() < 0.0) throw ParameterError("tabulated abscissae must be nonnegative");
    Nonlinearity F;
    F.kind_ = Kind::tabulated;
    F.p_ = p;
    F.q_ = q;
    F.tau_ = std::move(tau);
    F.val_ = std::move(val);
    return F;
}

Nonlinearity Nonlinearity::custom(std::function<double(double)> f, double p, double q, std::string name) {
    Nonlinearity F;
    F.kind_ = Kind::custom;
    F.p_ = p;
    F.q_ = q;
    F.fn_ = std::move(f);
    F.name_ = std::move(name);
    return F;
}

Nonlinearity Nonlinearity::zero() { return Nonlinearity{}; }

std::string Nonlinearity::describe() const {
    std::ostringstream os;
    switch (kind_) {
        case Kind::prototype: os << "tau^" << p_ << " [log(" << L_ << " + tau)]^" << q_; break;
        case Kind::tabulated: os << "tabulated (" << tau_.size() << " nodes, p=" << p_ << ", q=" << q_ << ")"; break;
        case Kind::custom: os << name_; break;
        case Kind::zero: os << "0"; break;
    }
    return os.str();
}

double Nonlinearity::operator()(double tau) const {
    if (!(tau >= 0.0)) {
        if (tau > -1e-300 || tau == 0.0) tau = 0.0;
        else throw DomainError("F is evaluated on tau >= 0 only");
    }
    switch (kind_) {
        case Kind::zero: return 0.0;
        case Kind::prototype: {
            if (tau == 0.0) return 0.0;
            const double lg = L_ == 1.0 ? std::log1p(tau) : std::log(L_ + tau);
            if (q_ == 0.0) return std::pow(tau, p_);
            return std::pow(tau, p_) * std::pow(lg, q_);
        }
        case Kind::custom: return fn_(tau);
        case Kind::tabulated: {
            if (tau <= tau_.front()) return val_.front();
            if (tau >= tau_.back()) {
                const double tb = tau_.back();
                double r = val_.back() * std::pow(tau / tb, p_);
                if (q_ != 0.0 && tb > 1.0) r *= std::pow(std::log(tau) / std::log(tb), q_);
                return r;
            }
            const auto it = std::upper_bound(tau_.begin(), tau_.end(), tau);
            const std::size_t i = std::size_t(it - tau_.begin()) - 1;
            const double s = (tau - tau_[i]) / (tau_[i + 1] - tau_[i]);
            return val_[i] + s * (val_[i + 1] - val_[i]);
        }
    }
    return 0.0;
}

double Nonlinearity::truncated(double tau, double m) const { return std::min((*this)(tau), m); }

void Nonlinearity::apply(std::span<const double> u, std::span<double> out, double m) const {
    if (kind_ == Kind::zero) {
        std::fill(out.begin(), out.end(), 0.0);
        return;
    }
    for (std::size_t i = 0; i < u.size(); ++i) out[i] = std::min((*this)(std::max(u[i], 0.0)), m);
}

double eval_F(const Nonlinearity& F, double tau) { return F(tau); }

// ---------------------------------------------------------------------------

namespace {

using GL8 = boost::math::quadrature::gauss<double, 8>;

// 8-point Gauss-Legendre nodes and weights on [-1, 1], expanded to both signs
struct Rule {
    double x[8], w[8];
    Rule() {
        const auto& a = GL8::abscissa();
        const auto& b = GL8::weights();
        int k = 0;
        for (std::size_t i = 0; i < a.size(); ++i) {
            x[k] = -a[i];
            w[k++] = b[i];
            x[k] = a[i];
            w[k++] = b[i];
        }
    }
};

const Rule& rule() {
    static const Rule r;
    return r;
}

}  // namespace

ComparisonFunction::ComparisonFunction(Role role, double p, double d, double q, double R, double kappa, double L)
    : role_(role), p_(p), d_(d), q_(q), R_(R), kappa_(kappa), L_(L) {
    if (!(p > 1.0)) throw ParameterError("comparison function needs p > 1");
    if (!(d >= 1.0 && d < p)) throw ParameterError("comparison function needs 1 <= d < p");
    if (!(R >= 0.0)) throw ParameterError("comparison function needs R >= 0");
    if (!(kappa > 0.0)) throw ParameterError("comparison function needs kappa > 0");
    if (!(L >= 0.0)) throw ParameterError("comparison function needs L >= 0");

    const double z0 = 1e-10 * std::max(1.0, R);
    const double zmax = 1e16 * std::max(1.0, R);
    hstep_ = std::log(10.0) / kNodesPerDecade;
    lz0_ = std::log(z0);
    const std::size_t n = std::size_t(std::ceil((std::log(zmax) - lz0_) / hstep_)) + 1;
    lz_.resize(n);
    inner_.resize(n);
    outer_.resize(n);
    for (std::size_t k = 0; k < n; ++k) lz_[k] = lz0_ + double(k) * hstep_;

    auto integrand_I = [&](double z) {
        const double xi = R + z;
        double v = std::pow(xi, p - 2.0);
        if (q != 0.0) v *= std::pow(std::log(std::numbers::e + xi), q);
        return v;
    };

    if (R == 0.0) {
        inner_[0] = std::pow(z0, p - 1.0) / (p - 1.0) + q / std::numbers::e * std::pow(z0, p) / p;
        outer_[0] = std::pow(z0, p - d) / ((p - 1.0) * (p - d)) +
                    q / std::numbers::e * std::pow(z0, p - d + 1.0) / (p * (p - d + 1.0));
    } else {
        const double c0 = integrand_I(0.0);
        inner_[0] = c0 * z0;
        outer_[0] = std::pow(R, -d) * c0 * z0 * z0 / 2.0;
    }

    const Rule& g = rule();
    for (std::size_t k = 0; k + 1 < n; ++k) {
        const double a = lz_[k], b = lz_[k + 1];
        const double hm = 0.5 * (b - a), c = 0.5 * (a + b);
        double sumI = 0.0, sumO = 0.0;
        for (int j = 0; j < 8; ++j) {
            const double xj = c + hm * g.x[j];
            const double zj = std::exp(xj);
            sumI += g.w[j] * integrand_I(zj) * zj;
            // I at xj by a nested rule on [a, xj]
            const double hh = 0.5 * (xj - a), cc = 0.5 * (xj + a);
            double Ij = 0.0;
            for (int i = 0; i < 8; ++i) {
                const double zi = std::exp(cc + hh * g.x[i]);
                Ij += g.w[i] * integrand_I(zi) * zi;
            }
            Ij = inner_[k] + hh * Ij;
            sumO += g.w[j] * std::pow(R + zj, -d) * Ij * zj;
        }
        inner_[k + 1] = inner_[k] + hm * sumI;
        outer_[k + 1] = outer_[k] + hm * sumO;
    }

    lcore_.resize(n);
    slope_.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double z = std::exp(lz_[k]);
        const double tau = R + z;
        lcore_[k] = d * std::log(tau) + std::log(outer_[k]);
        slope_[k] = z * (d / tau + inner_[k] / (std::pow(tau, d) * outer_[k]));
    }
}

double ComparisonFunction::core(double tau) const {
    const double z = tau - R_;
    if (!(z > 0.0)) return 0.0;
    const double x = std::log(z);
    const std::size_t n = lz_.size();
    double y;
    if (x <= lz_.front()) {
        y = lcore_.front() + slope_.front() * (x - lz_.front());
    } else if (x >= lz_.back()) {
        y = lcore_.back() + slope_.back() * (x - lz_.back());
    } else {
        std::size_t k = std::min(n - 2, std::size_t((x - lz0_) / hstep_));
        const double t = (x - lz_[k]) / hstep_;
        const double t2 = t * t, t3 = t2 * t;
        y = (2 * t3 - 3 * t2 + 1) * lcore_[k] + (t3 - 2 * t2 + t) * hstep_ * slope_[k] +
            (-2 * t3 + 3 * t2) * lcore_[k + 1] + (t3 - t2) * hstep_ * slope_[k + 1];
    }
    return std::exp(y);
}

double ComparisonFunction::operator()(double tau) const { return kappa_ * core(tau) + L_; }

double ComparisonFunction::derivative(double tau) const {
    if (!(tau > R_)) return 0.0;
    return kappa_ * (d_ * std::pow(tau, d_ - 1.0) * outer(tau) + inner(tau));
}

double ComparisonFunction::inner(double tau) const {
    const double z = tau - R_;
    if (!(z > 0.0)) return 0.0;
    const double x = std::log(z);
    if (x <= lz_.front()) return inner_.front() * std::pow(z / std::exp(lz_.front()), R_ == 0.0 ? p_ - 1.0 : 1.0);
    const std::size_t k = std::min(lz_.size() - 1, std::size_t((x - lz0_) / hstep_));
    const double a = lz_[k];
    const double hh = 0.5 * (x - a), cc = 0.5 * (x + a);
    const Rule& g = rule();
    double s = 0.0;
    for (int i = 0; i < 8; ++i) {
        const double zi = std::exp(cc + hh * g.x[i]);
        const double xi = R_ + zi;
        double v = std::pow(xi, p_ - 2.0);
        if (q_ != 0.0) v *= std::pow(std::log(std::numbers::e + xi), q_);
        s += g.w[i] * v * zi;
    }
    return inner_[k] + hh * s;
}

double ComparisonFunction::outer(double tau) const {
    const double z = tau - R_;
    if (!(z > 0.0)) return 0.0;
    const double x = std::log(z);
    if (x <= lz_.front()) return outer_.front() * std::pow(z / std::exp(lz_.front()), R_ == 0.0 ? p_ - d_ : 2.0);
    const std::size_t k = std::min(lz_.size() - 1, std::size_t((x - lz0_) / hstep_));
    const double a = lz_[k];
    const double hh = 0.5 * (x - a), cc = 0.5 * (x + a);
    const Rule& g = rule();
    double s = 0.0;
    for (int i = 0; i < 8; ++i) {
        const double zi = std::exp(cc + hh * g.x[i]);
        s += g.w[i] * std::pow(R_ + zi, -d_) * inner(R_ + zi) * zi;
    }
    return outer_[k] + hh * s;
}

ComparisonFunction ComparisonFunction::with_constants(double kappa, double L) const {
    ComparisonFunction c = *this;
    if (!(kappa > 0.0) || !(L >= 0.0)) throw ParameterError("comparison constants must satisfy kappa > 0, L >= 0");
    c.kappa_ = kappa;
    c.L_ = L;
    return c;
}

void ComparisonFunction::write_csv(std::ostream& os) const {
    os << "tau,inner,outer,value\n";
    os.precision(17);
    for (std::size_t k = 0; k < lz_.size(); k += 4) {
        const double tau = R_ + std::exp(lz_[k]);
        os << tau << ',' << inner_[k] << ',' << outer_[k] << ',' << kappa_ * std::exp(lcore_[k]) + L_ << '\n';
    }
}

ComparisonFunction build_minorant(double p, double d, double q, double R, double kappa) {
    if (!(d > 1.0 && d < p)) throw ParameterError("minorant needs 1 < d < p");
    return ComparisonFunction(ComparisonFunction::Role::minorant, p, d, q, R, kappa, 0.0);
}

ComparisonFunction build_majorant(double p, double q, double kappa, double L, double d) {
    return ComparisonFunction(ComparisonFunction::Role::majorant, p, d, q, 0.0, kappa, L);
}

DominationReport check_domination(const ComparisonFunction& f, const Nonlinearity& F, double tau_lo, double tau_hi,
                                  int per_decade) {
    DominationReport rep;
    const bool major = f.role() == ComparisonFunction::Role::majorant;
    rep.worst_ratio = std::numeric_limits<double>::infinity();
    auto test = [&](double tau) {
        ++rep.samples;
        const double fv = f(tau), Fv = F(tau);
        const double hi = major ? fv : Fv, lo = major ? Fv : fv;
        const bool ok = hi >= lo;
        const double ratio = lo > 0.0 ? hi / lo : std::numeric_limits<double>::infinity();
        if (!ok && rep.holds) {
            rep.holds = false;
            rep.worst_tau = tau;
            rep.worst_ratio = ratio;
        } else if (rep.holds && ratio < rep.worst_ratio) {
            rep.worst_tau = tau;
            rep.worst_ratio = ratio;
        }
        return ok;
    };
    if (!test(0.0)) return rep;
    const double l0 = std::log10(tau_lo), l1 = std::log10(tau_hi);
    const long steps = long(std::ceil((l1 - l0) * per_decade));
    for (long i = 0; i <= steps; ++i) {
        if (!test(std::pow(10.0, l0 + (l1 - l0) * double(i) / double(steps)))) return rep;
    }
    return rep;
}

ComparisonFunction fit_majorant(const Nonlinearity& F, double d, double tau_hi, int max_doublings) {
    if (!F.has_descriptor()) return build_majorant(2.0, 0.0, 1.0, 0.0, d);
    ComparisonFunction f = build_majorant(F.p(), F.q(), 1.0, 1.0, d);
    DominationReport last;
    for (int k = 0; k <= max_doublings; ++k) {
        const double c = std::ldexp(1.0, k);
        ComparisonFunction g = f.with_constants(c, c);
        last = check_domination(g, F, 1e-8, tau_hi);
        if (last.holds) return g;
    }
    std::ostringstream os;
    os << "majorant does not dominate F at tau=" << last.worst_tau << " after " << max_doublings << " doublings";
    throw ConstructionError("majorant domination", os.str());
}

ComparisonFunction fit_minorant(const Nonlinearity& F, double d, double R, double tau_hi, int max_halvings) {
    if (!F.has_descriptor()) throw ConstructionError("minorant domination", "F = 0 admits no positive minorant");
    ComparisonFunction f = build_minorant(F.p(), d, F.q(), R, 1.0);
    DominationReport last;
    for (int k = 0; k <= max_halvings; ++k) {
        ComparisonFunction g = f.with_constants(std::ldexp(1.0, -k), 0.0);
        last = check_domination(g, F, 1e-8, tau_hi);
        if (last.holds) return g;
    }
    std::ostringstream os;
    os << "minorant exceeds F at tau=" << last.worst_tau;
    throw ConstructionError("minorant domination", os.str());
}

IntegralCriterion integral_criterion(const Nonlinearity& F, const FracParams& params, double cutoff) {
    IntegralCriterion r;
    r.cutoff = cutoff;
    if (!F.has_descriptor()) {
        r.finite = true;
        return r;
    }
    const double pt = params.p_theta;
    if (F.p() < pt && !is_critical(params, F.p())) r.finite = true;
    else if (is_critical(params, F.p())) r.finite = F.q() < -1.0;
    else r.finite = false;
    auto integrand = [&](double x) { return std::exp(-pt * x) * F(std::exp(x)); };
    const double X = std::log(cutoff);
    double s = 0.0;
    for (double a = 0.0; a < X; a += 1.0) {
        s += boost::math::quadrature::gauss_kronrod<double, 15>::integrate(integrand, a, std::min(a + 1.0, X), 5, 1e-12);
    }
    r.partial = s;
    return r;
}

}  // namespace fraclab
