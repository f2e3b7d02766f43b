#include "fraclab/kernel.hpp"

#include <algorithm>
#include <functional>
#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <istream>
#include <map>
#include <mutex>
#include <numbers>
#include <ostream>
#include <sstream>

namespace fraclab {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kRmin = 1e-4;

bool near(double a, double b) { return std::fabs(a - b) < 1e-14; }

// Upper limit of the Fourier integral: e^{-r^theta} r^N below ~1e-19.
double fourier_cutoff(const FracParams& fp) {
    double r = std::pow(45.0, 1.0 / fp.theta);
    for (int i = 0; i < 8; ++i) r = std::pow(45.0 + fp.N * std::log(std::max(r, 1.0)), 1.0 / fp.theta);
    return r;
}

// Gamma(rho, 1) by Fourier inversion; returns value and absolute error estimate.
std::pair<double, double> fourier_profile(const FracParams& fp, double rho, double r_up) {
    const int N = fp.N;
    const double th = fp.theta;
    auto envelope = [th](double r) { return std::exp(-std::pow(r, th)); };
    std::function<double(double)> f;
    double pref = 1.0;
    if (rho == 0.0) {
        f = [&](double r) { return envelope(r) * std::pow(r, N - 1); };
        pref = sphere_area(N) / std::pow(2.0 * kPi, N);
    } else if (N == 1) {
        f = [&](double r) { return envelope(r) * std::cos(r * rho); };
        pref = 1.0 / kPi;
    } else if (N == 2) {
        f = [&](double r) { return envelope(r) * r * std::cyl_bessel_j(0.0, r * rho); };
        pref = 1.0 / (2.0 * kPi);
    } else if (N == 3) {
        f = [&](double r) { return envelope(r) * r * std::sin(r * rho); };
        pref = 1.0 / (2.0 * kPi * kPi * rho);
    } else {
        const double nu = 0.5 * N - 1.0;
        f = [&, nu](double r) { return envelope(r) * std::pow(r, 0.5 * N) * std::cyl_bessel_j(nu, r * rho); };
        pref = std::pow(2.0 * kPi, -0.5 * N) * std::pow(rho, 1.0 - 0.5 * N);
    }
    using GK = boost::math::quadrature::gauss_kronrod<double, 15>;
    double h = rho > 0.0 ? std::min(kPi / rho, r_up / 64.0) : r_up / 64.0;
    double sum = 0.0, err = 0.0;
    // graded pieces towards r = 0, where e^{-r^theta} is not smooth
    double b = h;
    for (int lvl = 0; lvl < 40; ++lvl) {
        double a = 0.5 * b;
        double e = 0.0;
        sum += GK::integrate(f, a, b, 0, 0.0, &e);
        err += e;
        b = a;
    }
    for (double a = h; a < r_up; a += h) {
        double e = 0.0;
        sum += GK::integrate(f, a, std::min(a + h, r_up), 0, 0.0, &e);
        err += e;
    }
    return {pref * sum, std::fabs(pref) * err};
}

}  // namespace

double kernel_peak(const FracParams& fp) {
    return sphere_area(fp.N) * std::tgamma(fp.N / fp.theta) / (fp.theta * std::pow(2.0 * kPi, fp.N));
}

double kernel_tail_constant(const FracParams& fp) {
    const double th = fp.theta;
    return th * std::pow(2.0, th - 1.0) * std::tgamma(0.5 * (fp.N + th)) * std::tgamma(0.5 * th) *
           std::sin(0.5 * kPi * th) / std::pow(kPi, 0.5 * fp.N + 1.0);
}

KernelProfile::KernelProfile(FracParams params, double tolerance)
    : params_(params), tolerance_(tolerance),
      mode_(near(params.theta, 1.0) || near(params.theta, 2.0) ? KernelMode::closed_form : KernelMode::quadrature) {
    double r_max = 1000.0;
    if (near(params.theta, 2.0)) r_max = 40.0;
    const double r_up = fourier_cutoff(params);
    if (mode_ == KernelMode::quadrature) r_max = std::clamp(2e4 / r_up, 30.0, 1000.0);

    radii_.resize(kTableSize);
    values_.resize(kTableSize);
    radii_[0] = 0.0;
    const double lmin = std::log(kRmin), lmax = std::log(r_max);
    for (std::size_t i = 1; i < kTableSize; ++i)
        radii_[i] = std::exp(lmin + (lmax - lmin) * double(i - 1) / double(kTableSize - 2));
    radii_.back() = r_max;

    const double peak = kernel_peak(params);
    if (mode_ == KernelMode::closed_form) {
        for (std::size_t i = 0; i < kTableSize; ++i) values_[i] = closed_form_value(radii_[i]);
    } else {
        values_[0] = peak;
        for (std::size_t i = 1; i < kTableSize; ++i) {
            auto [v, e] = fourier_profile(params, radii_[i], r_up);
            achieved_ = std::max(achieved_, e / peak);
            values_[i] = v;
        }
        if (achieved_ > tolerance_) {
            std::ostringstream os;
            os << "kernel quadrature did not reach tolerance " << tolerance_ << " (achieved " << achieved_ << ")";
            throw EvaluationError(os.str(), achieved_);
        }
        // Enforce the documented invariants against roundoff in the far field.
        for (std::size_t i = 1; i < kTableSize; ++i) {
            if (!(values_[i] > 0.0) || values_[i] > values_[i - 1]) {
                std::ostringstream os;
                os << "kernel table lost positivity/monotonicity at r=" << radii_[i];
                throw EvaluationError(os.str(), achieved_);
            }
        }
    }
    build_interpolant();
    build_mass_table();
}

KernelProfile::KernelProfile(FracParams params, std::vector<double> radii, std::vector<double> values, double tolerance)
    : params_(params), tolerance_(tolerance),
      mode_(near(params.theta, 1.0) || near(params.theta, 2.0) ? KernelMode::closed_form : KernelMode::quadrature),
      radii_(std::move(radii)), values_(std::move(values)) {
    if (radii_.size() < 4 || radii_.size() != values_.size() || radii_[0] != 0.0)
        throw ParameterError("kernel table must start at radius 0 and hold at least 4 rows");
    for (std::size_t i = 1; i < radii_.size(); ++i) {
        if (!(radii_[i] > radii_[i - 1])) throw ParameterError("kernel table radii must be increasing");
        if (!(values_[i] > 0.0)) throw ParameterError("kernel table values must be positive");
    }
    build_interpolant();
    build_mass_table();
}

void KernelProfile::build_interpolant() {
    const std::size_t n = radii_.size();
    log_r_.resize(n - 1);
    log_v_.resize(n - 1);
    for (std::size_t i = 1; i < n; ++i) {
        log_r_[i - 1] = std::log(radii_[i]);
        log_v_[i - 1] = std::log(values_[i]);
    }
    // monotone cubic Hermite slopes (Fritsch-Carlson) in log-log coordinates
    const std::size_t m = log_r_.size();
    std::vector<double> d(m - 1);
    for (std::size_t i = 0; i + 1 < m; ++i) d[i] = (log_v_[i + 1] - log_v_[i]) / (log_r_[i + 1] - log_r_[i]);
    slope_.assign(m, 0.0);
    slope_[0] = d[0];
    slope_[m - 1] = d[m - 2];
    for (std::size_t i = 1; i + 1 < m; ++i) {
        if (d[i - 1] * d[i] <= 0.0) {
            slope_[i] = 0.0;
        } else {
            const double h0 = log_r_[i] - log_r_[i - 1], h1 = log_r_[i + 1] - log_r_[i];
            const double w1 = 2.0 * h1 + h0, w2 = h1 + 2.0 * h0;
            slope_[i] = (w1 + w2) / (w1 / d[i - 1] + w2 / d[i]);
        }
    }
    tail_c_ = values_.back() * std::pow(radii_.back(), params_.N + params_.theta);
}

double KernelProfile::interp_value(double r) const {
    const double r1 = radii_[1];
    if (r <= r1) {
        // even in r near the origin
        const double s = r / r1;
        return values_[0] + (values_[1] - values_[0]) * s * s;
    }
    if (r >= radii_.back()) return tail_c_ * std::pow(r, -(params_.N + params_.theta));
    const double lr = std::log(r);
    auto it = std::upper_bound(log_r_.begin(), log_r_.end(), lr);
    std::size_t i = std::size_t(it - log_r_.begin()) - 1;
    i = std::min(i, log_r_.size() - 2);
    const double h = log_r_[i + 1] - log_r_[i];
    const double s = (lr - log_r_[i]) / h;
    const double s2 = s * s, s3 = s2 * s;
    const double lv = (2 * s3 - 3 * s2 + 1) * log_v_[i] + (s3 - 2 * s2 + s) * h * slope_[i] +
                      (-2 * s3 + 3 * s2) * log_v_[i + 1] + (s3 - s2) * h * slope_[i + 1];
    return std::exp(lv);
}

double KernelProfile::closed_form_value(double r) const {
    const int N = params_.N;
    if (near(params_.theta, 2.0)) return std::pow(4.0 * kPi, -0.5 * N) * std::exp(-0.25 * r * r);
    // Poisson kernel
    const double cN = std::tgamma(0.5 * (N + 1)) / std::pow(kPi, 0.5 * (N + 1));
    return cN * std::pow(1.0 + r * r, -0.5 * (N + 1));
}

bool KernelProfile::has_closed_mass() const { return mode_ == KernelMode::closed_form && params_.N <= 3; }

double KernelProfile::closed_form_mass(double r) const {
    const int N = params_.N;
    if (near(params_.theta, 2.0)) {
        const double s = 0.5 * r;
        if (N == 1) return std::erf(s);
        if (N == 2) return -std::expm1(-s * s);
        return std::erf(s) - r * std::exp(-s * s) / std::sqrt(kPi);
    }
    if (N == 1) return 2.0 / kPi * std::atan(r);
    if (N == 2) return 1.0 - 1.0 / std::sqrt(1.0 + r * r);
    return 2.0 / kPi * (std::atan(r) - r / (1.0 + r * r));
}

void KernelProfile::build_mass_table() {
    using G = boost::math::quadrature::gauss<double, 10>;
    const int N = params_.N;
    const double SN = sphere_area(N);
    mass_.assign(radii_.size(), 0.0);
    auto radial = [&](double r) { return SN * std::pow(r, N - 1) * value(r); };
    mass_[1] = G::integrate(radial, 0.0, radii_[1]);
    for (std::size_t i = 2; i < radii_.size(); ++i) {
        const double a = std::log(radii_[i - 1]), b = std::log(radii_[i]);
        mass_[i] = mass_[i - 1] + G::integrate([&](double u) {
                                      const double r = std::exp(u);
                                      return r * radial(r);
                                  },
                                  a, b);
    }
}

double KernelProfile::value(double r) const {
    r = std::fabs(r);
    if (mode_ == KernelMode::closed_form) return closed_form_value(r);
    return interp_value(r);
}

double KernelProfile::ball_mass(double r) const {
    if (r <= 0.0) return 0.0;
    if (has_closed_mass()) return closed_form_mass(r);
    const double SN = sphere_area(params_.N);
    const double th = params_.theta;
    if (r >= radii_.back()) {
        // mass_.back() plus the tail between edge and r
        const double edge = radii_.back();
        return mass_.back() + SN * tail_c_ / th * (std::pow(edge, -th) - std::pow(r, -th));
    }
    auto it = std::upper_bound(radii_.begin(), radii_.end(), r);
    std::size_t i = std::size_t(it - radii_.begin()) - 1;
    using G = boost::math::quadrature::gauss<double, 10>;
    const int N = params_.N;
    auto radial = [&](double s) { return SN * std::pow(s, N - 1) * value(s); };
    return mass_[i] + G::integrate(radial, radii_[i], r);
}

double KernelProfile::total_mass() const {
    const double th = params_.theta;
    double tail = 0.0;
    if (!near(th, 2.0)) tail = sphere_area(params_.N) * tail_c_ * std::pow(radii_.back(), -th) / th;
    return mass_.back() + tail;
}

void KernelProfile::write(std::ostream& os) const {
    os << "# fraclab-kernel N=" << params_.N << " theta=" << params_.theta << " tolerance=" << tolerance_ << "\n";
    os << "radius,value\n";
    os.precision(17);
    for (std::size_t i = 0; i < radii_.size(); ++i) os << radii_[i] << "," << values_[i] << "\n";
}

KernelProfile KernelProfile::read(std::istream& is) {
    std::string line;
    int N = 0;
    double theta = 0.0, tol = kDefaultTolerance;
    std::vector<double> r, v;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            std::istringstream ss(line.substr(1));
            std::string tok;
            while (ss >> tok) {
                auto eq = tok.find('=');
                if (eq == std::string::npos) continue;
                const std::string key = tok.substr(0, eq), val = tok.substr(eq + 1);
                if (key == "N") N = std::stoi(val);
                if (key == "theta") theta = std::stod(val);
                if (key == "tolerance") tol = std::stod(val);
            }
            continue;
        }
        if (line.rfind("radius", 0) == 0) continue;
        auto comma = line.find(',');
        if (comma == std::string::npos) throw ParameterError("malformed kernel table row: " + line);
        r.push_back(std::stod(line.substr(0, comma)));
        v.push_back(std::stod(line.substr(comma + 1)));
    }
    if (N < 1 || theta <= 0.0) throw ParameterError("kernel table header missing N/theta");
    return KernelProfile(FracParams(N, theta), std::move(r), std::move(v), tol);
}

std::shared_ptr<const KernelProfile> kernel_profile(const FracParams& params) {
    static std::mutex mu;
    static std::map<std::pair<int, double>, std::shared_ptr<const KernelProfile>> cache;
    const auto key = std::make_pair(params.N, params.theta);
    {
        std::lock_guard lock(mu);
        if (auto it = cache.find(key); it != cache.end()) return it->second;
    }
    auto built = std::make_shared<const KernelProfile>(params);
    std::lock_guard lock(mu);
    return cache.emplace(key, std::move(built)).first->second;
}

namespace {
double norm(std::span<const double> x) {
    double s = 0.0;
    for (double xi : x) s += xi * xi;
    return std::sqrt(s);
}
}  // namespace

double kernel_radial(const KernelProfile& k, double r, double t) {
    if (!(t > 0.0)) throw DomainError("kernel evaluated at non-positive time");
    const auto& fp = k.params();
    const double scale = std::pow(t, -1.0 / fp.theta);
    return std::pow(scale, fp.N) * k.value(r * scale);
}

double kernel_value(const KernelProfile& k, std::span<const double> x, double t) {
    if (int(x.size()) != k.params().N) throw ParameterError("point dimension does not match N");
    return kernel_radial(k, norm(x), t);
}

double kernel_value(const FracParams& params, std::span<const double> x, double t) {
    return kernel_value(*kernel_profile(params), x, t);
}

double kernel_bound_ratio(const KernelProfile& k, std::span<const double> x, double t) {
    const auto& fp = k.params();
    if (near(fp.theta, 2.0)) throw ParameterError("kernel_bound_ratio is unsupported for theta = 2");
    if (!(t > 0.0)) throw DomainError("kernel evaluated at non-positive time");
    const double rho = norm(x) * std::pow(t, -1.0 / fp.theta);
    return k.value(rho) * std::pow(1.0 + rho, fp.N + fp.theta);
}

double kernel_bound_ratio(const FracParams& params, std::span<const double> x, double t) {
    return kernel_bound_ratio(*kernel_profile(params), x, t);
}

}  // namespace fraclab
