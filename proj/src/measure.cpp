#include "fraclab/measure.hpp"

#include <algorithm>
#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>
#include <limits>
#include <numbers>

namespace fraclab {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kCoreEdge = 0.3;  // below 1/e, so log log(1/r) > 0 on the core

double logaddexp(double a, double b) {
    if (a == -kInf) return b;
    if (b == -kInf) return a;
    const double m = std::max(a, b);
    if (m == kInf) return kInf;
    return m + std::log1p(std::exp(-std::fabs(a - b)));
}

double safe_log(double x) { return x > 0.0 ? std::log(x) : -kInf; }

double norm(const Point& z, int N) {
    double s = 0.0;
    for (int d = 0; d < N; ++d) s += z[d] * z[d];
    return std::sqrt(s);
}

// Fraction of the sphere |y| = r lying in B(z, sigma), d = |z|.
double sphere_fraction(int N, double r, double d, double sigma) {
    if (r < 1e-12 * sigma) {
        if (d < sigma * (1 - 1e-12)) return 1.0;
        if (d > sigma * (1 + 1e-12)) return 0.0;
        return 0.5;
    }
    if (r + d <= sigma) return 1.0;
    if (r >= d + sigma || r <= d - sigma) return 0.0;
    if (N == 1) {
        // points +r and -r on the axis through z
        int in = 0;
        if (std::fabs(r - d) <= sigma) ++in;
        if (std::fabs(-r - d) <= sigma) ++in;
        return 0.5 * in;
    }
    double c = (r * r + d * d - sigma * sigma) / (2.0 * r * d);
    c = std::clamp(c, -1.0, 1.0);
    if (N == 2) return std::acos(c) / std::numbers::pi;
    return 0.5 * (1.0 - c);
}

struct Radial {
    // evaluation of g(mu(r)) for r bounded away from 0
    std::function<double(double)> plain;
    // log(r^N u g(mu(r))), u = log(1/r), as a function of v = log u; empty if not singular
    std::function<double(double)> log_core;
};

// integral over (0, b) of r^{N-1} G(r) frac(r), b <= kCoreEdge, via r = exp(-e^{e^w}).
double core_integral(const Radial& G, double b, const std::function<double(double)>& frac) {
    if (b <= 0.0) return 0.0;
    const double w0 = std::log(std::log(-std::log(b)));
    auto f = [&](double w) {
        const double v = std::exp(w);
        const double u = std::exp(v);
        const double r = std::exp(-u);
        const double lg = G.log_core(v);
        if (lg == -kInf) return 0.0;
        const double val = std::exp(lg + w);
        return val * frac(r);
    };
    boost::math::quadrature::exp_sinh<double> es;
    double err = 0.0;
    return es.integrate([&](double s) { return f(w0 + s); }, 0.0, kInf, 1e-10, &err);
}

double bounded_integral(const std::function<double(double)>& f, double a, double b) {
    if (!(b > a)) return 0.0;
    boost::math::quadrature::tanh_sinh<double> ts;
    return ts.integrate(f, a, b, 1e-11);
}

// integral over B(z, sigma) intersected with B(0, R) of G(|y|) dy.
double radial_ball_integral(int N, const Radial& G, double R, double d, double sigma) {
    const double SN = sphere_area(N);
    const double top = std::min(R, d + sigma);
    if (!(top > std::max(0.0, d - sigma))) return 0.0;
    std::vector<double> br{0.0, std::fabs(d - sigma), d + sigma, R, kCoreEdge};
    std::sort(br.begin(), br.end());
    auto frac = [&](double r) { return sphere_fraction(N, r, d, sigma); };
    double total = 0.0;
    double lo = std::max(0.0, d - sigma);
    for (std::size_t i = 0; i + 1 < br.size(); ++i) {
        double a = std::max(br[i], lo), b = std::min(br[i + 1], top);
        if (!(b > a)) continue;
        if (a == 0.0 && G.log_core) {
            total += SN * core_integral(G, b, frac);
        } else {
            total += SN * bounded_integral([&](double r) { return std::pow(r, N - 1) * G.plain(r) * frac(r); }, a, b);
        }
    }
    return total;
}

// |B(z, sigma) intersected with B(0, R)|.
double lens_volume(int N, double R, double d, double sigma) {
    Radial one{[](double) { return 1.0; }, {}};
    return radial_ball_integral(N, one, R, d, sigma);
}

Radial profile_radial(const SingularProfile& p, const DensityTransform& g) {
    const int N = p.dim();
    const double lc = safe_log(p.coefficient()), lK = safe_log(p.background());
    const double growth = p.log_growth();
    Radial G;
    G.plain = [&p, &g](double r) { return g.g(p.value(r)); };
    G.log_core = [&p, &g, N, lc, lK, growth](double v) {
        const double u = std::exp(v);
        DensityTransform::LogArgs a{};
        a.u = u;
        a.v = v;
        a.N = N;
        a.growth = growth;
        a.lrNum = logaddexp(lc + p.log_rN_u_shape(v), std::isfinite(u) ? lK - N * u + v : -kInf);
        a.logmu = logaddexp(lc + p.log_shape(v), lK);
        if (std::isfinite(a.logmu))
            a.L = std::log(logaddexp(1.0, a.logmu));
        else
            a.L = v + std::log(growth);
        return g.log_rN_g(a);
    };
    return G;
}

double ball_volume_r(int N, double sigma) { return ball_volume(N) * std::pow(sigma, N); }

// Overlap volume of a grid cell (center c, side h) with B(z, sigma).
double cell_overlap(int N, const Point& c, double h, const Point& z, double sigma) {
    if (N == 1) {
        const double a = std::max(c[0] - 0.5 * h, z[0] - sigma), b = std::min(c[0] + 0.5 * h, z[0] + sigma);
        return std::max(0.0, b - a);
    }
    double near2 = 0.0, far2 = 0.0;
    for (int d = 0; d < N; ++d) {
        const double lo = c[d] - 0.5 * h - z[d], hi = c[d] + 0.5 * h - z[d];
        const double nd = (lo > 0) ? lo : (hi < 0 ? -hi : 0.0);
        const double fd = std::max(std::fabs(lo), std::fabs(hi));
        near2 += nd * nd;
        far2 += fd * fd;
    }
    const double vol = std::pow(h, N);
    if (far2 <= sigma * sigma) return vol;
    if (near2 >= sigma * sigma) return 0.0;
    constexpr int S = 8;
    int inside = 0, total = 0;
    for (int i = 0; i < S; ++i)
        for (int j = 0; j < S; ++j)
            for (int k = 0; k < (N == 3 ? S : 1); ++k) {
                const double off[3] = {(i + 0.5) / S - 0.5, (j + 0.5) / S - 0.5, (k + 0.5) / S - 0.5};
                double r2 = 0.0;
                for (int d = 0; d < N; ++d) {
                    const double y = c[d] + off[d] * h - z[d];
                    r2 += y * y;
                }
                inside += r2 <= sigma * sigma;
                ++total;
            }
    return vol * double(inside) / double(total);
}

}  // namespace

// ---------------------------------------------------------------- profile

SingularProfile::SingularProfile(CaseLabel label, double coefficient, double R, double K)
    : label_(label), coeff_(coefficient), R_(R), K_(K) {
    if (!label.singular()) throw ParameterError("singular profiles exist only for the three singular cases");
    if (!(coefficient >= 0.0) || !std::isfinite(coefficient)) throw ParameterError("profile coefficient must be >= 0");
    if (!(K >= 0.0) || !std::isfinite(K)) throw ParameterError("profile background must be >= 0");
    const int N = label.params.N;
    const double th = label.params.theta, p = label.p, q = label.q;
    switch (label.kind) {
        case CaseKind::CriticalBorderline:
            if (!(R < std::exp(-1.0))) throw ParameterError("borderline profile needs R < 1/e (log|log|x|| > 0)");
            exps_ = {-double(N), -1.0, -N / th - 1.0};
            break;
        case CaseKind::CriticalLog:
            exps_ = {-double(N), -N * (q + 1.0) / th - 1.0, 0.0};
            break;
        default:
            exps_ = {-th / (p - 1.0), -q / (p - 1.0), 0.0};
            break;
    }
    // log factors need |log r| > 0; a pure power may reach r = 1
    const bool pure_power = exps_[1] == 0.0 && exps_[2] == 0.0;
    if (!(R > 0.0 && (R < 1.0 || (pure_power && R == 1.0))))
        throw ParameterError(pure_power ? "profile cutoff R must lie in (0, 1]" : "profile cutoff R must lie in (0, 1)");
}

double SingularProfile::shape(double r) const {
    const double u = -std::log(r);
    double s = std::pow(r, exps_[0]) * std::pow(u, exps_[1]);
    if (exps_[2] != 0.0) s *= std::pow(std::log(u), exps_[2]);
    return s;
}

double SingularProfile::value(double r) const {
    r = std::fabs(r);
    if (r == 0.0) throw DomainError("singular point");
    if (r >= R_) return K_;
    return coeff_ * shape(r) + K_;
}

double SingularProfile::log_shape(double v) const {
    const double u = std::exp(v);
    double s = -exps_[0] * u;
    if (exps_[1] != 0.0) s += exps_[1] * v;
    if (exps_[2] != 0.0) s += exps_[2] * std::log(v);
    return s;
}

double SingularProfile::log_rN_shape(double v) const {
    const double u = std::exp(v);
    const double a = dim() + exps_[0];
    double s = exps_[1] != 0.0 ? exps_[1] * v : 0.0;
    if (a != 0.0) s -= a * u;
    if (exps_[2] != 0.0) s += exps_[2] * std::log(v);
    return s;
}

double SingularProfile::log_rN_u_shape(double v) const {
    const double u = std::exp(v);
    const double a = dim() + exps_[0];
    const double b = exps_[1] + 1.0;
    double s = 0.0;
    if (a != 0.0) {
        if (!std::isfinite(u)) return a > 0.0 ? -kInf : kInf;
        s -= a * u;
    }
    if (b != 0.0) s += b * v;
    if (exps_[2] != 0.0) s += exps_[2] * std::log(v);
    return s;
}

double SingularProfile::log_growth() const noexcept { return -exps_[0]; }

double profile_radial_integral(const SingularProfile& p, double b) {
    const int N = p.dim();
    b = std::min(b, p.cutoff());
    if (b <= 0.0) return 0.0;
    const SingularProfile unit = p.with_coefficient(1.0);
    const SingularProfile bare(unit.label(), 1.0, unit.cutoff(), 0.0);
    auto id = DensityTransform::identity();
    Radial G = profile_radial(bare, id);
    G.plain = [&bare](double r) { return bare.shape(r); };
    auto one = [](double) { return 1.0; };
    const double c = std::min(b, kCoreEdge);
    double total = core_integral(G, c, one);
    if (b > c) total += bounded_integral([&](double r) { return std::pow(r, N - 1) * bare.shape(r); }, c, b);
    return total;
}

// ---------------------------------------------------------------- measure

InitialMeasure InitialMeasure::zero(int N) {
    InitialMeasure m;
    m.N = N;
    return m;
}

InitialMeasure InitialMeasure::constant(int N, double c) {
    InitialMeasure m = zero(N);
    m.background = c;
    return m;
}

InitialMeasure InitialMeasure::dirac(int N, double mass, Point at) {
    InitialMeasure m = zero(N);
    m.atoms.push_back({at, mass});
    return m;
}

InitialMeasure InitialMeasure::from_profile(const SingularProfile& p) {
    InitialMeasure m = zero(p.dim());
    m.profile = p;
    return m;
}

InitialMeasure InitialMeasure::from_density(const GridFunction& g) {
    InitialMeasure m = zero(g.spec.N);
    m.density = g;
    m.density->background = 0.0;
    m.background = g.background;
    return m;
}

double InitialMeasure::total_background() const noexcept {
    return background + (profile ? profile->background() : 0.0);
}

InitialMeasure InitialMeasure::scaled(double c) const {
    if (!(c >= 0.0)) throw ParameterError("measures can only be scaled by c >= 0");
    InitialMeasure m = *this;
    m.background *= c;
    if (m.profile)
        m.profile = SingularProfile(profile->label(), profile->coefficient() * c, profile->cutoff(),
                                    profile->background() * c);
    if (m.density)
        for (double& v : m.density->values) v *= c;
    for (auto& a : m.atoms) a.mass *= c;
    return m;
}

InitialMeasure InitialMeasure::translated(const std::array<int, 3>& cells) const {
    if (profile) throw ParameterError("singular profiles are centered at the origin and cannot be translated");
    InitialMeasure m = *this;
    if (density) {
        const GridSpec& s = density->spec;
        GridFunction out(s, 0.0, density->time);
        for (std::size_t k = 0; k < s.size(); ++k) {
            auto idx = s.unflatten(k);
            bool inside = true;
            for (int d = 0; d < s.N; ++d) {
                idx[d] += cells[d];
                inside = inside && idx[d] >= 0 && idx[d] < s.points;
            }
            if (inside) out.values[s.flatten(idx)] = density->values[k];
        }
        m.density = out;
    }
    if (!atoms.empty()) {
        if (!density) throw ParameterError("cell shifts need a density grid to define the cell size");
        const double h = density->spec.dx();
        for (auto& a : m.atoms)
            for (int d = 0; d < N; ++d) a.x[d] += cells[d] * h;
    }
    return m;
}

void InitialMeasure::validate() const {
    if (!(background >= 0.0) || !std::isfinite(background)) throw DomainError("background must be finite and >= 0");
    for (const auto& a : atoms)
        if (!(a.mass >= 0.0) || !std::isfinite(a.mass)) throw DomainError("atom masses must be finite and >= 0");
    if (density) {
        if (density->spec.N != N) throw ParameterError("density grid dimension does not match the measure");
        density->validate();
    }
    if (profile && profile->dim() != N) throw ParameterError("profile dimension does not match the measure");
}

// ---------------------------------------------------------------- transforms

DensityTransform DensityTransform::identity() {
    DensityTransform t;
    t.g = [](double m) { return m; };
    t.log_rN_g = [](const LogArgs& a) { return a.lrNum; };
    t.superlinear = false;
    t.is_identity = true;
    return t;
}

DensityTransform DensityTransform::power(double alpha) {
    if (!(alpha > 0.0)) throw ParameterError("power transform needs alpha > 0");
    DensityTransform t;
    t.g = [alpha](double m) { return std::pow(m, alpha); };
    t.log_rN_g = [alpha](const LogArgs& a) {
        if (!std::isfinite(a.u) || !std::isfinite(a.logmu)) {
            const double rate = alpha * a.growth - a.N;
            return rate < 0 ? -kInf : kInf;
        }
        if (a.logmu == -kInf) return -kInf;
        return alpha * a.logmu - a.N * a.u + a.v;
    };
    t.superlinear = alpha > 1.0;
    return t;
}

// ---------------------------------------------------------------- ball functionals

double ball_mass(const SingularProfile& p, const Point& z, double sigma) {
    return ball_mass(InitialMeasure::from_profile(p), z, sigma);
}

double ball_integral(const InitialMeasure& mu, const DensityTransform& g, const Point& z, double sigma) {
    if (!(sigma > 0.0)) throw DomainError("ball radius must be positive");
    const int N = mu.N;
    const double d = norm(z, N);
    const double vol = ball_volume_r(N, sigma);
    const double K = mu.total_background();
    const bool linear = g.is_identity;

    double total = 0.0;
    for (const auto& a : mu.atoms) {
        double r2 = 0.0;
        for (int k = 0; k < N; ++k) r2 += (a.x[k] - z[k]) * (a.x[k] - z[k]);
        if (r2 <= sigma * sigma && a.mass > 0.0) {
            if (g.superlinear) return kInf;
            total += a.mass;
        }
    }

    if (mu.profile && mu.density && !linear)
        throw ParameterError("nonlinear ball integrals of profile plus grid density are not supported");

    if (linear) {
        total += K * vol;
        if (mu.profile && mu.profile->coefficient() > 0.0) {
            const SingularProfile bare(mu.profile->label(), mu.profile->coefficient(), mu.profile->cutoff(), 0.0);
            total += radial_ball_integral(N, profile_radial(bare, g), bare.cutoff(), d, sigma);
        }
        if (mu.density) {
            const GridSpec& s = mu.density->spec;
            for (std::size_t k = 0; k < s.size(); ++k) {
                const double v = mu.density->values[k];
                if (v == 0.0) continue;
                total += v * cell_overlap(N, s.center_of(k), s.dx(), z, sigma);
            }
        }
        return total;
    }

    const double gK = g.g(K);
    if (mu.profile) {
        const SingularProfile& p = *mu.profile;
        const SingularProfile full(p.label(), p.coefficient(), p.cutoff(), K);
        const double inner = radial_ball_integral(N, profile_radial(full, g), p.cutoff(), d, sigma);
        total += inner + gK * (vol - lens_volume(N, p.cutoff(), d, sigma));
        return total;
    }
    if (mu.density) {
        const GridSpec& s = mu.density->spec;
        double covered = 0.0;
        for (std::size_t k = 0; k < s.size(); ++k) {
            const double ov = cell_overlap(N, s.center_of(k), s.dx(), z, sigma);
            if (ov == 0.0) continue;
            covered += ov;
            total += g.g(mu.density->values[k] + K) * ov;
        }
        total += gK * std::max(0.0, vol - covered);
        return total;
    }
    return total + gK * vol;
}

double ball_mass(const InitialMeasure& mu, const Point& z, double sigma) {
    return ball_integral(mu, DensityTransform::identity(), z, sigma);
}

double ball_average(const InitialMeasure& mu, const DensityTransform& g, const Point& z, double sigma) {
    return ball_integral(mu, g, z, sigma) / ball_volume_r(mu.N, sigma);
}

BallSup sup_over_centers(int N, double sigma, double search, const std::function<double(const Point&)>& functional) {
    if (!(sigma > 0.0) || !(search >= 0.0)) throw DomainError("sup over centers needs sigma > 0 and search >= 0");
    BallSup best{-kInf, {0, 0, 0}};
    auto scan = [&](const Point& c0, double pitch, int half) {
        std::array<int, 3> lim{half, N > 1 ? half : 0, N > 2 ? half : 0};
        for (int i = -lim[0]; i <= lim[0]; ++i)
            for (int j = -lim[1]; j <= lim[1]; ++j)
                for (int k = -lim[2]; k <= lim[2]; ++k) {
                    Point c{c0[0] + i * pitch, c0[1] + j * pitch, c0[2] + k * pitch};
                    bool inside = true;
                    for (int d = 0; d < N; ++d) inside = inside && std::fabs(c[d]) <= search + 1e-12;
                    if (!inside) continue;
                    const double v = functional(c);
                    if (v > best.value) best = {v, c};
                }
    };
    // coarse pass, capped in size for N >= 2, then pitch sigma/4 around the best
    const double target = sigma / 4.0;
    const double cap = N == 1 ? 1 << 16 : (N == 2 ? 128.0 : 24.0);
    double pitch = std::max(target, search / cap);
    scan({0, 0, 0}, pitch, int(std::floor(search / pitch + 1e-9)));
    while (pitch > target * (1 + 1e-12)) {
        const double next = std::max(target, pitch / 4.0);
        const int half = int(std::ceil(pitch / next));
        pitch = next;
        scan(best.center, pitch, half);
    }
    // refinement pass
    scan(best.center, target / 4.0, 4);
    return best;
}

BallSup sup_ball_mass(const InitialMeasure& mu, double sigma, double search) {
    return sup_over_centers(mu.N, sigma, search, [&](const Point& z) { return ball_mass(mu, z, sigma); });
}

// ---------------------------------------------------------------- discretization

namespace {

// integral of coeff*shape*1{r<R} over a cell (1D exact).
double profile_cell_1d(const SingularProfile& p, double a, double b) {
    auto seg = [&](double lo, double hi) {  // 0 <= lo < hi
        hi = std::min(hi, p.cutoff());
        if (!(hi > lo)) return 0.0;
        if (lo == 0.0) return 0.5 * ball_mass(SingularProfile(p.label(), p.coefficient(), p.cutoff(), 0.0), {0, 0, 0}, hi);
        return bounded_integral([&](double r) { return p.coefficient() * p.shape(r); }, lo, hi);
    };
    if (a < 0.0 && b > 0.0) return seg(0.0, -a) + seg(0.0, b);
    if (b <= 0.0) return seg(-b, -a);
    return seg(a, b);
}

double profile_cell_nd(const SingularProfile& p, const Point& c, double h, int depth);

double gl_cell(const SingularProfile& p, const Point& c, double h, double exclude_r) {
    constexpr int Q = 8;
    static const auto& nodes = boost::math::quadrature::gauss<double, Q>::abscissa();
    static const auto& wts = boost::math::quadrature::gauss<double, Q>::weights();
    // full symmetric node set
    std::vector<std::pair<double, double>> xw;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        xw.push_back({nodes[i], wts[i]});
        if (nodes[i] != 0.0) xw.push_back({-nodes[i], wts[i]});
    }
    const int N = p.dim();
    double s = 0.0;
    for (auto [x0, w0] : xw)
        for (auto [x1, w1] : xw)
            for (std::size_t k = 0; k < (N == 3 ? xw.size() : 1); ++k) {
                const double x2 = N == 3 ? xw[k].first : 0.0, w2 = N == 3 ? xw[k].second : 1.0;
                const double y[3] = {c[0] + 0.5 * h * x0, c[1] + 0.5 * h * x1, c[2] + 0.5 * h * x2};
                double r = 0.0;
                for (int d = 0; d < N; ++d) r += y[d] * y[d];
                r = std::sqrt(r);
                if (r <= exclude_r || r >= p.cutoff()) continue;
                s += w0 * w1 * w2 * p.coefficient() * p.shape(r);
            }
    return s * std::pow(0.5 * h, N);
}

double profile_cell_nd(const SingularProfile& p, const Point& c, double h, int depth) {
    const int N = p.dim();
    double near2 = 0.0, far2 = 0.0;
    bool contains = true;
    for (int d = 0; d < N; ++d) {
        const double lo = c[d] - 0.5 * h, hi = c[d] + 0.5 * h;
        contains = contains && lo <= 0.0 && hi >= 0.0;
        const double nd = lo > 0 ? lo : (hi < 0 ? -hi : 0.0);
        near2 += nd * nd;
        far2 += std::max(lo * lo, hi * hi);
    }
    if (std::sqrt(near2) >= p.cutoff()) return 0.0;
    const SingularProfile bare(p.label(), p.coefficient(), p.cutoff(), 0.0);
    if (contains) {
        // origin at the center or at a corner of the cell
        bool centered = true;
        for (int d = 0; d < N; ++d) centered = centered && std::fabs(c[d]) < 1e-12 * h;
        if (centered) {
            const double rho = 0.5 * h;
            return ball_mass(bare, {0, 0, 0}, rho) + gl_cell(p, c, h, rho) * 1.0;
        }
        const double rho = h;
        return ball_mass(bare, {0, 0, 0}, rho) / std::pow(2.0, N) + gl_cell(p, c, h, rho);
    }
    const double diag = h * std::sqrt(double(N));
    if (std::sqrt(near2) > 2.0 * diag || depth >= 5) return gl_cell(p, c, h, 0.0);
    double s = 0.0;
    for (int i = 0; i < (1 << N); ++i) {
        Point cc = c;
        for (int d = 0; d < N; ++d) cc[d] += ((i >> d) & 1 ? 0.25 : -0.25) * h;
        s += profile_cell_nd(p, cc, 0.5 * h, depth + 1);
    }
    return s;
}

}  // namespace

GridFunction discretize(const InitialMeasure& mu, const GridSpec& spec) {
    if (spec.N != mu.N) throw ParameterError("grid dimension does not match the measure");
    GridFunction out(spec, mu.total_background(), 0.0);
    if (mu.density) {
        if (!(mu.density->spec == spec)) throw ParameterError("density grid differs from the requested grid");
        out.values = mu.density->values;
    }
    if (mu.profile && mu.profile->coefficient() > 0.0) {
        const SingularProfile& p = *mu.profile;
        const double h = spec.dx();
        const double vol = spec.cell_volume();
        for (std::size_t k = 0; k < spec.size(); ++k) {
            const Point c = spec.center_of(k);
            double m;
            if (spec.N == 1) {
                // edges from the index so the one at the origin is exactly 0
                const double i = double(k);
                m = profile_cell_1d(p, spec.half_width * (2.0 * i / spec.points - 1.0),
                                    spec.half_width * (2.0 * (i + 1.0) / spec.points - 1.0));
            } else {
                m = profile_cell_nd(p, c, h, 0);
            }
            out.values[k] += m / vol;
        }
    }
    return out;
}

}  // namespace fraclab
