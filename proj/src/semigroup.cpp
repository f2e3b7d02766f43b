#include "fraclab/semigroup.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss.hpp>
#include <cmath>
#include <optional>
#include <sstream>

#include "fraclab/parallel.hpp"
#include "fraclab/simd.hpp"

namespace fraclab {
namespace {

// mass of Gamma(., t) on [a, b] in one dimension
double interval_mass(const KernelProfile& k, double a, double b, double t) {
    const double s = std::pow(t, -1.0 / k.params().theta);
    auto F = [&](double x) { return (x < 0 ? -0.5 : 0.5) * k.ball_mass(std::fabs(x) * s); };
    return F(b) - F(a);
}

double cell_mass_nd(const KernelProfile& k, const GridSpec& spec, const std::array<int, 3>& off, double t) {
    const int N = spec.N;
    const double h = spec.dx();
    const double ell = std::pow(t, 1.0 / k.params().theta);
    double dist2 = 0.0;
    for (int d = 0; d < N; ++d) {
        const double c = std::max(0.0, (std::abs(off[d]) - 0.5) * h);
        dist2 += c * c;
    }
    const int ns = std::clamp(int(std::ceil(4.0 * h / std::max(ell, std::sqrt(dist2)))), 2, 16);
    const double sub = h / ns;
    double s = 0.0;
    static const auto& x = boost::math::quadrature::gauss<double, 4>::abscissa();
    static const auto& wt = boost::math::quadrature::gauss<double, 4>::weights();
    std::vector<std::pair<double, double>> xw;
    for (std::size_t i = 0; i < x.size(); ++i) {
        xw.push_back({x[i], wt[i]});
        if (x[i] != 0.0) xw.push_back({-x[i], wt[i]});
    }
    std::array<int, 3> lim{ns, N > 1 ? ns : 1, N > 2 ? ns : 1};
    for (int a = 0; a < lim[0]; ++a)
        for (int b = 0; b < lim[1]; ++b)
            for (int c = 0; c < lim[2]; ++c) {
                const int ia[3] = {a, b, c};
                for (auto [x0, w0] : xw)
                    for (auto [x1, w1] : xw)
                        for (std::size_t q = 0; q < (N == 3 ? xw.size() : 1); ++q) {
                            const double xs[3] = {x0, x1, N == 3 ? xw[q].first : 0.0};
                            const double ws = w0 * w1 * (N == 3 ? xw[q].second : 1.0);
                            double r2 = 0.0;
                            for (int d = 0; d < N; ++d) {
                                const double y = (off[d] - 0.5) * h + (ia[d] + 0.5) * sub + 0.5 * sub * xs[d];
                                r2 += y * y;
                            }
                            s += ws * kernel_radial(k, std::sqrt(r2), t);
                        }
            }
    return s * std::pow(0.5 * sub, N);
}

}  // namespace

double DiscreteKernel::weight(const std::array<int, 3>& off) const {
    std::size_t idx = 0;
    const int side = 2 * half + 1;
    for (int d = 0; d < spec.N; ++d) {
        if (std::abs(off[d]) > half) return 0.0;
        idx = idx * side + std::size_t(off[d] + half);
    }
    return w[idx];
}

DiscreteKernel make_discrete_kernel(const KernelProfile& k, const GridSpec& spec, double t) {
    if (!(t > 0.0)) throw DomainError("semigroup time must be positive");
    if (spec.N != k.params().N) throw ParameterError("grid dimension does not match the kernel");
    const double h = spec.dx();
    const double ell = std::pow(t, 1.0 / k.params().theta);
    DiscreteKernel dk;
    dk.spec = spec;
    dk.t = t;
    dk.cell_integrated = ell < 2.0 * h;
    dk.under_resolved = ell < h;
    int half = spec.points - 1;
    if (std::fabs(k.params().theta - 2.0) < 1e-14) {
        const double rcut = std::sqrt(4.0 * t * 45.0);
        half = std::min(half, int(std::ceil(rcut / h)) + 1);
    }
    dk.half = half;
    const int side = 2 * half + 1;
    std::size_t total = 1;
    for (int d = 0; d < spec.N; ++d) total *= std::size_t(side);
    dk.w.assign(total, 0.0);
    const double vol = spec.cell_volume();
    for (std::size_t i = 0; i < total; ++i) {
        std::array<int, 3> off{0, 0, 0};
        std::size_t r = i;
        for (int d = spec.N - 1; d >= 0; --d) {
            off[d] = int(r % std::size_t(side)) - half;
            r /= std::size_t(side);
        }
        if (!dk.cell_integrated) {
            double r2 = 0.0;
            for (int d = 0; d < spec.N; ++d) r2 += (off[d] * h) * (off[d] * h);
            dk.w[i] = vol * kernel_radial(k, std::sqrt(r2), t);
        } else if (spec.N == 1) {
            dk.w[i] = interval_mass(k, (off[0] - 0.5) * h, (off[0] + 0.5) * h, t);
        } else {
            dk.w[i] = cell_mass_nd(k, spec, off, t);
        }
    }
    return dk;
}

void convolve(const DiscreteKernel& k, std::span<const double> in, std::span<double> out) {
    const GridSpec& s = k.spec;
    const int n = s.points, h = k.half, side = 2 * h + 1;
    const auto& K = simd::active();
    if (in.size() != s.size() || out.size() != s.size()) throw ParameterError("convolution buffers do not match the grid");
    if (s.N == 1) {
        parallel_for(
            std::size_t(n),
            [&](std::size_t b, std::size_t e) {
                for (std::size_t ii = b; ii < e; ++ii) {
                    const int i = int(ii);
                    const int jlo = std::max(0, i - h), jhi = std::min(n - 1, i + h);
                    out[ii] = K.dot(in.data() + jlo, k.w.data() + (jlo - i + h), std::size_t(jhi - jlo + 1));
                }
            },
            64);
        return;
    }
    if (s.N == 2) {
        parallel_for(
            std::size_t(n),
            [&](std::size_t b, std::size_t e) {
                for (std::size_t i0 = b; i0 < e; ++i0) {
                    const int j0lo = std::max(0, int(i0) - h), j0hi = std::min(n - 1, int(i0) + h);
                    for (int i1 = 0; i1 < n; ++i1) {
                        const int j1lo = std::max(0, i1 - h), j1hi = std::min(n - 1, i1 + h);
                        const std::size_t len = std::size_t(j1hi - j1lo + 1);
                        double acc = 0.0;
                        for (int j0 = j0lo; j0 <= j0hi; ++j0) {
                            const double* wrow = k.w.data() + std::size_t(j0 - int(i0) + h) * side + (j1lo - i1 + h);
                            acc += K.dot(in.data() + std::size_t(j0) * n + j1lo, wrow, len);
                        }
                        out[i0 * n + i1] = acc;
                    }
                }
            },
            4);
        return;
    }
    parallel_for(
        std::size_t(n),
        [&](std::size_t b, std::size_t e) {
            for (std::size_t i0 = b; i0 < e; ++i0) {
                const int j0lo = std::max(0, int(i0) - h), j0hi = std::min(n - 1, int(i0) + h);
                for (int i1 = 0; i1 < n; ++i1) {
                    const int j1lo = std::max(0, i1 - h), j1hi = std::min(n - 1, i1 + h);
                    for (int i2 = 0; i2 < n; ++i2) {
                        const int j2lo = std::max(0, i2 - h), j2hi = std::min(n - 1, i2 + h);
                        const std::size_t len = std::size_t(j2hi - j2lo + 1);
                        double acc = 0.0;
                        for (int j0 = j0lo; j0 <= j0hi; ++j0)
                            for (int j1 = j1lo; j1 <= j1hi; ++j1) {
                                const double* wrow = k.w.data() +
                                                     (std::size_t(j0 - int(i0) + h) * side + std::size_t(j1 - i1 + h)) * side +
                                                     (j2lo - i2 + h);
                                acc += K.dot(in.data() + (std::size_t(j0) * n + j1) * n + j2lo, wrow, len);
                            }
                        out[(i0 * n + i1) * n + i2] = acc;
                    }
                }
            }
        },
        1);
}

Semigroup::Semigroup(std::shared_ptr<const KernelProfile> k, GridSpec spec) : k_(std::move(k)), spec_(spec) {
    if (spec_.N != k_->params().N) throw ParameterError("grid dimension does not match the kernel");
}

Semigroup::Semigroup(const FracParams& params, GridSpec spec) : Semigroup(kernel_profile(params), spec) {}

const DiscreteKernel& Semigroup::kernel(double t) const {
    {
        std::lock_guard lock(mu_);
        if (auto it = cache_.find(t); it != cache_.end()) return *it->second;
    }
    auto dk = std::make_unique<DiscreteKernel>(make_discrete_kernel(*k_, spec_, t));
    std::lock_guard lock(mu_);
    auto [it, inserted] = cache_.emplace(t, std::move(dk));
    return *it->second;
}

namespace {
void note_resolution(GridFunction& g, const DiscreteKernel& dk) {
    if (dk.under_resolved) {
        std::ostringstream os;
        os << "kernel under-resolved: t^(1/theta) < dx at t=" << dk.t;
        g.warnings.push_back(os.str());
    }
}
}  // namespace

GridFunction Semigroup::apply(const GridFunction& f, double t) const {
    if (!(f.spec == spec_)) throw ParameterError("grid function lives on a different grid");
    if (t == 0.0) return f;
    const DiscreteKernel& dk = kernel(t);
    GridFunction out(spec_, f.background, f.time + t);
    out.warnings = f.warnings;
    convolve(dk, f.values, out.values);
    for (double& v : out.values) v = std::max(v, 0.0);
    note_resolution(out, dk);
    return out;
}

GridFunction Semigroup::apply(const InitialMeasure& mu, double t) const {
    if (!(t > 0.0)) throw DomainError("semigroup time must be positive");
    mu.validate();
    return apply_parts(discretize(mu, spec_), mu.atoms, t, true);
}

GridFunction Semigroup::apply_parts(const GridFunction& dens, std::span<const Atom> atoms, double t, bool cache) const {
    if (!(t > 0.0)) throw DomainError("semigroup time must be positive");
    if (!(dens.spec == spec_)) throw ParameterError("density lives on a different grid");
    std::optional<DiscreteKernel> local;
    if (!cache) local.emplace(make_discrete_kernel(*k_, spec_, t));
    const DiscreteKernel& dk = cache ? kernel(t) : *local;
    GridFunction out(spec_, dens.background, t);
    out.warnings = dens.warnings;
    if (std::any_of(dens.values.begin(), dens.values.end(), [](double v) { return v != 0.0; })) {
        convolve(dk, dens.values, out.values);
        for (double& v : out.values) v = std::max(v, 0.0);
        note_resolution(out, dk);
    }
    if (!atoms.empty()) {
        const double h = spec_.dx();
        const double vol = spec_.cell_volume();
        const int N = spec_.N;
        for (std::size_t k = 0; k < spec_.size(); ++k) {
            const Point c = spec_.center_of(k);
            double s = 0.0;
            for (const auto& a : atoms) {
                if (dk.under_resolved) {
                    // point values miss the mass of a narrow kernel; use the cell mass
                    std::array<int, 3> off{0, 0, 0};
                    bool on_grid = true;
                    for (int d = 0; d < N; ++d) {
                        const double o = (c[d] - a.x[d]) / h;
                        off[d] = int(std::lround(o));
                        on_grid = on_grid && std::fabs(o - off[d]) < 1e-9;
                    }
                    if (on_grid) {
                        s += a.mass * dk.weight(off) / vol;
                        continue;
                    }
                }
                double r2 = 0.0;
                for (int d = 0; d < N; ++d) r2 += (c[d] - a.x[d]) * (c[d] - a.x[d]);
                s += a.mass * kernel_radial(*k_, std::sqrt(r2), t);
            }
            out.values[k] += s;
        }
        if (dk.under_resolved && out.warnings.empty()) note_resolution(out, dk);
    }
    return out;
}

GridFunction apply_semigroup(const InitialMeasure& mu, double t, const GridSpec& spec, const FracParams& params) {
    Semigroup S(params, spec);
    return S.apply(mu, t);
}

ChapmanKolmogorovReport chapman_kolmogorov_check(const FracParams& params, double t, double s, const GridSpec& spec) {
    if (!(s > 0.0 && s < t)) throw DomainError("Chapman-Kolmogorov check needs 0 < s < t");
    if (spec.N != 1 || params.N != 1) throw ParameterError("Chapman-Kolmogorov check is implemented for N = 1");
    auto k = kernel_profile(params);
    ChapmanKolmogorovReport rep;
    const double h = spec.dx();
    const double ell = std::pow(std::min(s, t - s), 1.0 / params.theta);
    if (ell < h) {
        std::ostringstream os;
        os << "kernel under-resolved at lag " << std::min(s, t - s);
        rep.warnings.push_back(os.str());
    }
    const int n = spec.points;
    std::vector<double> a(static_cast<std::size_t>(2 * n - 1));
    std::vector<double> b(static_cast<std::size_t>(n));
    // a holds Gamma(., t-s) on offsets -(n-1)..(n-1), b holds Gamma(., s) on the grid
    for (int i = 0; i < 2 * n - 1; ++i) a[std::size_t(i)] = h * kernel_radial(*k, (i - (n - 1)) * h, t - s);
    for (int j = 0; j < n; ++j) b[std::size_t(j)] = kernel_radial(*k, spec.center(j), s);
    for (int i = 0; i < n; ++i) {
        // conv(x_i) = sum_j h Gamma(x_i - x_j, t-s) Gamma(x_j, s); offsets i-j
        double acc = 0.0;
        for (int j = 0; j < n; ++j) acc += a[std::size_t(i - j + n - 1)] * b[std::size_t(j)];
        const double exact = kernel_radial(*k, spec.center(i), t);
        rep.discrepancy = std::max(rep.discrepancy, std::fabs(exact - acc));
    }
    return rep;
}

double smoothing_ratio(const InitialMeasure& mu, double t, const GridSpec& spec, const FracParams& params) {
    const GridFunction u = apply_semigroup(mu, t, spec, params);
    const double rad = std::pow(t, 1.0 / params.theta);
    const BallSup m = sup_ball_mass(mu, rad, spec.half_width);
    if (!(m.value > 0.0)) return 0.0;
    return u.sup() * std::pow(t, spec.N / params.theta) / m.value;
}

}  // namespace fraclab
