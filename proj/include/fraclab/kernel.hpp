#pragma once
// Fundamental solution of  u_t + (-Delta)^{theta/2} u = 0.

#include <iosfwd>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "fraclab/params.hpp"

namespace fraclab {

enum class KernelMode { closed_form, quadrature };

// Radial profile r -> Gamma_theta(r e_1, 1), plus the cumulative ball mass
// r -> int_{|x|<r} Gamma_theta(x, 1) dx. Immutable after construction.
class KernelProfile {
public:
    static constexpr std::size_t kTableSize = 2048;
    static constexpr double kDefaultTolerance = 1e-8;

    explicit KernelProfile(FracParams params, double tolerance = kDefaultTolerance);

    // Rebuild from an exported table (radius ascending, first radius 0).
    KernelProfile(FracParams params, std::vector<double> radii, std::vector<double> values, double tolerance);

    const FracParams& params() const noexcept { return params_; }
    KernelMode mode() const noexcept { return mode_; }
    double tolerance() const noexcept { return tolerance_; }

    double value(double r) const;        // Gamma(r, 1)
    double ball_mass(double r) const;    // mass of B(0, r) at t = 1
    double total_mass() const;           // table integral plus analytic tail
    double tail_coefficient() const noexcept { return tail_c_; }
    double table_edge() const noexcept { return radii_.back(); }

    std::span<const double> radii() const noexcept { return radii_; }
    std::span<const double> values() const noexcept { return values_; }

    // Largest relative quadrature error estimate seen while tabulating (0 in closed form).
    double achieved_error() const noexcept { return achieved_; }

    void write(std::ostream& os) const;
    static KernelProfile read(std::istream& is);

private:
    void build_interpolant();
    void build_mass_table();
    double interp_value(double r) const;
    double closed_form_value(double r) const;
    double closed_form_mass(double r) const;
    bool has_closed_mass() const;

    FracParams params_;
    double tolerance_;
    KernelMode mode_;
    std::vector<double> radii_;
    std::vector<double> values_;
    std::vector<double> log_r_, log_v_, slope_;
    std::vector<double> mass_;
    double tail_c_ = 0.0;
    double achieved_ = 0.0;
};

// Shared, lazily built profile per (N, theta). Thread safe.
std::shared_ptr<const KernelProfile> kernel_profile(const FracParams& params);

// Gamma_theta(x, t) for a point x in R^N.
double kernel_value(const KernelProfile& k, std::span<const double> x, double t);
double kernel_value(const FracParams& params, std::span<const double> x, double t);
// Radial form: Gamma_theta at |x| = r.
double kernel_radial(const KernelProfile& k, double r, double t);

// Gamma(x,t) / [t^{-N/theta} (1 + t^{-1/theta}|x|)^{-N-theta}], theta < 2 only.
double kernel_bound_ratio(const KernelProfile& k, std::span<const double> x, double t);
double kernel_bound_ratio(const FracParams& params, std::span<const double> x, double t);

// Gamma(0, 1) in closed form: S_N Gamma(N/theta) / (theta (2 pi)^N).
double kernel_peak(const FracParams& params);

// Large-|x| constant A with Gamma(x,1) ~ A |x|^{-N-theta} (theta < 2).
double kernel_tail_constant(const FracParams& params);

}  // namespace fraclab
