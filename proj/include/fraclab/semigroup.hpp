#pragma once
// Discrete action of S(t) on grid functions and measures.

#include <map>
#include <memory>
#include <mutex>
#include <span>
#include <string>
#include <vector>

#include "fraclab/grid.hpp"
#include "fraclab/kernel.hpp"
#include "fraclab/measure.hpp"

namespace fraclab {

// Convolution weights of Gamma(., t) on a grid: w[offset] is the kernel mass
// carried from a cell to the cell `offset` away. Point-sampled when the kernel
// is resolved (t^{1/theta} >= 2 dx), cell-integrated otherwise.
struct DiscreteKernel {
    GridSpec spec;
    double t = 0.0;
    int half = 0;  // window half-width in cells
    bool cell_integrated = false;
    bool under_resolved = false;  // t^{1/theta} < dx
    std::vector<double> w;         // (2 half + 1)^N weights, last axis fastest

    double weight(const std::array<int, 3>& off) const;
};

DiscreteKernel make_discrete_kernel(const KernelProfile& k, const GridSpec& spec, double t);

// out = w * in with zero padding outside the box.
void convolve(const DiscreteKernel& k, std::span<const double> in, std::span<double> out);

class Semigroup {
public:
    Semigroup(std::shared_ptr<const KernelProfile> k, GridSpec spec);
    Semigroup(const FracParams& params, GridSpec spec);

    const GridSpec& spec() const noexcept { return spec_; }
    const KernelProfile& profile() const noexcept { return *k_; }
    const FracParams& params() const noexcept { return k_->params(); }

    // Cached per t; safe to call from several threads.
    const DiscreteKernel& kernel(double t) const;

    // S(t) f: values convolved, background unchanged. t == 0 returns f.
    GridFunction apply(const GridFunction& f, double t) const;
    // S(t) mu on the grid: density part convolved, atoms evaluated directly.
    GridFunction apply(const InitialMeasure& mu, double t) const;
    // Same with the density already discretized; `cache` keeps the kernel for reuse.
    GridFunction apply_parts(const GridFunction& density, std::span<const Atom> atoms, double t, bool cache = true) const;

private:
    std::shared_ptr<const KernelProfile> k_;
    GridSpec spec_;
    mutable std::mutex mu_;
    mutable std::map<double, std::unique_ptr<DiscreteKernel>> cache_;
};

GridFunction apply_semigroup(const InitialMeasure& mu, double t, const GridSpec& spec, const FracParams& params);

struct ChapmanKolmogorovReport {
    double discrepancy = 0.0;
    std::vector<std::string> warnings;
};

// sup_x |Gamma(x,t) - (Gamma(., t-s) * Gamma(., s))(x)| over the grid points,
// convolution by the trapezoidal sum on the grid (N = 1).
ChapmanKolmogorovReport chapman_kolmogorov_check(const FracParams& params, double t, double s, const GridSpec& spec);

// ||S(t) mu||_inf t^{N/theta} / sup_x mu(B(x, t^{1/theta})).
double smoothing_ratio(const InitialMeasure& mu, double t, const GridSpec& spec, const FracParams& params);

}  // namespace fraclab
