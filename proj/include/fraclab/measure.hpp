#pragma once
// Nonnegative initial measures: grid densities, atoms, a constant background
// and the centered singular profiles of the critical and supercritical cases.

#include <array>
#include <functional>
#include <optional>
#include <vector>

#include "fraclab/cases.hpp"
#include "fraclab/grid.hpp"

namespace fraclab {

using Point = std::array<double, 3>;

// coefficient * shape(|x|) * 1{|x| < R} + K, centered at the origin.
class SingularProfile {
public:
    SingularProfile(CaseLabel label, double coefficient, double R, double K = 0.0);

    const CaseLabel& label() const noexcept { return label_; }
    double coefficient() const noexcept { return coeff_; }
    double cutoff() const noexcept { return R_; }
    double background() const noexcept { return K_; }
    int dim() const noexcept { return label_.params.N; }

    SingularProfile with_coefficient(double c) const { return SingularProfile(label_, c, R_, K_); }

    // Case formula without coefficient and cutoff, 0 < r < 1.
    double shape(double r) const;
    // Full profile value at |x| = r > 0. Throws DomainError at r = 0.
    double value(double r) const;

    // With u = -log r and v = log u:
    //   log(r^N shape(r)) and log shape(r), evaluated without overflow.
    double log_rN_shape(double v) const;
    // log(r^N u shape(r)); powers of u are combined before evaluation so the
    // result stays exact once u itself overflows.
    double log_rN_u_shape(double v) const;
    double log_shape(double v) const;
    // Coefficient of u in log shape(r) as u -> infinity.
    double log_growth() const noexcept;

    // Exponents (radial power, |log| power, log|log| power) of the case formula.
    std::array<double, 3> exponents() const noexcept { return exps_; }

private:
    CaseLabel label_;
    double coeff_, R_, K_;
    std::array<double, 3> exps_{};
};

struct Atom {
    Point x{0, 0, 0};
    double mass = 0.0;
};

struct InitialMeasure {
    int N = 1;
    std::optional<SingularProfile> profile;
    std::optional<GridFunction> density;  // cell-averaged density; its background is ignored
    std::vector<Atom> atoms;
    double background = 0.0;

    static InitialMeasure zero(int N);
    static InitialMeasure constant(int N, double c);
    static InitialMeasure dirac(int N, double mass = 1.0, Point at = {0, 0, 0});
    static InitialMeasure from_profile(const SingularProfile& p);
    static InitialMeasure from_density(const GridFunction& g);

    // K plus the profile's own background.
    double total_background() const noexcept;
    InitialMeasure scaled(double c) const;
    // Grid-aligned shift of atoms and density (profiles cannot be shifted).
    InitialMeasure translated(const std::array<int, 3>& cells) const;
    bool has_atoms() const noexcept { return !atoms.empty(); }
    void validate() const;
};

// Pointwise transform g applied inside ball integrals of g(mu).
// log_rN_g receives log(r^N u mu), log mu, L = log log(e + mu), u = -log r,
// v = log u and the growth rate of log mu in u; it returns log(r^N u g(mu)).
struct DensityTransform {
    struct LogArgs {
        double lrNum, logmu, L, u, v, growth;
        int N;
    };
    std::function<double(double)> g;
    std::function<double(const LogArgs&)> log_rN_g;
    bool superlinear = false;
    bool is_identity = false;

    static DensityTransform identity();
    static DensityTransform power(double alpha);
};

// mu(B(z, sigma)).
double ball_mass(const InitialMeasure& mu, const Point& z, double sigma);
double ball_mass(const SingularProfile& p, const Point& z, double sigma);

// integral over B(z, sigma) of g(mu); +inf when a superlinear g meets an atom.
double ball_integral(const InitialMeasure& mu, const DensityTransform& g, const Point& z, double sigma);
// Average of g(mu) over B(z, sigma).
double ball_average(const InitialMeasure& mu, const DensityTransform& g, const Point& z, double sigma);

struct BallSup {
    double value = 0.0;
    Point center{0, 0, 0};
};

// Maximizes a ball functional over lattice centers in [-search, search]^N
// (pitch sigma/4, then one refinement pass around the argmax).
BallSup sup_over_centers(int N, double sigma, double search,
                         const std::function<double(const Point&)>& functional);
BallSup sup_ball_mass(const InitialMeasure& mu, double sigma, double search);

// Cell averages of the density part (profile + grid density) on `spec`;
// background set to the total background. Atoms are not included.
GridFunction discretize(const InitialMeasure& mu, const GridSpec& spec);

// Radial helper: integral of r^{N-1} shape(r) over (0, b), b <= 1.
double profile_radial_integral(const SingularProfile& p, double b);

}  // namespace fraclab
