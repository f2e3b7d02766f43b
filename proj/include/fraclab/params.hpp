#pragma once

#include <cmath>
#include <numbers>

#include "fraclab/error.hpp"

namespace fraclab {

struct FracParams {
    int N = 1;
    double theta = 2.0;
    double p_theta = 3.0;

    FracParams() = default;
    FracParams(int n, double th) : N(n), theta(th), p_theta(1.0 + th / n) {
        if (n < 1) throw ParameterError("dimension N must be >= 1");
        if (!(th > 0.0 && th <= 2.0)) throw ParameterError("theta must satisfy 0 < theta <= 2");
    }
};

// Relative tolerance used when deciding p == p_theta.
inline constexpr double kCriticalTol = 1e-12;

inline bool is_critical(const FracParams& fp, double p) {
    return std::fabs(p - fp.p_theta) <= kCriticalTol * std::fmax(1.0, fp.p_theta);
}

// Surface area of the unit sphere S^{N-1}.
inline double sphere_area(int N) {
    return 2.0 * std::pow(std::numbers::pi, 0.5 * N) / std::tgamma(0.5 * N);
}

// Volume of the unit ball in R^N.
inline double ball_volume(int N) { return sphere_area(N) / N; }

}  // namespace fraclab
