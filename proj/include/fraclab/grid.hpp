#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "fraclab/error.hpp"

namespace fraclab {

// Uniform cell grid on the box [-half_width, half_width]^N with `points` cells per axis.
struct GridSpec {
    int N = 1;
    double half_width = 1.0;
    int points = 64;

    GridSpec() = default;
    GridSpec(int n, double hw, int pts) : N(n), half_width(hw), points(pts) {
        if (n < 1 || n > 3) throw ParameterError("grids support N in 1..3");
        if (!(hw > 0.0)) throw ParameterError("grid half-width must be positive");
        if (pts < 1) throw ParameterError("grid needs at least one point per axis");
    }

    double dx() const noexcept { return 2.0 * half_width / points; }
    double cell_volume() const noexcept;
    std::size_t size() const noexcept;
    // Center of cell i along one axis.
    double center(int i) const noexcept { return -half_width + (i + 0.5) * dx(); }
    // Cell index containing coordinate x along one axis (clamped).
    int locate(double x) const noexcept;

    std::array<int, 3> unflatten(std::size_t k) const noexcept;
    std::size_t flatten(const std::array<int, 3>& idx) const noexcept;
    std::array<double, 3> center_of(std::size_t k) const noexcept;

    bool operator==(const GridSpec& o) const noexcept {
        return N == o.N && half_width == o.half_width && points == o.points;
    }
};

// Nonnegative grid function with a separately carried constant background.
// The represented function is values[k] + background on the box and
// background outside it.
struct GridFunction {
    GridSpec spec;
    std::vector<double> values;
    double background = 0.0;
    double time = 0.0;
    std::vector<std::string> warnings;

    GridFunction() = default;
    explicit GridFunction(const GridSpec& s, double bg = 0.0, double t = 0.0)
        : spec(s), values(s.size(), 0.0), background(bg), time(t) {}

    double total(std::size_t k) const noexcept { return values[k] + background; }
    // sup over the box of values + background
    double sup() const;
    // Throws if any value is negative (beyond roundoff) or non-finite.
    void validate() const;
};

}  // namespace fraclab
