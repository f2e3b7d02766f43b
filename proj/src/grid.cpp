#include "fraclab/grid.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "fraclab/simd.hpp"

namespace fraclab {

double GridSpec::cell_volume() const noexcept { return std::pow(dx(), N); }

std::size_t GridSpec::size() const noexcept {
    std::size_t s = 1;
    for (int d = 0; d < N; ++d) s *= std::size_t(points);
    return s;
}

int GridSpec::locate(double x) const noexcept {
    int i = int(std::floor((x + half_width) / dx()));
    return std::clamp(i, 0, points - 1);
}

std::array<int, 3> GridSpec::unflatten(std::size_t k) const noexcept {
    std::array<int, 3> idx{0, 0, 0};
    for (int d = N - 1; d >= 0; --d) {
        idx[d] = int(k % std::size_t(points));
        k /= std::size_t(points);
    }
    return idx;
}

std::size_t GridSpec::flatten(const std::array<int, 3>& idx) const noexcept {
    std::size_t k = 0;
    for (int d = 0; d < N; ++d) k = k * std::size_t(points) + std::size_t(idx[d]);
    return k;
}

std::array<double, 3> GridSpec::center_of(std::size_t k) const noexcept {
    auto idx = unflatten(k);
    std::array<double, 3> x{0, 0, 0};
    for (int d = 0; d < N; ++d) x[d] = center(idx[d]);
    return x;
}

double GridFunction::sup() const {
    if (values.empty()) return background;
    return simd::max_value(values.data(), values.size()) + background;
}

void GridFunction::validate() const {
    if (!(background >= 0.0) || !std::isfinite(background)) throw DomainError("grid background must be finite and >= 0");
    for (std::size_t k = 0; k < values.size(); ++k) {
        if (!std::isfinite(values[k]) || values[k] < -1e-12 * (1.0 + std::fabs(background))) {
            std::ostringstream os;
            os << "grid value " << values[k] << " at cell " << k << " is negative or non-finite";
            throw DomainError(os.str());
        }
    }
}

}  // namespace fraclab
