#include "tfbound/density.hpp"

#include "tfbound/errors.hpp"

#include <algorithm>
#include <cmath>

namespace tfbound {

DensityProfile DensityProfile::make(RadialGrid grid, std::vector<double> values, std::optional<double> small_r_exponent,
                                    std::optional<double> large_r_exponent) {
    if (values.size() != grid.size()) throw DomainError("numerics", "density size does not match grid");
    DensityProfile p{std::move(grid), std::move(values), small_r_exponent, large_r_exponent, 0.0};
    p.total_norm = integrate_radial(p.values, p.grid, p.tails());
    return p;
}

double DensityProfile::at(double r) const {
    if (r < grid.r_min()) {
        return small_r_exponent ? values.front() * std::pow(r / grid.r_min(), *small_r_exponent) : 0.0;
    }
    if (r > grid.r_max()) {
        return large_r_exponent ? values.back() * std::pow(r / grid.r_max(), *large_r_exponent) : 0.0;
    }
    const double u = grid.fractional_index(r);
    const std::size_t n = grid.size();
    std::size_t i = static_cast<std::size_t>(std::floor(u));
    i = std::clamp<std::size_t>(i, 1, n - 3);
    const double s = u - static_cast<double>(i);
    // Four-point Lagrange through i-1..i+2; logarithmic when all are positive.
    const double v[4] = {values[i - 1], values[i], values[i + 1], values[i + 2]};
    const bool use_log = v[0] > 0 && v[1] > 0 && v[2] > 0 && v[3] > 0;
    double f[4];
    for (int k = 0; k < 4; ++k) f[k] = use_log ? std::log(v[k]) : v[k];
    const double l0 = -s * (s - 1) * (s - 2) / 6.0;
    const double l1 = (s + 1) * (s - 1) * (s - 2) / 2.0;
    const double l2 = -(s + 1) * s * (s - 2) / 2.0;
    const double l3 = (s + 1) * s * (s - 1) / 6.0;
    const double y = l0 * f[0] + l1 * f[1] + l2 * f[2] + l3 * f[3];
    if (use_log) return std::exp(y);
    // non-negative samples give a non-negative interpolant
    if (v[0] >= 0 && v[1] >= 0 && v[2] >= 0 && v[3] >= 0) return std::max(y, 0.0);
    return y;
}

DensityProfile DensityProfile::rescaled(double length_factor, double value_factor) const {
    std::vector<double> v(values);
    for (double& x : v) x *= value_factor;
    return make(grid.scaled(length_factor), std::move(v), small_r_exponent, large_r_exponent);
}

}  // namespace tfbound
