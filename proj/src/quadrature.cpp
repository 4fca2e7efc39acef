#include "tfbound/quadrature.hpp"

#include "tfbound/constants.hpp"
#include "tfbound/errors.hpp"
#include "tfbound/simd/kernels.hpp"

#include <cmath>
#include <string>

namespace tfbound {

namespace {

void check_finite(std::span<const double> f, const RadialGrid& grid) {
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (!std::isfinite(f[i])) {
            throw EvaluationError("numerics", "non-finite integrand at node " + std::to_string(i) +
                                                  " (r = " + std::to_string(grid[i]) + ")");
        }
    }
}

}  // namespace

double head_piece(double f0, double r0, double exponent) {
    if (!(exponent > -3.0)) {
        throw EvaluationError("numerics", "head exponent " + std::to_string(exponent) +
                                              " makes the integral diverge at the origin");
    }
    return 4.0 * pi * f0 * r0 * r0 * r0 / (exponent + 3.0);
}

double tail_piece(double fN, double rN, double exponent) {
    if (!(exponent < -3.0)) {
        throw EvaluationError("numerics", "tail exponent " + std::to_string(exponent) +
                                              " makes the integral diverge at infinity");
    }
    return -4.0 * pi * fN * rN * rN * rN / (exponent + 3.0);
}

double integrate_radial(std::span<const double> f, const RadialGrid& grid, PowerTails tails) {
    if (f.size() != grid.size()) throw DomainError("numerics", "integrand size does not match grid");
    check_finite(f, grid);
    double sum = simd::dot(f, grid.shell_weights());
    if (tails.head) sum += head_piece(f.front(), grid.r_min(), *tails.head);
    if (tails.tail) sum += tail_piece(f.back(), grid.r_max(), *tails.tail);
    return sum;
}

double integrate_line(std::span<const double> f, const RadialGrid& grid) {
    if (f.size() != grid.size()) throw DomainError("numerics", "integrand size does not match grid");
    check_finite(f, grid);
    return simd::dot(f, grid.weights());
}

std::vector<double> cumulative_line(std::span<const double> f, const RadialGrid& grid) {
    const std::size_t n = grid.size();
    if (f.size() != n) throw DomainError("numerics", "integrand size does not match grid");
    std::vector<double> g(n);
    const auto jac = grid.jacobian();
    for (std::size_t i = 0; i < n; ++i) g[i] = f[i] * jac[i];
    const double h24 = grid.step() / 24.0;
    std::vector<double> out(n, 0.0);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        double panel;
        if (i == 0) {
            panel = 9.0 * g[0] + 19.0 * g[1] - 5.0 * g[2] + g[3];
        } else if (i + 2 >= n) {
            panel = 9.0 * g[i + 1] + 19.0 * g[i] - 5.0 * g[i - 1] + g[i - 2];
        } else {
            panel = -g[i - 1] + 13.0 * g[i] + 13.0 * g[i + 1] - g[i + 2];
        }
        out[i + 1] = out[i] + h24 * panel;
    }
    return out;
}

}  // namespace tfbound
