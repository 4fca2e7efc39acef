#include "tfbound/grid.hpp"

#include "tfbound/constants.hpp"
#include "tfbound/errors.hpp"

#include <array>
#include <cmath>
#include <cstdio>

namespace tfbound {

namespace {

// Magnitudes of the Gregory coefficients G_2..G_7.
constexpr std::array<double, 6> kGregory = {1.0 / 12.0,         1.0 / 24.0,     19.0 / 720.0,
                                            3.0 / 160.0,        863.0 / 60480.0, 275.0 / 24192.0};

double binomial(int n, int k) {
    double b = 1.0;
    for (int i = 1; i <= k; ++i) b = b * (n - k + i) / i;
    return b;
}

}  // namespace

std::vector<double> gregory_weights(std::size_t count) {
    if (count < 2) throw DomainError("numerics", "quadrature needs at least two nodes");
    std::vector<double> w(count, 1.0);
    w.front() = 0.5;
    w.back() = 0.5;
    const std::size_t n = count - 1;
    // Use as many differences as fit without the end stencils overlapping.
    const int order = static_cast<int>(std::min<std::size_t>(kGregory.size(), n / 2));
    for (int k = 1; k <= order; ++k) {
        const double g = kGregory[k - 1];
        // Left: odd k contributes +g Delta^k f_0, even k contributes -g Delta^k f_0.
        const double sign = (k % 2 == 1) ? 1.0 : -1.0;
        for (int j = 0; j <= k; ++j) {
            const double c = ((k - j) % 2 == 0 ? 1.0 : -1.0) * binomial(k, j);
            w[j] += sign * g * c;
            w[n - j] += sign * g * c;
        }
    }
    return w;
}

RadialGrid::RadialGrid(Spacing s, double r_min, double r_max, std::size_t count) : spacing_(s) {
    if (!(r_min > 0.0) || !(r_max > r_min)) {
        throw DomainError("numerics", "radial grid needs 0 < r_min < r_max");
    }
    if (count < 16) throw DomainError("numerics", "radial grid needs at least 16 nodes");
    nodes_.resize(count);
    jacobian_.resize(count);
    if (s == Spacing::LogUniform) {
        const double t0 = std::log(r_min);
        step_ = (std::log(r_max) - t0) / static_cast<double>(count - 1);
        for (std::size_t i = 0; i < count; ++i) {
            nodes_[i] = std::exp(t0 + step_ * static_cast<double>(i));
            jacobian_[i] = nodes_[i];
        }
        nodes_.front() = r_min;
        nodes_.back() = r_max;
        jacobian_.front() = r_min;
        jacobian_.back() = r_max;
    } else {
        step_ = (r_max - r_min) / static_cast<double>(count - 1);
        for (std::size_t i = 0; i < count; ++i) {
            nodes_[i] = r_min + step_ * static_cast<double>(i);
            jacobian_[i] = 1.0;
        }
        nodes_.back() = r_max;
    }
    const auto g = gregory_weights(count);
    weights_.resize(count);
    shell_weights_.resize(count);
    for (std::size_t i = 0; i < count; ++i) {
        weights_[i] = g[i] * step_ * jacobian_[i];
        shell_weights_[i] = 4.0 * pi * nodes_[i] * nodes_[i] * weights_[i];
    }
}

RadialGrid RadialGrid::log_uniform(double r_min, double r_max, std::size_t count) {
    return RadialGrid(Spacing::LogUniform, r_min, r_max, count);
}

RadialGrid RadialGrid::uniform(double r_min, double r_max, std::size_t count) {
    return RadialGrid(Spacing::Uniform, r_min, r_max, count);
}

RadialGrid RadialGrid::scaled(double factor) const {
    return RadialGrid(spacing_, r_min() * factor, r_max() * factor, size());
}

std::string RadialGrid::signature() const {
    char buf[128];
    std::snprintf(buf, sizeof buf, "%s:%.17g:%.17g:%zu", spacing_ == Spacing::LogUniform ? "log" : "uni",
                  r_min(), r_max(), size());
    return buf;
}

double RadialGrid::fractional_index(double r) const {
    if (spacing_ == Spacing::LogUniform) return (std::log(r) - std::log(r_min())) / step_;
    return (r - r_min()) / step_;
}

}  // namespace tfbound
