#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace tfbound {

/// Radial nodes with quadrature weights for integrals over dr.
///
/// Nodes are equispaced in a "uniform variable" t (t = ln r for log grids,
/// t = r otherwise) and the weights are trapezoid weights in t with Gregory
/// end corrections through the sixth difference, multiplied by dr/dt.
class RadialGrid {
public:
    enum class Spacing { LogUniform, Uniform };

    /// Empty grid; only useful as a placeholder before assignment.
    RadialGrid() = default;

    static RadialGrid log_uniform(double r_min, double r_max, std::size_t count);
    static RadialGrid uniform(double r_min, double r_max, std::size_t count);

    std::size_t size() const { return nodes_.size(); }
    double r_min() const { return nodes_.front(); }
    double r_max() const { return nodes_.back(); }
    Spacing spacing() const { return spacing_; }
    /// Spacing in the uniform variable (dx for log grids, h for uniform ones).
    double step() const { return step_; }

    std::span<const double> nodes() const { return nodes_; }
    /// sum_i w_i f(r_i) ~ int f dr over [r_min, r_max].
    std::span<const double> weights() const { return weights_; }
    /// 4 pi r_i^2 w_i: weights for int f d^3r.
    std::span<const double> shell_weights() const { return shell_weights_; }
    /// dr/dt at each node (r for log grids, 1 for uniform).
    std::span<const double> jacobian() const { return jacobian_; }

    double operator[](std::size_t i) const { return nodes_[i]; }

    /// Same spacing kind and count, nodes multiplied by `factor`.
    RadialGrid scaled(double factor) const;

    /// Stable textual fingerprint used in cache keys.
    std::string signature() const;

    /// Fractional index of r in the uniform variable (may lie outside [0, size-1]).
    double fractional_index(double r) const;

private:
    RadialGrid(Spacing s, double r_min, double r_max, std::size_t count);

    Spacing spacing_ = Spacing::LogUniform;
    double step_ = 0.0;
    std::vector<double> nodes_;
    std::vector<double> weights_;
    std::vector<double> shell_weights_;
    std::vector<double> jacobian_;
};

/// Gregory-corrected trapezoid weights for `count` unit-spaced points.
std::vector<double> gregory_weights(std::size_t count);

}  // namespace tfbound
