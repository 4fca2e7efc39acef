#pragma once

#include "tfbound/grid.hpp"
#include "tfbound/quadrature.hpp"

#include <optional>
#include <vector>

namespace tfbound {

/// Spherically symmetric density sampled on a radial grid, with optional
/// power-law continuations below and above the grid.
struct DensityProfile {
    RadialGrid grid;
    std::vector<double> values;
    std::optional<double> small_r_exponent;
    std::optional<double> large_r_exponent;
    double total_norm = 0.0;  ///< int rho d^3r including the analytic pieces

    PowerTails tails() const { return {small_r_exponent, large_r_exponent}; }

    /// Builds the profile and caches its norm.
    static DensityProfile make(RadialGrid grid, std::vector<double> values,
                               std::optional<double> small_r_exponent = {},
                               std::optional<double> large_r_exponent = {});

    /// Value at arbitrary r: cubic interpolation in the grid's uniform variable
    /// (on log(rho) where positive), power-law continuation outside.
    double at(double r) const;

    /// Profile under r -> factor * r with values multiplied by `value_factor`.
    DensityProfile rescaled(double length_factor, double value_factor) const;
};

}  // namespace tfbound
