#pragma once

#include "tfbound/grid.hpp"

#include <optional>
#include <span>
#include <vector>

namespace tfbound {

/// Power-law continuation of a radial function outside its grid:
/// f(r) = f(r_edge) (r / r_edge)^exponent. An empty optional means f = 0 there.
struct PowerTails {
    std::optional<double> head;  ///< behavior for r < r_min
    std::optional<double> tail;  ///< behavior for r > r_max
};

/// int 4 pi r^2 f(r) dr over the grid span plus analytic head/tail pieces.
/// Throws EvaluationError naming the node if any sample is non-finite, and
/// when a supplied exponent makes the continuation divergent.
double integrate_radial(std::span<const double> f, const RadialGrid& grid, PowerTails tails = {});

template <class F>
double integrate_radial_fn(F&& f, const RadialGrid& grid, PowerTails tails = {}) {
    std::vector<double> v(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) v[i] = f(grid[i]);
    return integrate_radial(v, grid, tails);
}

/// int f(r) dr over the grid span (no volume element, no tails).
double integrate_line(std::span<const double> f, const RadialGrid& grid);

/// Running integral I_i = int_{r_min}^{r_i} f(r) dr, fourth order in the
/// grid's uniform variable.
std::vector<double> cumulative_line(std::span<const double> f, const RadialGrid& grid);

/// Analytic int_0^{r0} 4 pi r^2 f0 (r/r0)^p dr.
double head_piece(double f0, double r0, double exponent);
/// Analytic int_{rN}^inf 4 pi r^2 fN (r/rN)^q dr.
double tail_piece(double fN, double rN, double exponent);

}  // namespace tfbound
