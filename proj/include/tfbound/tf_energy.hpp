#pragma once

#include "tfbound/density.hpp"
#include "tfbound/tf_model.hpp"

#include <string>
#include <vector>

namespace tfbound {

/// Terms of the Thomas-Fermi functional for a density in scaled coordinates.
struct TfEnergyBreakdown {
    double kinetic = 0.0;     ///< (3/10)(3 pi^2)^{2/3} int rho^{5/3}
    double attraction = 0.0;  ///< -int rho / R
    double hartree = 0.0;     ///< (1/2) int int rho rho' / |R - R'|
    double total = 0.0;       ///< kinetic + attraction + hartree
    /// kinetic + attraction + 2 hartree: the semiclassical spin-summed eigenvalue sum.
    double eigensum_semiclassical = 0.0;
    std::vector<std::string> diagnostics;
};

/// A potential sampled on a radial grid with power-law behavior off the grid.
struct SampledPotential {
    RadialGrid grid;
    std::vector<double> values;
    std::optional<double> small_r_exponent;
    std::optional<double> large_r_exponent;
};

/// v(R) of the TF solution on `grid` (exponents -1 and -4).
SampledPotential tf_scaled_potential(const TfSolution& sol, const RadialGrid& grid);

/// int int f(r) g(r') / |r - r'| d^3r d^3r' for spherical f, g. Symmetric in its
/// arguments to rounding. Throws DivergenceError for tail exponents >= -5.
double coulomb_double_integral(const DensityProfile& f, const DensityProfile& g);

TfEnergyBreakdown energy_breakdown(const DensityProfile& rho);

/// 2 int d^3R int_{|K| < sqrt(-2v)} d^3K/(2 pi)^3 [K^2/2 + v] = -(1/15 pi^2) int (-2v)^{5/2} d^3R.
double semiclassical_eigensum(const SampledPotential& v);

/// Value of the functional without the bookkeeping of energy_breakdown.
double tf_functional(const DensityProfile& rho);

struct MinimizerOptions {
    double step = 1.0;            ///< largest step fraction tried along the descent direction
    std::size_t max_iter = 500;
    double tolerance = 1e-10;     ///< stop when the L1 size of the descent direction falls below this
};

struct MinimizerResult {
    DensityProfile density;
    double mu = 0.0;               ///< Lagrange multiplier of the normalization constraint
    double energy = 0.0;
    std::size_t iterations = 0;
    bool converged = false;
    double gradient_norm = 0.0;    ///< L1 size of the last descent direction
    std::vector<std::string> diagnostics;
};

/// Minimizes the discretized TF functional over rho >= 0, int rho = 1 on `grid`.
///
/// Each iteration linearizes the Hartree term at the current density; the
/// minimizer of the linearized problem is rho~ = (2 (1/R - Phi - mu))_+^{3/2} / 3pi^2
/// with mu fixed by normalization. The step rho + t (rho~ - rho) is a descent
/// direction of the convex functional, keeps rho >= 0 and the norm fixed, and
/// t is chosen by an exact line search on [0, step].
MinimizerResult minimize_tf_functional(const RadialGrid& grid, const DensityProfile& init,
                                       const MinimizerOptions& opt = {});

/// Pointwise (1/2)(3 pi^2)^{2/3} rho^{2/3} - 1/R + Phi[rho] + mu on the grid of rho.
std::vector<double> euler_lagrange_residual(const DensityProfile& rho, double mu);

}  // namespace tfbound
