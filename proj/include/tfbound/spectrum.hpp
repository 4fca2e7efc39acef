#pragma once

// Bound states of h = p^2/2 + V(r) for spherical V, channel by channel.

#include "tfbound/density.hpp"
#include "tfbound/newton.hpp"

#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace tfbound {

/// A spherical one-body potential in atomic units.
struct RadialPotential {
    std::function<double(double)> V;  ///< V(r), defined for every r > 0
    std::string tag;
    /// Nuclear charge when V ~ -charge/r at the origin (0 if V is bounded there).
    double coulomb_charge = 0.0;
    /// Natural length unit: the spectrum grid is the scaled grid times this factor.
    double length_unit = 1.0;
};

RadialPotential coulomb_potential(double charge);

struct EigenLevel {
    int ell = 0;
    int n_r = 0;
    double energy = 0.0;
    int degeneracy = 0;  ///< 2 (2 ell + 1), spin included
};

struct SpectrumOptions {
    double R_min = 1e-6;  ///< grid bounds in units of the potential's length_unit
    double R_max = 1000.0;
    std::size_t nodes = 4000;
    double tol_eigen = 1e-12;  ///< relative bisection width of each eigenvalue
    /// Levels above this energy are not searched for.
    double energy_ceiling = -1e-9;
    /// When false, a level whose classically allowed region reaches past the
    /// grid raises GridExtensionError. When true such levels are left out
    /// and reported through SpectrumSummary::unresolved_channels.
    bool truncate_unresolved = false;
    unsigned workers = 1;
    bool keep_orbitals = true;
};

struct ChannelSolution {
    int ell = 0;
    std::vector<EigenLevel> levels;
    /// u(r) = r R(r) on the grid, normalized to int u^2 dr = 1, one per level.
    std::vector<std::vector<double>> orbitals;
    /// Upper end of the searched window (ceiling, lowered to keep levels on the grid).
    double search_ceiling = 0.0;
    bool truncated = false;
};

struct SpectrumSummary {
    std::vector<EigenLevel> levels;  ///< ordered by ell, then n_r
    long long n_negative = 0;        ///< sum of degeneracies
    double eigensum = 0.0;           ///< sum of degeneracy * energy
    int ell_max = -1;
    std::string potential_tag;
    RadialGrid grid;                            ///< unscaled grid of the orbitals
    std::vector<std::vector<double>> orbitals;  ///< parallel to levels (empty if not kept)
    std::vector<int> unresolved_channels;
};

/// The radial grid used for potential `V` under `opt`.
RadialGrid spectrum_grid(const RadialPotential& V, const SpectrumOptions& opt);

/// Number of eigenvalues below E in channel ell on `grid` (node count with
/// matching at the outermost turning point).
int count_below(const RadialPotential& V, const RadialGrid& grid, int ell, double E);

/// All eigenvalues below the search ceiling in channel `ell`.
ChannelSolution solve_channel(const RadialPotential& V, int ell, const SpectrumOptions& opt = {});

/// Sweeps ell = 0, 1, ... until a channel holds no level below the ceiling.
SpectrumSummary full_spectrum(const RadialPotential& V, const SpectrumOptions& opt = {});

/// Electrostatic potential of `rho` (Newton's theorem). Its total charge is
/// written to `total_charge_out`.
RadialPotential hartree_potential(const DensityProfile& rho, double& total_charge_out);

struct OccupiedDensity {
    DensityProfile density;  ///< spin-summed, unscaled
    double occupied = 0.0;   ///< electrons placed
    double deficit = 0.0;    ///< requested electrons with no negative level left
    double eigensum = 0.0;   ///< sum of occupation * energy
    std::vector<double> occupation;  ///< per level of the summary
};

/// Fills levels in ascending energy order with up to `n_electrons`; a
/// partially filled degenerate shell is occupied uniformly.
OccupiedDensity occupied_density(const SpectrumSummary& spec, double n_electrons);

}  // namespace tfbound
