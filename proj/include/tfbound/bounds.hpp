#pragma once

// Upper and lower bounds on the neutral-atom ground-state energy and their
// Z^{-7/3}-scaled values along a sweep in Z.

#include "tfbound/fit.hpp"
#include "tfbound/spectrum.hpp"
#include "tfbound/tf_model.hpp"

#include <string>
#include <vector>

namespace tfbound {

struct BoundsOptions {
    SpectrumOptions spectrum;
    /// Scaled quadrature grid for densities and Coulomb integrals.
    RadialGrid tf_grid = default_tf_grid();
};

struct UpperBoundBreakdown {
    int Z = 0;
    double eigensum_part = 0.0;  ///< sum of occupation * energy over the occupied levels
    double f_z_bound = 0.0;      ///< -D(n, n_occ) + (1/2) D(n_occ, n_occ)
    double total = 0.0;
    double scaled = 0.0;         ///< total * Z^{-7/3}
    double occupied_count = 0.0;
    double occupied_deficit = 0.0;
    long long n_negative = 0;
    std::vector<std::string> diagnostics;
};

struct LowerBoundBreakdown {
    int Z = 0;
    double alpha = 1.0;
    double eigensum_part = 0.0;  ///< sum of degeneracy * energy over all negative levels of h'
    double hartree_sub = 0.0;    ///< (1/2) D(rho_Z, rho_Z)
    double correction = 0.0;     ///< (3/2) pi^{1/3} Z^{2/3} (int rho_Z^2)^{1/3}
    double total = 0.0;
    double scaled = 0.0;
    double rho_sq_scaled = 0.0;  ///< int (rho_Z / Z^2)^2 d^3R in scaled coordinates
    double tail_charge = 0.0;    ///< Z - int rho_Z
    long long n_negative = 0;
    std::vector<std::string> diagnostics;
};

struct BoundsRow {
    int Z = 0;
    UpperBoundBreakdown upper;
    LowerBoundBreakdown lower;
    double gap = 0.0;  ///< upper.total - lower.total
};

struct ConvergenceTable {
    std::vector<BoundsRow> rows;
    LinearFit upper_fit;  ///< scaled upper bound against Z^{-1/3}
    LinearFit lower_fit;
};

/// V(r; Z) of the TF solution as a spectrum input.
RadialPotential tf_potential(const TfSolution& tf, int Z);

UpperBoundBreakdown upper_bound(int Z, const TfSolution& tf, const BoundsOptions& opt = {});

/// rho_TF(R) sqrt(1 - exp(-Z alpha R)) on `grid` (scaled coordinates).
DensityProfile regularized_density_scaled(int Z, double alpha, const TfSolution& tf, const RadialGrid& grid);

/// rho_Z(r) = Z^2 rho_TF(R) sqrt(1 - exp(-Z alpha R)), R = Z^{1/3} r, in unscaled coordinates.
DensityProfile regularized_density(int Z, double alpha, const TfSolution& tf,
                                   const RadialGrid& scaled_grid = default_tf_grid());

LowerBoundBreakdown lower_bound(int Z, double alpha, const TfSolution& tf, const BoundsOptions& opt = {});

BoundsRow bounds_row(int Z, double alpha, const TfSolution& tf, const BoundsOptions& opt = {});

ConvergenceTable convergence_table(const std::vector<int>& Z_list, double alpha, const TfSolution& tf,
                                   const BoundsOptions& opt = {});

}  // namespace tfbound
