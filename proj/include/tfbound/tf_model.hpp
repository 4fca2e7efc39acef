#pragma once

// Universal Thomas-Fermi screening function phi(x):
//   phi'' = phi^{3/2} / sqrt(x),  phi(0) = 1,  phi(inf) = 0,
// and the scaled neutral-atom potential and density it generates,
//   v(R) = -phi(R/b0) / R,   rho_TF(R) = (-2 v(R))^{3/2} / (3 pi^2),
// with V(r; Z) = Z^{4/3} v(Z^{1/3} r) and n(r; Z) = Z^2 rho_TF(Z^{1/3} r).

#include "tfbound/density.hpp"
#include "tfbound/interpolation.hpp"

#include <string>
#include <vector>

namespace tfbound {

struct TfOptions {
    double tolerance = 1e-12;     ///< local error bound of the ODE integrations
    double x_start = 1e-6;        ///< outward integration starts here from the small-x series
    double x_junction = 2.0;      ///< outward and inward solutions are matched here
    double tail_match_x = 2e4;    ///< large-x series used beyond this abscissa
    std::size_t table_nodes = 8000;
    int series_order = 16;        ///< terms of the small-x series (powers of sqrt(x))
    int tail_order = 24;          ///< terms of the large-x series (powers of F x^-sigma)
};

/// Exponent of the leading correction to the Sommerfeld tail, (sqrt(73) - 7)/2.
double sommerfeld_sigma();

/// Coefficients a_k of phi(x) = sum_k a_k x^{k/2} for initial slope B
/// (a_0 = 1, a_1 = 0, a_2 = -B), generated by substituting the series into the ODE.
std::vector<double> small_x_series(double slope_B, int order);

/// Coefficients b_k of phi(x) = (144/x^3) sum_k b_k (F x^-sigma)^k, b_0 = 1, b_1 = -1.
std::vector<double> large_x_series(int order);

class TfSolution {
public:
    TfSolution() = default;
    TfSolution(TfOptions opt, double slope_B, double tail_amplitude, HermiteTable table);

    double slope_B() const { return slope_B_; }
    /// F in phi ~ (144/x^3)(1 - F x^-sigma + ...).
    double tail_amplitude() const { return tail_amplitude_; }
    double tail_match_x() const { return opt_.tail_match_x; }
    double b0() const;
    const TfOptions& options() const { return opt_; }

    /// Table in t = ln x: values phi, slopes d phi / dt.
    const HermiteTable& table() const { return table_; }
    std::vector<double> table_x() const;

    double phi(double x) const;
    double dphi(double x) const;

private:
    TfOptions opt_;
    double slope_B_ = 0.0;
    double tail_amplitude_ = 0.0;
    HermiteTable table_;
    std::vector<double> series_;
    std::vector<double> tail_series_;
};

/// Mismatch of phi' at the junction between the outward solution with slope B
/// and the tail solution matched to it in value. Zero at the true slope;
/// positive for slopes that are too small.
/// Rebuilds a solution from its tabulated phi and d phi / d ln x (as stored in a cache).
TfSolution tf_solution_from_table(const TfOptions& opt, double slope_B, double tail_amplitude,
                                  std::vector<double> phi, std::vector<double> slope);

double tf_shooting_mismatch(double slope_B, const TfOptions& opt = {});

TfSolution solve_tf(double tolerance);
TfSolution solve_tf(const TfOptions& opt = {});

double phi_at(const TfSolution& sol, double x);
double v_scaled(const TfSolution& sol, double R);
double rho_tf(const TfSolution& sol, double R);
/// V(r; Z) = Z^{4/3} v(Z^{1/3} r)
double potential_unscaled(const TfSolution& sol, int Z, double r);
/// n(r; Z) = Z^2 rho_TF(Z^{1/3} r)
double density_unscaled(const TfSolution& sol, int Z, double r);

/// Default scaled grid for TF integrals: log-uniform R in [1e-6, 1.5e4].
RadialGrid default_tf_grid(std::size_t nodes = 6000);

/// rho_TF sampled on `grid` (scaled coordinates), tails R^{-3/2} and R^{-6}.
DensityProfile tf_density_profile(const TfSolution& sol, const RadialGrid& grid);

/// v(R) sampled on `grid`.
std::vector<double> tf_potential_samples(const TfSolution& sol, const RadialGrid& grid);

}  // namespace tfbound
