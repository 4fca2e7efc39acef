#pragma once

#include "tfbound/density.hpp"
#include "tfbound/interpolation.hpp"

#include <span>
#include <vector>

namespace tfbound {

/// Electrostatic potential of a spherical charge density by Newton's theorem:
///   Phi(r) = Q(r)/r + int_r^inf 4 pi r' rho(r') dr',  Q(r) = int_0^r 4 pi r'^2 rho dr'.
/// Outside the density's grid the power-law continuations are integrated in closed form.
class NewtonPotential {
public:
    explicit NewtonPotential(const DensityProfile& rho);

    double operator()(double r) const;
    double enclosed_charge(double r) const;
    double total_charge() const { return total_charge_; }

    /// Phi at the density's own nodes.
    std::span<const double> on_grid() const { return phi_; }
    std::span<const double> enclosed_on_grid() const { return enclosed_; }

private:
    RadialGrid grid_;
    std::vector<double> phi_;
    std::vector<double> enclosed_;
    HermiteTable table_;  // r*Phi(r) against the grid's uniform variable
    double head_coeff_ = 0.0, head_exp_ = 0.0;
    bool has_head_ = false;
    double tail_coeff_ = 0.0, tail_exp_ = 0.0;
    bool has_tail_ = false;
    double outer_at_min_ = 0.0;  // int_{r_min}^inf 4 pi r rho dr
    double total_charge_ = 0.0;
};

}  // namespace tfbound
