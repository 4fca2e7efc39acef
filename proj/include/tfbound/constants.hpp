#pragma once

#include <cmath>
#include <numbers>

namespace tfbound {

/// Hartree atomic units: hbar = m = e^2 = 1, lengths in Bohr, energies in Hartree.
struct PhysicalConstants {
    static constexpr double hbar = 1.0;
    static constexpr double mass = 1.0;
    static constexpr double charge_sq = 1.0;
};

inline constexpr double pi = std::numbers::pi;

/// 3 pi^2, the phase-space factor linking density and Fermi momentum (rho = k_F^3 / 3pi^2).
inline constexpr double three_pi_sq = 3.0 * pi * pi;

/// Length scale b0 = (1/2)(3 pi / 4)^{2/3}; R = b0 x.
inline const double b0 = 0.5 * std::cbrt((3.0 * pi / 4.0) * (3.0 * pi / 4.0));

/// Coefficient of the rho^{5/3} kinetic term, (3/10)(3 pi^2)^{2/3}.
inline const double kinetic_coefficient = 0.3 * std::cbrt(three_pi_sq * three_pi_sq);

}  // namespace tfbound
