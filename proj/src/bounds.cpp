#include "tfbound/bounds.hpp"

#include "tfbound/constants.hpp"
#include "tfbound/errors.hpp"
#include "tfbound/newton.hpp"
#include "tfbound/tf_energy.hpp"

#include <cmath>
#include <memory>

namespace tfbound {

namespace {

double z73(int Z) { return std::pow(static_cast<double>(Z), 7.0 / 3.0); }

void check_Z(int Z) {
    if (Z < 1) throw DomainError("bounds", "Z must be a positive integer");
}

template <class F>
auto with_Z(int Z, F&& f) {
    try {
        return f();
    } catch (const GridExtensionError& e) {
        throw GridExtensionError("Z=" + std::to_string(Z) + ": " + e.what(), e.ell());
    } catch (const NumericalError& e) {
        throw SolverError(e.module(), "Z=" + std::to_string(Z) + ": " + e.what());
    }
}

}  // namespace

RadialPotential tf_potential(const TfSolution& tf, int Z) {
    check_Z(Z);
    return {[&tf, Z](double r) { return potential_unscaled(tf, Z, r); }, "tf", static_cast<double>(Z),
            1.0 / std::cbrt(static_cast<double>(Z))};
}

UpperBoundBreakdown upper_bound(int Z, const TfSolution& tf, const BoundsOptions& opt) {
    check_Z(Z);
    return with_Z(Z, [&] {
        UpperBoundBreakdown u;
        u.Z = Z;
        SpectrumOptions so = opt.spectrum;
        so.keep_orbitals = true;
        const auto spec = full_spectrum(tf_potential(tf, Z), so);
        const auto occ = occupied_density(spec, static_cast<double>(Z));
        u.n_negative = spec.n_negative;
        u.eigensum_part = occ.eigensum;
        u.occupied_count = occ.occupied;
        u.occupied_deficit = occ.deficit;
        if (occ.deficit > 0.0) {
            u.diagnostics.push_back("only " + std::to_string(spec.n_negative) + " negative states for Z=" +
                                    std::to_string(Z) + "; deficit electrons contribute zero energy");
        }
        const double z13 = std::cbrt(static_cast<double>(Z));
        const auto occ_scaled = occ.density.rescaled(z13, 1.0 / (static_cast<double>(Z) * Z));
        const auto n_tf = tf_density_profile(tf, opt.tf_grid);
        const double d_cross = coulomb_double_integral(n_tf, occ_scaled);
        const double d_self = coulomb_double_integral(occ_scaled, occ_scaled);
        u.f_z_bound = z73(Z) * (-d_cross + 0.5 * d_self);
        u.total = u.eigensum_part + u.f_z_bound;
        u.scaled = u.total / z73(Z);
        return u;
    });
}

DensityProfile regularized_density_scaled(int Z, double alpha, const TfSolution& tf, const RadialGrid& grid) {
    check_Z(Z);
    if (!(alpha > 0.0)) throw DomainError("bounds", "alpha must be positive");
    const double za = static_cast<double>(Z) * alpha;
    std::vector<double> v(grid.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        v[i] = rho_tf(tf, grid[i]) * std::sqrt(-std::expm1(-za * grid[i]));
    }
    // Below R ~ 1/(Z alpha) the damping turns R^{-3/2} into R^{-1}.
    const double head = za * grid.r_min() < 1.0 ? -1.0 : -1.5;
    return DensityProfile::make(grid, std::move(v), head, -6.0);
}

DensityProfile regularized_density(int Z, double alpha, const TfSolution& tf, const RadialGrid& scaled_grid) {
    const double z = static_cast<double>(Z);
    return regularized_density_scaled(Z, alpha, tf, scaled_grid).rescaled(1.0 / std::cbrt(z), z * z);
}

LowerBoundBreakdown lower_bound(int Z, double alpha, const TfSolution& tf, const BoundsOptions& opt) {
    check_Z(Z);
    if (!(alpha > 0.0)) throw DomainError("bounds", "alpha must be positive");
    return with_Z(Z, [&] {
        LowerBoundBreakdown l;
        l.Z = Z;
        l.alpha = alpha;
        const double z = static_cast<double>(Z);
        const double z13 = std::cbrt(z);
        const double z43 = z * z13;
        const auto rho = regularized_density_scaled(Z, alpha, tf, opt.tf_grid);
        l.tail_charge = z * (1.0 - rho.total_norm);

        auto phi = std::make_shared<NewtonPotential>(rho);
        RadialPotential Vp{[phi, z13, z43](double r) {
                               const double R = z13 * r;
                               return z43 * (-1.0 / R + (*phi)(R));
                           },
                           "tf-regularized", z, 1.0 / z13};
        SpectrumOptions so = opt.spectrum;
        so.keep_orbitals = false;
        so.truncate_unresolved = true;
        const auto spec = full_spectrum(Vp, so);
        l.n_negative = spec.n_negative;
        l.eigensum_part = spec.eigensum;
        if (!spec.unresolved_channels.empty()) {
            l.diagnostics.push_back("levels of h' reaching past the grid left out in " +
                                    std::to_string(spec.unresolved_channels.size()) +
                                    " channels (Coulomb tail charge " + std::to_string(l.tail_charge) + ")");
        }

        l.hartree_sub = z73(Z) * 0.5 * coulomb_double_integral(rho, rho);
        std::vector<double> sq(rho.values.size());
        for (std::size_t i = 0; i < sq.size(); ++i) sq[i] = rho.values[i] * rho.values[i];
        l.rho_sq_scaled = integrate_radial(sq, rho.grid, {2.0 * *rho.small_r_exponent, 2.0 * *rho.large_r_exponent});
        // int rho_Z^2 d^3r = Z^3 * rho_sq_scaled
        l.correction = 1.5 * std::cbrt(pi) * std::pow(z, 2.0 / 3.0) * std::cbrt(z * z * z * l.rho_sq_scaled);
        l.total = l.eigensum_part - l.hartree_sub - l.correction;
        l.scaled = l.total / z73(Z);
        return l;
    });
}

BoundsRow bounds_row(int Z, double alpha, const TfSolution& tf, const BoundsOptions& opt) {
    BoundsRow row;
    row.Z = Z;
    row.upper = upper_bound(Z, tf, opt);
    row.lower = lower_bound(Z, alpha, tf, opt);
    row.gap = row.upper.total - row.lower.total;
    return row;
}

ConvergenceTable convergence_table(const std::vector<int>& Z_list, double alpha, const TfSolution& tf,
                                   const BoundsOptions& opt) {
    if (Z_list.empty()) throw DomainError("bounds", "Z list is empty");
    for (std::size_t i = 0; i < Z_list.size(); ++i) {
        check_Z(Z_list[i]);
        if (i > 0 && Z_list[i] <= Z_list[i - 1]) throw DomainError("bounds", "Z list must be strictly ascending");
    }
    ConvergenceTable t;
    std::vector<double> x, yu, yl;
    for (int Z : Z_list) {
        t.rows.push_back(bounds_row(Z, alpha, tf, opt));
        x.push_back(1.0 / std::cbrt(static_cast<double>(Z)));
        yu.push_back(t.rows.back().upper.scaled);
        yl.push_back(t.rows.back().lower.scaled);
    }
    t.upper_fit = fit_line(x, yu);
    t.lower_fit = fit_line(x, yl);
    return t;
}

}  // namespace tfbound
