#include "tfbound/tf_energy.hpp"

#include "tfbound/constants.hpp"
#include "tfbound/errors.hpp"
#include "tfbound/newton.hpp"
#include "tfbound/roots.hpp"
#include "tfbound/simd/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace tfbound {

namespace {

std::optional<double> shifted(std::optional<double> e, double by) {
    if (e) return *e + by;
    return std::nullopt;
}

std::optional<double> scaled_exp(std::optional<double> e, double by) {
    if (e) return *e * by;
    return std::nullopt;
}

double pow53(double x) {
    const double c = std::cbrt(x);
    return x * c * c;
}

// int f(r) Phi_g(r) d^3r on the grid of f.
double coulomb_one_way(const DensityProfile& f, const DensityProfile& g) {
    const NewtonPotential phi(g);
    std::vector<double> prod(f.grid.size());
    if (f.grid.signature() == g.grid.signature()) {
        simd::multiply(f.values, phi.on_grid(), prod);
    } else {
        for (std::size_t i = 0; i < prod.size(); ++i) prod[i] = f.values[i] * phi(f.grid[i]);
    }
    // Phi_g is finite at the origin and falls like Q/r at large r.
    return integrate_radial(prod, f.grid, {f.small_r_exponent, shifted(f.large_r_exponent, -1.0)});
}

}  // namespace

SampledPotential tf_scaled_potential(const TfSolution& sol, const RadialGrid& grid) {
    return {grid, tf_potential_samples(sol, grid), -1.0, -4.0};
}

double coulomb_double_integral(const DensityProfile& f, const DensityProfile& g) {
    for (const auto* p : {&f, &g}) {
        if (p->large_r_exponent && *p->large_r_exponent >= -5.0) {
            char buf[96];
            std::snprintf(buf, sizeof buf, "tail exponent %.3g >= -5: divergent outer integral",
                          *p->large_r_exponent);
            throw DivergenceError(buf);
        }
    }
    return 0.5 * (coulomb_one_way(f, g) + coulomb_one_way(g, f));
}

TfEnergyBreakdown energy_breakdown(const DensityProfile& rho) {
    TfEnergyBreakdown e;
    const std::size_t n = rho.grid.size();
    std::vector<double> kin(n), att(n);
    for (std::size_t i = 0; i < n; ++i) {
        kin[i] = pow53(rho.values[i]);
        att[i] = rho.values[i] / rho.grid[i];
    }
    e.kinetic = kinetic_coefficient *
                integrate_radial(kin, rho.grid, {scaled_exp(rho.small_r_exponent, 5.0 / 3.0),
                                                 scaled_exp(rho.large_r_exponent, 5.0 / 3.0)});
    e.attraction = -integrate_radial(att, rho.grid, {shifted(rho.small_r_exponent, -1.0),
                                                     shifted(rho.large_r_exponent, -1.0)});
    e.hartree = 0.5 * coulomb_double_integral(rho, rho);
    e.total = e.kinetic + e.attraction + e.hartree;
    e.eigensum_semiclassical = e.kinetic + e.attraction + 2.0 * e.hartree;
    if (std::abs(rho.total_norm - 1.0) > 1e-4) {
        char buf[96];
        std::snprintf(buf, sizeof buf, "density norm %.8g differs from 1 by more than 1e-4", rho.total_norm);
        e.diagnostics.emplace_back(buf);
    }
    return e;
}

double tf_functional(const DensityProfile& rho) { return energy_breakdown(rho).total; }

double semiclassical_eigensum(const SampledPotential& v) {
    const std::size_t n = v.grid.size();
    if (v.values.size() != n) throw DomainError("tf-energy", "potential size does not match grid");
    std::vector<double> k5(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (v.values[i] > 0.0) {
            throw DomainError("tf-energy", "positive potential at node " + std::to_string(i));
        }
        const double k2 = -2.0 * v.values[i];
        k5[i] = k2 * k2 * std::sqrt(k2);
    }
    const double integral = integrate_radial(
        k5, v.grid, {scaled_exp(v.small_r_exponent, 2.5), scaled_exp(v.large_r_exponent, 2.5)});
    return -integral / (15.0 * pi * pi);
}

std::vector<double> euler_lagrange_residual(const DensityProfile& rho, double mu) {
    const NewtonPotential phi(rho);
    const double c = 0.5 * std::cbrt(three_pi_sq * three_pi_sq);
    std::vector<double> res(rho.grid.size());
    for (std::size_t i = 0; i < res.size(); ++i) {
        const double cb = std::cbrt(std::max(rho.values[i], 0.0));
        res[i] = c * cb * cb - 1.0 / rho.grid[i] + phi.on_grid()[i] + mu;
    }
    return res;
}

MinimizerResult minimize_tf_functional(const RadialGrid& grid, const DensityProfile& init,
                                       const MinimizerOptions& opt) {
    if (!(opt.step > 0.0 && opt.step <= 1.0)) throw DomainError("tf-energy", "step must lie in (0, 1]");
    const std::size_t n = grid.size();
    const auto r = grid.nodes();
    constexpr double kHead = -1.5;  // every TF-like minimizer behaves as R^{-3/2} at the nucleus
    const PowerTails dens_tails{kHead, std::nullopt};
    const PowerTails cusp_tails{kHead - 1.0, std::nullopt};  // rho/R and rho^{2/3} * rho

    std::vector<double> rho(n);
    const bool same_grid = init.grid.signature() == grid.signature();
    for (std::size_t i = 0; i < n; ++i) {
        rho[i] = same_grid ? init.values[i] : init.at(r[i]);
        if (!(rho[i] >= 0.0) || !std::isfinite(rho[i])) {
            throw DomainError("tf-energy", "initial density must be finite and non-negative");
        }
    }
    {
        const double norm = integrate_radial(rho, grid, dens_tails);
        if (!(norm > 0.0)) throw DomainError("tf-energy", "initial density has zero norm");
        for (double& x : rho) x /= norm;
    }

    const double half_c = 0.5 * std::cbrt(three_pi_sq * three_pi_sq);  // (5/3) kinetic_coefficient
    MinimizerResult res{DensityProfile::make(grid, rho, kHead, std::nullopt), 0.0, 0.0, 0, false, 0.0, {}};
    std::vector<double> w(n), target(n), dir(n), tmp(n), absdir(n);

    auto density_for = [&](double mu, std::vector<double>& out) {
        for (std::size_t i = 0; i < n; ++i) {
            const double k2 = 2.0 * (w[i] - mu);
            out[i] = k2 > 0.0 ? k2 * std::sqrt(k2) / three_pi_sq : 0.0;
        }
    };

    for (std::size_t iter = 0; iter < opt.max_iter; ++iter) {
        const auto prof = DensityProfile::make(grid, rho, kHead, std::nullopt);
        const NewtonPotential phi(prof);
        const auto phi_g = phi.on_grid();
        for (std::size_t i = 0; i < n; ++i) w[i] = 1.0 / r[i] - phi_g[i];

        // Chemical potential fixing the norm of the linearized minimizer.
        auto excess = [&](double mu) {
            density_for(mu, tmp);
            return integrate_radial(tmp, grid, dens_tails) - 1.0;
        };
        const double mu_hi = *std::max_element(w.begin(), w.end());
        double mu_lo = std::min(0.0, *std::min_element(w.begin(), w.end())) - 1e-6;
        while (excess(mu_lo) < 0.0) mu_lo = 2.0 * mu_lo - 1.0;
        const double mu = find_root_bracketed(excess, mu_lo, mu_hi, 1e-18, 1e-14);
        density_for(mu, target);

        for (std::size_t i = 0; i < n; ++i) {
            dir[i] = target[i] - rho[i];
            absdir[i] = std::abs(dir[i]);
        }
        res.mu = mu;
        res.gradient_norm = integrate_radial(absdir, grid, dens_tails);
        res.iterations = iter + 1;
        if (res.gradient_norm < opt.tolerance) {
            res.converged = true;
            break;
        }

        // E'(t) = int [(1/2)(3pi^2)^{2/3} (rho + t d)^{2/3} - 1/R + Phi_rho] d + t D(d, d)
        std::vector<double> lin(n);
        for (std::size_t i = 0; i < n; ++i) lin[i] = -w[i] * dir[i];
        const double lin_part = integrate_radial(lin, grid, cusp_tails);
        const auto dprof = DensityProfile::make(grid, dir, kHead, std::nullopt);
        const NewtonPotential phi_d(dprof);
        const double dd = integrate_radial(
            [&] {
                std::vector<double> p(n);
                simd::multiply(dir, phi_d.on_grid(), p);
                return p;
            }(),
            grid, dens_tails);
        auto slope_at = [&](double t) {
            simd::lerp(rho, target, t, tmp);
            for (std::size_t i = 0; i < n; ++i) {
                const double cb = std::cbrt(std::max(tmp[i], 0.0));
                tmp[i] = half_c * cb * cb * dir[i];
            }
            return integrate_radial(tmp, grid, cusp_tails) + lin_part + t * dd;
        };
        double t = opt.step;
        if (slope_at(opt.step) > 0.0) {
            if (slope_at(0.0) >= 0.0) {
                res.diagnostics.emplace_back("descent direction lost; stopping at iteration " +
                                             std::to_string(iter));
                break;
            }
            t = find_root_bracketed(slope_at, 0.0, opt.step, 1e-12);
        }
        simd::lerp(rho, target, t, rho);
    }

    res.density = DensityProfile::make(grid, rho, kHead, std::nullopt);
    res.energy = tf_functional(res.density);
    if (!res.converged) {
        char buf[128];
        std::snprintf(buf, sizeof buf, "no convergence after %zu iterations; final gradient norm %.3e",
                      res.iterations, res.gradient_norm);
        res.diagnostics.emplace_back(buf);
    }
    return res;
}

}  // namespace tfbound
