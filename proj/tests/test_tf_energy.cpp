#include "doctest.h"

#include "tfbound/constants.hpp"
#include "tfbound/errors.hpp"
#include "tfbound/tf_energy.hpp"
#include "tfbound/tf_model.hpp"

#include <cmath>
#include <random>

using namespace tfbound;

namespace {

const TfSolution& tf() {
    static const TfSolution sol = solve_tf();
    return sol;
}

const DensityProfile& rho_tf_profile() {
    static const DensityProfile rho = tf_density_profile(tf(), default_tf_grid());
    return rho;
}

DensityProfile hydrogen_1s() {
    const auto g = RadialGrid::log_uniform(1e-6, 60.0, 2000);
    std::vector<double> v(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) v[i] = std::exp(-2 * g[i]) / pi;
    return DensityProfile::make(g, v, 0.0, {});
}

double l1_distance(const DensityProfile& a, const DensityProfile& b) {
    std::vector<double> d(a.grid.size());
    for (std::size_t i = 0; i < d.size(); ++i) d[i] = std::abs(a.values[i] - b.at(a.grid[i]));
    return integrate_radial(d, a.grid);
}

}  // namespace

TEST_CASE("Coulomb self-energy of a uniform ball") {
    const double a = 1.7;
    const auto g = RadialGrid::uniform(1e-9, a, 1201);
    std::vector<double> v(g.size(), 3.0 / (4 * pi * a * a * a));
    const auto ball = DensityProfile::make(g, v, 0.0, {});
    CHECK(coulomb_double_integral(ball, ball) == doctest::Approx(6.0 / (5.0 * a)).epsilon(1e-10));
}

TEST_CASE("Coulomb self-energy of the hydrogen 1s density") {
    const auto h = hydrogen_1s();
    CHECK(coulomb_double_integral(h, h) == doctest::Approx(5.0 / 8.0).epsilon(1e-9));
}

TEST_CASE("Coulomb double integral is symmetric") {
    const auto h = hydrogen_1s();
    const auto& t = rho_tf_profile();
    CHECK(coulomb_double_integral(h, t) == doctest::Approx(coulomb_double_integral(t, h)).epsilon(1e-12));
}

TEST_CASE("slowly decaying tails are rejected") {
    const auto g = RadialGrid::log_uniform(0.1, 10.0, 200);
    std::vector<double> v(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) v[i] = std::pow(g[i], -4.0);
    const auto p = DensityProfile::make(g, v, 0.0, -4.0);
    CHECK_THROWS_AS(coulomb_double_integral(p, p), DivergenceError);
}

TEST_CASE("energy terms of the TF density") {
    const auto e = energy_breakdown(rho_tf_profile());
    const double exact = -3.0 / 7.0 * tf().slope_B() / b0;
    CHECK(e.total == doctest::Approx(exact).epsilon(1e-6));
    CHECK(e.kinetic == doctest::Approx(-exact).epsilon(1e-6));
    CHECK(e.attraction == doctest::Approx(7.0 / 3.0 * exact).epsilon(1e-6));
    CHECK(e.hartree == doctest::Approx(-exact / 3.0).epsilon(1e-6));
    CHECK(std::abs(2 * e.kinetic + e.attraction + e.hartree) <= 1e-4 * std::abs(e.total));
    CHECK(e.diagnostics.empty());
}

TEST_CASE("two paths to the semiclassical eigenvalue sum") {
    const auto e = energy_breakdown(rho_tf_profile());
    const double direct = semiclassical_eigensum(tf_scaled_potential(tf(), default_tf_grid()));
    CHECK(direct == doctest::Approx(e.eigensum_semiclassical).epsilon(1e-5));
    CHECK(direct == doctest::Approx(-0.5125).epsilon(2e-3));
}

TEST_CASE("semiclassical sum rejects a repulsive potential and vanishes for zero") {
    const auto g = RadialGrid::log_uniform(0.1, 10.0, 100);
    SampledPotential zero{g, std::vector<double>(g.size(), 0.0), {}, {}};
    CHECK(semiclassical_eigensum(zero) == 0.0);
    SampledPotential pos{g, std::vector<double>(g.size(), 1.0), {}, {}};
    CHECK_THROWS_AS(semiclassical_eigensum(pos), DomainError);
}

TEST_CASE("energy terms scale homogeneously") {
    const auto& rho = rho_tf_profile();
    const auto base = energy_breakdown(rho);
    // rho -> lambda^3 rho(lambda R): kinetic ~ lambda^2, Coulomb terms ~ lambda
    const double lam = 1.8;
    const auto dil = energy_breakdown(rho.rescaled(1.0 / lam, lam * lam * lam));
    CHECK(dil.kinetic == doctest::Approx(lam * lam * base.kinetic).epsilon(1e-8));
    CHECK(dil.attraction == doctest::Approx(lam * base.attraction).epsilon(1e-8));
    CHECK(dil.hartree == doctest::Approx(lam * base.hartree).epsilon(1e-8));
    // rho -> c rho: kinetic ~ c^{5/3}, Hartree ~ c^2
    const double c = 0.6;
    const auto amp = energy_breakdown(rho.rescaled(1.0, c));
    CHECK(amp.kinetic == doctest::Approx(std::pow(c, 5.0 / 3.0) * base.kinetic).epsilon(1e-12));
    CHECK(amp.hartree == doctest::Approx(c * c * base.hartree).epsilon(1e-12));
}

TEST_CASE("functional is convex along random perturbations") {
    const auto& rho = rho_tf_profile();
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-0.5, 0.5), c(-2.0, 3.0);
    for (int k = 0; k < 10; ++k) {
        const double amp = u(rng), centre = c(rng), width = 0.3 + std::abs(u(rng));
        std::vector<double> other(rho.values);
        for (std::size_t i = 0; i < other.size(); ++i) {
            const double s = (std::log10(rho.grid[i]) - centre) / width;
            other[i] *= 1.0 + amp * std::exp(-s * s);
        }
        const auto r2 = DensityProfile::make(rho.grid, other, rho.small_r_exponent, rho.large_r_exponent);
        std::vector<double> mid(other.size());
        for (std::size_t i = 0; i < mid.size(); ++i) mid[i] = 0.5 * (rho.values[i] + other[i]);
        const auto rm = DensityProfile::make(rho.grid, mid, rho.small_r_exponent, rho.large_r_exponent);
        CHECK(tf_functional(rm) <= 0.5 * (tf_functional(rho) + tf_functional(r2)) + 1e-14);
    }
}

TEST_CASE("TF density solves the Euler-Lagrange equation with zero multiplier") {
    const auto res = euler_lagrange_residual(rho_tf_profile(), 0.0);
    const auto& g = rho_tf_profile().grid;
    for (std::size_t i = 0; i < g.size(); i += 97) {
        if (g[i] > 100.0) break;
        CAPTURE(g[i]);
        CHECK(std::abs(res[i]) * g[i] < 1e-6);
    }
}

TEST_CASE("minimizer recovers the ODE density") {
    const auto g = default_tf_grid(2000);
    std::vector<double> v(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) v[i] = std::exp(-g[i]) / (8 * pi);
    const auto init = DensityProfile::make(g, v, 0.0, {});
    MinimizerOptions opt;
    opt.tolerance = 1e-10;
    const auto res = minimize_tf_functional(g, init, opt);
    CHECK(res.converged);
    CHECK(std::abs(res.mu) < 1e-3);
    CHECK(res.energy == doctest::Approx(-3.0 / 7.0 * tf().slope_B() / b0).epsilon(1e-6));
    CHECK(res.density.total_norm == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(l1_distance(res.density, rho_tf_profile()) < 1e-3);

    // Started from its own result it stays put.
    MinimizerOptions again = opt;
    again.max_iter = 5;
    const auto fixed = minimize_tf_functional(g, res.density, again);
    CHECK(l1_distance(fixed.density, res.density) < 1e-6);
}

TEST_CASE("minimizer input validation") {
    const auto g = RadialGrid::log_uniform(0.1, 10.0, 50);
    const auto zero = DensityProfile::make(g, std::vector<double>(g.size(), 0.0));
    CHECK_THROWS_AS(minimize_tf_functional(g, zero), DomainError);
    MinimizerOptions bad;
    bad.step = 0.0;
    std::vector<double> one(g.size(), 1.0);
    CHECK_THROWS_AS(minimize_tf_functional(g, DensityProfile::make(g, one), bad), DomainError);
}
