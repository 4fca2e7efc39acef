#include "tfbound/tf_model.hpp"

#include "tfbound/constants.hpp"
#include "tfbound/errors.hpp"
#include "tfbound/ode.hpp"
#include "tfbound/roots.hpp"

#include <algorithm>
#include <cmath>

namespace tfbound {

namespace {

constexpr double kP = 1.5;  // exponent of phi in the ODE
// phi falls to ~1e-11 at the tail start; errors are controlled relative to |phi|.
constexpr double kAbsScale = 1e-40;

// phi'' = phi_+^{3/2} / sqrt(x); beyond a zero crossing phi continues linearly.
OdeState<2> tf_rhs(double x, const OdeState<2>& y) {
    const double p = std::max(y[0], 0.0);
    return {y[1], p * std::sqrt(p) / std::sqrt(x)};
}

// Coefficients of g^p from those of g (g_0 != 0), J.C.P. Miller recurrence.
double power_coefficient(const std::vector<double>& g, const std::vector<double>& c, std::size_t n) {
    double s = 0.0;
    for (std::size_t k = 1; k <= n; ++k) {
        s += ((kP + 1.0) * static_cast<double>(k) - static_cast<double>(n)) * g[k] * c[n - k];
    }
    return s / (static_cast<double>(n) * g[0]);
}

OdeState<2> eval_small_x(const std::vector<double>& a, double x) {
    const double t = std::sqrt(x);
    double phi = 0.0, dphi = 0.0, tk = 1.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        phi += a[k] * tk;
        // d/dx t^k = (k/2) t^{k-2}
        if (k >= 2) dphi += 0.5 * static_cast<double>(k) * a[k] * tk / x;
        tk *= t;
    }
    return {phi, dphi};
}

OdeState<2> eval_large_x(const std::vector<double>& b, double F, double x) {
    const double sigma = sommerfeld_sigma();
    const double y = F * std::pow(x, -sigma);
    double g = 0.0, dg = 0.0, yk = 1.0;
    for (std::size_t k = 0; k < b.size(); ++k) {
        g += b[k] * yk;
        dg += b[k] * yk * (3.0 + static_cast<double>(k) * sigma);
        yk *= y;
    }
    const double x3 = x * x * x;
    return {144.0 * g / x3, -144.0 * dg / (x3 * x)};
}

struct Shooter {
    const TfOptions& opt;
    std::vector<double> tail = large_x_series(opt.tail_order);
    OdeOptions ode{opt.tolerance, kAbsScale};
    static constexpr double kFmin = 1e-3, kFmax = 1e3;

    OdeState<2> outward(double B) const {
        const auto a = small_x_series(B, opt.series_order);
        const auto tr = solve_ivp<2>(tf_rhs, eval_small_x(a, opt.x_start), opt.x_start, opt.x_junction, ode);
        return tr.back();
    }
    OdeState<2> inward(double F) const {
        const auto tr = solve_ivp<2>(tf_rhs, eval_large_x(tail, F, opt.tail_match_x), opt.tail_match_x,
                                     opt.x_junction, ode);
        return tr.back();
    }
    // Tail amplitude whose inward solution matches phi at the junction, clamped to the search range.
    double match_amplitude(double phi_out) const {
        const double lo_val = inward(kFmin)[0];
        const double hi_val = inward(kFmax)[0];
        if (phi_out >= lo_val) return kFmin;
        if (phi_out <= hi_val) return kFmax;
        // phi_in(x_j; F) decreases monotonically with F; root in log F.
        const double u = find_root_bracketed([&](double lf) { return inward(std::exp(lf))[0] - phi_out; },
                                             std::log(kFmin), std::log(kFmax), 1e-15);
        return std::exp(u);
    }
    double mismatch(double B, double* amplitude = nullptr) const {
        const auto o = outward(B);
        const double F = match_amplitude(o[0]);
        if (amplitude) *amplitude = F;
        return o[1] - inward(F)[1];
    }
};

}  // namespace

double sommerfeld_sigma() { return 0.5 * (std::sqrt(73.0) - 7.0); }

std::vector<double> small_x_series(double slope_B, int order) {
    const std::size_t n = static_cast<std::size_t>(std::max(order, 3));
    std::vector<double> a(n, 0.0), c;
    a[0] = 1.0;
    a[1] = 0.0;
    a[2] = -slope_B;
    c.push_back(1.0);
    for (std::size_t k = 3; k < n; ++k) {
        while (c.size() <= k - 3) c.push_back(power_coefficient(a, c, c.size()));
        // (k(k-2)/4) a_k = [phi^{3/2}]_{k-3}
        a[k] = 4.0 * c[k - 3] / static_cast<double>(k * (k - 2));
    }
    return a;
}

std::vector<double> large_x_series(int order) {
    const double sigma = sommerfeld_sigma();
    const std::size_t n = static_cast<std::size_t>(std::max(order, 2));
    std::vector<double> b(n, 0.0), d(n, 0.0);
    b[0] = 1.0;
    b[1] = -1.0;
    d[0] = 1.0;
    d[1] = kP * b[1];
    for (std::size_t k = 2; k < n; ++k) {
        double partial = 0.0;  // [g^{3/2}]_k without its linear p*b_k part
        for (std::size_t j = 1; j < k; ++j) {
            partial += ((kP + 1.0) * static_cast<double>(j) - static_cast<double>(k)) * b[j] * d[k - j];
        }
        partial /= static_cast<double>(k);
        const double s = 3.0 + static_cast<double>(k) * sigma;
        b[k] = 12.0 * partial / (s * (s + 1.0) - 18.0);
        d[k] = kP * b[k] + partial;
    }
    return b;
}

TfSolution::TfSolution(TfOptions opt, double slope_B, double tail_amplitude, HermiteTable table)
    : opt_(opt),
      slope_B_(slope_B),
      tail_amplitude_(tail_amplitude),
      table_(std::move(table)),
      series_(small_x_series(slope_B, opt.series_order)),
      tail_series_(large_x_series(opt.tail_order)) {}

double TfSolution::b0() const { return tfbound::b0; }

std::vector<double> TfSolution::table_x() const {
    std::vector<double> x(table_.size());
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = std::exp(table_.t0() + table_.step() * static_cast<double>(i));
    x.front() = opt_.x_start;
    x.back() = opt_.tail_match_x;
    return x;
}

double TfSolution::phi(double x) const {
    if (x < 0.0 || std::isnan(x)) throw DomainError("tf-model", "phi requires x >= 0");
    if (x == 0.0) return 1.0;
    if (x < opt_.x_start) return eval_small_x(series_, x)[0];
    if (x > opt_.tail_match_x) return eval_large_x(tail_series_, tail_amplitude_, x)[0];
    return table_.value(std::log(x));
}

double TfSolution::dphi(double x) const {
    if (x < 0.0 || std::isnan(x)) throw DomainError("tf-model", "phi' requires x >= 0");
    if (x == 0.0) return -slope_B_;
    if (x < opt_.x_start) return eval_small_x(series_, x)[1];
    if (x > opt_.tail_match_x) return eval_large_x(tail_series_, tail_amplitude_, x)[1];
    return table_.slope(std::log(x)) / x;
}

double tf_shooting_mismatch(double slope_B, const TfOptions& opt) { return Shooter{opt}.mismatch(slope_B); }

TfSolution solve_tf(double tolerance) {
    TfOptions opt;
    opt.tolerance = tolerance;
    return solve_tf(opt);
}

TfSolution solve_tf(const TfOptions& opt) {
    if (!(opt.tolerance > 0.0)) throw DomainError("tf-model", "tolerance must be positive");
    if (!(opt.x_start > 0.0 && opt.x_start < opt.x_junction && opt.x_junction < opt.tail_match_x)) {
        throw DomainError("tf-model", "need 0 < x_start < x_junction < tail_match_x");
    }
    const Shooter shoot{opt};
    double B;
    try {
        B = find_root_bracketed([&](double b) { return shoot.mismatch(b); }, 1.5, 1.7, 1e-15);
    } catch (const BracketError& e) {
        throw SolverError("tf-model", std::string("initial slope not bracketed: ") + e.what());
    }
    double F = 0.0;
    shoot.mismatch(B, &F);

    // Tabulate on a log-uniform x grid: outward up to the junction, inward beyond it.
    const std::size_t n = opt.table_nodes;
    const double t0 = std::log(opt.x_start);
    const double dt = (std::log(opt.tail_match_x) - t0) / static_cast<double>(n - 1);
    std::vector<double> xs(n);
    for (std::size_t i = 0; i < n; ++i) xs[i] = std::exp(t0 + dt * static_cast<double>(i));
    xs.front() = opt.x_start;
    xs.back() = opt.tail_match_x;
    const auto split = static_cast<std::size_t>(std::upper_bound(xs.begin(), xs.end(), opt.x_junction) - xs.begin());

    std::vector<double> phi(n), slope(n);
    const OdeOptions ode{opt.tolerance, kAbsScale};
    {
        const auto a = small_x_series(B, opt.series_order);
        std::span<const double> outs(xs.data(), split);
        const auto tr = solve_ivp<2>(tf_rhs, eval_small_x(a, opt.x_start), opt.x_start, opt.x_junction, ode, outs);
        for (std::size_t i = 0; i < split; ++i) {
            phi[i] = tr.y[i][0];
            slope[i] = tr.y[i][1] * xs[i];
        }
    }
    {
        std::vector<double> outs(xs.rbegin(), xs.rend() - static_cast<std::ptrdiff_t>(split));
        const auto tail = large_x_series(opt.tail_order);
        const auto tr = solve_ivp<2>(tf_rhs, eval_large_x(tail, F, opt.tail_match_x), opt.tail_match_x,
                                     opt.x_junction, ode, outs);
        for (std::size_t k = 0; k < outs.size(); ++k) {
            const std::size_t i = n - 1 - k;
            phi[i] = tr.y[k][0];
            slope[i] = tr.y[k][1] * xs[i];
        }
    }
    return TfSolution(opt, B, F, HermiteTable(t0, dt, std::move(phi), std::move(slope)));
}

TfSolution tf_solution_from_table(const TfOptions& opt, double slope_B, double tail_amplitude,
                                  std::vector<double> phi, std::vector<double> slope) {
    const std::size_t n = opt.table_nodes;
    if (phi.size() != n || slope.size() != n) throw DomainError("tf-model", "table size does not match options");
    const double t0 = std::log(opt.x_start);
    const double dt = (std::log(opt.tail_match_x) - t0) / static_cast<double>(n - 1);
    return TfSolution(opt, slope_B, tail_amplitude, HermiteTable(t0, dt, std::move(phi), std::move(slope)));
}

double phi_at(const TfSolution& sol, double x) { return sol.phi(x); }

double v_scaled(const TfSolution& sol, double R) {
    if (!(R > 0.0)) throw DomainError("tf-model", "v(R) requires R > 0");
    return -sol.phi(R / b0) / R;
}

double rho_tf(const TfSolution& sol, double R) {
    if (!(R > 0.0)) throw DomainError("tf-model", "rho_TF(R) requires R > 0");
    const double k2 = 2.0 * sol.phi(R / b0) / R;  // k_F^2 = -2 v
    return k2 * std::sqrt(k2) / three_pi_sq;
}

double potential_unscaled(const TfSolution& sol, int Z, double r) {
    if (!(r > 0.0)) throw DomainError("tf-model", "V(r) requires r > 0");
    if (Z < 1) throw DomainError("tf-model", "Z must be >= 1");
    const double z13 = std::cbrt(static_cast<double>(Z));
    return z13 * z13 * z13 * z13 * v_scaled(sol, z13 * r);
}

double density_unscaled(const TfSolution& sol, int Z, double r) {
    if (!(r > 0.0)) throw DomainError("tf-model", "n(r) requires r > 0");
    if (Z < 1) throw DomainError("tf-model", "Z must be >= 1");
    const double z = static_cast<double>(Z);
    return z * z * rho_tf(sol, std::cbrt(z) * r);
}

RadialGrid default_tf_grid(std::size_t nodes) { return RadialGrid::log_uniform(1e-6, 1.5e4, nodes); }

DensityProfile tf_density_profile(const TfSolution& sol, const RadialGrid& grid) {
    std::vector<double> v(grid.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = rho_tf(sol, grid[i]);
    return DensityProfile::make(grid, std::move(v), -1.5, -6.0);
}

std::vector<double> tf_potential_samples(const TfSolution& sol, const RadialGrid& grid) {
    std::vector<double> v(grid.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = v_scaled(sol, grid[i]);
    return v;
}

}  // namespace tfbound
