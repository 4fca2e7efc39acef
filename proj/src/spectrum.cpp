#include "tfbound/spectrum.hpp"

#include "tfbound/constants.hpp"
#include "tfbound/errors.hpp"
#include "tfbound/simd/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <map>
#include <numeric>
#include <thread>

namespace tfbound {

namespace {

constexpr double kDecayStop = 40.0;  // e-folds of WKB decay before the inward start
constexpr double kBig = 1e200;

bool negative(double x) { return std::signbit(x); }

int sign_changes(const std::vector<double>& w, std::size_t from, std::size_t to) {
    int n = 0;
    for (std::size_t i = from + 1; i <= to; ++i) n += negative(w[i]) != negative(w[i - 1]);
    return n;
}

// Numerov in x = ln r for w = u / sqrt(r):  w'' = F w,
// F = (ell + 1/2)^2 + 2 r^2 (V - E).
class Channel {
public:
    Channel(const RadialGrid& grid, std::span<const double> V, int ell, double charge)
        : grid_(grid), ell_(ell), charge_(charge), n_(grid.size()) {
        const double h = grid.step();
        const double h2 = h * h;
        const double lam = (ell + 0.5) * (ell + 0.5);
        A_.resize(n_);
        base_.resize(n_);
        slope_.resize(n_);
        veff_min_ = INFINITY;
        for (std::size_t i = 0; i < n_; ++i) {
            const double r = grid[i];
            A_[i] = lam + 2.0 * r * r * V[i];
            base_[i] = 1.0 - h2 * A_[i] / 12.0;
            slope_[i] = h2 * r * r / 6.0;
            veff_min_ = std::min(veff_min_, V[i] + ell * (ell + 1.0) / (2.0 * r * r));
        }
        c_.resize(n_);
        out_.resize(n_);
        in_.resize(n_);
    }

    double veff_min() const { return veff_min_; }

    int count(double E) {
        const Sweep s = sweep(E);
        return s.empty ? 0 : s.nodes_out + s.nodes_in + (s.out_below ? 1 : 0);
    }

    // Joined solution at E, normalized as u = sqrt(r) w with int u^2 dr = 1.
    std::vector<double> orbital(double E, int& nodes) {
        const Sweep s = sweep(E);
        std::vector<double> u(n_, 0.0);
        if (s.empty) {
            nodes = -1;
            return u;
        }
        double num = 0.0, den = 0.0;
        for (std::size_t i = s.m - 1; i <= s.m + 1; ++i) {
            num += out_[i] * in_[i];
            den += in_[i] * in_[i];
        }
        const double scale = num / den;
        for (std::size_t i = 0; i <= s.m; ++i) u[i] = out_[i];
        for (std::size_t i = s.m + 1; i <= s.s; ++i) u[i] = scale * in_[i];
        nodes = sign_changes(u, 0, s.s);
        double norm = 0.0;
        const auto w = grid_.weights();
        for (std::size_t i = 0; i < n_; ++i) {
            u[i] *= std::sqrt(grid_[i]);
            norm += w[i] * u[i] * u[i];
        }
        const double inv = 1.0 / std::sqrt(norm);
        for (double& x : u) x *= inv;
        // Fix the overall sign: positive near the origin.
        if (negative(u[1])) {
            for (double& x : u) x = -x;
        }
        return u;
    }

private:
    struct Sweep {
        bool empty = true;
        std::size_t m = 0, s = 0;
        int nodes_out = 0, nodes_in = 0;
        bool out_below = false;
    };

    double F(std::size_t i, double E) const { return A_[i] - 2.0 * grid_[i] * grid_[i] * E; }

    Sweep sweep(double E) {
        Sweep sw;
        // Outermost classically allowed node.
        std::size_t m = n_;
        for (std::size_t i = n_; i-- > 0;) {
            if (F(i, E) < 0.0) {
                m = i;
                break;
            }
        }
        if (m == n_) return sw;
        m = std::clamp<std::size_t>(m, 2, n_ - 3);
        const double h = grid_.step();
        std::size_t s = n_ - 1;
        double decay = 0.0;
        for (std::size_t i = m + 1; i < n_; ++i) {
            const double k = std::sqrt(std::max(F(i, E), 0.0)) * h;
            decay += k;
            if (decay > kDecayStop || k > 1.0) {
                s = i;
                break;
            }
        }
        s = std::max(s, m + 2);

        simd::affine(base_, slope_, E, c_);

        // Outward from the origin, u ~ r^{ell+1} (1 - Z r / (ell + 1)).
        out_[0] = 1.0;
        double ratio = std::exp((ell_ + 0.5) * h);
        const double d0 = 1.0 - charge_ * grid_[0] / (ell_ + 1.0);
        const double d1 = 1.0 - charge_ * grid_[1] / (ell_ + 1.0);
        if (d0 > 0.0 && d1 > 0.0) ratio *= d1 / d0;
        out_[1] = ratio;
        for (std::size_t i = 1; i <= m; ++i) {
            out_[i + 1] = ((12.0 - 10.0 * c_[i]) * out_[i] - c_[i - 1] * out_[i - 1]) / c_[i + 1];
            if (std::abs(out_[i + 1]) > kBig) {
                for (std::size_t j = 0; j <= i + 1; ++j) out_[j] /= kBig;
            }
        }

        // Inward from s with decaying WKB start.
        const double fs = std::max(F(s, E), 1e-300), fs1 = std::max(F(s - 1, E), 1e-300);
        in_[s] = 1.0;
        in_[s - 1] = std::exp(0.5 * (std::sqrt(fs) + std::sqrt(fs1)) * h) * std::sqrt(std::sqrt(fs / fs1));
        for (std::size_t i = s - 1; i >= m; --i) {
            in_[i - 1] = ((12.0 - 10.0 * c_[i]) * in_[i] - c_[i + 1] * in_[i + 1]) / c_[i - 1];
            if (std::abs(in_[i - 1]) > kBig) {
                for (std::size_t j = i - 1; j <= s; ++j) in_[j] /= kBig;
            }
        }

        sw.empty = false;
        sw.m = m;
        sw.s = s;
        sw.nodes_out = sign_changes(out_, 0, m);
        sw.nodes_in = sign_changes(in_, m, s);
        // Log-derivative comparison at m, written without divisions.
        const double D = (out_[m + 1] - out_[m - 1]) * in_[m] - (in_[m + 1] - in_[m - 1]) * out_[m];
        sw.out_below = negative(D) != negative(out_[m] * in_[m]);
        return sw;
    }

    const RadialGrid& grid_;
    int ell_;
    double charge_;
    std::size_t n_;
    std::vector<double> A_, base_, slope_, c_, out_, in_;
    double veff_min_;
};

// inf of V_eff over r >= r_max, sampled geometrically out to 1e4 r_max.
double outer_veff_inf(const RadialPotential& V, double r_max, int ell) {
    double lowest = INFINITY;
    for (double r = r_max; r <= 1e4 * r_max; r *= 1.05) {
        lowest = std::min(lowest, V.V(r) + ell * (ell + 1.0) / (2.0 * r * r));
    }
    return lowest;
}

ChannelSolution solve_on_grid(const RadialPotential& V, const RadialGrid& grid, std::span<const double> Vg,
                              int ell, const SpectrumOptions& opt) {
    ChannelSolution res;
    res.ell = ell;
    Channel ch(grid, Vg, ell, V.coulomb_charge);

    std::map<double, int> known;
    auto cnt = [&](double E) {
        auto it = known.find(E);
        if (it != known.end()) return it->second;
        const int c = ch.count(E);
        known.emplace(E, c);
        return c;
    };

    double ceiling = opt.energy_ceiling;
    const double outer = outer_veff_inf(V, grid.r_max(), ell);
    if (outer < ceiling) {
        const int above = cnt(ceiling);
        ceiling = outer;
        if (cnt(ceiling) < above) {
            if (!opt.truncate_unresolved) {
                throw GridExtensionError("channel ell=" + std::to_string(ell) +
                                             ": a bound state reaches past r_max=" + std::to_string(grid.r_max()),
                                         ell);
            }
            res.truncated = true;
        }
    }
    res.search_ceiling = ceiling;
    if (!(ch.veff_min() < ceiling)) return res;

    double floor = ch.veff_min();
    if (V.coulomb_charge > 0.0) {
        floor = std::max(floor, -1.5 * V.coulomb_charge * V.coulomb_charge / (2.0 * (ell + 1.0) * (ell + 1.0)));
    }
    for (int tries = 0; cnt(floor) > 0; ++tries) {
        if (tries == 20) throw SolverError("spectrum", "no empty energy floor for ell=" + std::to_string(ell));
        floor *= 2.0;
    }
    const int K = cnt(ceiling);

    for (int k = 0; k < K; ++k) {
        double lo = floor, hi = ceiling;
        for (const auto& [E, c] : known) {
            if (c <= k) lo = std::max(lo, E);
            if (c > k) hi = std::min(hi, E);
        }
        while (hi - lo > opt.tol_eigen * std::abs(hi)) {
            double mid = 0.5 * (lo + hi);
            if (lo / hi > 4.0) mid = -std::sqrt(lo * hi);  // both negative, decades apart
            if (!(mid > lo && mid < hi)) break;
            if (cnt(mid) <= k) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        EigenLevel lev{ell, k, 0.5 * (lo + hi), 2 * (2 * ell + 1)};
        if (opt.keep_orbitals) {
            int nodes = 0;
            auto u = ch.orbital(lo, nodes);
            if (nodes != k) {
                throw SolverError("spectrum", "level " + std::to_string(k) + " of ell=" + std::to_string(ell) +
                                                  " has " + std::to_string(nodes) + " nodes");
            }
            res.orbitals.push_back(std::move(u));
        }
        res.levels.push_back(lev);
    }
    return res;
}

std::vector<double> sample(const RadialPotential& V, const RadialGrid& grid) {
    std::vector<double> v(grid.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        v[i] = V.V(grid[i]);
        if (!std::isfinite(v[i])) {
            throw EvaluationError("spectrum", "potential not finite at node " + std::to_string(i));
        }
    }
    return v;
}

void check_options(const SpectrumOptions& opt) {
    if (!(opt.energy_ceiling < 0.0)) throw DomainError("spectrum", "energy ceiling must be negative");
    if (!(opt.tol_eigen > 0.0)) throw DomainError("spectrum", "eigenvalue tolerance must be positive");
}

}  // namespace

RadialPotential coulomb_potential(double charge) {
    return {[charge](double r) { return -charge / r; }, "coulomb", charge, 1.0};
}

RadialGrid spectrum_grid(const RadialPotential& V, const SpectrumOptions& opt) {
    return RadialGrid::log_uniform(opt.R_min * V.length_unit, opt.R_max * V.length_unit, opt.nodes);
}

int count_below(const RadialPotential& V, const RadialGrid& grid, int ell, double E) {
    const auto v = sample(V, grid);
    Channel ch(grid, v, ell, V.coulomb_charge);
    return ch.count(E);
}

ChannelSolution solve_channel(const RadialPotential& V, int ell, const SpectrumOptions& opt) {
    check_options(opt);
    if (ell < 0) throw DomainError("spectrum", "ell must be non-negative");
    const auto grid = spectrum_grid(V, opt);
    const auto v = sample(V, grid);
    return solve_on_grid(V, grid, v, ell, opt);
}

SpectrumSummary full_spectrum(const RadialPotential& V, const SpectrumOptions& opt) {
    check_options(opt);
    SpectrumSummary sum;
    sum.potential_tag = V.tag;
    sum.grid = spectrum_grid(V, opt);
    const auto v = sample(V, sum.grid);
    const unsigned batch = std::max(1u, opt.workers);

    std::vector<ChannelSolution> channels;
    for (int ell0 = 0;; ell0 += static_cast<int>(batch)) {
        std::vector<ChannelSolution> res(batch);
        std::vector<std::exception_ptr> errs(batch);
        auto work = [&](unsigned j) {
            try {
                res[j] = solve_on_grid(V, sum.grid, v, ell0 + static_cast<int>(j), opt);
            } catch (...) {
                errs[j] = std::current_exception();
            }
        };
        if (batch == 1) {
            work(0);
        } else {
            std::vector<std::thread> pool;
            for (unsigned j = 0; j < batch; ++j) pool.emplace_back(work, j);
            for (auto& t : pool) t.join();
        }
        bool done = false;
        for (unsigned j = 0; j < batch && !done; ++j) {
            if (errs[j]) std::rethrow_exception(errs[j]);
            if (res[j].levels.empty()) {
                if (res[j].truncated) sum.unresolved_channels.push_back(res[j].ell);
                done = true;
            } else {
                channels.push_back(std::move(res[j]));
            }
        }
        if (done) break;
    }

    for (auto& ch : channels) {
        if (ch.truncated) sum.unresolved_channels.push_back(ch.ell);
        sum.ell_max = ch.ell;
        for (std::size_t k = 0; k < ch.levels.size(); ++k) {
            const auto& lev = ch.levels[k];
            sum.levels.push_back(lev);
            sum.n_negative += lev.degeneracy;
            sum.eigensum += lev.degeneracy * lev.energy;
            if (opt.keep_orbitals) sum.orbitals.push_back(std::move(ch.orbitals[k]));
        }
    }
    std::sort(sum.unresolved_channels.begin(), sum.unresolved_channels.end());
    return sum;
}

RadialPotential hartree_potential(const DensityProfile& rho, double& total_charge_out) {
    auto phi = std::make_shared<NewtonPotential>(rho);
    total_charge_out = phi->total_charge();
    return {[phi](double r) { return (*phi)(r); }, "hartree", 0.0, 1.0};
}

OccupiedDensity occupied_density(const SpectrumSummary& spec, double n_electrons) {
    if (!(n_electrons >= 0.0)) throw DomainError("spectrum", "electron count must be non-negative");
    const std::size_t L = spec.levels.size();
    if (spec.orbitals.size() != L) throw DomainError("spectrum", "spectrum was computed without orbitals");
    std::vector<std::size_t> order(L);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return spec.levels[a].energy < spec.levels[b].energy; });

    OccupiedDensity res;
    res.occupation.assign(L, 0.0);
    double remaining = n_electrons;
    for (std::size_t g = 0; g < L && remaining > 0.0;) {
        // Degenerate group: energies equal to within rounding of the bisection.
        std::size_t e = g + 1;
        const double E0 = spec.levels[order[g]].energy;
        while (e < L && std::abs(spec.levels[order[e]].energy - E0) <= 1e-9 * std::abs(E0)) ++e;
        double deg = 0.0;
        for (std::size_t k = g; k < e; ++k) deg += spec.levels[order[k]].degeneracy;
        const double frac = std::min(1.0, remaining / deg);
        for (std::size_t k = g; k < e; ++k) res.occupation[order[k]] = frac * spec.levels[order[k]].degeneracy;
        remaining -= frac * deg;
        if (remaining < 1e-12 * n_electrons) remaining = 0.0;
        g = e;
    }
    res.deficit = remaining;
    res.occupied = n_electrons - remaining;

    const auto& grid = spec.grid;
    std::vector<double> n(grid.size(), 0.0);
    for (std::size_t l = 0; l < L; ++l) {
        const double occ = res.occupation[l];
        if (occ == 0.0) continue;
        res.eigensum += occ * spec.levels[l].energy;
        const auto& u = spec.orbitals[l];
        for (std::size_t i = 0; i < n.size(); ++i) n[i] += occ * u[i] * u[i];
    }
    for (std::size_t i = 0; i < n.size(); ++i) n[i] /= 4.0 * pi * grid[i] * grid[i];
    res.density = DensityProfile::make(grid, std::move(n), 0.0, std::nullopt);
    return res;
}

}  // namespace tfbound
