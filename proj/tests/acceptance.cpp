// Acceptance run: one PASS/FAIL line per criterion.
//
// Usage: tfbound_acceptance [--expect-fail N]...
// Exit status is 0 when exactly the listed criteria fail. A listed criterion
// that passes is reported and also makes the run fail, so the list stays honest.

#include "oracles/fd_radial.hpp"
#include "oracles/tf_rk4.hpp"
#include "tfbound/bounds.hpp"
#include "tfbound/cli.hpp"
#include "tfbound/config.hpp"
#include "tfbound/constants.hpp"
#include "tfbound/fit.hpp"
#include "tfbound/tf_energy.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>

using namespace tfbound;
namespace fs = std::filesystem;

namespace {

const double kTfEnergy = -0.768745;
const std::vector<int> kSweep = {100, 400, 1600, 6400};

struct Verdict {
    bool pass = false;
    std::string detail;
};

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

struct Context {
    TfSolution tf;
    double tf_seconds = 0.0;
    DensityProfile rho;
    TfEnergyBreakdown energy;
    std::vector<SpectrumSummary> spectra;  // parallel to kSweep
    std::map<double, ConvergenceTable> tables;  // by alpha

    const ConvergenceTable& table(double alpha) {
        auto it = tables.find(alpha);
        if (it == tables.end()) it = tables.emplace(alpha, convergence_table(kSweep, alpha, tf)).first;
        return it->second;
    }
    const std::vector<SpectrumSummary>& sweep_spectra() {
        if (spectra.empty()) {
            SpectrumOptions o;
            o.keep_orbitals = false;
            for (int Z : kSweep) spectra.push_back(full_spectrum(tf_potential(tf, Z), o));
        }
        return spectra;
    }
};

std::vector<double> inv_cbrt(const std::vector<int>& Zs) {
    std::vector<double> x;
    for (int Z : Zs) x.push_back(1.0 / std::cbrt(double(Z)));
    return x;
}

Verdict c1(Context& c) {
    const double ref = oracle::tf_slope_richardson();
    const double B = c.tf.slope_B();
    const bool ok = std::abs(B - 1.5880710) <= 1e-6 && std::abs(B - ref) <= 1e-6 && c.tf_seconds < 1.0;
    return {ok, fmt("B=%.10f fixed-step oracle=%.10f |diff|=%.1e solve time %.3fs", B, ref, std::abs(B - ref),
                    c.tf_seconds)};
}

Verdict c2(Context& c) {
    const double n = c.rho.total_norm;
    return {std::abs(n - 1.0) <= 1e-6, fmt("int rho_TF = %.12f", n)};
}

Verdict c3(Context& c) {
    const double E = c.energy.total;
    const double exact = -3.0 / 7.0 * c.tf.slope_B() / b0;
    const double rel = std::abs(E / exact - 1.0);
    return {std::abs(E - kTfEnergy) <= 5e-4 && rel <= 1e-5,
            fmt("E=%.9f -(3/7)B/b0=%.9f rel=%.1e", E, exact, rel)};
}

Verdict c4(Context& c) {
    const auto& e = c.energy;
    const double v = std::abs(2 * e.kinetic + e.attraction + e.hartree);
    return {v <= 1e-4 * std::abs(e.total), fmt("|2K+U_en+U_ee|=%.2e (limit %.2e)", v, 1e-4 * std::abs(e.total))};
}

Verdict c5(Context& c) {
    const double direct = semiclassical_eigensum(tf_scaled_potential(c.tf, default_tf_grid()));
    const double path = c.energy.eigensum_semiclassical;
    const double rel = std::abs(direct / path - 1.0);
    return {rel <= 1e-5 && std::abs(direct + 0.5125) <= 1e-3,
            fmt("phase space %.9f, K+U_en+2U_ee %.9f, rel %.1e", direct, path, rel)};
}

Verdict c6(Context& c) {
    const auto g = default_tf_grid(2000);
    std::vector<double> v(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) v[i] = std::exp(-g[i]) / (8 * pi);
    const auto res = minimize_tf_functional(g, DensityProfile::make(g, v, 0.0, {}));
    std::vector<double> d(g.size());
    for (std::size_t i = 0; i < d.size(); ++i) d[i] = std::abs(res.density.values[i] - c.rho.at(g[i]));
    const double l1 = integrate_radial(d, g);
    return {l1 <= 1e-3 && std::abs(res.mu) <= 1e-3,
            fmt("L1=%.2e mu=%.1e E=%.9f after %zu iterations", l1, res.mu, res.energy, res.iterations)};
}

Verdict c7(Context& c) {
    SpectrumOptions o;
    o.truncate_unresolved = true;
    double worst_h = 0.0;
    for (double Z : {1.0, 10.0}) {
        for (int ell = 0; ell <= 4; ++ell) {
            const auto ch = solve_channel(coulomb_potential(Z), ell, o);
            for (int n = ell + 1; n <= 5; ++n) {
                const double exact = -Z * Z / (2.0 * n * n);
                const double got = std::size_t(n - ell - 1) < ch.levels.size() ? ch.levels[n - ell - 1].energy : 0.0;
                worst_h = std::max(worst_h, std::abs(got / exact - 1.0));
            }
        }
    }
    const int Z = 100;
    const auto V = tf_potential(c.tf, Z);
    double worst_fd = 0.0;
    int compared = 0;
    for (int ell : {0, 1, 2, 3}) {
        const auto ch = solve_channel(V, ell, o);
        const auto ref = oracle::fd_levels_extrapolated(V.V, ell, 1e-13 * V.length_unit, 50.0 * V.length_unit, 1500, 8);
        for (std::size_t k = 0; k < ch.levels.size() && k < ref.size(); ++k) {
            if (ch.levels[k].energy > -1e-3 * std::pow(Z, 4.0 / 3.0)) break;
            worst_fd = std::max(worst_fd, std::abs(ch.levels[k].energy / ref[k] - 1.0));
            ++compared;
        }
    }
    return {worst_h <= 1e-6 && worst_fd <= 1e-4 && compared > 0,
            fmt("hydrogenic worst rel %.1e; matrix oracle worst rel %.1e over %d TF levels (Z=100)", worst_h,
                worst_fd, compared)};
}

Verdict c8(Context& c) {
    const auto& sp = c.sweep_spectra();
    std::vector<double> y;
    std::string rows;
    for (std::size_t i = 0; i < kSweep.size(); ++i) {
        y.push_back(double(sp[i].n_negative) / kSweep[i]);
        rows += fmt(" %d:%.4f", kSweep[i], y.back());
    }
    const auto f = fit_line(inv_cbrt(kSweep), y);
    const double a = f.intercept.value_or(NAN);
    return {std::abs(a - 1.0) <= 0.03, fmt("intercept %.5f; N_neg/Z%s", a, rows.c_str())};
}

Verdict c9(Context& c) {
    const auto& sp = c.sweep_spectra();
    std::vector<double> y;
    for (std::size_t i = 0; i < kSweep.size(); ++i) y.push_back(sp[i].eigensum / std::pow(kSweep[i], 7.0 / 3.0));
    const auto f = fit_line(inv_cbrt(kSweep), y);
    const double a = f.intercept.value_or(NAN);
    return {std::abs(a + 0.5125) <= 0.015,
            fmt("intercept %.5f; scaled eigensums %.5f %.5f %.5f %.5f", a, y[0], y[1], y[2], y[3])};
}

Verdict c10(Context& c) {
    const auto& t = c.table(1.0);
    const double up = t.upper_fit.intercept.value_or(NAN), lo = t.lower_fit.intercept.value_or(NAN);
    bool gap_ok = true;
    for (const auto& r : t.rows) gap_ok = gap_ok && r.gap >= 0.0;
    double shift = 0.0;
    for (double a : {0.5, 2.0}) {
        const double la = c.table(a).lower_fit.intercept.value_or(NAN);
        shift = std::max(shift, std::abs(la / lo - 1.0));
    }
    const bool near_u = std::abs(up / kTfEnergy - 1.0) <= 0.05;
    const bool near_l = std::abs(lo / kTfEnergy - 1.0) <= 0.05;
    const bool diff_ok = std::abs(up - lo) <= 0.02;
    const bool ok = near_u && near_l && diff_ok && gap_ok && shift <= 0.01;
    return {ok, fmt("intercepts upper %.5f lower %.5f (within 5%%: %s/%s), difference %.4f (limit 0.02), gaps %s, "
                    "alpha shift %.2f%%",
                    up, lo, near_u ? "yes" : "no", near_l ? "yes" : "no", std::abs(up - lo),
                    gap_ok ? "non-negative" : "NEGATIVE", 100 * shift)};
}

Verdict c11(Context& c) {
    const auto& t = c.table(1.0);
    std::vector<double> s;
    for (const auto& r : t.rows) s.push_back(r.lower.correction / std::pow(r.Z, 7.0 / 3.0));
    bool decreasing = true;
    for (std::size_t i = 1; i < s.size(); ++i) decreasing = decreasing && s[i] < s[i - 1];
    // Prefactor 1.5 pi^{1/3} Z^{2/3} (Z^3 ln Z)^{1/3} / Z^{7/3} ~ Z^{-2/3} (ln Z)^{1/3}.
    auto spread = [&](double p) {
        double lo = INFINITY, hi = 0.0, first = 0.0;
        for (std::size_t i = 0; i < s.size(); ++i) {
            const double Z = t.rows[i].Z;
            const double r = s[i] / (std::pow(Z, p) * std::cbrt(std::log(Z)));
            if (i == 0) first = r;
            lo = std::min(lo, r / first);
            hi = std::max(hi, r / first);
        }
        return std::pair{lo, hi};
    };
    const auto [lo2, hi2] = spread(-2.0 / 3.0);
    const auto [lo1, hi1] = spread(-1.0 / 3.0);
    const bool ok = decreasing && hi2 / lo2 <= 2.0 && hi1 <= 1.0 + 1e-12;
    return {ok, fmt("scaled %.5f %.5f %.5f %.5f %s; ratio to Z^-2/3(lnZ)^1/3 in [%.3f, %.3f]; "
                    "ratio to Z^-1/3(lnZ)^1/3 in [%.3f, %.3f] (below the envelope)",
                    s[0], s[1], s[2], s[3], decreasing ? "decreasing" : "NOT decreasing", lo2, hi2, lo1, hi1)};
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

Verdict c12(Context&) {
    const fs::path root = fs::temp_directory_path() / "tfbound-acceptance-determinism";
    fs::remove_all(root);
    std::ostringstream log;
    std::vector<std::string> outputs;
    for (unsigned workers : {1u, 4u, 1u}) {
        const fs::path dir = root / ("run" + std::to_string(outputs.size()));
        fs::create_directories(dir);
        RunConfig cfg;
        cfg.workers = workers;
        cfg.out = (dir / "converge").string();
        if (run_subcommand("converge", cfg, log) != kExitOk) {
            return {false, "converge failed: " + log.str()};
        }
        std::string all;
        for (const char* ext : {".csv", ".fit.json", ".upper.dat", ".lower.dat"}) all += slurp(dir / ("converge" + std::string(ext)));
        outputs.push_back(all);
    }
    fs::remove_all(root);
    const bool ok = outputs[0] == outputs[1] && outputs[0] == outputs[2] && !outputs[0].empty();
    return {ok, fmt("three converge runs (workers 1, 4, 1), %zu bytes each, %s", outputs[0].size(),
                    ok ? "byte-identical" : "DIFFER")};
}

}  // namespace

int main(int argc, char** argv) {
    std::set<int> expected;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--expect-fail") == 0 && i + 1 < argc) {
            expected.insert(std::atoi(argv[++i]));
        } else {
            std::fprintf(stderr, "usage: %s [--expect-fail N]...\n", argv[0]);
            return 2;
        }
    }

    Context ctx;
    auto t0 = std::chrono::steady_clock::now();
    ctx.tf = solve_tf();
    ctx.tf_seconds = seconds_since(t0);
    ctx.rho = tf_density_profile(ctx.tf, default_tf_grid());
    ctx.energy = energy_breakdown(ctx.rho);

    const std::vector<std::pair<const char*, std::function<Verdict(Context&)>>> criteria = {
        {"TF slope", c1},
        {"normalization", c2},
        {"TF energy coefficient", c3},
        {"virial", c4},
        {"two-path semiclassical sum", c5},
        {"variational minimizer", c6},
        {"eigensolver exactness", c7},
        {"state counting", c8},
        {"eigensum scaling", c9},
        {"bounds convergence", c10},
        {"correction term vanishing", c11},
        {"determinism", c12},
    };

    std::set<int> failed;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const int id = static_cast<int>(i) + 1;
        const auto start = std::chrono::steady_clock::now();
        Verdict v;
        try {
            v = criteria[i].second(ctx);
        } catch (const std::exception& e) {
            v = {false, std::string("exception: ") + e.what()};
        }
        if (!v.pass) failed.insert(id);
        std::printf("%s %2d  %-27s %s [%.2fs]\n", v.pass ? "PASS" : "FAIL", id, criteria[i].first, v.detail.c_str(),
                    seconds_since(start));
        std::fflush(stdout);
    }

    std::printf("%zu of %zu criteria pass\n", criteria.size() - failed.size(), criteria.size());
    bool as_expected = true;
    for (int id : failed) {
        if (!expected.count(id)) {
            std::printf("unexpected failure: %d\n", id);
            as_expected = false;
        } else {
            std::printf("known failure: %d\n", id);
        }
    }
    for (int id : expected) {
        if (!failed.count(id)) {
            std::printf("criterion %d was expected to fail but passed; update the expected list\n", id);
            as_expected = false;
        }
    }
    return as_expected ? 0 : 1;
}
