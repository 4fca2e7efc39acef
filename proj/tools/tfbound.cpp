// tfbound: Thomas-Fermi solution, energy bounds and their large-Z sweep.

#include "tfbound/cli.hpp"
#include "tfbound/config.hpp"
#include "tfbound/errors.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <optional>

namespace {

struct Flags {
    std::optional<std::string> config;
    std::optional<int> Z;
    std::optional<std::vector<int>> z_list;
    std::optional<double> alpha, r_max, r_min, tol_ode, tol_eigen, tol_quad;
    std::optional<std::size_t> grid_nodes, max_iter;
    std::optional<std::string> cache_dir, format, out;
    std::optional<unsigned> workers;
};

void add_flags(CLI::App& app, Flags& f) {
    app.add_option("--config", f.config, "JSON config file");
    app.add_option("--Z", f.Z, "nuclear charge for spectrum and bounds");
    app.add_option("--z-list", f.z_list, "ascending Z values for converge")->delimiter(',');
    app.add_option("--alpha", f.alpha, "scale parameter of the regularized density");
    app.add_option("--grid-nodes", f.grid_nodes, "spectrum grid nodes");
    app.add_option("--r-min", f.r_min, "spectrum grid start (scaled)");
    app.add_option("--r-max", f.r_max, "spectrum grid end (scaled)");
    app.add_option("--tol-ode", f.tol_ode, "ODE tolerance of the TF solve");
    app.add_option("--tol-eigen", f.tol_eigen, "relative eigenvalue tolerance");
    app.add_option("--tol-quad", f.tol_quad, "minimizer stopping tolerance");
    app.add_option("--max-iter", f.max_iter, "minimizer iteration cap");
    app.add_option("--cache-dir", f.cache_dir, "result cache directory (env TFBOUND_CACHE_DIR)");
    app.add_option("--format", f.format, "csv or json");
    app.add_option("--out", f.out, "output file (converge: file stem)");
    app.add_option("--workers", f.workers, "worker threads for angular-momentum channels");
}

tfbound::RunConfig resolve(const Flags& f) {
    tfbound::RunConfig c;
    if (f.config) c = tfbound::load_config_file(*f.config, c);
    if (const char* env = std::getenv("TFBOUND_CACHE_DIR"); env && *env) c.cache_dir = env;
    if (f.Z) c.Z = *f.Z;
    if (f.z_list) c.z_list = *f.z_list;
    if (f.alpha) c.alpha = *f.alpha;
    if (f.grid_nodes) c.grid_nodes = *f.grid_nodes;
    if (f.r_min) c.r_min = *f.r_min;
    if (f.r_max) c.r_max = *f.r_max;
    if (f.tol_ode) c.tol_ode = *f.tol_ode;
    if (f.tol_eigen) c.tol_eigen = *f.tol_eigen;
    if (f.tol_quad) c.tol_quad = *f.tol_quad;
    if (f.max_iter) c.max_iter = *f.max_iter;
    if (f.cache_dir) c.cache_dir = *f.cache_dir;
    if (f.format) c.format = *f.format;
    if (f.out) c.out = *f.out;
    if (f.workers) c.workers = *f.workers;
    return c;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Thomas-Fermi energy bounds for neutral atoms"};
    app.require_subcommand(1);
    Flags flags;
    const char* subs[][2] = {{"tf-solve", "tabulate the screening function phi(x)"},
                             {"energy", "TF energy terms of the neutral atom (scaled)"},
                             {"minimize", "direct minimization of the TF functional"},
                             {"spectrum", "negative spectrum of h in the TF potential at --Z"},
                             {"bounds", "upper and lower bound at --Z"},
                             {"converge", "bounds over --z-list with Z^{-1/3} fits"}};
    for (const auto& s : subs) {
        auto* sub = app.add_subcommand(s[0], s[1]);
        add_flags(*sub, flags);
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : tfbound::kExitConfig;
    }
    tfbound::RunConfig cfg;
    try {
        cfg = resolve(flags);
    } catch (const tfbound::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return tfbound::kExitConfig;
    }
    return tfbound::run_subcommand(app.get_subcommands().front()->get_name(), cfg, std::cerr);
}
