#include "tfbound/cli.hpp"

#include "tfbound/bounds.hpp"
#include "tfbound/cache.hpp"
#include "tfbound/errors.hpp"
#include "tfbound/tf_energy.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <json.hpp>
#include <sstream>

namespace tfbound {

using nlohmann::json;

namespace {

std::string g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

json num(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json opt_num(const std::optional<double>& v) { return v ? num(*v) : json(nullptr); }

void emit(const std::string& path, const std::string& text) {
    if (path.empty()) {
        std::cout << text;
        std::cout.flush();
        return;
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw ConfigError("cannot write output file " + path);
    out << text;
}

TfOptions tf_options(const RunConfig& cfg) {
    TfOptions o;
    o.tolerance = cfg.tol_ode;
    return o;
}

std::vector<std::string> tf_key_parts(const TfOptions& o) {
    return {"tf-solution", g17(o.tolerance), g17(o.x_start), g17(o.x_junction), g17(o.tail_match_x),
            std::to_string(o.table_nodes), std::to_string(o.series_order), std::to_string(o.tail_order)};
}

std::vector<double> parse_doubles(std::istream& in, std::size_t n) {
    std::vector<double> v(n);
    for (auto& x : v) {
        std::string tok;
        if (!(in >> tok)) throw CacheError("cache entry truncated");
        x = std::strtod(tok.c_str(), nullptr);
    }
    return v;
}

TfSolution load_tf(const RunConfig& cfg, const ResultCache& cache) {
    const TfOptions o = tf_options(cfg);
    const auto key = cache_key(tf_key_parts(o));
    if (auto body = cache.load(key)) {
        std::istringstream in(*body);
        const auto head = parse_doubles(in, 2);
        auto phi = parse_doubles(in, o.table_nodes);
        auto slope = parse_doubles(in, o.table_nodes);
        return tf_solution_from_table(o, head[0], head[1], std::move(phi), std::move(slope));
    }
    auto sol = solve_tf(o);
    if (cache.enabled()) {
        std::string body = g17(sol.slope_B()) + "\n" + g17(sol.tail_amplitude()) + "\n";
        for (double v : sol.table().values()) body += g17(v) + "\n";
        for (double v : sol.table().slopes()) body += g17(v) + "\n";
        cache.store(key, body);
    }
    return sol;
}

SpectrumOptions spectrum_options(const RunConfig& cfg) {
    SpectrumOptions s;
    s.R_min = cfg.r_min;
    s.R_max = cfg.r_max;
    s.nodes = cfg.grid_nodes;
    s.tol_eigen = cfg.tol_eigen;
    s.workers = cfg.workers;
    return s;
}

std::vector<std::string> spectrum_key_parts(const RunConfig& cfg, const SpectrumOptions& s, const std::string& tag,
                                            int Z, const RadialGrid& grid) {
    return {"spectrum",       tag, std::to_string(Z), grid.signature(), g17(s.tol_eigen), g17(s.energy_ceiling),
            g17(cfg.tol_ode)};
}

// ---- tf-solve -------------------------------------------------------------

std::string tf_solve_output(const RunConfig& cfg, const TfSolution& sol) {
    const auto xs = sol.table_x();
    const auto& phi = sol.table().values();
    const auto& slope = sol.table().slopes();
    if (cfg.format == "json") {
        json j;
        j["slope_B"] = sol.slope_B();
        j["tail_amplitude"] = sol.tail_amplitude();
        j["tail_match_x"] = sol.tail_match_x();
        j["b0"] = sol.b0();
        std::vector<double> dphi(xs.size());
        for (std::size_t i = 0; i < xs.size(); ++i) dphi[i] = slope[i] / xs[i];
        j["x"] = xs;
        j["phi"] = phi;
        j["dphi"] = dphi;
        return j.dump(2) + "\n";
    }
    std::string s = "x,phi,dphi\n";
    for (std::size_t i = 0; i < xs.size(); ++i) s += g17(xs[i]) + "," + g17(phi[i]) + "," + g17(slope[i] / xs[i]) + "\n";
    return s;
}

// ---- energy ---------------------------------------------------------------

std::string energy_output(const RunConfig& cfg, const TfSolution& sol, std::ostream& log) {
    const auto e = energy_breakdown(tf_density_profile(sol, default_tf_grid()));
    for (const auto& d : e.diagnostics) log << "warning [tf-energy]: " << d << "\n";
    if (cfg.format == "json") {
        json j = {{"kinetic", e.kinetic},
                  {"attraction", e.attraction},
                  {"hartree", e.hartree},
                  {"total", e.total},
                  {"eigensum_semiclassical", e.eigensum_semiclassical}};
        return j.dump(2) + "\n";
    }
    return "quantity,value\nkinetic," + g17(e.kinetic) + "\nattraction," + g17(e.attraction) + "\nhartree," +
           g17(e.hartree) + "\ntotal," + g17(e.total) + "\neigensum_semiclassical," + g17(e.eigensum_semiclassical) +
           "\n";
}

// ---- minimize -------------------------------------------------------------

std::string minimize_output(const RunConfig& cfg, const TfSolution& sol, std::ostream& log) {
    const auto grid = default_tf_grid();
    std::vector<double> init(grid.size());
    for (std::size_t i = 0; i < init.size(); ++i) init[i] = std::exp(-grid[i]);
    MinimizerOptions mo;
    mo.tolerance = cfg.tol_quad;
    mo.max_iter = cfg.max_iter;
    const auto res = minimize_tf_functional(grid, DensityProfile::make(grid, init, 0.0, std::nullopt), mo);
    for (const auto& d : res.diagnostics) log << "warning [tf-energy]: " << d << "\n";
    const auto ref = tf_density_profile(sol, grid);
    if (cfg.format == "json") {
        json j;
        j["mu"] = res.mu;
        j["energy"] = res.energy;
        j["iterations"] = res.iterations;
        j["converged"] = res.converged;
        j["gradient_norm"] = res.gradient_norm;
        j["R"] = std::vector<double>(grid.nodes().begin(), grid.nodes().end());
        j["rho"] = res.density.values;
        j["rho_tf"] = ref.values;
        return j.dump(2) + "\n";
    }
    std::string s = "# mu=" + g17(res.mu) + " energy=" + g17(res.energy) +
                    " iterations=" + std::to_string(res.iterations) +
                    " converged=" + (res.converged ? "true" : "false") + "\nR,rho,rho_tf\n";
    for (std::size_t i = 0; i < grid.size(); ++i) {
        s += g17(grid[i]) + "," + g17(res.density.values[i]) + "," + g17(ref.values[i]) + "\n";
    }
    return s;
}

// ---- spectrum -------------------------------------------------------------

std::string levels_csv(const std::vector<EigenLevel>& levels) {
    std::string s = "ell,n_r,energy,degeneracy\n";
    for (const auto& l : levels) {
        s += std::to_string(l.ell) + "," + std::to_string(l.n_r) + "," + g17(l.energy) + "," +
             std::to_string(l.degeneracy) + "\n";
    }
    return s;
}

std::vector<EigenLevel> parse_levels(const std::string& csv) {
    std::istringstream in(csv);
    std::string line;
    std::getline(in, line);
    if (line != "ell,n_r,energy,degeneracy") throw CacheError("spectrum cache entry has an unexpected header");
    std::vector<EigenLevel> out;
    while (std::getline(in, line)) {
        EigenLevel l;
        char e[64];
        if (std::sscanf(line.c_str(), "%d,%d,%63[^,],%d", &l.ell, &l.n_r, e, &l.degeneracy) != 4) {
            throw CacheError("spectrum cache entry has a malformed row");
        }
        l.energy = std::strtod(e, nullptr);
        out.push_back(l);
    }
    return out;
}

std::string spectrum_output(const RunConfig& cfg, const TfSolution& sol, const ResultCache& cache,
                            std::ostream& log) {
    const auto V = tf_potential(sol, cfg.Z);
    auto so = spectrum_options(cfg);
    so.keep_orbitals = false;
    const auto grid = spectrum_grid(V, so);
    const auto key = cache_key(spectrum_key_parts(cfg, so, V.tag, cfg.Z, grid));
    std::vector<EigenLevel> levels;
    if (auto body = cache.load(key)) {
        levels = parse_levels(*body);
    } else {
        levels = full_spectrum(V, so).levels;
        cache.store(key, levels_csv(levels));
    }
    long long n = 0;
    double sum = 0.0;
    int ell_max = -1;
    for (const auto& l : levels) {
        n += l.degeneracy;
        sum += l.degeneracy * l.energy;
        ell_max = std::max(ell_max, l.ell);
    }
    log << "Z=" << cfg.Z << " levels=" << levels.size() << " n_negative=" << n << " ell_max=" << ell_max
        << " eigensum=" << g17(sum) << "\n";
    if (cfg.format == "json") {
        json j;
        j["Z"] = cfg.Z;
        j["potential_tag"] = V.tag;
        j["n_negative"] = n;
        j["eigensum"] = sum;
        j["ell_max"] = ell_max;
        json lv = json::array();
        for (const auto& l : levels) {
            lv.push_back({{"ell", l.ell}, {"n_r", l.n_r}, {"energy", l.energy}, {"degeneracy", l.degeneracy}});
        }
        j["levels"] = lv;
        return j.dump(2) + "\n";
    }
    return levels_csv(levels);
}

// ---- bounds ---------------------------------------------------------------

struct RowRecord {
    int Z = 0;
    double upper_total = 0, lower_total = 0, upper_scaled = 0, lower_scaled = 0, gap = 0;
    double correction_scaled = 0, occupied_deficit = 0;
    double upper_eigensum = 0, f_z_bound = 0, lower_eigensum = 0, hartree_sub = 0, correction = 0;
    double tail_charge = 0, rho_sq_scaled = 0;
    long long upper_n_negative = 0, lower_n_negative = 0;
    std::vector<std::string> diagnostics;
};

RowRecord to_record(const BoundsRow& r) {
    const double z73 = std::pow(static_cast<double>(r.Z), 7.0 / 3.0);
    RowRecord x;
    x.Z = r.Z;
    x.upper_total = r.upper.total;
    x.lower_total = r.lower.total;
    x.upper_scaled = r.upper.scaled;
    x.lower_scaled = r.lower.scaled;
    x.gap = r.gap;
    x.correction_scaled = r.lower.correction / z73;
    x.occupied_deficit = r.upper.occupied_deficit;
    x.upper_eigensum = r.upper.eigensum_part;
    x.f_z_bound = r.upper.f_z_bound;
    x.lower_eigensum = r.lower.eigensum_part;
    x.hartree_sub = r.lower.hartree_sub;
    x.correction = r.lower.correction;
    x.tail_charge = r.lower.tail_charge;
    x.rho_sq_scaled = r.lower.rho_sq_scaled;
    x.upper_n_negative = r.upper.n_negative;
    x.lower_n_negative = r.lower.n_negative;
    for (const auto& d : r.upper.diagnostics) x.diagnostics.push_back("upper: " + d);
    for (const auto& d : r.lower.diagnostics) x.diagnostics.push_back("lower: " + d);
    return x;
}

json record_json(const RowRecord& r) {
    return {{"Z", r.Z},
            {"upper_total", num(r.upper_total)},
            {"lower_total", num(r.lower_total)},
            {"upper_scaled", num(r.upper_scaled)},
            {"lower_scaled", num(r.lower_scaled)},
            {"gap", num(r.gap)},
            {"correction_scaled", num(r.correction_scaled)},
            {"occupied_deficit", num(r.occupied_deficit)},
            {"upper_eigensum", num(r.upper_eigensum)},
            {"f_z_bound", num(r.f_z_bound)},
            {"lower_eigensum", num(r.lower_eigensum)},
            {"hartree_sub", num(r.hartree_sub)},
            {"correction", num(r.correction)},
            {"tail_charge", num(r.tail_charge)},
            {"rho_sq_scaled", num(r.rho_sq_scaled)},
            {"upper_n_negative", r.upper_n_negative},
            {"lower_n_negative", r.lower_n_negative},
            {"diagnostics", r.diagnostics}};
}

RowRecord record_from_json(const json& j) {
    RowRecord r;
    auto d = [&](const char* k) { return j.at(k).is_null() ? NAN : j.at(k).get<double>(); };
    r.Z = j.at("Z").get<int>();
    r.upper_total = d("upper_total");
    r.lower_total = d("lower_total");
    r.upper_scaled = d("upper_scaled");
    r.lower_scaled = d("lower_scaled");
    r.gap = d("gap");
    r.correction_scaled = d("correction_scaled");
    r.occupied_deficit = d("occupied_deficit");
    r.upper_eigensum = d("upper_eigensum");
    r.f_z_bound = d("f_z_bound");
    r.lower_eigensum = d("lower_eigensum");
    r.hartree_sub = d("hartree_sub");
    r.correction = d("correction");
    r.tail_charge = d("tail_charge");
    r.rho_sq_scaled = d("rho_sq_scaled");
    r.upper_n_negative = j.at("upper_n_negative").get<long long>();
    r.lower_n_negative = j.at("lower_n_negative").get<long long>();
    r.diagnostics = j.at("diagnostics").get<std::vector<std::string>>();
    return r;
}

const char* kRowHeader = "Z,upper_total,lower_total,upper_scaled,lower_scaled,gap,correction_scaled,occupied_deficit\n";

std::string record_csv(const RowRecord& r) {
    return std::to_string(r.Z) + "," + g17(r.upper_total) + "," + g17(r.lower_total) + "," + g17(r.upper_scaled) + "," +
           g17(r.lower_scaled) + "," + g17(r.gap) + "," + g17(r.correction_scaled) + "," + g17(r.occupied_deficit) +
           "\n";
}

RowRecord bounds_record(int Z, const RunConfig& cfg, const TfSolution& sol, const ResultCache& cache,
                        std::ostream& log) {
    BoundsOptions bo;
    bo.spectrum = spectrum_options(cfg);
    const auto key = cache_key({"bounds-row", std::to_string(Z), g17(cfg.alpha), g17(cfg.r_min), g17(cfg.r_max),
                                std::to_string(cfg.grid_nodes), g17(cfg.tol_eigen), g17(cfg.tol_ode),
                                bo.tf_grid.signature(), g17(bo.spectrum.energy_ceiling)});
    RowRecord rec;
    bool hit = false;
    if (auto body = cache.load(key)) {
        try {
            rec = record_from_json(json::parse(*body));
            hit = true;
        } catch (const json::exception&) {
            throw CacheError("bounds cache entry for Z=" + std::to_string(Z) + " is unreadable; rerun");
        }
    }
    if (!hit) {
        rec = to_record(bounds_row(Z, cfg.alpha, sol, bo));
        cache.store(key, record_json(rec).dump() + "\n");
    }
    for (const auto& d : rec.diagnostics) log << "note [bounds] Z=" << Z << " " << d << "\n";
    if (rec.gap < 0.0) log << "warning [bounds] Z=" << Z << ": lower bound exceeds upper bound\n";
    return rec;
}

std::string bounds_output(const RunConfig& cfg, const TfSolution& sol, const ResultCache& cache, std::ostream& log) {
    const auto rec = bounds_record(cfg.Z, cfg, sol, cache, log);
    if (cfg.format == "json") return record_json(rec).dump(2) + "\n";
    return std::string(kRowHeader) + record_csv(rec);
}

// ---- converge -------------------------------------------------------------

void converge_output(const RunConfig& cfg, const TfSolution& sol, const ResultCache& cache, std::ostream& log) {
    std::vector<RowRecord> rows;
    std::vector<double> x, yu, yl;
    for (int Z : cfg.z_list) {
        rows.push_back(bounds_record(Z, cfg, sol, cache, log));
        x.push_back(1.0 / std::cbrt(static_cast<double>(Z)));
        yu.push_back(rows.back().upper_scaled);
        yl.push_back(rows.back().lower_scaled);
    }
    const auto fu = fit_line(x, yu);
    const auto fl = fit_line(x, yl);

    std::string stem = cfg.out.empty() ? "converge" : cfg.out;
    for (const char* ext : {".csv", ".json"}) {
        const std::string e(ext);
        if (stem.size() > e.size() && stem.compare(stem.size() - e.size(), e.size(), e) == 0) {
            stem.resize(stem.size() - e.size());
        }
    }
    if (cfg.format == "json") {
        json arr = json::array();
        for (const auto& r : rows) arr.push_back(record_json(r));
        emit(stem + ".json", arr.dump(2) + "\n");
    } else {
        std::string csv = kRowHeader;
        for (const auto& r : rows) csv += record_csv(r);
        emit(stem + ".csv", csv);
    }
    json fit = {{"upper_intercept", opt_num(fu.intercept)},
                {"lower_intercept", opt_num(fl.intercept)},
                {"upper_slope", opt_num(fu.slope)},
                {"lower_slope", opt_num(fl.slope)},
                {"residuals", {{"upper", fu.residuals}, {"lower", fl.residuals}}},
                {"alpha", cfg.alpha},
                {"z_list", cfg.z_list}};
    emit(stem + ".fit.json", fit.dump(2) + "\n");
    for (const auto& [name, ys] : {std::pair{"upper", yu}, std::pair{"lower", yl}}) {
        std::string dat = std::string("# Z^{-1/3} ") + name + "_scaled\n";
        for (std::size_t i = 0; i < x.size(); ++i) dat += g17(x[i]) + " " + g17(ys[i]) + "\n";
        emit(stem + "." + name + ".dat", dat);
    }
    log << "wrote " << stem << (cfg.format == "json" ? ".json" : ".csv") << ", " << stem << ".fit.json, " << stem
        << ".upper.dat, " << stem << ".lower.dat\n";
}

}  // namespace

int run_subcommand(const std::string& name, const RunConfig& cfg, std::ostream& log) {
    try {
        validate(cfg);
        static const char* names[] = {"tf-solve", "energy", "minimize", "spectrum", "bounds", "converge"};
        if (std::find(std::begin(names), std::end(names), name) == std::end(names)) {
            throw ConfigError("unknown subcommand " + name);
        }
        const ResultCache cache(cfg.cache_dir);
        const auto sol = load_tf(cfg, cache);
        if (name == "tf-solve") {
            emit(cfg.out, tf_solve_output(cfg, sol));
        } else if (name == "energy") {
            emit(cfg.out, energy_output(cfg, sol, log));
        } else if (name == "minimize") {
            emit(cfg.out, minimize_output(cfg, sol, log));
        } else if (name == "spectrum") {
            emit(cfg.out, spectrum_output(cfg, sol, cache, log));
        } else if (name == "bounds") {
            emit(cfg.out, bounds_output(cfg, sol, cache, log));
        } else {
            converge_output(cfg, sol, cache, log);
        }
        return kExitOk;
    } catch (const ConfigError& e) {
        log << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const CacheError& e) {
        log << "cache error: " << e.what() << "\n";
        return kExitCache;
    } catch (const NumericalError& e) {
        log << "numerical failure [" << e.module() << "]: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const std::exception& e) {
        log << "numerical failure: " << e.what() << "\n";
        return kExitNumerical;
    }
}

}  // namespace tfbound
