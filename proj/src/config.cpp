#include "tfbound/config.hpp"

#include "tfbound/errors.hpp"

#include <algorithm>
#include <fstream>
#include <json.hpp>
#include <sstream>

namespace tfbound {

using nlohmann::json;

void validate(const RunConfig& c) {
    auto fail = [](const std::string& m) { throw ConfigError(m); };
    if (!(c.r_min > 0.0)) fail("r_min must be positive");
    if (!(c.r_max > c.r_min)) fail("r_max must exceed r_min");
    if (c.grid_nodes < 16) fail("grid_nodes must be at least 16");
    if (!(c.tol_ode > 0.0)) fail("tol_ode must be positive");
    if (!(c.tol_eigen > 0.0)) fail("tol_eigen must be positive");
    if (!(c.tol_quad > 0.0)) fail("tol_quad must be positive");
    if (!(c.alpha > 0.0)) fail("alpha must be positive");
    if (c.Z < 1) fail("Z must be at least 1");
    if (c.z_list.empty()) fail("z_list is empty");
    for (std::size_t i = 0; i < c.z_list.size(); ++i) {
        if (c.z_list[i] < 1) fail("z_list entries must be at least 1");
        if (i > 0 && c.z_list[i] <= c.z_list[i - 1]) fail("z_list must be strictly ascending");
    }
    if (c.format != "csv" && c.format != "json") fail("format must be csv or json");
    if (c.workers < 1) fail("workers must be at least 1");
    if (c.max_iter < 1) fail("max_iter must be at least 1");
}

std::string to_json_text(const RunConfig& c) {
    json j = {{"r_min", c.r_min},         {"r_max", c.r_max},     {"grid_nodes", c.grid_nodes},
              {"tol_ode", c.tol_ode},     {"tol_eigen", c.tol_eigen}, {"tol_quad", c.tol_quad},
              {"alpha", c.alpha},         {"Z", c.Z},             {"z_list", c.z_list},
              {"cache_dir", c.cache_dir}, {"format", c.format},   {"out", c.out},
              {"workers", c.workers},     {"max_iter", c.max_iter}};
    return j.dump(2);
}

RunConfig from_json_text(const std::string& text, RunConfig c) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw ConfigError("config must be a JSON object");
    static const char* known[] = {"r_min", "r_max",  "grid_nodes", "tol_ode", "tol_eigen",
                                  "tol_quad", "alpha", "Z", "z_list", "cache_dir",
                                  "format", "out", "workers", "max_iter"};
    for (const auto& [k, v] : j.items()) {
        if (std::find(std::begin(known), std::end(known), k) == std::end(known)) {
            throw ConfigError("unknown config key: " + k);
        }
    }
    try {
        auto get = [&](const char* key, auto& field) {
            if (j.contains(key)) j.at(key).get_to(field);
        };
        get("r_min", c.r_min);
        get("r_max", c.r_max);
        get("grid_nodes", c.grid_nodes);
        get("tol_ode", c.tol_ode);
        get("tol_eigen", c.tol_eigen);
        get("tol_quad", c.tol_quad);
        get("alpha", c.alpha);
        get("Z", c.Z);
        get("z_list", c.z_list);
        get("cache_dir", c.cache_dir);
        get("format", c.format);
        get("out", c.out);
        get("workers", c.workers);
        get("max_iter", c.max_iter);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("bad config value: ") + e.what());
    }
    return c;
}

RunConfig load_config_file(const std::string& path, RunConfig base) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return from_json_text(ss.str(), std::move(base));
}

}  // namespace tfbound
