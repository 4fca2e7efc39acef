#pragma once

#include <string>
#include <vector>

namespace tfbound {

struct RunConfig {
    // Spectrum grid, scaled coordinates.
    double r_min = 1e-6;
    double r_max = 1000.0;
    std::size_t grid_nodes = 4000;

    double tol_ode = 1e-12;
    double tol_eigen = 1e-12;
    double tol_quad = 1e-10;  ///< stopping size of the minimizer's descent direction

    double alpha = 1.0;
    int Z = 100;
    std::vector<int> z_list = {100, 400, 1600, 6400};

    std::string cache_dir;     ///< empty disables caching
    std::string format = "csv";
    std::string out;           ///< empty writes to stdout (converge: file stem, default "converge")
    unsigned workers = 1;
    std::size_t max_iter = 500;
};

/// Throws ConfigError naming the first offending field.
void validate(const RunConfig& cfg);

std::string to_json_text(const RunConfig& cfg);

/// Fields absent from `text` keep the values already in `base`.
RunConfig from_json_text(const std::string& text, RunConfig base = {});

RunConfig load_config_file(const std::string& path, RunConfig base = {});

}  // namespace tfbound
