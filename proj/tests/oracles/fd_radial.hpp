#pragma once

// Matrix reference for radial bound states.
//
// With x = ln r and w = u / sqrt(r) the radial equation reads
//   -w'' + [(l + 1/2)^2 + 2 r^2 V] w = E 2 r^2 w.
// Second-order differences on a uniform x mesh with w = 0 at both ends turn
// this into a symmetric generalized problem; scaling by (2 r^2)^{-1/2} gives
// an ordinary symmetric tridiagonal matrix, diagonalized with Eigen.

#include <Eigen/Dense>

#include <cmath>
#include <functional>
#include <vector>

namespace oracle {

/// Lowest `count` eigenvalues for `intervals` mesh intervals on [r_min, r_max].
inline std::vector<double> fd_levels(const std::function<double(double)>& V, int ell, double r_min, double r_max,
                                     int intervals, int count) {
    const double x0 = std::log(r_min), x1 = std::log(r_max);
    const double h = (x1 - x0) / intervals;
    const int n = intervals - 1;
    Eigen::VectorXd diag(n), sub(n - 1);
    const double kappa = (ell + 0.5) * (ell + 0.5);
    std::vector<double> r(n);
    for (int i = 0; i < n; ++i) r[i] = std::exp(x0 + (i + 1) * h);
    for (int i = 0; i < n; ++i) {
        const double mass = 2.0 * r[i] * r[i];
        diag[i] = (2.0 / (h * h) + kappa + mass * V(r[i])) / mass;
        if (i + 1 < n) sub[i] = -1.0 / (h * h) / std::sqrt(mass * 2.0 * r[i + 1] * r[i + 1]);
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
    es.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
    std::vector<double> out;
    for (int i = 0; i < count && i < n; ++i) out.push_back(es.eigenvalues()[i]);
    return out;
}

/// Richardson combination of meshes with N and 2N intervals (error O(h^2) removed).
inline std::vector<double> fd_levels_extrapolated(const std::function<double(double)>& V, int ell, double r_min,
                                                  double r_max, int intervals, int count) {
    const auto coarse = fd_levels(V, ell, r_min, r_max, intervals, count);
    const auto fine = fd_levels(V, ell, r_min, r_max, 2 * intervals, count);
    std::vector<double> out(coarse.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = (4.0 * fine[i] - coarse[i]) / 3.0;
    return out;
}

}  // namespace oracle
