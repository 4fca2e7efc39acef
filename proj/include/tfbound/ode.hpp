#pragma once

// Adaptive Dormand-Prince 5(4) integration for small fixed-size systems.

#include "tfbound/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

namespace tfbound {

template <std::size_t N>
using OdeState = std::array<double, N>;

template <std::size_t N>
struct Trajectory {
    std::vector<double> t;
    std::vector<OdeState<N>> y;
    bool stopped_early = false;  ///< the stop predicate fired before t_end
    std::size_t steps = 0;
    std::size_t rejected = 0;

    const OdeState<N>& back() const { return y.back(); }
};

struct OdeOptions {
    double tol = 1e-10;        ///< mixed error bound: |err_i| <= tol * max(abs_scale, |y_i|)
    double abs_scale = 1.0;    ///< magnitude below which the bound becomes absolute
    double initial_step = 0.0; ///< 0 picks |t1 - t0| * 1e-3
    std::size_t max_steps = 2'000'000;
};

namespace detail {
struct NeverStop {
    template <class S>
    bool operator()(double, const S&) const { return false; }
};
}  // namespace detail

/// Integrate y' = rhs(t, y) from t0 to t1 (either direction).
///
/// The state is recorded at every abscissa in `outputs` (which must be
/// monotone in the direction of integration and inside [t0, t1]); steps are
/// shortened to land on them exactly. When `outputs` is empty the accepted
/// steps themselves are recorded. Integration ends early once `stop(t, y)`
/// returns true after an accepted step.
template <std::size_t N, class Rhs, class Stop = detail::NeverStop>
Trajectory<N> solve_ivp(Rhs&& rhs, OdeState<N> y0, double t0, double t1, const OdeOptions& opt,
                        std::span<const double> outputs = {}, Stop&& stop = {}) {
    if (!(opt.tol > 0.0)) throw DomainError("numerics", "ODE tolerance must be positive");
    // Dormand-Prince tableau.
    constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
    constexpr double a21 = 1.0 / 5;
    constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
    constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                     a65 = -5103.0 / 18656;
    constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784, b6 = 11.0 / 84;
    constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                     e6 = 22.0 / 525, e7 = -1.0 / 40;

    Trajectory<N> out;
    const double dir = t1 >= t0 ? 1.0 : -1.0;
    const double span_len = std::abs(t1 - t0);
    double h = opt.initial_step > 0.0 ? opt.initial_step : span_len * 1e-3;
    double t = t0;
    OdeState<N> y = y0;
    std::size_t next_out = 0;
    auto record = [&](double tt, const OdeState<N>& yy) {
        out.t.push_back(tt);
        out.y.push_back(yy);
    };
    if (outputs.empty()) record(t, y);
    while (next_out < outputs.size() && dir * (outputs[next_out] - t) <= 0.0) record(outputs[next_out++], y);
    if (span_len == 0.0) return out;

    OdeState<N> k1, k2, k3, k4, k5, k6, k7, tmp, ynew;
    k1 = rhs(t, y);
    const double h_floor = 1e-14 * std::max(1.0, std::abs(t1)) + 1e-300;
    while (dir * (t1 - t) > 0.0) {
        if (out.steps + out.rejected > opt.max_steps) {
            throw IntegrationError("ODE step budget exhausted", t);
        }
        double target = t1;
        if (next_out < outputs.size()) target = outputs[next_out];
        double hstep = std::min(h, std::abs(target - t));
        const bool lands = hstep >= std::abs(target - t);
        const double ht = dir * hstep;

        for (std::size_t i = 0; i < N; ++i) tmp[i] = y[i] + ht * a21 * k1[i];
        k2 = rhs(t + c2 * ht, tmp);
        for (std::size_t i = 0; i < N; ++i) tmp[i] = y[i] + ht * (a31 * k1[i] + a32 * k2[i]);
        k3 = rhs(t + c3 * ht, tmp);
        for (std::size_t i = 0; i < N; ++i) tmp[i] = y[i] + ht * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
        k4 = rhs(t + c4 * ht, tmp);
        for (std::size_t i = 0; i < N; ++i)
            tmp[i] = y[i] + ht * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
        k5 = rhs(t + c5 * ht, tmp);
        for (std::size_t i = 0; i < N; ++i)
            tmp[i] = y[i] + ht * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
        k6 = rhs(t + ht, tmp);
        for (std::size_t i = 0; i < N; ++i)
            ynew[i] = y[i] + ht * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] + b6 * k6[i]);
        const double tnew = lands ? target : t + ht;
        k7 = rhs(tnew, ynew);

        double err = 0.0;
        bool finite = true;
        for (std::size_t i = 0; i < N; ++i) {
            const double ei =
                ht * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
            const double scale = opt.tol * std::max({opt.abs_scale, std::abs(y[i]), std::abs(ynew[i])});
            err = std::max(err, std::abs(ei) / scale);
            finite = finite && std::isfinite(ynew[i]) && std::isfinite(ei);
        }
        if (!finite) err = 1e10;

        if (err <= 1.0) {
            t = tnew;
            y = ynew;
            k1 = k7;
            ++out.steps;
            if (outputs.empty()) {
                record(t, y);
            } else {
                while (next_out < outputs.size() && dir * (outputs[next_out] - t) <= 0.0)
                    record(outputs[next_out++], y);
            }
            if (stop(t, y)) {
                out.stopped_early = dir * (t1 - t) > 0.0;
                return out;
            }
            const double fac = err == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0);
            // A step shortened to land on an output point must not shrink h.
            const double proposed = hstep * fac;
            h = lands ? std::max(h, proposed) : proposed;
        } else {
            ++out.rejected;
            h = hstep * std::clamp(0.9 * std::pow(err, -0.2), 0.1, 0.5);
            if (h < h_floor) throw IntegrationError("ODE step size underflow", t);
        }
    }
    return out;
}

}  // namespace tfbound
