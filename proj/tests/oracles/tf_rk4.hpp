#pragma once

// Reference screening-function slope, computed without the library.
//
// In t = sqrt(x) the equation phi'' = phi^{3/2}/sqrt(x) becomes the regular system
//   d phi / dt = 2 t p,   dp / dt = 2 phi^{3/2},   p = d phi / dx,
// integrated from t = 0 with phi = 1, p = -B by classical RK4 at a fixed step.
// A trial slope is too large when phi crosses zero and too small when p turns
// positive; bisection on that classification gives B(h), and two step sizes
// are combined by Richardson extrapolation.

#include <cmath>
#include <vector>

namespace oracle {

enum class Shot { TooSmall, TooLarge, Undecided };

inline Shot classify_slope(double B, double h, double t_max = 40.0) {
    double t = 0.0, phi = 1.0, p = -B;
    auto f = [](double tt, double ph, double pp, double& dph, double& dp) {
        const double q = ph > 0.0 ? ph : 0.0;
        dph = 2.0 * tt * pp;
        dp = 2.0 * q * std::sqrt(q);
    };
    while (t < t_max) {
        double k1a, k1b, k2a, k2b, k3a, k3b, k4a, k4b;
        f(t, phi, p, k1a, k1b);
        f(t + 0.5 * h, phi + 0.5 * h * k1a, p + 0.5 * h * k1b, k2a, k2b);
        f(t + 0.5 * h, phi + 0.5 * h * k2a, p + 0.5 * h * k2b, k3a, k3b);
        f(t + h, phi + h * k3a, p + h * k3b, k4a, k4b);
        phi += h / 6.0 * (k1a + 2 * k2a + 2 * k3a + k4a);
        p += h / 6.0 * (k1b + 2 * k2b + 2 * k3b + k4b);
        t += h;
        if (phi < 0.0) return Shot::TooLarge;
        if (p > 0.0) return Shot::TooSmall;
    }
    return Shot::Undecided;
}

/// Slope of the discrete separatrix at step h.
inline double slope_at_step(double h, double lo = 1.5, double hi = 1.7) {
    for (int i = 0; i < 60 && hi - lo > 1e-15; ++i) {
        const double mid = 0.5 * (lo + hi);
        switch (classify_slope(mid, h)) {
            case Shot::TooLarge: hi = mid; break;
            case Shot::TooSmall: lo = mid; break;
            case Shot::Undecided: return mid;
        }
    }
    return 0.5 * (lo + hi);
}

/// Fourth-order Richardson combination of steps h and h/2.
inline double tf_slope_richardson(double h = 2e-3) {
    const double coarse = slope_at_step(h);
    const double fine = slope_at_step(0.5 * h);
    return (16.0 * fine - coarse) / 15.0;
}

/// Small-x series phi = sum a_k t^k (t = sqrt(x)) by direct power-series
/// arithmetic: phi^3 by Cauchy products, then its square root term by term.
inline std::vector<double> baker_series(double B, int order) {
    std::vector<double> a(order, 0.0);
    a[0] = 1.0;
    a[2] = -B;
    for (int k = 3; k < order; ++k) {
        // Coefficient k-3 of phi^{3/2} only involves a_0..a_{k-3}.
        const int m = k - 3;
        std::vector<double> sq(m + 1, 0.0), cube(m + 1, 0.0), root(m + 1, 0.0);
        for (int i = 0; i <= m; ++i)
            for (int j = 0; i + j <= m; ++j) sq[i + j] += a[i] * a[j];
        for (int i = 0; i <= m; ++i)
            for (int j = 0; i + j <= m; ++j) cube[i + j] += sq[i] * a[j];
        root[0] = 1.0;
        for (int n = 1; n <= m; ++n) {
            double s = cube[n];
            for (int i = 1; i < n; ++i) s -= root[i] * root[n - i];
            root[n] = s / 2.0;
        }
        // t^2 phi'' in t: (k(k-2)/4) a_k t^{k-2} per term; the equation gives x^{1/2} phi'' = phi^{3/2}.
        a[k] = 4.0 * root[m] / (k * (k - 2.0));
    }
    return a;
}

inline double eval_series(const std::vector<double>& a, double x) {
    const double t = std::sqrt(x);
    double s = 0.0, tk = 1.0;
    for (double c : a) {
        s += c * tk;
        tk *= t;
    }
    return s;
}

}  // namespace oracle
