#pragma once

#include "tfbound/errors.hpp"

#include <cmath>
#include <string>
#include <utility>

namespace tfbound {

/// Brent's method on [lo, hi]. Every iterate stays inside the bracket; the
/// result satisfies |g(x)| <= f_tol or lies in a sub-bracket narrower than tol.
template <class G>
double find_root_bracketed(G&& g, double lo, double hi, double tol, double f_tol = 0.0,
                           int max_iter = 500) {
    double a = lo, b = hi;
    double fa = g(a), fb = g(b);
    if (fa == 0.0) return a;
    if (fb == 0.0) return b;
    if (!(fa * fb < 0.0)) {
        throw BracketError("no sign change on [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
    }
    double c = a, fc = fa, d = b - a, e = d;
    for (int iter = 0; iter < max_iter; ++iter) {
        if (fb * fc > 0.0) {
            c = a;
            fc = fa;
            d = e = b - a;
        }
        if (std::abs(fc) < std::abs(fb)) {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        const double tol1 = 2.0 * 1e-16 * std::abs(b) + 0.5 * tol;
        const double m = 0.5 * (c - b);
        if (std::abs(m) <= tol1 || fb == 0.0 || std::abs(fb) <= f_tol) return b;
        if (std::abs(e) >= tol1 && std::abs(fa) > std::abs(fb)) {
            double p, q, r;
            const double s = fb / fa;
            if (a == c) {
                p = 2.0 * m * s;
                q = 1.0 - s;
            } else {
                q = fa / fc;
                r = fb / fc;
                p = s * (2.0 * m * q * (q - r) - (b - a) * (r - 1.0));
                q = (q - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if (p > 0.0) q = -q;
            p = std::abs(p);
            if (2.0 * p < std::min(3.0 * m * q - std::abs(tol1 * q), std::abs(e * q))) {
                e = d;
                d = p / q;
            } else {
                d = m;
                e = d;
            }
        } else {
            d = m;
            e = d;
        }
        a = b;
        fa = fb;
        b += std::abs(d) > tol1 ? d : (m > 0 ? tol1 : -tol1);
        fb = g(b);
    }
    return b;
}

}  // namespace tfbound
