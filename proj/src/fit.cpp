#include "tfbound/fit.hpp"

#include "tfbound/errors.hpp"

#include <cmath>

namespace tfbound {

LinearFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size()) throw DomainError("bounds", "fit abscissas and ordinates differ in length");
    if (x.empty()) throw DomainError("bounds", "nothing to fit");
    const double n = static_cast<double>(x.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    LinearFit f;
    f.residuals.assign(x.size(), 0.0);
    if (x.size() < 2 || !(sxx > 0.0)) return f;
    const double b = sxy / sxx;
    const double a = my - b * mx;
    f.intercept = a;
    f.slope = b;
    for (std::size_t i = 0; i < x.size(); ++i) f.residuals[i] = y[i] - (a + b * x[i]);
    return f;
}

}  // namespace tfbound
