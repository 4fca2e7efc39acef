#pragma once

#include <optional>
#include <vector>

namespace tfbound {

/// Least-squares line y = intercept + slope * x.
struct LinearFit {
    std::optional<double> intercept;  ///< empty when fewer than two distinct abscissas
    std::optional<double> slope;
    std::vector<double> residuals;    ///< y_i - fit(x_i); zeros for a degenerate fit
};

LinearFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace tfbound
