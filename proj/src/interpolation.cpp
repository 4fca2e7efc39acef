#include "tfbound/interpolation.hpp"

#include "tfbound/errors.hpp"

#include <algorithm>
#include <cmath>

namespace tfbound {

HermiteTable::HermiteTable(double t0, double step, std::vector<double> values, std::vector<double> slopes)
    : t0_(t0), step_(step), values_(std::move(values)), slopes_(std::move(slopes)) {
    if (values_.size() < 2 || values_.size() != slopes_.size() || !(step_ > 0.0)) {
        throw DomainError("numerics", "Hermite table needs >= 2 nodes, matching slopes and a positive step");
    }
}

std::size_t HermiteTable::locate(double t, double& s) const {
    const double u = (t - t0_) / step_;
    const double last = static_cast<double>(values_.size() - 1);
    const double uc = std::clamp(u, 0.0, last);
    std::size_t i = static_cast<std::size_t>(std::floor(uc));
    if (i >= values_.size() - 1) i = values_.size() - 2;
    s = uc - static_cast<double>(i);
    return i;
}

double HermiteTable::value(double t) const {
    double s;
    const std::size_t i = locate(t, s);
    const double s2 = s * s, s3 = s2 * s;
    const double h00 = 2 * s3 - 3 * s2 + 1, h10 = s3 - 2 * s2 + s;
    const double h01 = -2 * s3 + 3 * s2, h11 = s3 - s2;
    return h00 * values_[i] + h10 * step_ * slopes_[i] + h01 * values_[i + 1] + h11 * step_ * slopes_[i + 1];
}

double HermiteTable::slope(double t) const {
    double s;
    const std::size_t i = locate(t, s);
    const double s2 = s * s;
    const double d00 = 6 * s2 - 6 * s, d10 = 3 * s2 - 4 * s + 1;
    const double d01 = -6 * s2 + 6 * s, d11 = 3 * s2 - 2 * s;
    return (d00 * values_[i] + d01 * values_[i + 1]) / step_ + d10 * slopes_[i] + d11 * slopes_[i + 1];
}

}  // namespace tfbound
