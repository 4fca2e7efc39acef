#pragma once

#include <cstddef>
#include <vector>

namespace tfbound {

/// Piecewise cubic Hermite interpolant on an equispaced variable t.
/// Values and t-derivatives are supplied per node; evaluation outside the
/// table is the caller's responsibility (results are clamped to the ends).
class HermiteTable {
public:
    HermiteTable() = default;
    HermiteTable(double t0, double step, std::vector<double> values, std::vector<double> slopes);

    double t0() const { return t0_; }
    double step() const { return step_; }
    double t_end() const { return t0_ + step_ * static_cast<double>(values_.size() - 1); }
    std::size_t size() const { return values_.size(); }
    bool empty() const { return values_.empty(); }

    double value(double t) const;
    /// dy/dt
    double slope(double t) const;

    const std::vector<double>& values() const { return values_; }
    const std::vector<double>& slopes() const { return slopes_; }

private:
    std::size_t locate(double t, double& s) const;

    double t0_ = 0.0;
    double step_ = 1.0;
    std::vector<double> values_;
    std::vector<double> slopes_;
};

}  // namespace tfbound
