#include "tfbound/newton.hpp"

#include "tfbound/constants.hpp"
#include "tfbound/errors.hpp"

#include <cmath>

namespace tfbound {

namespace {

// int_a^b 4 pi c s^e ds
double power_integral(double c, double e, double a, double b) {
    if (std::abs(e + 1.0) < 1e-14) return 4.0 * pi * c * std::log(b / a);
    return 4.0 * pi * c * (std::pow(b, e + 1.0) - std::pow(a, e + 1.0)) / (e + 1.0);
}

}  // namespace

NewtonPotential::NewtonPotential(const DensityProfile& rho) : grid_(rho.grid) {
    const std::size_t n = grid_.size();
    const auto r = grid_.nodes();
    if (rho.small_r_exponent) {
        if (!(*rho.small_r_exponent > -2.0)) {
            throw EvaluationError("spectrum", "density head exponent <= -2: divergent inner moment");
        }
        has_head_ = true;
        head_exp_ = *rho.small_r_exponent;
        head_coeff_ = rho.values.front() / std::pow(r[0], head_exp_);
    }
    if (rho.large_r_exponent) {
        if (!(*rho.large_r_exponent < -3.0)) {
            throw EvaluationError("spectrum", "density tail exponent >= -3: infinite charge");
        }
        has_tail_ = true;
        tail_exp_ = *rho.large_r_exponent;
        tail_coeff_ = rho.values.back() / std::pow(r[n - 1], tail_exp_);
    }

    std::vector<double> f2(n), f1(n);
    for (std::size_t i = 0; i < n; ++i) {
        f2[i] = 4.0 * pi * r[i] * r[i] * rho.values[i];
        f1[i] = 4.0 * pi * r[i] * rho.values[i];
    }
    const auto inner = cumulative_line(f2, grid_);
    const auto outer_cum = cumulative_line(f1, grid_);

    const double head_q = has_head_ ? power_integral(head_coeff_, head_exp_ + 2.0, 0.0, r[0]) : 0.0;
    const double tail_q = has_tail_ ? -4.0 * pi * tail_coeff_ * std::pow(r[n - 1], tail_exp_ + 3.0) / (tail_exp_ + 3.0) : 0.0;
    const double tail_o = has_tail_ ? -4.0 * pi * tail_coeff_ * std::pow(r[n - 1], tail_exp_ + 2.0) / (tail_exp_ + 2.0) : 0.0;

    enclosed_.resize(n);
    phi_.resize(n);
    std::vector<double> rphi(n), slope(n);
    const double outer_total = outer_cum.back() + tail_o;
    for (std::size_t i = 0; i < n; ++i) {
        enclosed_[i] = head_q + inner[i];
        const double outer = outer_total - outer_cum[i];
        phi_[i] = enclosed_[i] / r[i] + outer;
        // d(r Phi)/dr = outer; slope in the uniform variable
        rphi[i] = r[i] * phi_[i];
        slope[i] = outer * grid_.jacobian()[i];
    }
    outer_at_min_ = outer_total;
    total_charge_ = enclosed_.back() + tail_q;
    const double t0 = grid_.spacing() == RadialGrid::Spacing::LogUniform ? std::log(r[0]) : r[0];
    table_ = HermiteTable(t0, grid_.step(), std::move(rphi), std::move(slope));
}

double NewtonPotential::enclosed_charge(double r) const {
    if (r <= grid_.r_min()) return has_head_ ? power_integral(head_coeff_, head_exp_ + 2.0, 0.0, r) : 0.0;
    if (r >= grid_.r_max()) {
        if (!has_tail_) return enclosed_.back();
        return total_charge_ + 4.0 * pi * tail_coeff_ * std::pow(r, tail_exp_ + 3.0) / (tail_exp_ + 3.0);
    }
    // r Phi = Q + r * outer and d(r Phi)/dr = outer
    const double t = grid_.spacing() == RadialGrid::Spacing::LogUniform ? std::log(r) : r;
    const double jac = grid_.spacing() == RadialGrid::Spacing::LogUniform ? r : 1.0;
    return table_.value(t) - r * table_.slope(t) / jac;
}

double NewtonPotential::operator()(double r) const {
    if (!(r > 0.0)) throw DomainError("spectrum", "Newton potential needs r > 0");
    if (r < grid_.r_min()) {
        if (!has_head_) return phi_.front();
        const double q = power_integral(head_coeff_, head_exp_ + 2.0, 0.0, r);
        const double outer = outer_at_min_ + power_integral(head_coeff_, head_exp_ + 1.0, r, grid_.r_min());
        return q / r + outer;
    }
    if (r > grid_.r_max()) {
        if (!has_tail_) return total_charge_ / r;
        const double q = total_charge_ + 4.0 * pi * tail_coeff_ * std::pow(r, tail_exp_ + 3.0) / (tail_exp_ + 3.0);
        const double outer = -4.0 * pi * tail_coeff_ * std::pow(r, tail_exp_ + 2.0) / (tail_exp_ + 2.0);
        return q / r + outer;
    }
    const double t = grid_.spacing() == RadialGrid::Spacing::LogUniform ? std::log(r) : r;
    return table_.value(t) / r;
}

}  // namespace tfbound
