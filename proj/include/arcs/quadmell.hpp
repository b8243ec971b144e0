#pragma once

#include "arcs/errors.hpp"
#include "arcs/ival.hpp"
#include "arcs/weights.hpp"

#include <complex>

namespace arcs::quadmell {

// Oracle-grade (not certified) quadrature results. The true value is
// value * exp(log_scale); log_scale is 0 whenever the value is representable,
// and carries the explicit exponential factor of the deformed-contour routes
// otherwise. err_estimate is absolute, on the scale of value.
struct QuadResult {
    std::complex<double> value{0.0, 0.0};
    double log_scale = 0.0;
    double err_estimate = 0.0;
    long evaluations = 0;

    double abs() const { return std::abs(value); }
    double log_abs() const {
        double a = std::abs(value);
        if (a == 0.0) return -std::numeric_limits<double>::infinity();
        return std::log(a) + log_scale;
    }
    // fold the scale into the value when representable
    QuadResult reduced() const {
        QuadResult r = *this;
        if (r.log_scale != 0.0 && std::fabs(r.log_scale) < 600.0) {
            double f = std::exp(r.log_scale);
            r.value *= f;
            r.err_estimate *= f;
            r.log_scale = 0.0;
        }
        return r;
    }
};

// Mellin transform of w(t) e(delta t) at s. Strip of holomorphy: Re s > 0 for
// the Gaussian, > -2 for t^2 Gaussian, > -1 for eta_plus.
QuadResult mellin_twisted(const weights::Weight& w, double delta, std::complex<double> s);

// int_0^inf w(t) e(delta t) dt  (the transform at s = 1)
QuadResult main_term(const weights::Weight& w, double delta);

// int_0^inf w(t)^2 dt, or with (log t)^2 under the integral
QuadResult l2_cross_check(const weights::Weight& w, bool with_log);

// int_0^2 eta_circ(t)^2 log(x t) dt = A log x + B
struct LogSplit {
    QuadResult A, B;
};
LogSplit eta2sq_logx_integral();
QuadResult eta2sq_logx_value(double x);

// Mh(s) for the band-limit machinery checks (s on or near the imaginary axis)
QuadResult mellin_h(std::complex<double> s);

} // namespace arcs::quadmell
