#include "arcs/quadmell.hpp"

#include "arcs/saddle.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

namespace arcs::quadmell {

using ival::cdd;
using ival::dd;
using std::complex;
using weights::Kind;
using weights::Weight;

namespace {

constexpr double PI = 3.14159265358979323846;

constexpr double GL8_X[8] = {-0.9602898564975362316836, -0.7966664774136267395916,
                             -0.5255324099163289858177, -0.1834346424956498049395,
                             0.1834346424956498049395,  0.5255324099163289858177,
                             0.7966664774136267395916,  0.9602898564975362316836};
constexpr double GL8_W[8] = {0.1012285362903762591525, 0.2223810344533744705444,
                             0.3137066458778872873380, 0.3626837833783619829652,
                             0.3626837833783619829652, 0.3137066458778872873380,
                             0.2223810344533744705444, 0.1012285362903762591525};

struct Accum {
    cdd sum;
    dd mass;
    long evals = 0;
    void add(complex<double> v, double w) {
        sum += cdd(v * w);
        mass += std::abs(v) * std::fabs(w);
        ++evals;
    }
    complex<double> total() const { return sum.to_complex(); }
};

// panel sweep with width tied to the local phase derivative; width_scale > 1
// gives the coarse pass used for error estimation
template <class F, class Freq>
complex<double> sweep(Accum& acc, double a, double b, const F& f, const Freq& freq,
                      double max_w, double width_scale) {
    if (b <= a) return {0.0, 0.0};
    double u = a;
    while (u < b) {
        double w = width_scale * std::min(max_w, PI / (4.0 * (freq(u) + 1.0)));
        w = std::min(w, b - u);
        double mid = u + 0.5 * w, rad = 0.5 * w;
        for (int q = 0; q < 8; ++q) acc.add(f(mid + rad * GL8_X[q]), rad * GL8_W[q]);
        u += w;
    }
    return acc.total();
}

template <class F, class Freq>
void integrate_with_error(Accum& acc, double& errout, double a, double b, const F& f,
                          const Freq& freq, double max_w = 0.3) {
    Accum coarse;
    sweep(coarse, a, b, f, freq, max_w, 1.7);
    complex<double> before = acc.total();
    sweep(acc, a, b, f, freq, max_w, 1.0);
    complex<double> fine = acc.total() - before;
    errout += std::abs(fine - coarse.total()) * 0.25 + coarse.mass.to_double() * 1e-15;
}

complex<double> cexp(complex<double> z) { return std::exp(z); }

// value = val * exp(lg)
struct Scaled {
    complex<double> val{0.0, 0.0};
    double lg = 0.0;
};

// int_0^A W e^{z1 t^2 + z2 t} t^{s+shift-1} dt along the straight segment to
// the complex point A: sum_m c_m A^{s+shift+m} / (s+shift+m)
Scaled series_head(complex<double> s, int shift, complex<double> z1, complex<double> z2,
                   complex<double> A, double* relerr) {
    constexpr int M = 150;
    static thread_local std::vector<complex<double>> c;
    c.assign(M + 1, {0.0, 0.0});
    complex<double> z1p = 1.0;
    for (int j = 0; 2 * j <= M; ++j) {
        complex<double> z2p = 1.0;
        for (int k = 0; 2 * j + k <= M; ++k) {
            c[2 * j + k] += z1p * z2p;
            z2p *= z2 / (double)(k + 1);
        }
        z1p *= z1 / (double)(j + 1);
    }
    complex<double> se = s + (double)shift;
    complex<double> S = 0.0;
    complex<double> Ap = 1.0;
    double last = 0.0;
    for (int m = 0; m <= M; ++m) {
        S += c[m] * Ap / (se + (double)m);
        last = std::abs(c[m]) * std::abs(Ap);
        Ap *= A;
        if (m > 8 && last < 1e-22 * (1.0 + std::abs(S))) break;
    }
    *relerr += last * 4.0;
    complex<double> w = se * std::log(A);
    return {S * cexp(complex<double>(0.0, w.imag())), w.real()};
}

double weight_extra_freq(const Weight& w) {
    return w.kind == Kind::EtaPlus ? w.H : 0.0;
}

// ---------------------------------------------------------------------------
// direct route on the real axis, u = log t
// ---------------------------------------------------------------------------

QuadResult direct_route(const Weight& w, double delta, complex<double> s) {
    double sigma = s.real(), tau = s.imag();
    double tpd = 2.0 * PI * delta;
    int shift = w.kind == Kind::T2Gaussian ? 2 : 0;
    bool series_ok = (w.kind == Kind::GaussianHeart || w.kind == Kind::T2Gaussian);

    double err = 0.0;
    double t0;
    if (series_ok) {
        t0 = std::min(0.5, 1.0 / (1.0 + std::fabs(tpd)));
    } else {
        double p = sigma + 2.0; // eta_plus integrand mass ~ t^{sigma+1} dt
        t0 = std::max(std::pow(1e-21, 1.0 / std::max(0.5, p)), 1e-14);
        err += 4.0 * std::pow(t0, std::max(0.5, p));
    }

    complex<double> head = 0.0;
    if (series_ok) {
        Scaled h = series_head(s, shift, complex<double>(-0.5, 0.0),
                               complex<double>(0.0, tpd), complex<double>(t0, 0.0), &err);
        head = h.val * std::exp(h.lg);
    }

    double umax = std::log(w.support_cutoff() + 1.0);
    auto f = [&](double u) -> complex<double> {
        double t = std::exp(u);
        double mag = w.eval_d(t) * std::exp(sigma * u);
        double phase = tau * u + tpd * t;
        return {mag * std::cos(phase), mag * std::sin(phase)};
    };
    double extra = weight_extra_freq(w);
    auto freq = [&](double u) {
        return std::fabs(tau) + std::fabs(tpd) * std::exp(u) + extra;
    };

    Accum acc;
    integrate_with_error(acc, err, std::log(t0), umax, f, freq);

    QuadResult out;
    out.value = head + acc.total();
    out.evaluations = acc.evals;
    double tail = std::exp(-0.5 * std::exp(2.0 * umax) + (sigma + shift) * umax) * 4.0;
    out.err_estimate = err + tail;
    return out;
}

// ---------------------------------------------------------------------------
// rotated ray for sgn(delta) = sgn(tau) or delta = 0 (Gaussian integrand;
// callers shift T2 to the Gaussian first):
//   F = e^{i s theta} int_0^inf exp(-e^{2i theta} v^2/2 + 2 pi i delta e^{i theta} v)
//       v^{s-1} dv
// ---------------------------------------------------------------------------

QuadResult rotated_route(double delta, complex<double> s) {
    double sigma = s.real(), tau = s.imag();
    int sgn = tau >= 0 ? 1 : -1;
    double alpha = 0.5 * std::asin(std::min(1.0, 2.0 / std::fabs(tau)));
    double theta = sgn * (PI / 4.0 - alpha);
    complex<double> eith(std::cos(theta), std::sin(theta));
    complex<double> z1 = -0.5 * eith * eith;
    complex<double> z2 = complex<double>(0.0, 2.0 * PI * delta) * eith;

    double err = 0.0;
    double t0 = std::min(0.5, 1.0 / (1.0 + std::abs(z2)));
    Scaled head = series_head(s, 0, z1, z2, complex<double>(t0, 0.0), &err);

    double s2a = std::sin(2.0 * alpha);
    double dterm = 2.0 * PI * delta * std::sin(theta); // >= 0 here
    double vcut = std::sqrt(2.0 * 60.0 / std::max(s2a, 1e-12));
    if (dterm > 0) vcut = std::min(vcut, 60.0 / dterm + 10.0);
    vcut = std::max(vcut, 10.0);
    auto f = [&](double u) -> complex<double> {
        double v = std::exp(u);
        return cexp(z1 * v * v + z2 * v + complex<double>(sigma, tau) * u);
    };
    auto freq = [&](double u) {
        double v = std::exp(u);
        return std::fabs(tau) + v * v + std::fabs(2.0 * PI * delta) * v;
    };
    Accum acc;
    integrate_with_error(acc, err, std::log(t0), std::log(vcut), f, freq);

    QuadResult out;
    out.value = (head.val * std::exp(head.lg) + acc.total()) *
                cexp(complex<double>(0.0, sigma * theta));
    out.log_scale = -theta * tau;
    out.evaluations = acc.evals;
    out.err_estimate = err + std::exp(-0.5 * s2a * vcut * vcut - dterm * vcut +
                                      sigma * std::log(vcut)) * 4.0;
    return out.reduced();
}

// ---------------------------------------------------------------------------
// saddle-point contour (Gaussian integrand, canonical tau > 0, ell > 0):
// F = e^{-K} J, K = phi(u0), J accumulated along ray + limacon + real axis
// ---------------------------------------------------------------------------

QuadResult saddle_route_canonical(double ell, complex<double> s) {
    double sigma = s.real(), tau = s.imag();
    complex<double> I(0.0, 1.0);

    complex<double> root = std::sqrt(complex<double>(-ell * ell, 4.0 * tau));
    complex<double> u0 = 0.5 * (complex<double>(0.0, -ell) + root);
    auto phi = [&](complex<double> u) {
        return 0.5 * u * u + I * ell * u - I * tau * std::log(u);
    };
    complex<double> K = phi(u0);

    double rho = 4.0 * tau / (ell * ell);
    double j = std::sqrt(1.0 + rho * rho);
    double ups = std::sqrt(0.5 * (1.0 + j));
    double r_sp = rho / (2.0 * ups * (ups + j));
    double Ups = std::sqrt(1.0 + r_sp * r_sp) - r_sp;
    double sin0 = rho / (2.0 * std::sqrt(ups * (j + 1.0) * (ups + 1.0)));
    double cos0 = std::sqrt(0.5 + 0.5 / ups);
    double c0 = Ups * cos0 + sin0;
    double c1 = Ups * std::sqrt(2.0 * (1.0 + 1.0 / ups) * (j + 1.0) * (ups + 1.0) / ups) / rho;
    double r_minus = ell * (c0 - 1.0 / std::sqrt(2.0)) / c1;
    double r_max = c0 * ell / c1;

    double err = 0.0;
    Accum acc;

    // C1 head: straight segment from 0 to t0 e^{i pi/4}; its contribution to
    // J is the head value times e^{K}
    complex<double> ray = cexp(complex<double>(0.0, PI / 4.0));
    double t0 = std::min({0.5, 1.0 / (1.0 + ell), r_minus});
    {
        double head_err = 0.0;
        Scaled head = series_head(s, 0, -0.5 * ray * ray, -I * ell * ray, t0 * ray, &head_err);
        double ex = head.lg + K.real();
        if (ex > -700.0) {
            complex<double> contrib =
                head.val * std::exp(ex) * cexp(complex<double>(0.0, K.imag()));
            acc.add(contrib, 1.0);
            err += head_err * std::exp(ex);
        }
    }

    // mantissa integrand e^{-(phi(u)-K)} u^{sigma-1} du along a segment
    auto make_f = [&](auto param) {
        return [&, param](double x) -> complex<double> {
            auto [u, du] = param(x);
            return cexp(-(phi(u) - K) + (sigma - 1.0) * std::log(u)) * du;
        };
    };

    // C1 quadrature from t0 to r_minus along the ray, u = t0 e^{v} direction
    if (r_minus > t0) {
        auto param = [&](double v) {
            double t = std::exp(v);
            return std::pair{t * ray, t * ray}; // du/dv = t ray
        };
        auto freq = [&](double v) {
            double t = std::exp(v);
            return tau + t * t + ell * t;
        };
        integrate_with_error(acc, err, std::log(t0), std::log(r_minus), make_f(param), freq,
                             0.5);
    }

    // C2: limacon, parameter r
    {
        auto y_of = [&](double r) { return (-c1 / ell * r + c0) * r; };
        auto param = [&](double r) {
            double y = y_of(r);
            double x2 = std::max(r * r - y * y, 0.0);
            double x = std::sqrt(x2);
            double yp = -2.0 * c1 * r / ell + c0;
            double xp = x > 1e-300 ? (r - y * yp) / x : 0.0;
            return std::pair{complex<double>(x, y), complex<double>(xp, yp)};
        };
        auto freq = [&](double r) {
            auto [u, up] = param(r);
            complex<double> dphi =
                (u + complex<double>(0.0, ell) - complex<double>(0.0, tau) / u) * up;
            return std::abs(dphi);
        };
        integrate_with_error(acc, err, r_minus, r_max, make_f(param), freq, 0.5);
    }

    // C3: real axis from r_max, u = log x
    {
        double xend = std::sqrt(2.0 * (std::max(K.real(), 0.0) + 60.0 + 4.0 * sigma));
        xend = std::max(xend, r_max * 1.5);
        auto param = [&](double v) {
            double x = std::exp(v);
            return std::pair{complex<double>(x, 0.0), complex<double>(x, 0.0)};
        };
        auto freq = [&](double v) {
            double x = std::exp(v);
            return ell * x + tau;
        };
        integrate_with_error(acc, err, std::log(r_max), std::log(xend), make_f(param), freq,
                             0.5);
        err += std::exp(-0.5 * xend * xend + K.real() + sigma * std::log(xend)) * 4.0;
    }

    QuadResult out;
    out.value = acc.total() * cexp(complex<double>(0.0, -K.imag()));
    out.log_scale = -K.real();
    out.evaluations = acc.evals;
    out.err_estimate = err;
    return out.reduced();
}

// opposite-sign dispatcher with conjugate reduction to tau > 0, delta < 0
QuadResult saddle_route(double delta, complex<double> s) {
    if (s.imag() > 0 && delta < 0) return saddle_route_canonical(-2.0 * PI * delta, s);
    QuadResult r = saddle_route_canonical(2.0 * PI * delta, std::conj(s));
    r.value = std::conj(r.value);
    return r;
}

QuadResult gaussian_like(const Weight& w, double delta, complex<double> s);

// integration-by-parts recurrence to leave the cancellation-prone strip:
// F(s) = (F(s+2) - 2 pi i delta F(s+1)) / s
QuadResult recurrence_step(double delta, complex<double> s) {
    if (std::abs(s) < 1e-12)
        throw PreconditionViolation("mellin_twisted at the pole s = 0");
    Weight g = Weight::gaussian();
    QuadResult a = gaussian_like(g, delta, s + complex<double>(2.0, 0.0)).reduced();
    QuadResult b = gaussian_like(g, delta, s + complex<double>(1.0, 0.0)).reduced();
    complex<double> tpd(0.0, 2.0 * PI * delta);
    QuadResult out;
    out.value = (a.value - tpd * b.value) / s;
    out.err_estimate = (a.err_estimate + std::abs(tpd) * b.err_estimate) / std::abs(s);
    out.evaluations = a.evaluations + b.evaluations;
    return out;
}

QuadResult gaussian_like(const Weight& w, double delta, complex<double> s) {
    double sigma = s.real(), tau = s.imag();
    int shift = w.kind == Kind::T2Gaussian ? 2 : 0;
    if (sigma + shift <= 0.0)
        throw PreconditionViolation("mellin_twisted outside the strip of holomorphy");
    if (sigma + shift < 0.5)
        return recurrence_step(delta, s + complex<double>((double)shift, 0.0));

    bool same_sign = delta == 0.0 || tau == 0.0 || (delta > 0) == (tau > 0);
    double atau = std::fabs(tau);
    if (same_sign) {
        if (atau < 40.0) return direct_route(w, delta, s);
        return rotated_route(delta, s + complex<double>((double)shift, 0.0));
    }
    double ell = 2.0 * PI * std::fabs(delta);
    double rho = 4.0 * atau / (ell * ell);
    double Etau = saddle::E_of(ival::Interval(rho)).mid() * atau;
    if (Etau <= 25.0 && atau < 400.0) return direct_route(w, delta, s);
    return saddle_route(delta, s + complex<double>((double)shift, 0.0));
}

QuadResult star_transform(double delta, complex<double> s) {
    Weight t2 = Weight::t2gaussian();
    cdd sum;
    double err = 0.0;
    long evals = 0;
    for (auto [a, b] : {std::pair{0.25, 0.5}, std::pair{0.5, 1.0}}) {
        int pieces = 4;
        double hseg = (b - a) / pieces;
        for (int i = 0; i < pieces; ++i) {
            double lo = a + i * hseg;
            double mid = lo + 0.5 * hseg, rad = 0.5 * hseg;
            for (int q = 0; q < 8; ++q) {
                double wv = mid + rad * GL8_X[q];
                QuadResult inner = gaussian_like(t2, delta * wv, s).reduced();
                double e2 = wv < 0.5 ? 4.0 * std::log(4.0 * wv) : -4.0 * std::log(wv);
                complex<double> ws = cexp((s - 1.0) * std::log(complex<double>(wv, 0.0)));
                sum += cdd(inner.value * ws * e2 * (rad * GL8_W[q]));
                err += inner.err_estimate * std::abs(ws) * std::fabs(e2) * rad * GL8_W[q];
                evals += inner.evaluations;
            }
        }
    }
    QuadResult out;
    out.value = sum.to_complex();
    out.err_estimate = err + std::abs(out.value) * 1e-11;
    out.evaluations = evals;
    return out;
}

} // namespace

QuadResult mellin_twisted(const Weight& w, double delta, complex<double> s) {
    switch (w.kind) {
        case Kind::GaussianHeart:
        case Kind::T2Gaussian:
            return gaussian_like(w, delta, s);
        case Kind::EtaPlus:
            if (s.real() <= -1.0)
                throw PreconditionViolation("eta_plus transform requires Re s > -1");
            return direct_route(w, delta, s);
        case Kind::StarConv:
            if (s.real() <= -2.0)
                throw PreconditionViolation("eta_star transform requires Re s > -2");
            return star_transform(delta, s);
    }
    throw PreconditionViolation("bad weight kind");
}

QuadResult main_term(const Weight& w, double delta) {
    return mellin_twisted(w, delta, complex<double>(1.0, 0.0));
}

QuadResult l2_cross_check(const Weight& w, bool with_log) {
    double cutoff = w.support_cutoff();
    auto f = [&](double u) -> complex<double> {
        double t = std::exp(u);
        double v = w.eval_d(t);
        double base = v * v * t;
        if (with_log) base *= u * u;
        return {base, 0.0};
    };
    double extra = w.kind == Kind::EtaPlus ? 2.0 * w.H : 1.0;
    auto freq = [&](double) { return extra; };
    double ulo = w.kind == Kind::GaussianHeart ? -40.0 : -20.0;
    Accum acc;
    double err = 0.0;
    integrate_with_error(acc, err, ulo, std::log(cutoff), f, freq, 0.05);
    QuadResult out;
    out.value = acc.total();
    out.evaluations = acc.evals;
    out.err_estimate = err;
    return out;
}

LogSplit eta2sq_logx_integral() {
    auto integral = [&](bool with_log) {
        Accum acc;
        int n = 256;
        double h = 2.0 / n;
        for (int i = 0; i < n; ++i) {
            double mid = (i + 0.5) * h, rad = 0.5 * h;
            for (int q = 0; q < 8; ++q) {
                double t = mid + rad * GL8_X[q];
                double hv = t * t * t * (2.0 - t) * (2.0 - t) * (2.0 - t);
                double v = hv * std::exp(-0.5 * (t - 1.0) * (t - 1.0));
                double base = v * v;
                if (with_log) base *= std::log(t);
                acc.add(complex<double>(base, 0.0), rad * GL8_W[q]);
            }
        }
        QuadResult r;
        r.value = acc.total();
        r.evaluations = acc.evals;
        r.err_estimate = acc.mass.to_double() * 1e-15 + 1e-15;
        return r;
    };
    return {integral(false), integral(true)};
}

QuadResult eta2sq_logx_value(double x) {
    if (x <= 0.0) throw PreconditionViolation("eta2sq_logx_value requires x > 0");
    LogSplit ab = eta2sq_logx_integral();
    QuadResult out;
    out.value = ab.A.value * std::log(x) + ab.B.value;
    out.err_estimate = ab.A.err_estimate * std::fabs(std::log(x)) + ab.B.err_estimate;
    out.evaluations = ab.A.evaluations + ab.B.evaluations;
    return out;
}

QuadResult mellin_h(complex<double> s) {
    double sigma = s.real(), tau = s.imag();
    if (sigma <= -2.0) throw PreconditionViolation("mellin_h requires Re s > -2");
    auto f = [&](double u) -> complex<double> {
        double x = std::exp(u);
        double v = weights::h_fn_d(x, 0);
        double mag = v * std::exp(sigma * u);
        double ph = tau * u;
        return {mag * std::cos(ph), mag * std::sin(ph)};
    };
    auto freq = [&](double) { return std::fabs(tau); };
    // h ~ 8 e^{-1/2} x^2 near 0: mass exponent 2 + sigma
    double p = 2.0 + std::min(sigma, 0.0);
    double ulo = std::min(-12.0, std::log(1e-21) / std::max(p, 0.25));
    Accum acc;
    double err = 1e-18;
    integrate_with_error(acc, err, ulo, std::log(2.0), f, freq, 0.1);
    QuadResult out;
    out.value = acc.total();
    out.evaluations = acc.evals;
    out.err_estimate = err;
    return out;
}

} // namespace arcs::quadmell
