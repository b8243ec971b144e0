#include "arcs/weights.hpp"

#include "arcs/vopt.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <vector>

namespace arcs::weights {

using ival::Interval;

std::string kind_name(Kind k) {
    switch (k) {
        case Kind::GaussianHeart: return "gaussian";
        case Kind::T2Gaussian: return "t2gaussian";
        case Kind::StarConv: return "starconv";
        case Kind::EtaPlus: return "etaplus";
    }
    return "?";
}

Kind kind_from_name(const std::string& name) {
    if (name == "gaussian") return Kind::GaussianHeart;
    if (name == "t2gaussian") return Kind::T2Gaussian;
    if (name == "starconv") return Kind::StarConv;
    if (name == "etaplus") return Kind::EtaPlus;
    throw PreconditionViolation("unknown weight: " + name);
}

// ---------------------------------------------------------------------------
// h and the polynomials G_k with h^{(k)} = G_k e^{x-1/2}, G_{k+1} = G_k + G_k'
// ---------------------------------------------------------------------------

namespace {

using Poly = std::vector<double>; // exact integer coefficients, index = power

Poly poly_derive(const Poly& p) {
    Poly d(std::max<size_t>(1, p.size() - 1), 0.0);
    for (size_t i = 1; i < p.size(); ++i) d[i - 1] = p[i] * (double)i;
    return d;
}

Poly poly_add(const Poly& a, const Poly& b) {
    Poly r(std::max(a.size(), b.size()), 0.0);
    for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (size_t i = 0; i < b.size(); ++i) r[i] += b[i];
    return r;
}

const std::array<Poly, 5>& g_polys() {
    static const std::array<Poly, 5> polys = [] {
        std::array<Poly, 5> g;
        g[0] = {0.0, 0.0, 8.0, -12.0, 6.0, -1.0}; // x^2 (2-x)^3
        for (int k = 1; k <= 4; ++k) g[k] = poly_add(g[k - 1], poly_derive(g[k - 1]));
        return g;
    }();
    return polys;
}

Interval poly_eval(const Poly& p, const Interval& x) {
    Interval r(p.back());
    for (size_t i = p.size() - 1; i-- > 0;) r = r * x + Interval(p[i]);
    return r;
}

double poly_eval_d(const Poly& p, double x) {
    double r = p.back();
    for (size_t i = p.size() - 1; i-- > 0;) r = r * x + p[i];
    return r;
}

} // namespace

Interval h_fn(const Interval& x, int deriv) {
    if (deriv < 0 || deriv > 4) throw PreconditionViolation("h_fn derivative order 0..4");
    return poly_eval(g_polys()[deriv], x) * ival::exp(x - Interval(0.5));
}

double h_fn_d(double x, int deriv) {
    if (x <= 0.0 || x >= 2.0) return 0.0;
    return poly_eval_d(g_polys()[deriv], x) * std::exp(x - 0.5);
}

Interval eta_circ(const Interval& t) {
    if (t.lo() >= 2.0 || t.hi() <= 0.0) return Interval(0.0);
    Interval tc = ival::intersect(t, Interval(0.0, 2.0));
    Interval v = ival::pow_int(tc, 3) * ival::pow_int(2.0 - tc, 3) *
                 ival::exp(-ival::sqr(tc - 1.0) / 2.0);
    if (t.lo() < 0.0 || t.hi() > 2.0) v = ival::hull(v, Interval(0.0));
    return v;
}

Interval eta2(const Interval& t) {
    if (t.hi() <= 0.25 || t.lo() >= 1.0) return Interval(0.0);
    bool have = false;
    Interval r(0.0);
    auto take = [&](const Interval& piece) {
        r = have ? ival::hull(r, piece) : piece;
        have = true;
    };
    if (t.hi() >= 0.25 && t.lo() <= 0.5) {
        Interval seg = ival::intersect(t, Interval(0.25, 0.5));
        take(Interval(4.0) * ival::log(Interval(4.0) * seg));
    }
    if (t.hi() >= 0.5 && t.lo() <= 1.0) {
        Interval seg = ival::intersect(t, Interval(0.5, 1.0));
        take(-Interval(4.0) * ival::log(seg));
    }
    if (t.lo() < 0.25 || t.hi() > 1.0) take(Interval(0.0));
    return r;
}

// ---------------------------------------------------------------------------
// Sine integral at double precision (for the h_H evaluator)
// ---------------------------------------------------------------------------

namespace {

double fast_si(double x) {
    double ax = std::fabs(x), s;
    if (ax <= 24.0) {
        // alternating series with compensated accumulation
        ival::dd sum(ax);
        double x2 = ax * ax;
        double term = ax;
        for (int k = 1; k <= 60; ++k) {
            term *= x2 / ((2.0 * k) * (2.0 * k + 1.0));
            double c = term / (2.0 * k + 1.0);
            sum += (k % 2 == 1) ? -c : c;
            if (c < 1e-20 * (1.0 + std::fabs(sum.hi))) break;
        }
        s = sum.to_double();
    } else {
        double inv = 1.0 / ax, inv2 = inv * inv;
        double P = 0, Q = 0, tP = inv, tQ = inv2;
        int sign = 1;
        for (int k = 0; k <= 11; ++k) {
            P += sign * tP;
            Q += sign * tQ;
            tP *= (2.0 * k + 1) * (2.0 * k + 2) * inv2;
            tQ *= (2.0 * k + 2) * (2.0 * k + 3) * inv2;
            sign = -sign;
        }
        s = 1.57079632679489661923 - std::cos(ax) * P - std::sin(ax) * Q;
    }
    return x < 0 ? -s : s;
}

// 8-point Gauss-Legendre nodes/weights on [-1,1]
constexpr double GL8_X[8] = {-0.9602898564975362316836, -0.7966664774136267395916,
                             -0.5255324099163289858177, -0.1834346424956498049395,
                             0.1834346424956498049395,  0.5255324099163289858177,
                             0.7966664774136267395916,  0.9602898564975362316836};
constexpr double GL8_W[8] = {0.1012285362903762591525, 0.2223810344533744705444,
                             0.3137066458778872873380, 0.3626837833783619829652,
                             0.3626837833783619829652, 0.3137066458778872873380,
                             0.2223810344533744705444, 0.1012285362903762591525};

// h_H(t) = h(t) - (1/pi) int f'(w) (Si(w) -+ pi/2) dw, f(w) = h(t e^{-w/H})
double h_H_direct(double t, double H) {
    if (t <= 0.0) return 0.0;
    const double pi = 3.14159265358979323846;
    double w0 = H * std::log(t / 2.0); // lower limit; x = 2 there
    double wmax = std::max(0.0, w0) + 22.0 * H;
    auto fprime = [&](double w) {
        double x = t * std::exp(-w / H);
        return -(x / H) * h_fn_d(x, 1);
    };
    ival::dd acc(0.0);
    // panels of width <= pi, split at 0 where the Si branch changes
    auto integrate = [&](double a, double b, double shift) {
        if (b <= a) return;
        int n = (int)std::ceil((b - a) / pi);
        double hseg = (b - a) / n;
        for (int i = 0; i < n; ++i) {
            double lo = a + i * hseg, mid = lo + 0.5 * hseg;
            for (int q = 0; q < 8; ++q) {
                double w = mid + 0.5 * hseg * GL8_X[q];
                double v = fprime(w) * (fast_si(w) + shift);
                acc += 0.5 * hseg * GL8_W[q] * v;
            }
        }
    };
    if (w0 < 0.0) {
        integrate(w0, 0.0, pi / 2.0);
        integrate(0.0, wmax, -pi / 2.0);
    } else {
        integrate(w0, wmax, -pi / 2.0);
    }
    return h_fn_d(t, 0) - acc.to_double() / pi;
}

// cached grid of h_H over log t in [-9.3, 2.5]; cubic interpolation between
// nodes at band-limited resolution
struct HhGrid {
    double H = 0.0;
    double u0 = -9.3, u1 = 2.5, step = 0.0;
    std::vector<double> vals;

    void build(double Hval) {
        H = Hval;
        step = 3.141592653589793 / (Hval * 10.0); // ~31 nodes per oscillation
        size_t n = (size_t)std::ceil((u1 - u0) / step) + 4;
        vals.resize(n);
        for (size_t i = 0; i < n; ++i) vals[i] = h_H_direct(std::exp(u0 + i * step), H);
    }

    double eval(double t) const {
        double u = std::log(t);
        if (u >= u1) return h_H_direct(t, H);
        if (u <= u0) {
            // below the grid the weight is negligible; linear model keeps the
            // prime-sum tail consistent
            return h_H_direct(t, H);
        }
        double s = (u - u0) / step;
        size_t i = (size_t)s;
        if (i < 1) i = 1;
        if (i + 2 >= vals.size()) i = vals.size() - 3;
        double f = s - i;
        // 4-point Lagrange
        double ym1 = vals[i - 1], y0 = vals[i], y1 = vals[i + 1], y2 = vals[i + 2];
        double a = f * (f - 1.0);
        return y0 + f * (y1 - y0) + a * ((y1 + ym1 - 2.0 * y0) / 2.0 +
                                         (f - 0.5) * (y2 - 3.0 * y1 + 3.0 * y0 - ym1) / 6.0);
    }
};

HhGrid& hh_grid(double H) {
    static HhGrid grid;
    static std::mutex m;
    std::lock_guard<std::mutex> lock(m);
    if (grid.H != H) grid.build(H);
    return grid;
}

} // namespace

double h_H(double t, double H) {
    if (t <= 0.0) return 0.0;
    return hh_grid(H).eval(t);
}

double eta_plus_d(double t, double H) {
    if (t <= 0.0) return 0.0;
    double g = t * std::exp(-0.5 * t * t);
    if (g < 1e-300) return 0.0;
    return h_H(t, H) * g;
}

namespace {

double eta2_d(double w) {
    if (w <= 0.25 || w >= 1.0) return 0.0;
    return w < 0.5 ? 4.0 * std::log(4.0 * w) : -4.0 * std::log(w);
}

double t2gauss_d(double t) { return t * t * std::exp(-0.5 * t * t); }

double eta_star_direct(double t) {
    // int_{1/4}^{1} eta2(w) t2gauss(t/w) dw/w, GL-16 per smooth piece
    double acc = 0.0;
    for (auto [a, b] : {std::pair{0.25, 0.5}, std::pair{0.5, 1.0}}) {
        for (int half = 0; half < 2; ++half) {
            double lo = a + (b - a) * 0.5 * half;
            double hi = lo + (b - a) * 0.5;
            double mid = 0.5 * (lo + hi), rad = 0.5 * (hi - lo);
            for (int q = 0; q < 8; ++q) {
                double w = mid + rad * GL8_X[q];
                acc += rad * GL8_W[q] * eta2_d(w) * t2gauss_d(t / w) / w;
            }
        }
    }
    return acc;
}

struct StarGrid {
    double tmax = 13.0, step = 1e-3;
    std::vector<double> vals;
    StarGrid() {
        size_t n = (size_t)(tmax / step) + 4;
        vals.resize(n);
        for (size_t i = 0; i < n; ++i) vals[i] = eta_star_direct(i * step);
    }
    double eval(double t) const {
        if (t <= 0.0 || t >= tmax) return t >= tmax ? eta_star_direct(t) : 0.0;
        double s = t / step;
        size_t i = (size_t)s;
        if (i < 1) i = 1;
        if (i + 2 >= vals.size()) i = vals.size() - 3;
        double f = s - i;
        double ym1 = vals[i - 1], y0 = vals[i], y1 = vals[i + 1], y2 = vals[i + 2];
        double a = f * (f - 1.0);
        return y0 + f * (y1 - y0) + a * ((y1 + ym1 - 2.0 * y0) / 2.0 +
                                         (f - 0.5) * (y2 - 3.0 * y1 + 3.0 * y0 - ym1) / 6.0);
    }
};

const StarGrid& star_grid() {
    static const StarGrid g;
    return g;
}

} // namespace

double eta_star_d(double t) { return star_grid().eval(t); }

Interval Weight::eval(double t) const {
    if (t < 0.0) throw PreconditionViolation("weights are defined on t >= 0");
    Interval ti(t);
    switch (kind) {
        case Kind::GaussianHeart: return ival::exp(-ival::sqr(ti) / 2.0);
        case Kind::T2Gaussian: return ival::sqr(ti) * ival::exp(-ival::sqr(ti) / 2.0);
        case Kind::StarConv: {
            double v = eta_star_d(t);
            double slack = 1e-9 * (1.0 + std::fabs(v)); // oracle evaluator slack
            return Interval(v - slack, v + slack);
        }
        case Kind::EtaPlus: {
            if (H < 50.0) throw PreconditionViolation("eta_plus requires H >= 50");
            double v = eta_plus_d(t, H);
            double slack = 1e-7 * (1.0 + std::fabs(v)); // quadrature + interpolation
            return Interval(v - slack, v + slack);
        }
    }
    throw PreconditionViolation("bad weight kind");
}

double Weight::eval_d(double t) const {
    if (t <= 0.0) return kind == Kind::GaussianHeart ? std::exp(-0.5 * t * t) : 0.0;
    switch (kind) {
        case Kind::GaussianHeart: return std::exp(-0.5 * t * t);
        case Kind::T2Gaussian: return t2gauss_d(t);
        case Kind::StarConv: return eta_star_d(t);
        case Kind::EtaPlus: return eta_plus_d(t, H);
    }
    return 0.0;
}

double Weight::support_cutoff() const {
    switch (kind) {
        case Kind::GaussianHeart: return 10.8;
        case Kind::T2Gaussian: return 11.2;
        case Kind::StarConv: return 11.2; // eta2 support ends at w = 1
        case Kind::EtaPlus: return 11.5;
    }
    return 12.0;
}

// ---------------------------------------------------------------------------
// C_k constants
// ---------------------------------------------------------------------------

namespace {

// certified root of poly in (0,2): bracket by a scan, bisect with interval
// sign certificates at the ends
Interval certified_root(const Poly& p, double seed) {
    double lo = seed - 1e-2, hi = seed + 1e-2;
    auto sign_at = [&](double x) {
        Interval v = poly_eval(p, Interval(x));
        if (v.lo() > 0) return 1;
        if (v.hi() < 0) return -1;
        return 0;
    };
    int slo = sign_at(lo), shi = sign_at(hi);
    if (slo == 0 || shi == 0 || slo == shi)
        throw RootNotIsolated("no certified sign change near seed");
    for (int i = 0; i < 60 && hi - lo > 1e-14; ++i) {
        double mid = 0.5 * (lo + hi);
        int sm = sign_at(mid);
        if (sm == 0) break; // interval evaluation straddles zero; stop refining
        if (sm == slo)
            lo = mid;
        else
            hi = mid;
    }
    return Interval(lo, hi);
}

// all sign-change brackets of p on (0,2) at scan resolution
std::vector<double> root_seeds(const Poly& p) {
    std::vector<double> seeds;
    const int N = 4000;
    double prev = poly_eval_d(p, 1e-9);
    for (int i = 1; i <= N; ++i) {
        double x = 2.0 * i / N - 1e-9;
        double v = poly_eval_d(p, x);
        if (prev != 0.0 && v != 0.0 && (prev < 0) != (v < 0))
            seeds.push_back(x - 1.0 / N);
        prev = v;
    }
    return seeds;
}

// int_0^2 P(x) e^x dx = [Q(x) e^x]_0^2 with Q = P - P' + P'' - ...
Interval poly_exp_integral_02(const Poly& p) {
    Poly q(p.size(), 0.0);
    Poly d = p;
    double sign = 1.0;
    for (size_t k = 0; k <= p.size(); ++k) {
        for (size_t i = 0; i < d.size(); ++i) q[i] += sign * d[i];
        d = poly_derive(d);
        sign = -sign;
        if (d.size() == 1 && d[0] == 0.0) break;
    }
    Interval e2 = ival::sqr(ival::euler_e());
    return poly_eval(q, Interval(2.0)) * e2 - poly_eval(q, Interval(0.0));
}

// int_0^2 P(x) e^{2x} dx = [Q(x) e^{2x}]_0^2 with Q = sum (-1)^k P^(k) / 2^{k+1}
Interval poly_exp2_integral_02(const Poly& p) {
    Poly q(p.size(), 0.0);
    Poly d = p;
    double coef = 0.5, sign = 1.0;
    for (size_t k = 0; k <= p.size(); ++k) {
        for (size_t i = 0; i < d.size(); ++i) q[i] += sign * coef * d[i];
        d = poly_derive(d);
        coef *= 0.5;
        sign = -sign;
        if (d.size() == 1 && d[0] == 0.0) break;
    }
    Interval e4 = ival::sqr(ival::sqr(ival::euler_e()));
    return poly_eval(q, Interval(2.0)) * e4 - poly_eval(q, Interval(0.0));
}

CkConstants compute_ck() {
    CkConstants c;
    const auto& G = g_polys();

    // C0 = int_0^2 x (2-x)^3 e^{x-1/2} dx
    Poly p0 = {0.0, 8.0, -12.0, 6.0, -1.0}; // x (2-x)^3
    c.C0 = poly_exp_integral_02(p0) * ival::exp(Interval(-0.5));

    // C1 = 2 h(1) = 2 sqrt(e)
    c.C1 = Interval(2.0) * h_fn(Interval(1.0), 0);

    auto roots_of = [&](const Poly& p) {
        std::vector<double> seeds = root_seeds(p);
        if (seeds.size() != 2)
            throw RootNotIsolated("expected two interior roots, found " +
                                  std::to_string(seeds.size()));
        return std::pair{certified_root(p, seeds[0]), certified_root(p, seeds[1])};
    };

    auto [a21, a22] = roots_of(G[2]);
    auto [a31, a32] = roots_of(G[3]);
    auto [a41, a42] = roots_of(G[4]);
    c.alpha21 = a21;
    c.alpha22 = a22;
    c.alpha31 = a31;
    c.alpha32 = a32;
    c.alpha41 = a41;
    c.alpha42 = a42;

    // C2 = 2 sum_j (-1)^{j+1} (h'(a) a - h(a)) over the roots of h''
    auto W2 = [&](const Interval& a) { return h_fn(a, 1) * a - h_fn(a, 0); };
    c.C2 = Interval(2.0) * (W2(a21) - W2(a22));

    // C3 = 2 sum_j (-1)^j (h''(a) a^2 - 2 h'(a) a + 2 h(a)) over roots of h'''
    auto W3 = [&](const Interval& a) {
        return h_fn(a, 2) * ival::sqr(a) - Interval(2.0) * h_fn(a, 1) * a +
               Interval(2.0) * h_fn(a, 0);
    };
    c.C3 = Interval(2.0) * (W3(a32) - W3(a31));

    // C4: interior integral plus the distributional jump of h''' at 2
    auto W4 = [&](const Interval& a) {
        return h_fn(a, 3) * ival::pow_int(a, 3) - Interval(3.0) * h_fn(a, 2) * ival::sqr(a) +
               Interval(6.0) * h_fn(a, 1) * a - Interval(6.0) * h_fn(a, 0);
    };
    Interval lim_h3_2 = Interval(-24.0) * ival::exp(Interval(1.5)); // h'''(2^-)
    c.c4_interior = Interval(2.0) * (W4(a42) - W4(a41)) - lim_h3_2 * 8.0;
    c.C4 = c.c4_interior + Interval(24.0) * ival::exp(Interval(1.5)) * 8.0;
    return c;
}

} // namespace

const CkConstants& ck_constants() {
    static const CkConstants c = compute_ck();
    return c;
}

MhL1Bounds mh_l1_bounds(const CkConstants& c) {
    using ival::log;
    using ival::sqrt;
    MhL1Bounds out;
    Interval r1 = c.C1 / c.C0, r2 = c.C2 / c.C1, r3 = c.C3 / c.C2, r4 = c.C4 / c.C3;
    out.plain = Interval(2.0) *
                (c.C1 + c.C1 * log(c.C2 * c.C0 / ival::sqr(c.C1)) +
                 c.C2 * (c.C1 / c.C2 - c.C2 / c.C3) +
                 c.C3 / 2.0 * (ival::sqr(c.C2 / c.C3) - ival::sqr(c.C3 / c.C4)) +
                 c.C4 / 3.0 * ival::pow_int(c.C3 / c.C4, 3));

    // antiderivative of sqrt(t^2+1)/t: sqrt(t^2+1) + log(t / (sqrt(t^2+1)+1))
    auto anti = [](const Interval& t) {
        Interval s = sqrt(ival::sqr(t) + 1.0);
        return s + log(t / (s + 1.0));
    };
    Interval seg0 =
        c.C0 / 2.0 *
        (sqrt(ival::sqr(ival::sqr(r1)) + ival::sqr(r1)) + ival::asinh(r1));
    Interval seg1 = c.C1 * (anti(r2) - anti(r1));
    Interval seg2 = c.C2 * log(c.C3 * c.C1 / ival::sqr(c.C2));
    Interval seg3 = c.C3 * (c.C2 / c.C3 - c.C3 / c.C4);
    Interval seg4 = c.C4 / 2.0 * ival::sqr(c.C3 / c.C4);
    // one-sided integral int_0^inf |t+i| |Mh(it)| dt; the norm over the whole
    // line is twice this (the integrand is even in t)
    out.weighted = seg0 + seg1 + seg2 + seg3 + seg4;
    return out;
}

// ---------------------------------------------------------------------------
// Norms
// ---------------------------------------------------------------------------

namespace {

// int_0^inf t^{a-1} e^{-t^2/2} dt = 2^{a/2-1} Gamma(a/2)
Interval gauss_moment(double a) {
    Interval ai(a);
    return ival::pow(Interval(2.0), ai / 2.0 - 1.0) * ival::gamma_real(ai / 2.0);
}

// |h(t)/sqrt(t)|_2^2 = int_0^2 t^3 (2-t)^6 e^{2t-1} dt
Interval h_over_sqrt_l2_sq() {
    // t^3 (2-t)^6 expanded
    Poly p = {0, 0, 0, 64, -192, 240, -160, 60, -12, 1};
    return poly_exp2_integral_02(p) / ival::euler_e();
}

// |h'(t) sqrt(t)|_2^2 = int_0^2 G1(t)^2 t e^{2t-1} dt
Interval h_prime_sqrt_l2_sq() {
    const Poly& g1 = g_polys()[1];
    Poly sq(2 * g1.size() - 1, 0.0);
    for (size_t i = 0; i < g1.size(); ++i)
        for (size_t j = 0; j < g1.size(); ++j) sq[i + j] += g1[i] * g1[j];
    Poly tsq(sq.size() + 1, 0.0);
    for (size_t i = 0; i < sq.size(); ++i) tsq[i + 1] = sq[i];
    return poly_exp2_integral_02(tsq) / ival::euler_e();
}

Interval sqrt_pi() { return ival::sqrt(ival::pi()); }

// |t2gauss . log|_2^2 closed form
Interval t2_l2log_sq() {
    Interval g = ival::euler_gamma(), l2 = ival::ln2(), pi2 = ival::sqr(ival::pi());
    return sqrt_pi() / 64.0 *
           (8.0 * (3.0 * g - 8.0) * l2 + 3.0 * pi2 + 6.0 * ival::sqr(g) +
            24.0 * ival::sqr(l2) + 16.0 - 32.0 * g);
}

// |gaussian . log|_2^2 closed form
Interval gauss_l2log_sq() {
    Interval g = ival::euler_gamma(), l2 = ival::ln2(), pi2 = ival::sqr(ival::pi());
    return sqrt_pi() / 16.0 * (pi2 + 2.0 * ival::sqr(g) + 8.0 * g * l2 + 8.0 * ival::sqr(l2));
}

// |t e^{-t^2/2} log t|_2^2 closed form
Interval diamond_l2log_sq() {
    Interval g = ival::euler_gamma(), l2 = ival::ln2(), pi2 = ival::sqr(ival::pi());
    return sqrt_pi() / 32.0 *
           (8.0 * ival::sqr(l2) + 2.0 * ival::sqr(g) + pi2 + 8.0 * (g - 2.0) * l2 - 8.0 * g);
}

// |t2gauss' t^s|_1 = int (t^3 - 2t) t^s e^{-t^2/2} + 2 int_0^sqrt2 (2t - t^3) t^s e^{-t^2/2};
// the head integral is evaluated in the smooth variable t = v^2 (s = +-1/2 only)
Interval t2_deriv_l1(double s) {
    if (s != 0.5 && s != -0.5)
        throw PreconditionViolation("t2_deriv_l1 implemented for sigma = +-1/2");
    Interval tail = gauss_moment(s + 4.0) - 2.0 * gauss_moment(s + 2.0);
    double vmax = std::pow(2.0, 0.25);
    vopt::TFn head = [s](const Interval& x) {
        vopt::Taylor5 v = vopt::Taylor5::variable(x);
        vopt::Taylor5 t = v * v;
        // 2 v (2t - t^3) t^s = 4 v^3 t^s - 2 v^7 t^s with t^s = v^{2s}
        vopt::Taylor5 poly = (s == -0.5) ? 4.0 * t - 2.0 * vopt::pow_int(v, 6)
                                         : 4.0 * vopt::pow_int(v, 4) - 2.0 * vopt::pow_int(v, 8);
        return poly * exp(-(t * t) / 2.0);
    };
    Interval head_val = vopt::integrate_verified(head, Interval(0.0, vmax), 1e-12, 26);
    return tail + 2.0 * head_val;
}

// certified suprema of the compactly supported factors used by the
// eta_plus sup-norm bounds
struct CircSups {
    Interval circ_log;    // |eta_circ log t|_inf
    Interval diamond_tlog; // |t e^{-t^2/2} t log t|_inf
    Interval circ_over_t; // |eta_circ / t|_inf
    Interval circ_times_t; // |eta_circ t|_inf
};

const CircSups& circ_sups() {
    static const CircSups s = [] {
        CircSups r;
        auto circ_pow_log = [](int extra, bool neg_log) {
            return [extra, neg_log](const Interval& x) {
                vopt::Taylor5 t = vopt::Taylor5::variable(x);
                vopt::Taylor5 body = vopt::pow_int(t, 3 + extra) * vopt::pow_int(2.0 - t, 3) *
                                     exp(-(t - 1.0) * (t - 1.0) / 2.0);
                vopt::Taylor5 lg = log(t);
                return neg_log ? body * (-lg) : body * lg;
            };
        };
        // below 1e-6 the factor t^3 crushes everything; a single interval
        // evaluation certifies the head
        Interval head = eta_circ(Interval(1e-300, 1e-6)) *
                        ival::iabs(ival::log(Interval(1e-300, 1e-6)));
        vopt::Enclosure a = vopt::enclose_max({circ_pow_log(0, true), Interval(1e-6, 1.0), 36, 8});
        vopt::Enclosure b = vopt::enclose_max({circ_pow_log(0, false), Interval(1.0, 2.0), 36, 8});
        r.circ_log = ival::imax(ival::imax(a.value, b.value), Interval(0.0, head.hi()));

        auto dia_tlog = [](bool neg_log) {
            return [neg_log](const Interval& x) {
                vopt::Taylor5 t = vopt::Taylor5::variable(x);
                vopt::Taylor5 body = t * t * exp(-(t * t) / 2.0);
                vopt::Taylor5 lg = log(t);
                return neg_log ? body * (-lg) : body * lg;
            };
        };
        Interval dhead = ival::sqr(Interval(0.0, 1e-6)) *
                         ival::iabs(ival::log(Interval(1e-300, 1e-6)));
        // octave sweep for t >= 8; the Gaussian factor wins immediately
        double dtail_hi = 0.0;
        for (double a = 8.0; a < 1e12; a *= 2.0) {
            Interval box(a, 2.0 * a);
            Interval v = ival::sqr(box) * ival::exp(-ival::sqr(box) / 2.0) * ival::log(box);
            dtail_hi = std::max(dtail_hi, v.hi());
            if (v.hi() < 1e-30) break;
        }
        Interval dtail(0.0, dtail_hi);
        vopt::Enclosure c = vopt::enclose_max({dia_tlog(true), Interval(1e-6, 1.0), 36, 8});
        vopt::Enclosure d = vopt::enclose_max({dia_tlog(false), Interval(1.0, 8.0), 36, 8});
        r.diamond_tlog = ival::imax(ival::imax(c.value, d.value),
                                    ival::imax(Interval(0.0, dhead.hi()), dtail));

        vopt::TFn over_t = [](const Interval& x) {
            vopt::Taylor5 t = vopt::Taylor5::variable(x);
            return vopt::pow_int(t, 2) * vopt::pow_int(2.0 - t, 3) *
                   exp(-(t - 1.0) * (t - 1.0) / 2.0);
        };
        r.circ_over_t = vopt::enclose_max({over_t, Interval(0.0, 2.0), 36, 8}).value;

        vopt::TFn times_t = [](const Interval& x) {
            vopt::Taylor5 t = vopt::Taylor5::variable(x);
            return vopt::pow_int(t, 4) * vopt::pow_int(2.0 - t, 3) *
                   exp(-(t - 1.0) * (t - 1.0) / 2.0);
        };
        r.circ_times_t = vopt::enclose_max({times_t, Interval(0.0, 2.0), 36, 8}).value;
        return r;
    }();
    return s;
}

NormTable gaussian_norms() {
    NormTable n;
    n.l2 = ival::sqrt(sqrt_pi() / 2.0);
    n.deriv_l2 = ival::sqrt(sqrt_pi() / 4.0);
    n.l2_log = ival::sqrt(gauss_l2log_sq());
    n.l1_over_sqrt_t = gauss_moment(0.5);
    n.l1_times_sqrt_t = gauss_moment(1.5);
    // |eta'(t) t^{-1/2}|_1 = |t e^{-t^2/2} t^{-1/2}|_1, |eta'(t) sqrt t|_1 likewise
    n.deriv_l1_over_sqrt_t = gauss_moment(1.5);
    n.deriv_l1_times_sqrt_t = gauss_moment(2.5);
    n.linf = Interval(1.0);
    return n;
}

NormTable t2_norms() {
    NormTable n;
    n.l2 = ival::sqrt(Interval(3.0) / 8.0 * sqrt_pi());
    n.deriv_l2 = ival::sqrt(Interval(7.0) / 16.0 * sqrt_pi());
    n.l2_log = ival::sqrt(t2_l2log_sq());
    n.l1_over_sqrt_t = gauss_moment(2.5);
    n.l1_times_sqrt_t = gauss_moment(3.5);
    n.deriv_l1_over_sqrt_t = t2_deriv_l1(-0.5);
    n.deriv_l1_times_sqrt_t = t2_deriv_l1(0.5);
    return n;
}

Interval one_plus_log_factor(double H) {
    Interval Hi(H);
    return (1.0 + 4.0 / ival::pi() * ival::log(Hi)) / Hi;
}

NormTable etaplus_norms(double H) {
    if (H < 50.0) throw PreconditionViolation("eta_plus norms assume H >= 50");
    NormTable n;
    Interval circ_l2 = ival::sqrt(eta_circ_l2_sq());
    n.l2 = circ_l2 + etaplus_circ_l2(H);
    MhL1Bounds mh = mh_l1_bounds();
    n.l2_log = mh.plain / ival::two_pi() * ival::sqrt(diamond_l2log_sq());
    // |eta_plus'|_2 via Young's inequality; the convolution runs over the whole
    // line, so the weighted majorant enters with its two-sided value
    n.deriv_l2 = Interval(1.0) / ival::sqrt(ival::two_pi()) * (Interval(3.0) / ival::two_pi()) *
                 (Interval(2.0) * mh.weighted) *
                 ival::sqrt(Interval(3.0) * ival::pow(ival::pi(), Interval(1.5)) / 4.0);
    n.l1_over_sqrt_t = etaplus_l1_t_sigma(-0.5);
    n.l1_times_sqrt_t = etaplus_l1_t_sigma(0.5);
    n.deriv_l1_over_sqrt_t = etaplus_deriv_l1_t_sigma(-0.5);
    n.deriv_l1_times_sqrt_t = etaplus_deriv_l1_t_sigma(0.5);
    Interval lf = one_plus_log_factor(H);
    Interval hp = h_prime_inf();
    const CircSups& cs = circ_sups();
    n.linf = 1.0 + 2.0 / ival::euler_e() * hp * lf;
    n.linf_log = cs.circ_log + hp * lf * cs.diamond_tlog;
    // |t e^{-t^2/2}|_inf = 1/sqrt(e), |t^3 e^{-t^2/2}|_inf = 3^{3/2} e^{-3/2}
    n.linf_over_t = cs.circ_over_t + hp * lf / ival::sqrt(ival::euler_e());
    n.linf_times_t =
        cs.circ_times_t + hp * lf * ival::pow(Interval(3.0), Interval(1.5)) *
                              ival::exp(Interval(-1.5));
    return n;
}

} // namespace

NormTable norm_table(const Weight& w) {
    static std::mutex m;
    static NormTable gauss_cache, t2_cache;
    static bool gauss_ready = false, t2_ready = false;
    static std::vector<std::pair<double, NormTable>> etaplus_cache;
    std::lock_guard<std::mutex> lock(m);
    switch (w.kind) {
        case Kind::GaussianHeart:
            if (!gauss_ready) {
                gauss_cache = gaussian_norms();
                gauss_ready = true;
            }
            return gauss_cache;
        case Kind::T2Gaussian:
            if (!t2_ready) {
                t2_cache = t2_norms();
                t2_ready = true;
            }
            return t2_cache;
        case Kind::EtaPlus: {
            for (const auto& [H, t] : etaplus_cache)
                if (H == w.H) return t;
            etaplus_cache.emplace_back(w.H, etaplus_norms(w.H));
            return etaplus_cache.back().second;
        }
        case Kind::StarConv:
            return NormTable{}; // only the eta2 moments are used
    }
    return NormTable{};
}

Interval etaplus_l1_t_sigma(double sigma) {
    if (sigma <= -2.0) throw PreconditionViolation("etaplus_l1_t_sigma requires sigma > -2");
    Interval h_norm = ival::sqrt(h_over_sqrt_l2_sq());
    return ival::sqrt(ival::gamma_real(Interval(sigma) + 2.0) / 2.0) * h_norm;
}

Interval etaplus_deriv_l1_t_sigma(double sigma) {
    if (sigma <= -1.0)
        throw PreconditionViolation("etaplus_deriv_l1_t_sigma requires sigma > -1");
    Interval h_norm = ival::sqrt(h_over_sqrt_l2_sq()) / ival::sqrt2();
    Interval hp_norm = ival::sqrt(h_prime_sqrt_l2_sq());
    Interval s(sigma);
    Interval g1 = ival::sqrt(ival::gamma_real(s + 1.0));
    Interval g3 = ival::sqrt(ival::gamma_real(s + 3.0));
    // sqrt(Gamma(s+1)/2) |h' sqrt t|_2 + |h/sqrt t|_2/sqrt2 (sqrt Gamma(s+1) + sqrt Gamma(s+3))
    return g1 / ival::sqrt2() * hp_norm + h_norm * (g1 + g3);
}

const Eta2Moments& eta2_moments() {
    static const Eta2Moments m = [] {
        Eta2Moments r;
        // int w^s log(c w) dw = w^{s+1} (log(cw)/(s+1) - 1/(s+1)^2), s != -1
        auto piece = [](double s, double c, const Interval& a, const Interval& b) {
            Interval si(s);
            auto F = [&](const Interval& w) {
                return ival::pow(w, si + 1.0) *
                       (ival::log(Interval(c) * w) / (si + 1.0) -
                        1.0 / ival::sqr(si + 1.0));
            };
            return F(b) - F(a);
        };
        Interval quarter(0.25), half(0.5), one(1.0);
        auto moment = [&](double s) {
            Interval first, second;
            if (s == -1.0) {
                // int log(4w)/w dw = log(4w)^2/2 ; int log(1/w)/w dw = -log(w)^2/2
                auto F1 = [&](const Interval& w) {
                    return ival::sqr(ival::log(Interval(4.0) * w)) / 2.0;
                };
                first = F1(half) - F1(quarter);
                auto F2 = [&](const Interval& w) { return -ival::sqr(ival::log(w)) / 2.0; };
                second = F2(one) - F2(half);
            } else {
                first = piece(s, 4.0, quarter, half);
                // log(1/w) = -log(w): int w^s (-log w) dw = -piece with c = 1
                second = -piece(s, 1.0, half, one);
            }
            return Interval(4.0) * (first + second);
        };
        r.m0 = moment(0.0);
        r.m_half = moment(-0.5);
        r.m_one = moment(-1.0);
        r.m_3half = moment(-1.5);
        return r;
    }();
    return m;
}

Interval etaplus_circ_l2(double H) {
    if (H <= 0.0) throw PreconditionViolation("etaplus_circ_l2 requires H > 0");
    const CkConstants& c = ck_constants();
    Interval factor = ival::pow(Interval(3.0) / (2.0 * ival::euler_e()), Interval(0.75));
    return c.C4 / ival::sqrt(Interval(7.0) * ival::pi()) * factor /
           ival::pow(Interval(H), Interval(3.5));
}

Interval circ_l2log_max_factor() {
    static const Interval v = [] {
        // max over [0,1] of -t^3 e^{-t^2} log t and over [1,5] of +...
        vopt::TFn f1 = [](const Interval& x) {
            vopt::Taylor5 t = vopt::Taylor5::variable(x);
            return -(t * t * t) * exp(-(t * t)) * log(t);
        };
        vopt::TFn f2 = [](const Interval& x) {
            vopt::Taylor5 t = vopt::Taylor5::variable(x);
            return (t * t * t) * exp(-(t * t)) * log(t);
        };
        vopt::Enclosure e1 = vopt::enclose_max({f1, Interval(1e-12, 1.0), 40, 8});
        vopt::Enclosure e2 = vopt::enclose_max({f2, Interval(1.0, 5.0), 40, 8});
        return ival::imax(e1.value, e2.value);
    }();
    return v;
}

Interval etaplus_circ_l2log_sq(double H) {
    if (H <= 0.0) throw PreconditionViolation("etaplus_circ_l2log_sq requires H > 0");
    const CkConstants& c = ck_constants();
    return circ_l2log_max_factor() * ival::sqr(c.C4) / (Interval(7.0) * ival::pi()) /
           ival::pow(Interval(H), Interval(7.0));
}

Interval h_prime_inf() {
    static const Interval v = [] {
        const CkConstants& c = ck_constants();
        return ival::iabs(h_fn(c.alpha22, 1));
    }();
    return v;
}

Interval eta_circ_l2_sq() {
    static const Interval v = [] {
        vopt::TFn f = [](const Interval& x) {
            vopt::Taylor5 t = vopt::Taylor5::variable(x);
            vopt::Taylor5 a = vopt::pow_int(t, 3) * vopt::pow_int(2.0 - t, 3);
            return a * a * exp(-(t - 1.0) * (t - 1.0));
        };
        return vopt::integrate_verified(f, Interval(0.0, 2.0), 1e-13, 26);
    }();
    return v;
}

} // namespace arcs::weights
