#include "arcs/ival.hpp"

#include <algorithm>
#include <array>
#include <sstream>

namespace arcs::ival {

namespace {
// widening applied after libm calls that are not correctly rounded;
// glibc documents worst-case errors of 1-2 ulp for the functions used here
constexpr int LIBM_ULPS = 4;
constexpr double INF = std::numeric_limits<double>::infinity();
} // namespace

std::string Interval::str() const {
    std::ostringstream os;
    os.precision(17);
    os << "[" << lo_ << ", " << hi_ << "]";
    return os.str();
}

namespace {

// Exactness probes: when the rounded result is provably exact the endpoint is
// not widened, so dyadic identities (0+0, 1*x, x-x at points) stay sharp.
inline bool sum_exact(double a, double b, double s) {
    double bb = s - a;
    return (a - (s - bb)) + (b - bb) == 0.0;
}
inline bool prod_exact(double a, double b, double p) { return std::fma(a, b, -p) == 0.0; }
inline bool quot_exact(double a, double b, double q) { return std::fma(q, b, -a) == 0.0; }

inline Interval widen_sel(double lo, double hi, bool lo_exact, bool hi_exact) {
    return Interval::unchecked(lo_exact ? lo : step_down(lo), hi_exact ? hi : step_up(hi));
}

} // namespace

Interval operator+(const Interval& a, const Interval& b) {
    double lo = a.lo() + b.lo();
    double hi = a.hi() + b.hi();
    return widen_sel(lo, hi, sum_exact(a.lo(), b.lo(), lo), sum_exact(a.hi(), b.hi(), hi));
}

Interval operator-(const Interval& a, const Interval& b) {
    double lo = a.lo() - b.hi();
    double hi = a.hi() - b.lo();
    return widen_sel(lo, hi, sum_exact(a.lo(), -b.hi(), lo), sum_exact(a.hi(), -b.lo(), hi));
}

Interval operator-(const Interval& a) { return Interval::unchecked(-a.hi(), -a.lo()); }

Interval operator*(const Interval& a, const Interval& b) {
    struct Cand {
        double v;
        bool exact;
    };
    const Cand p[4] = {{a.lo() * b.lo(), prod_exact(a.lo(), b.lo(), a.lo() * b.lo())},
                       {a.lo() * b.hi(), prod_exact(a.lo(), b.hi(), a.lo() * b.hi())},
                       {a.hi() * b.lo(), prod_exact(a.hi(), b.lo(), a.hi() * b.lo())},
                       {a.hi() * b.hi(), prod_exact(a.hi(), b.hi(), a.hi() * b.hi())}};
    Cand lo = p[0], hi = p[0];
    for (int i = 1; i < 4; ++i) {
        const Cand& c = p[i];
        if (std::isnan(c.v)) throw DomainViolation("indeterminate product");
        if (c.v < lo.v)
            lo = c;
        else if (c.v == lo.v)
            lo.exact = lo.exact && c.exact;
        if (c.v > hi.v)
            hi = c;
        else if (c.v == hi.v)
            hi.exact = hi.exact && c.exact;
    }
    if (std::isnan(p[0].v)) throw DomainViolation("indeterminate product");
    return widen_sel(lo.v, hi.v, lo.exact, hi.exact);
}

Interval operator/(const Interval& a, const Interval& b) {
    if (b.contains_zero())
        throw DivisionByIntervalContainingZero("division by interval containing zero: " + b.str());
    struct Cand {
        double v;
        bool exact;
    };
    const Cand p[4] = {{a.lo() / b.lo(), quot_exact(a.lo(), b.lo(), a.lo() / b.lo())},
                       {a.lo() / b.hi(), quot_exact(a.lo(), b.hi(), a.lo() / b.hi())},
                       {a.hi() / b.lo(), quot_exact(a.hi(), b.lo(), a.hi() / b.lo())},
                       {a.hi() / b.hi(), quot_exact(a.hi(), b.hi(), a.hi() / b.hi())}};
    Cand lo = p[0], hi = p[0];
    for (int i = 1; i < 4; ++i) {
        const Cand& c = p[i];
        if (c.v < lo.v)
            lo = c;
        else if (c.v == lo.v)
            lo.exact = lo.exact && c.exact;
        if (c.v > hi.v)
            hi = c;
        else if (c.v == hi.v)
            hi.exact = hi.exact && c.exact;
    }
    return widen_sel(lo.v, hi.v, lo.exact, hi.exact);
}

Interval hull(const Interval& a, const Interval& b) {
    return Interval::unchecked(std::min(a.lo(), b.lo()), std::max(a.hi(), b.hi()));
}

Interval intersect(const Interval& a, const Interval& b) {
    double lo = std::max(a.lo(), b.lo());
    double hi = std::min(a.hi(), b.hi());
    if (lo > hi) throw DomainViolation("empty intersection");
    return Interval::unchecked(lo, hi);
}

Interval imin(const Interval& a, const Interval& b) {
    return Interval::unchecked(std::min(a.lo(), b.lo()), std::min(a.hi(), b.hi()));
}

Interval imax(const Interval& a, const Interval& b) {
    return Interval::unchecked(std::max(a.lo(), b.lo()), std::max(a.hi(), b.hi()));
}

Interval iabs(const Interval& a) {
    if (a.lo() >= 0) return a;
    if (a.hi() <= 0) return -a;
    return Interval::unchecked(0.0, a.mag());
}

Interval sqr(const Interval& a) {
    double m = a.mag(), n = a.mig();
    double lo = n * n, hi = m * m;
    return widen_sel(lo, hi, prod_exact(n, n, lo), prod_exact(m, m, hi));
}

Interval sqrt(const Interval& a) {
    if (a.lo() < 0) throw DomainViolation("sqrt of interval with negative part: " + a.str());
    // IEEE sqrt is correctly rounded
    double lo = std::sqrt(a.lo());
    double hi = std::sqrt(a.hi());
    Interval r = widen_sel(lo, hi, prod_exact(lo, lo, a.lo()), prod_exact(hi, hi, a.hi()));
    return Interval::unchecked(std::max(0.0, r.lo()), r.hi());
}

Interval exp(const Interval& a) {
    double lo = std::exp(a.lo());
    double hi = std::exp(a.hi());
    Interval r = Interval::unchecked(a.lo() == 0.0 ? 1.0 : lo, a.hi() == 0.0 ? 1.0 : hi);
    for (int i = 0; i < LIBM_ULPS; ++i)
        r = Interval::unchecked(a.lo() == 0.0 ? 1.0 : step_down(r.lo()),
                                a.hi() == 0.0 ? 1.0 : step_up(r.hi()));
    return Interval::unchecked(std::max(0.0, r.lo()), r.hi());
}

Interval log(const Interval& a) {
    if (a.lo() <= 0) throw DomainViolation("log of interval reaching 0: " + a.str());
    double lo = a.lo() == 1.0 ? 0.0 : std::log(a.lo());
    double hi = a.hi() == 1.0 ? 0.0 : std::log(a.hi());
    Interval r(lo, hi);
    for (int i = 0; i < LIBM_ULPS; ++i)
        r = Interval::unchecked(a.lo() == 1.0 ? 0.0 : step_down(r.lo()),
                                a.hi() == 1.0 ? 0.0 : step_up(r.hi()));
    return r;
}

namespace {

// integer enclosure of floor(x / (pi/2)) used to locate extrema of sin/cos
long long quadrant_floor(double x, bool up) {
    // pi/2 lower/upper bounds
    static const double hp_lo = half_pi().lo();
    static const double hp_hi = half_pi().hi();
    double q = up ? x / hp_lo : x / hp_hi;
    double f = std::floor(q);
    // conservative slack of one unit; widths here only add extrema checks
    return (long long)f + (up ? 1 : -1);
}

} // namespace

Interval sin(const Interval& a) {
    if (a.lo() == 0.0 && a.hi() == 0.0) return Interval(0.0);
    if (a.width() >= two_pi().hi()) return Interval(-1.0, 1.0);
    double slo = std::sin(a.lo()), shi = std::sin(a.hi());
    Interval r = widen(std::min(slo, shi), std::max(slo, shi), LIBM_ULPS);
    // widen to +-1 if a critical point pi/2 + k*pi may lie inside
    long long k_lo = quadrant_floor(a.lo(), false);
    long long k_hi = quadrant_floor(a.hi(), true);
    for (long long k = k_lo; k <= k_hi; ++k) {
        if (k % 2 == 0) continue; // extrema of sin at odd multiples of pi/2
        Interval crit = Interval((double)k) * half_pi();
        if (crit.hi() >= a.lo() && crit.lo() <= a.hi()) {
            long long m = ((k % 4) + 4) % 4;
            if (m == 1)
                r = hull(r, Interval(1.0));
            else
                r = hull(r, Interval(-1.0));
        }
    }
    return intersect(r, Interval(-1.0, 1.0));
}

Interval cos(const Interval& a) {
    if (a.lo() == 0.0 && a.hi() == 0.0) return Interval(1.0);
    if (a.width() >= two_pi().hi()) return Interval(-1.0, 1.0);
    double clo = std::cos(a.lo()), chi = std::cos(a.hi());
    Interval r = widen(std::min(clo, chi), std::max(clo, chi), LIBM_ULPS);
    long long k_lo = quadrant_floor(a.lo(), false);
    long long k_hi = quadrant_floor(a.hi(), true);
    for (long long k = k_lo; k <= k_hi; ++k) {
        if (k % 2 != 0) continue; // extrema of cos at multiples of pi
        Interval crit = Interval((double)k) * half_pi();
        if (crit.hi() >= a.lo() && crit.lo() <= a.hi()) {
            long long m = ((k % 4) + 4) % 4;
            if (m == 0)
                r = hull(r, Interval(1.0));
            else
                r = hull(r, Interval(-1.0));
        }
    }
    return intersect(r, Interval(-1.0, 1.0));
}

namespace {
// monotone increasing libm function with f(0) = 0 exactly
template <class F>
Interval odd_monotone(const Interval& a, F f) {
    double lo = a.lo() == 0.0 ? 0.0 : f(a.lo());
    double hi = a.hi() == 0.0 ? 0.0 : f(a.hi());
    Interval r(lo, hi);
    for (int i = 0; i < LIBM_ULPS; ++i)
        r = Interval::unchecked(a.lo() == 0.0 ? 0.0 : step_down(r.lo()),
                                a.hi() == 0.0 ? 0.0 : step_up(r.hi()));
    return r;
}
} // namespace

Interval atan(const Interval& a) {
    return odd_monotone(a, [](double x) { return std::atan(x); });
}

Interval asin(const Interval& a) {
    if (a.lo() < -1.0 || a.hi() > 1.0)
        throw DomainViolation("asin argument outside [-1,1]: " + a.str());
    Interval r = odd_monotone(a, [](double x) { return std::asin(x); });
    return intersect(r, Interval::unchecked(-half_pi().hi(), half_pi().hi()));
}

Interval acos(const Interval& a) {
    if (a.lo() < -1.0 || a.hi() > 1.0)
        throw DomainViolation("acos argument outside [-1,1]: " + a.str());
    double lo = a.hi() == 1.0 ? 0.0 : std::acos(a.hi());
    double hi = a.lo() == 1.0 ? 0.0 : std::acos(a.lo());
    Interval r(lo, hi);
    for (int i = 0; i < LIBM_ULPS; ++i)
        r = Interval::unchecked(a.hi() == 1.0 ? 0.0 : step_down(r.lo()),
                                a.lo() == 1.0 ? 0.0 : step_up(r.hi()));
    return intersect(r, Interval::unchecked(0.0, pi().hi()));
}

Interval asinh(const Interval& a) {
    return odd_monotone(a, [](double x) { return std::asinh(x); });
}

Interval pow_int(const Interval& a, int n) {
    if (n == 0) return Interval(1.0);
    if (n < 0) return Interval(1.0) / pow_int(a, -n);
    if (n == 1) return a;
    if (n % 2 == 0 && a.contains_zero()) {
        Interval m = pow_int(iabs(a), n / 2);
        return sqr(m);
    }
    Interval r(1.0);
    Interval base = a;
    int e = n;
    while (e > 0) {
        if (e & 1) r = r * base;
        e >>= 1;
        if (e) base = sqr(base);
    }
    return r;
}

Interval pow(const Interval& a, const Interval& b) {
    if (a.lo() <= 0) throw DomainViolation("pow base must be positive: " + a.str());
    return exp(b * log(a));
}

namespace {
Interval const_pm(double nearest) {
    return Interval::unchecked(step_down(nearest), step_up(nearest));
}
} // namespace

Interval pi() {
    static const Interval v = const_pm(3.14159265358979323846);
    return v;
}
Interval two_pi() {
    static const Interval v = const_pm(6.28318530717958647692);
    return v;
}
Interval half_pi() {
    static const Interval v = const_pm(1.57079632679489661923);
    return v;
}
Interval euler_e() {
    static const Interval v = const_pm(2.71828182845904523536);
    return v;
}
Interval euler_gamma() {
    static const Interval v = const_pm(0.57721566490153286061);
    return v;
}
Interval ln2() {
    static const Interval v = const_pm(0.69314718055994530942);
    return v;
}
Interval sqrt2() {
    static const Interval v = const_pm(1.41421356237309504880);
    return v;
}

namespace {

// B_{2k}/(2k(2k-1)) for the Stirling series, as exact fractions
struct Frac {
    double num, den;
};
constexpr Frac STIRLING[] = {
    {1.0, 12.0},        {-1.0, 360.0},        {1.0, 1260.0},      {-1.0, 1680.0},
    {1.0, 1188.0},      {-691.0, 360360.0},   {1.0, 156.0},       {-3617.0, 122400.0},
    {43867.0, 244188.0} // k = 9, used only to bound the remainder
};

Interval lgamma_core(const Interval& x) {
    // requires x.lo >= 8
    Interval half(0.5);
    Interval r = (x - half) * log(x) - x;
    // log(2*pi)/2
    r += (log(two_pi())) * half;
    Interval inv = Interval(1.0) / x;
    Interval inv2 = sqr(inv);
    Interval p = inv;
    constexpr int K = 8;
    for (int k = 0; k < K; ++k) {
        r += Interval(STIRLING[k].num) / Interval(STIRLING[k].den) * p;
        p = p * inv2;
    }
    // remainder enclosed by twice the first omitted term
    Interval rem = Interval(2.0) * iabs(Interval(STIRLING[K].num) / Interval(STIRLING[K].den) * p);
    r += Interval::unchecked(-rem.hi(), rem.hi());
    return r;
}

} // namespace

Interval lgamma_real(const Interval& x) {
    if (x.lo() <= 0) throw DomainViolation("lgamma_real requires positive argument: " + x.str());
    if (x.lo() >= 8.0) return lgamma_core(x);
    // ln Gamma(x) = ln Gamma(x+n) - sum ln(x+k)
    int n = (int)std::ceil(8.0 - x.lo());
    Interval shifted = x + Interval((double)n);
    Interval r = lgamma_core(shifted);
    for (int k = 0; k < n; ++k) r -= log(x + Interval((double)k));
    return r;
}

Interval gamma_real(const Interval& x) {
    if (x.lo() <= 0) throw DomainViolation("gamma_real requires positive argument: " + x.str());
    if (x.lo() == 1.0 && x.hi() == 1.0) return Interval(1.0);
    if (x.lo() == 2.0 && x.hi() == 2.0) return Interval(1.0);
    return exp(lgamma_real(x));
}

namespace {

// Si by the alternating Taylor series; valid for any x, tight for |x| <= ~20
Interval si_series(double x) {
    Interval xi(x);
    Interval x2 = sqr(xi);
    Interval term = xi; // x^(2k+1)/(2k+1)! at k=0
    Interval sum = term;
    Interval fac_term = xi;
    for (int k = 1; k <= 60; ++k) {
        double a = 2.0 * k, b = 2.0 * k + 1.0;
        fac_term = fac_term * x2 / Interval(a * b);
        Interval contrib = fac_term / Interval(b);
        if (k % 2 == 1)
            sum -= contrib;
        else
            sum += contrib;
        if (fac_term.mag() < 1e-30 * std::max(1.0, sum.mag())) {
            // alternating with decreasing terms from here; remainder below next term
            double r = (fac_term / Interval(b)).mag();
            return sum + Interval::unchecked(-r, r);
        }
    }
    double r = fac_term.mag();
    return sum + Interval::unchecked(-r, r);
}

// Si(x) = pi/2 - cos(x) P(x) - sin(x) Q(x) with enveloping asymptotic P, Q;
// remainders bounded by the first omitted term (x > 0)
Interval si_asymptotic(double x) {
    Interval xi(x);
    Interval inv = Interval(1.0) / xi;
    Interval inv2 = sqr(inv);
    // P = sum (-1)^k (2k)! / x^(2k+1), Q = sum (-1)^k (2k+1)! / x^(2k+2)
    Interval P(0.0), Q(0.0);
    Interval tP = inv;        // (2k)!/x^(2k+1), k=0
    Interval tQ = inv2;       // (2k+1)!/x^(2k+2), k=0
    int K = 8;
    int sign = 1;
    for (int k = 0; k < K; ++k) {
        P += Interval((double)sign) * tP;
        Q += Interval((double)sign) * tQ;
        tP = tP * Interval((2.0 * k + 1) * (2.0 * k + 2)) * inv2;
        tQ = tQ * Interval((2.0 * k + 2) * (2.0 * k + 3)) * inv2;
        sign = -sign;
    }
    P += Interval::unchecked(-tP.hi(), tP.hi());
    Q += Interval::unchecked(-tQ.hi(), tQ.hi());
    return half_pi() - cos(xi) * P - sin(xi) * Q;
}

} // namespace

Interval si(double x) {
    if (x == 0.0) return Interval(0.0);
    if (x < 0.0) return -si(-x);
    if (x <= 20.0) return si_series(x);
    return si_asymptotic(x);
}

Interval e1(double x) {
    if (x <= 0.0) throw DomainViolation("e1 requires x > 0");
    if (x <= 1.5) {
        // E1(x) = -gamma - log x + sum_{k>=1} (-1)^{k+1} x^k / (k k!)
        Interval xi(x);
        Interval sum(0.0);
        Interval term(1.0);
        for (int k = 1; k <= 40; ++k) {
            term = term * xi / Interval((double)k);
            Interval contrib = term / Interval((double)k);
            if (k % 2 == 1)
                sum += contrib;
            else
                sum -= contrib;
            if (term.mag() < 1e-25) {
                double r = contrib.mag();
                sum += Interval::unchecked(-r, r);
                break;
            }
        }
        return -euler_gamma() - log(xi) + sum;
    }
    // e^-x/(x+1) <= E1(x) <= e^-x/x
    Interval xi(x);
    Interval ex = exp(-xi);
    return Interval::unchecked((ex / (xi + 1.0)).lo(), (ex / xi).hi());
}

} // namespace arcs::ival
