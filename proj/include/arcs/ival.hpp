#pragma once

#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>
#include <string>

namespace arcs::ival {

struct DomainViolation : std::domain_error {
    using std::domain_error::domain_error;
};

struct DivisionByIntervalContainingZero : std::domain_error {
    using std::domain_error::domain_error;
};

// Closed interval [lo, hi] of doubles. Every operation returns an interval
// that contains the true image of its arguments (containment), obtained by
// evaluating in round-to-nearest and widening outward. Arithmetic and sqrt
// are correctly rounded by IEEE-754, so one ulp step suffices; libm
// transcendentals are widened by LIBM_ULPS steps.
class Interval {
public:
    Interval() : lo_(0.0), hi_(0.0) {}
    explicit Interval(double v) : lo_(v), hi_(v) { check(); }
    Interval(double lo, double hi) : lo_(lo), hi_(hi) { check(); }

    static Interval unchecked(double lo, double hi) {
        Interval r;
        r.lo_ = lo;
        r.hi_ = hi;
        return r;
    }

    double lo() const { return lo_; }
    double hi() const { return hi_; }
    double mid() const { return 0.5 * (lo_ + hi_); }
    double width() const { return hi_ - lo_; }
    double rad() const { return 0.5 * (hi_ - lo_); }
    // max |x| over the interval
    double mag() const { return std::max(std::fabs(lo_), std::fabs(hi_)); }
    // min |x| over the interval
    double mig() const {
        if (lo_ > 0) return lo_;
        if (hi_ < 0) return -hi_;
        return 0.0;
    }

    bool contains(double x) const { return lo_ <= x && x <= hi_; }
    bool contains(const Interval& o) const { return lo_ <= o.lo_ && o.hi_ <= hi_; }
    bool subset_of(const Interval& o) const { return o.contains(*this); }
    bool contains_zero() const { return lo_ <= 0.0 && hi_ >= 0.0; }
    bool is_point() const { return lo_ == hi_; }

    std::string str() const;

private:
    void check() const {
        if (std::isnan(lo_) || std::isnan(hi_) || lo_ > hi_)
            throw DomainViolation("invalid interval endpoints");
    }
    double lo_, hi_;
};

inline double step_down(double x) {
    if (x == -std::numeric_limits<double>::infinity()) return x;
    return std::nextafter(x, -std::numeric_limits<double>::infinity());
}
inline double step_up(double x) {
    if (x == std::numeric_limits<double>::infinity()) return x;
    return std::nextafter(x, std::numeric_limits<double>::infinity());
}

// one outward ulp on each side; exact dyadic results stay exact only for +0
inline Interval widen(double lo, double hi, int ulps = 1) {
    for (int i = 0; i < ulps; ++i) {
        lo = step_down(lo);
        hi = step_up(hi);
    }
    return Interval::unchecked(lo, hi);
}

Interval operator+(const Interval& a, const Interval& b);
Interval operator-(const Interval& a, const Interval& b);
Interval operator*(const Interval& a, const Interval& b);
Interval operator/(const Interval& a, const Interval& b);
Interval operator-(const Interval& a);

inline Interval operator+(const Interval& a, double b) { return a + Interval(b); }
inline Interval operator+(double a, const Interval& b) { return Interval(a) + b; }
inline Interval operator-(const Interval& a, double b) { return a - Interval(b); }
inline Interval operator-(double a, const Interval& b) { return Interval(a) - b; }
inline Interval operator*(const Interval& a, double b) { return a * Interval(b); }
inline Interval operator*(double a, const Interval& b) { return Interval(a) * b; }
inline Interval operator/(const Interval& a, double b) { return a / Interval(b); }
inline Interval operator/(double a, const Interval& b) { return Interval(a) / b; }

inline Interval& operator+=(Interval& a, const Interval& b) { return a = a + b; }
inline Interval& operator-=(Interval& a, const Interval& b) { return a = a - b; }
inline Interval& operator*=(Interval& a, const Interval& b) { return a = a * b; }

Interval hull(const Interval& a, const Interval& b);
// throws DomainViolation if disjoint
Interval intersect(const Interval& a, const Interval& b);
Interval imin(const Interval& a, const Interval& b);
Interval imax(const Interval& a, const Interval& b);
Interval iabs(const Interval& a);

Interval sqr(const Interval& a);
Interval sqrt(const Interval& a);
Interval exp(const Interval& a);
Interval log(const Interval& a);
Interval sin(const Interval& a);
Interval cos(const Interval& a);
Interval atan(const Interval& a);
Interval asin(const Interval& a);
Interval acos(const Interval& a);
Interval asinh(const Interval& a);
Interval pow_int(const Interval& a, int n);
// a^b for a.lo > 0
Interval pow(const Interval& a, const Interval& b);

// enclosures of common constants
Interval pi();
Interval two_pi();
Interval half_pi();
Interval euler_e();
Interval euler_gamma();
Interval ln2();
Interval sqrt2();

// Gamma(x) for x.lo > 0, via the recurrence to push the argument >= 8 and a
// Stirling series whose remainder is bounded by twice the first omitted term.
Interval gamma_real(const Interval& x);
Interval lgamma_real(const Interval& x);

// sine integral Si(x) = int_0^x sin t / t dt, any real x
Interval si(double x);
// exponential integral E1(x) = int_x^inf e^-t/t dt, x > 0
Interval e1(double x);

struct ComplexBox {
    Interval re, im;
    ComplexBox() = default;
    ComplexBox(Interval r, Interval i) : re(r), im(i) {}
    explicit ComplexBox(std::complex<double> z) : re(z.real()), im(z.imag()) {}
    Interval mag() const { return sqrt(sqr(re) + sqr(im)); }
};

inline ComplexBox operator+(const ComplexBox& a, const ComplexBox& b) {
    return {a.re + b.re, a.im + b.im};
}
inline ComplexBox operator-(const ComplexBox& a, const ComplexBox& b) {
    return {a.re - b.re, a.im - b.im};
}
inline ComplexBox operator*(const ComplexBox& a, const ComplexBox& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

// ---------------------------------------------------------------------------
// double-double: unevaluated sum hi + lo with |lo| <= ulp(hi)/2.
// Used for compensated accumulation in quadrature and prime sums.
// ---------------------------------------------------------------------------

struct dd {
    double hi = 0.0, lo = 0.0;
    dd() = default;
    dd(double h) : hi(h), lo(0.0) {}
    dd(double h, double l) : hi(h), lo(l) {}
    double to_double() const { return hi + lo; }
};

inline dd two_sum(double a, double b) {
    double s = a + b;
    double bb = s - a;
    double err = (a - (s - bb)) + (b - bb);
    return {s, err};
}

inline dd quick_two_sum(double a, double b) {
    double s = a + b;
    return {s, b - (s - a)};
}

inline dd two_prod(double a, double b) {
    double p = a * b;
    return {p, std::fma(a, b, -p)};
}

inline dd operator+(dd a, dd b) {
    dd s = two_sum(a.hi, b.hi);
    s.lo += a.lo + b.lo;
    return quick_two_sum(s.hi, s.lo);
}
inline dd operator-(dd a, dd b) { return a + dd{-b.hi, -b.lo}; }
inline dd operator*(dd a, dd b) {
    dd p = two_prod(a.hi, b.hi);
    p.lo += a.hi * b.lo + a.lo * b.hi;
    return quick_two_sum(p.hi, p.lo);
}
inline dd operator/(dd a, dd b) {
    double q1 = a.hi / b.hi;
    dd r = a - dd(q1) * b;
    double q2 = r.hi / b.hi;
    r = r - dd(q2) * b;
    double q3 = r.hi / b.hi;
    dd q = quick_two_sum(q1, q2);
    return q + dd(q3);
}
inline dd& operator+=(dd& a, dd b) { return a = a + b; }
inline dd& operator+=(dd& a, double b) { return a = a + dd(b); }

struct cdd {
    dd re, im;
    cdd() = default;
    cdd(dd r, dd i) : re(r), im(i) {}
    cdd(std::complex<double> z) : re(z.real()), im(z.imag()) {}
    std::complex<double> to_complex() const { return {re.to_double(), im.to_double()}; }
};

inline cdd operator+(cdd a, cdd b) { return {a.re + b.re, a.im + b.im}; }
inline cdd operator*(cdd a, cdd b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
inline cdd& operator+=(cdd& a, cdd b) { return a = a + b; }

} // namespace arcs::ival
