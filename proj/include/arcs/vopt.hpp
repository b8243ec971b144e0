#pragma once

#include "arcs/ival.hpp"

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace arcs::vopt {

using ival::Interval;

// Degree-5 Taylor arithmetic. Coefficients are interval enclosures of
// f^(k)(x0)/k! where x0 may itself be an interval; in that case coefficient k
// encloses f^(k)/k! over the whole box, which is what the branch-and-bound
// engine needs for centered forms and derivative sign checks.
struct Taylor5 {
    static constexpr int ORDER = 5;
    std::array<Interval, ORDER + 1> c;

    static Taylor5 constant(const Interval& v) {
        Taylor5 t;
        t.c[0] = v;
        for (int k = 1; k <= ORDER; ++k) t.c[k] = Interval(0.0);
        return t;
    }
    static Taylor5 variable(const Interval& x0) {
        Taylor5 t = constant(x0);
        t.c[1] = Interval(1.0);
        return t;
    }
};

Taylor5 operator+(const Taylor5& a, const Taylor5& b);
Taylor5 operator-(const Taylor5& a, const Taylor5& b);
Taylor5 operator*(const Taylor5& a, const Taylor5& b);
Taylor5 operator/(const Taylor5& a, const Taylor5& b);
Taylor5 operator-(const Taylor5& a);

inline Taylor5 operator+(const Taylor5& a, const Interval& b) {
    return a + Taylor5::constant(b);
}
inline Taylor5 operator+(const Interval& a, const Taylor5& b) {
    return Taylor5::constant(a) + b;
}
inline Taylor5 operator-(const Taylor5& a, const Interval& b) {
    return a - Taylor5::constant(b);
}
inline Taylor5 operator-(const Interval& a, const Taylor5& b) {
    return Taylor5::constant(a) - b;
}
inline Taylor5 operator*(const Taylor5& a, const Interval& b) {
    return a * Taylor5::constant(b);
}
inline Taylor5 operator*(const Interval& a, const Taylor5& b) {
    return Taylor5::constant(a) * b;
}
inline Taylor5 operator/(const Taylor5& a, const Interval& b) {
    return a / Taylor5::constant(b);
}
inline Taylor5 operator/(const Interval& a, const Taylor5& b) {
    return Taylor5::constant(a) / b;
}
inline Taylor5 operator+(const Taylor5& a, double b) { return a + Interval(b); }
inline Taylor5 operator-(const Taylor5& a, double b) { return a - Interval(b); }
inline Taylor5 operator*(const Taylor5& a, double b) { return a * Interval(b); }
inline Taylor5 operator/(const Taylor5& a, double b) { return a / Interval(b); }
inline Taylor5 operator*(double a, const Taylor5& b) { return Interval(a) * b; }
inline Taylor5 operator+(double a, const Taylor5& b) { return Interval(a) + b; }
inline Taylor5 operator-(double a, const Taylor5& b) { return Interval(a) - b; }
inline Taylor5 operator/(double a, const Taylor5& b) { return Interval(a) / b; }

Taylor5 sqrt(const Taylor5& a);
Taylor5 exp(const Taylor5& a);
Taylor5 log(const Taylor5& a);
Taylor5 sin(const Taylor5& a);
Taylor5 cos(const Taylor5& a);
Taylor5 sqr(const Taylor5& a);
Taylor5 pow_int(const Taylor5& a, int n);

// Functions handed to the engine: a plain interval extension plus a Taylor
// expansion usable at interval points.
using Fn = std::function<Interval(const Interval&)>;
using TFn = std::function<Taylor5(const Interval&)>;

// taylor5_eval: expansion of an expression at an interval point (the spec
// operation); just evaluates the TFn but validates domain errors.
Taylor5 taylor5_eval(const TFn& f, const Interval& x0);

// interval extension via the Taylor function
Fn fn_of(const TFn& f);

// Tight range enclosure on a box: intersection of the direct extension and
// the first-order centered form f(mid) + f'(B)(B - mid).
Interval tight_eval(const TFn& f, const Interval& box);

struct BisectTask {
    TFn f;
    Interval domain;
    int max_depth = 32;
    int initial_splits = 0;
};

struct Enclosure {
    Interval value;
    bool depth_exhausted = false; // pending boxes still wide at max_depth
};

// [L, U] with L <= min f <= U over the domain. One iteration splits every
// pending box at its midpoint; pruning starts after initial_splits levels.
Enclosure enclose_min(const BisectTask& task);
Enclosure enclose_max(const BisectTask& task);

enum class Outcome { Verified, Counterexample, Inconclusive };

struct VerifyResult {
    Outcome outcome = Outcome::Inconclusive;
    std::optional<Interval> box; // counterexample or undecided box
    std::string detail;
    bool verified() const { return outcome == Outcome::Verified; }
};

// Verified iff inf f > sup g on every leaf box of the subdivision.
VerifyResult verify_gt(const TFn& f, const TFn& g, const Interval& domain, int max_depth = 40,
                       int initial_splits = 4);
VerifyResult verify_ge(const TFn& f, const TFn& g, const Interval& domain, int max_depth = 40,
                       int initial_splits = 4);

// g > 0 on (0, u0] given g(0) = ... = g^(m-1)(0) = 0 exactly and g^(m) > 0 on
// [0, u0]; the coefficient conditions are checked, not assumed.
VerifyResult verify_positive_near_zero(const TFn& g, double u0, int order, int max_depth = 36,
                                       int initial_splits = 4);

// Compact-range bisection plus a caller-supplied tail statement. The tail
// minorant is written in the variable u = 1/rho or 1/sqrt(rho) so its domain
// (0, u_boundary] is compact and u = 0 is the point at infinity.
struct TailSpec {
    TFn minorant_u;        // lower bound for f, valid for rho >= boundary
    double u_boundary;     // u value corresponding to rho = boundary
    std::string statement; // provenance of the minorant, for the report
};

struct TailVerifyResult {
    bool verified = false;
    std::string failing_component;
};

// f > c on [a, R] by bisection and minorant_u > c on [0, u(R)].
TailVerifyResult verify_with_tail(const TFn& f_core, double c, const Interval& core_domain,
                                  const TailSpec& tail, int max_depth = 40, int initial_splits = 6);

// Composite interval Simpson with the f'''' remainder taken from the Taylor
// coefficients; subdivides until the enclosure width per unit length is below
// tol or depth runs out.
Interval integrate_verified(const TFn& f, const Interval& domain, double tol = 1e-12,
                            int max_depth = 24);

} // namespace arcs::vopt
