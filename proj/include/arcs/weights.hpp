#pragma once

#include "arcs/errors.hpp"
#include "arcs/ival.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace arcs::weights {

using ival::Interval;

enum class Kind { GaussianHeart, T2Gaussian, StarConv, EtaPlus };

std::string kind_name(Kind k);
Kind kind_from_name(const std::string& name);

// ---------------------------------------------------------------------------
// Base functions.
//   gauss_heart(t) = exp(-t^2/2)
//   t2gauss(t)     = t^2 exp(-t^2/2)
//   h(t)           = t^2 (2-t)^3 e^{t-1/2} on [0,2], 0 elsewhere
//   eta_circ(t)    = h(t) t e^{-t^2/2} = t^3 (2-t)^3 e^{-(t-1)^2/2} on [0,2]
//   eta2(t)        = 4 log(4t) on [1/4,1/2], 4 log(1/t) on [1/2,1], else 0
//   eta_star       = eta2 *_M t2gauss  (multiplicative convolution)
//   eta_plus(t)    = h_H(t) t exp(-t^2/2), h_H the band-limited cut of h
// ---------------------------------------------------------------------------

// h and its derivatives: h^{(k)}(x) = G_k(x) e^{x-1/2} with integer-coefficient
// polynomials G_k; valid on [0,2], zero outside (k = 0 only)
Interval h_fn(const Interval& x, int deriv = 0);
double h_fn_d(double x, int deriv = 0);

Interval eta_circ(const Interval& t);
Interval eta2(const Interval& t);

// pointwise h_H at double precision (oracle grade, cached grid inside)
double h_H(double t, double H);
// eta_plus pointwise, oracle grade
double eta_plus_d(double t, double H);
// eta_star pointwise, oracle grade
double eta_star_d(double t);

struct Weight {
    Kind kind = Kind::GaussianHeart;
    double H = 0.0; // EtaPlus only; requires H >= 50

    static Weight gaussian() { return {Kind::GaussianHeart, 0.0}; }
    static Weight t2gaussian() { return {Kind::T2Gaussian, 0.0}; }
    static Weight star_conv() { return {Kind::StarConv, 0.0}; }
    static Weight eta_plus(double H) { return {Kind::EtaPlus, H}; }

    double eta0() const { return kind == Kind::GaussianHeart ? 1.0 : 0.0; }
    // enclosure of the pointwise value; EtaPlus and StarConv carry the
    // documented oracle slack of their numerical evaluators
    Interval eval(double t) const;
    // plain double evaluation for summation loops
    double eval_d(double t) const;
    // t beyond which the weight is below 1e-25 (summation cutoff)
    double support_cutoff() const;
};

// ---------------------------------------------------------------------------
// C_k constants and root enclosures of H_k = G_k (same zeros as h^{(k)}).
// ---------------------------------------------------------------------------

struct CkConstants {
    Interval C0, C1, C2, C3, C4;
    Interval alpha21, alpha22, alpha31, alpha32, alpha41, alpha42;
    Interval c4_interior; // integral part of C4 before the jump term
};

const CkConstants& ck_constants();

// l1 bounds for |Mh(it)| and |(t+i) Mh(it)| from the C_k majorant
struct MhL1Bounds {
    Interval plain;   // |Mh(it)|_1
    Interval weighted; // |(t+i) Mh(it)|_1
};
MhL1Bounds mh_l1_bounds(const CkConstants& c);
inline MhL1Bounds mh_l1_bounds() { return mh_l1_bounds(ck_constants()); }

// ---------------------------------------------------------------------------
// Norms. Entries are upper bounds unless noted exact (two-sided).
// ---------------------------------------------------------------------------

struct NormTable {
    std::optional<Interval> l2, l2_log, deriv_l2;
    std::optional<Interval> l1_over_sqrt_t, l1_times_sqrt_t;
    std::optional<Interval> deriv_l1_over_sqrt_t, deriv_l1_times_sqrt_t;
    std::optional<Interval> linf, linf_log, linf_over_t, linf_times_t;

    Interval get(const std::optional<Interval>& e, const char* name) const {
        if (!e) throw UnsupportedNorm(std::string("norm not available: ") + name);
        return *e;
    }
    Interval L2() const { return get(l2, "l2"); }
    Interval L2Log() const { return get(l2_log, "l2_log"); }
    Interval DerivL2() const { return get(deriv_l2, "deriv_l2"); }
    Interval L1OverSqrtT() const { return get(l1_over_sqrt_t, "l1_over_sqrt_t"); }
    Interval L1TimesSqrtT() const { return get(l1_times_sqrt_t, "l1_times_sqrt_t"); }
    Interval DerivL1OverSqrtT() const {
        return get(deriv_l1_over_sqrt_t, "deriv_l1_over_sqrt_t");
    }
    Interval DerivL1TimesSqrtT() const {
        return get(deriv_l1_times_sqrt_t, "deriv_l1_times_sqrt_t");
    }
};

NormTable norm_table(const Weight& w);

// |eta_plus t^sigma|_1 and |eta_plus' t^sigma|_1 bounds, sigma > -2 resp. -1
Interval etaplus_l1_t_sigma(double sigma);
Interval etaplus_deriv_l1_t_sigma(double sigma);

// moments of eta2 in closed form: int w^sigma eta2(w) dw for
// sigma in {0, -1/2, -1, -3/2}
struct Eta2Moments {
    Interval m0, m_half, m_one, m_3half;
};
const Eta2Moments& eta2_moments();

// |eta_plus - eta_circ|_2 bound, and the same with a |log t| factor inside
// the square integral (the latter is the squared bound)
Interval etaplus_circ_l2(double H);
Interval etaplus_circ_l2log_sq(double H);
// max of t^3 e^{-t^2} |log t|, certified by bisection
Interval circ_l2log_max_factor();

// |h'|_inf = |h'(alpha22)|
Interval h_prime_inf();

// rigorous enclosure of int_0^2 eta_circ(t)^2 dt (used by the l2 norms)
Interval eta_circ_l2_sq();

} // namespace arcs::weights
