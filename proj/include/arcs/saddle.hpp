#pragma once

#include "arcs/errors.hpp"
#include "arcs/ival.hpp"
#include "arcs/vopt.hpp"

#include <string>
#include <vector>

namespace arcs::saddle {

using ival::Interval;
using vopt::Taylor5;

// ---------------------------------------------------------------------------
// Profile functions of rho = |tau| / (pi delta)^2. The raw closed forms
//
//   j = sqrt(1 + rho^2),  ups = sqrt((1+j)/2)
//   Ups = sqrt(1 + r^2) - r,            r = rho / (2 ups (ups + j))
//   cos0 = sqrt(1/2 + 1/(2 ups)),       sin0 = sqrt(1/2 - 1/(2 ups))
//   c0 = Ups cos0 + sin0,               c1 = sqrt((1+1/ups)/(ups^2-ups)) Ups
//   eta = (1/2) sqrt(2j/(ups^2-ups)) (1+Ups^2) - Ups^2/2
//         + 1/2 - 1/(2 ups) - rho Ups / (j+1)
//
// cancel badly near rho = 0, so the implementation uses the algebraically
// identical regularized forms built on
//
//   ups - 1 = rho^2 / (2 (j+1)(ups+1)),
//   sin0    = rho / (2 sqrt(ups (j+1)(ups+1))),
//   c1*rho  = Ups sqrt(2 (1+1/ups)(j+1)(ups+1)/ups).
//
// The same quantities viewed from infinity are provided in the variable
// u = 1/sqrt(rho) (profile_u), regular at u = 0.
// ---------------------------------------------------------------------------

namespace detail {

template <class T>
struct Parts {
    T j, ups, r, Ups, sin0, cos0, c0, c1rho; // c1rho = c1 * rho, regular at 0
};

template <class T>
Parts<T> parts_rho(const T& rho) {
    using std::sqrt; // no-op; real overloads found by ADL
    Parts<T> p;
    p.j = sqrt(1.0 + rho * rho);
    p.ups = sqrt((1.0 + p.j) / 2.0);
    p.r = rho / (2.0 * p.ups * (p.ups + p.j));
    p.Ups = sqrt(1.0 + p.r * p.r) - p.r;
    p.sin0 = rho / (2.0 * sqrt(p.ups * (p.j + 1.0) * (p.ups + 1.0)));
    p.cos0 = sqrt(0.5 + 0.5 / p.ups);
    p.c0 = p.Ups * p.cos0 + p.sin0;
    p.c1rho = p.Ups * sqrt(2.0 * (1.0 + 1.0 / p.ups) * (p.j + 1.0) * (p.ups + 1.0) / p.ups);
    return p;
}

// rho * eta(rho); regular down to rho = 0 where it equals 4
template <class T>
T rho_eta(const T& rho) {
    Parts<T> p = parts_rho<T>(rho);
    T u2 = p.Ups * p.Ups;
    T root = sqrt(p.j * (p.j + 1.0) * (p.ups + 1.0) / p.ups);
    return root * (1.0 + u2) - rho * u2 / 2.0 + rho / 2.0 - rho / (2.0 * p.ups) -
           rho * rho * p.Ups / (p.j + 1.0);
}

template <class T>
T eta_curv(const T& rho) {
    return rho_eta<T>(rho) / rho;
}

// the same functions in the variable u = 1/sqrt(rho); u = 0 is rho = infinity
template <class T>
struct PartsU {
    T ju2, w, r, Ups, sin0, cos0, c0, c1su; // ju2 = j u^2, w = ups u, c1su = c1 sqrt(rho)
};

template <class T>
PartsU<T> parts_u(const T& u) {
    PartsU<T> p;
    T u2 = u * u;
    p.ju2 = sqrt(1.0 + u2 * u2);
    p.w = sqrt((u2 + p.ju2) / 2.0);
    p.r = u / (2.0 * p.w * (p.w * u + p.ju2));
    p.Ups = sqrt(1.0 + p.r * p.r) - p.r;
    p.sin0 = sqrt(0.5 - u / (2.0 * p.w));
    p.cos0 = sqrt(0.5 + u / (2.0 * p.w));
    p.c0 = p.Ups * p.cos0 + p.sin0;
    p.c1su = p.Ups * (1.0 + u / p.w) * sqrt(2.0 * (p.ju2 + u2));
    return p;
}

template <class T>
T eta_u(const T& u) {
    PartsU<T> p = parts_u<T>(u);
    T u2 = u * u;
    T root = sqrt(2.0 * p.ju2 / (p.w * p.w - p.w * u));
    T U2 = p.Ups * p.Ups;
    return root * (1.0 + U2) / 2.0 - U2 / 2.0 + 0.5 - u / (2.0 * p.w) - p.Ups / (p.ju2 + u2);
}

} // namespace detail

struct RhoProfile {
    Interval rho;
    Interval j, upsilon, sin_theta0, cos_theta0, Upsilon, c0, c1, eta_curv, E;
};

// requires rho.lo > 0 (c1 and eta_curv are singular at 0)
RhoProfile rho_profile(const Interval& rho);

// E(rho) = (arccos(1/ups) - 2(ups-1)/rho) / 2, evaluated in the regular form
// arccos(1/ups)/2 - rho/(2(j+1)(ups+1)); defined for rho >= 0
Interval E_of(const Interval& rho);
// beta form: pi/4 - beta/2 - sin(2 beta)/(4(1+sin beta)), beta = arcsin(1/ups)
Interval E_beta_form(const Interval& rho);
// max of the cubic minorant rho/8 - 5 rho^3/384 and the beta-form enclosure
Interval E_lower(const Interval& rho);
// piecewise minorant: 0.1598 for rho >= 1.5, 0.1065 rho below
Interval L_piecewise(const Interval& rho);

// ---------------------------------------------------------------------------
// Envelopes for |F_delta(sigma + i tau)|, the Mellin transform of the
// twisted Gaussian exp(-t^2/2) e(delta t).
// ---------------------------------------------------------------------------

struct PrincoBoundTerms {
    double sigma = 0, tau = 0, delta = 0;
    double ell = 0; // -2 pi delta
    bool same_sign_branch = false;
    Interval C0, C1, C2, Cprime;
    Interval exp0, exp1, exp2, exp_prime; // positive exponents; term = C exp(-e)
    Interval total;
    double log_total = 0; // log of the upper bound, safe against underflow
};

// sgn(delta) != sgn(tau): three-term saddle-point envelope; otherwise (or
// delta = 0, |tau| >= 2) the quarter-pi branch. sigma < 0 is not covered.
PrincoBoundTerms princo_bound(double sigma, double tau, double delta);

// bound for |F_delta(s+k)| + |F_delta(k+1-s)|, k in {0,1,2}, sigma in [0,1],
// |tau| >= max(100, 4 pi^2 |delta|)
Interval amanita_bound(int k, double sigma, double tau, double delta);
double amanita_bound_log(int k, double sigma, double tau, double delta);
// the same closed form without the validity-range check (diagnostics only)
Interval amanita_formula(int k, double tau, double delta);

// min of the elementary envelopes 2^(sigma/2-1) Gamma(sigma/2) (sigma in
// (0,1]) and sqrt(pi/2)(1+2 pi |delta|)/|s| (sigma in [0,1], s != 0)
Interval trivial_bounds(double sigma, double delta, double s_mag);

// P_sigma polynomial of the tail term, sigma >= 0, x > 0
Interval p_sigma(double sigma, const Interval& x);

// ---------------------------------------------------------------------------
// Verification suite: the inequalities the envelope constants rest on.
// ---------------------------------------------------------------------------

struct SuiteItem {
    std::string name;
    std::string claim;
    std::string method;
    bool verified = false;
    bool has_enclosure = false;
    Interval enclosure;
    std::string detail;
};

struct VerificationReport {
    std::vector<SuiteItem> items;
    bool all_verified = true;
};

// full suite; perturb_for_test injects a deliberate failure (harness hook)
VerificationReport appendix_suite(bool perturb_for_test = false);

} // namespace arcs::saddle
