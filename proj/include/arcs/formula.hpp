#pragma once

#include "arcs/arith.hpp"
#include "arcs/errors.hpp"
#include "arcs/ival.hpp"
#include "arcs/quadmell.hpp"
#include "arcs/weights.hpp"

#include <complex>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace arcs::formula {

using ival::Interval;
using weights::Weight;

// ---------------------------------------------------------------------------
// GRH verification window: zeros of L(s, chi) with |Im| <= T0 assumed on the
// critical line. Defaults follow the published verification ranges:
// T_q = 1e8/q for odd q <= 3e5, max(1e8/q, 200 + 7.5e7/q) for even q <= 4e5.
// ---------------------------------------------------------------------------

struct GrhWindow {
    std::uint64_t q = 1;
    double T0 = 1e8;

    static GrhWindow defaults(std::uint64_t q);
    static GrhWindow with(std::uint64_t q, double T0) { return {q, T0}; }
};

// two-sided enclosure of the zero count N(T, chi) (zeros with |Im| <= T)
Interval zero_count(double T, std::uint64_t q);

// upper bound for |R|, the residue term of the explicit formula
Interval residue_bound(const Weight& w, std::uint64_t q, double delta);

// upper bound for sum over |Im rho| <= T0 of |G_delta(rho)| (caller scales by sqrt x)
Interval low_zero_sum_bound(const Weight& w, std::uint64_t q, double T0);

// upper bound for sum over |Im rho| > T0 of |G_delta(rho)|, log factor included
struct TailBound {
    Interval value;
    double log_upper; // log of the upper end, safe against underflow
};
TailBound tail_zero_sum_bound(const Weight& w, std::uint64_t q, double delta, double T0);

// ---------------------------------------------------------------------------
// err_{eta,chi}(delta, x): the assembled four-line bounds
// ---------------------------------------------------------------------------

struct ErrTerm {
    std::string name;      // tail_zeros | low_zeros | residue | line_integral
    std::string provenance; // which evaluator produced the number
    Interval value;
    double log_upper;
};

struct ErrReport {
    weights::Kind kind;
    std::uint64_t q = 1;
    double delta = 0, x = 0, T0 = 0, H = 0;
    std::vector<ErrTerm> terms;
    Interval total;
    double log_total;
};

ErrReport err_bound(const Weight& w, std::uint64_t q, double delta, double x,
                    const GrhWindow& window);

// the l2-type bound for the squared eta_plus sum (per-criterion constants)
ErrReport err_l2_bound(double H, double T0, double x);

// ---------------------------------------------------------------------------
// theorem-constant reproduction
// ---------------------------------------------------------------------------

enum class TheoremId { Gowo1, Janar, Coprar, Malpor, MalporQ1, Malheur };

TheoremId theorem_from_name(const std::string& name);
std::string theorem_name(TheoremId id);

struct ConstantItem {
    std::string name;
    Interval derived;
    double printed;
    bool pass; // derived.hi <= printed and >= 0.9 * printed
    bool three_sig_figs; // |derived - printed| <= 5e-3 * printed
};

struct ConstantReport {
    TheoremId id;
    std::vector<ConstantItem> items;
    bool all_pass = true;
};

ConstantReport theorem_constants(TheoremId id);

// ---------------------------------------------------------------------------
// zero tables and the explicit-formula residual
// ---------------------------------------------------------------------------

struct ZeroTable {
    std::vector<double> ordinates; // ascending positive
    std::string source;
    std::size_t count_below(double T) const;
};

ZeroTable load_zeros(const std::string& path);
// generate (and cache on disk) a table of zeros up to tmax
ZeroTable ensure_zero_table(const std::string& path, double tmax);

struct ResidualReport {
    std::complex<double> prime_sum;
    std::complex<double> rhs;
    double residual;       // |S - RHS|
    double budget;         // proven bound + oracle slack
    double proven_budget;  // without the oracle slack
    double oracle_error;
    double slack;          // budget / residual
    std::size_t zeros_used;
    std::size_t zeros_evaluated;
};

ResidualReport explicit_residual(double x, double delta, const Weight& w,
                                 const ZeroTable& zeros, double t_cut);

// ---------------------------------------------------------------------------
// direct prime sums
// ---------------------------------------------------------------------------

// S = sum Lambda(n) chi(n) e(delta n / x) w(n/x); one streaming pass computes
// the whole (chi, delta, weight) grid
struct PrimeSumGrid {
    double x;
    std::vector<arith::DirichletChar> chars;
    std::vector<double> deltas;
    std::vector<Weight> weights;
    // result index: ((ci * deltas + di) * weights + wi)
    std::vector<std::complex<double>> sums;
    std::complex<double> at(std::size_t ci, std::size_t di, std::size_t wi) const {
        return sums[(ci * deltas.size() + di) * weights.size() + wi];
    }
};

void compute_prime_sums(PrimeSumGrid& grid);

// sum Lambda(n) log(n) eta_plus^2(n/x)
double prime_sum_l2(double x, double H);

} // namespace arcs::formula
