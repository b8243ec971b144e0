#pragma once

#include "arcs/errors.hpp"
#include "arcs/ival.hpp"

#include <complex>
#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace arcs::arith {

// ---------------------------------------------------------------------------
// von Mangoldt
// ---------------------------------------------------------------------------

struct MangoldtEntry {
    std::uint32_t prime = 0; // 0 when Lambda(n) = 0
    std::uint8_t power = 0;
    double log_p = 0.0;
};

class MangoldtTable {
public:
    // exact table for n <= N; memory budget guards against runaway sizes
    explicit MangoldtTable(std::uint64_t N, std::uint64_t memory_budget_bytes = 1ull << 31);

    std::uint64_t size() const { return N_; }
    // Lambda(n) as (p, k, log p); prime = 0 encodes Lambda(n) = 0
    MangoldtEntry lambda(std::uint64_t n) const;
    bool is_prime(std::uint64_t n) const;
    // sum_{n<=x} Lambda(n), compensated
    double chebyshev_psi(std::uint64_t x) const;

private:
    std::uint64_t N_;
    std::vector<std::uint32_t> spf_; // smallest prime factor, 0 for 0/1
};

// streaming enumeration of prime powers n = p^k <= N in increasing n order is
// not guaranteed; primes come segment by segment, higher powers afterwards.
// f(n, p, k, log_p)
void for_each_prime_power(std::uint64_t N,
                          const std::function<void(std::uint64_t, std::uint64_t, int, double)>& f);

// ---------------------------------------------------------------------------
// Dirichlet characters
// ---------------------------------------------------------------------------

class CharacterGroup;

// character mod q given by exponents on the CRT generators; values are exact
// roots of unity kept as rational phases
class DirichletChar {
public:
    std::uint64_t modulus() const;
    std::uint64_t conductor() const;
    bool is_primitive() const;
    bool is_principal() const;
    int parity() const; // kappa: 0 if chi(-1) = 1, 1 otherwise

    // exact phase a/b with chi(n) = e(a/b); false when chi(n) = 0
    bool phase(std::uint64_t n, std::int64_t* num, std::int64_t* den) const;
    std::complex<double> value(std::uint64_t n) const;

    std::size_t index_in_group() const { return index_; }

private:
    friend class CharacterGroup;
    std::shared_ptr<const CharacterGroup> group_;
    std::vector<std::uint32_t> exponents_; // one per CRT factor
    std::size_t index_ = 0;
};

class CharacterGroup : public std::enable_shared_from_this<CharacterGroup> {
public:
    static std::shared_ptr<const CharacterGroup> make(std::uint64_t q);

    std::uint64_t modulus() const { return q_; }
    std::size_t size() const; // phi(q)
    DirichletChar character(std::size_t index) const;
    std::vector<DirichletChar> all() const;
    std::vector<DirichletChar> primitive() const;

    struct Factor {
        std::uint64_t pk;          // p^e
        std::uint64_t p;
        int e;
        std::vector<std::uint64_t> gen_orders; // cyclic orders, 1 or 2 entries
        std::vector<std::uint32_t> dlog;       // discrete logs, flattened rows
    };
    const std::vector<Factor>& factors() const { return factors_; }

private:
    explicit CharacterGroup(std::uint64_t q);
    std::uint64_t q_;
    std::vector<Factor> factors_;
};

inline std::vector<DirichletChar> characters_mod(std::uint64_t q) {
    return CharacterGroup::make(q)->all();
}

// M(q) = max_n |sum_{m<=n} chi(m)| over a full period (exact maximum)
double m_of_q(const DirichletChar& chi);

// explicit Polya-Vinogradov bound of matching parity
ival::Interval polya_vinogradov(std::uint64_t q, int parity);

std::uint64_t euler_phi(std::uint64_t n);

// ---------------------------------------------------------------------------
// Riemann zeta on the critical line and its zeros (oracle grade; feeds the
// zeros-table generator)
// ---------------------------------------------------------------------------

// Riemann-Siegel theta, asymptotic expansion (t >= 1)
double rs_theta(double t);
// Z(t) = e^{i theta} zeta(1/2 + it), real; Euler-Maclaurin evaluation
double hardy_z(double t);
// ordinates of the zeros with 0 < gamma <= tmax, ascending
std::vector<double> zeta_zeros_up_to(double tmax);
// write/read one-ordinate-per-line tables ('#' comments allowed)
void write_zero_table(const std::string& path, const std::vector<double>& zeros,
                      const std::string& source_label);

} // namespace arcs::arith
