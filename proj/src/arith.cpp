#include "arcs/arith.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>

namespace arcs::arith {

// ---------------------------------------------------------------------------
// sieve
// ---------------------------------------------------------------------------

MangoldtTable::MangoldtTable(std::uint64_t N, std::uint64_t memory_budget_bytes) : N_(N) {
    if (N < 2) throw PreconditionViolation("MangoldtTable requires N >= 2");
    std::uint64_t need = (N + 1) * sizeof(std::uint32_t);
    if (need > memory_budget_bytes)
        throw CapacityExceeded("MangoldtTable of size " + std::to_string(N) +
                               " exceeds the memory budget");
    spf_.assign(N + 1, 0);
    for (std::uint64_t i = 2; i <= N; ++i) {
        if (spf_[i] == 0) {
            for (std::uint64_t j = i; j <= N; j += i)
                if (spf_[j] == 0) spf_[j] = (std::uint32_t)i;
        }
    }
}

MangoldtEntry MangoldtTable::lambda(std::uint64_t n) const {
    if (n > N_) throw PreconditionViolation("lambda beyond table size");
    if (n < 2) return {};
    std::uint32_t p = spf_[n];
    std::uint64_t m = n;
    int k = 0;
    while (m % p == 0) {
        m /= p;
        ++k;
    }
    if (m != 1) return {};
    return {p, (std::uint8_t)k, std::log((double)p)};
}

bool MangoldtTable::is_prime(std::uint64_t n) const {
    return n >= 2 && n <= N_ && spf_[n] == n;
}

double MangoldtTable::chebyshev_psi(std::uint64_t x) const {
    if (x > N_) throw PreconditionViolation("psi beyond table size");
    ival::dd acc(0.0);
    for (std::uint64_t n = 2; n <= x; ++n) {
        MangoldtEntry e = lambda(n);
        if (e.prime) acc += e.log_p;
    }
    return acc.to_double();
}

void for_each_prime_power(
    std::uint64_t N, const std::function<void(std::uint64_t, std::uint64_t, int, double)>& f) {
    if (N < 2) return;
    // primes up to sqrt(N)
    std::uint64_t root = (std::uint64_t)std::sqrt((double)N) + 2;
    while (root * root > N + root) --root;
    std::vector<std::uint8_t> small(root + 1, 1);
    std::vector<std::uint64_t> base;
    for (std::uint64_t i = 2; i <= root; ++i) {
        if (!small[i]) continue;
        base.push_back(i);
        for (std::uint64_t j = i * i; j <= root; j += i) small[j] = 0;
    }
    // prime powers p^k, k >= 2 first (few of them)
    for (std::uint64_t p : base) {
        double lp = std::log((double)p);
        std::uint64_t v = p * p;
        int k = 2;
        while (v <= N) {
            f(v, p, k, lp);
            if (v > N / p) break;
            v *= p;
            ++k;
        }
    }
    for (std::uint64_t p : base) f(p, p, 1, std::log((double)p));
    // segmented sieve for primes in (root, N]
    const std::uint64_t SEG = 1 << 20;
    std::vector<std::uint8_t> mark(SEG);
    for (std::uint64_t lo = root + 1; lo <= N; lo += SEG) {
        std::uint64_t hi = std::min(N, lo + SEG - 1);
        std::fill(mark.begin(), mark.begin() + (hi - lo + 1), 1);
        for (std::uint64_t p : base) {
            std::uint64_t start = ((lo + p - 1) / p) * p;
            for (std::uint64_t j = start; j <= hi; j += p) mark[j - lo] = 0;
        }
        for (std::uint64_t n = lo; n <= hi; ++n)
            if (mark[n - lo]) f(n, n, 1, std::log((double)n));
    }
}

// ---------------------------------------------------------------------------
// characters
// ---------------------------------------------------------------------------

namespace {

std::uint64_t pow_mod(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
    unsigned __int128 r = 1, bb = b % m;
    while (e) {
        if (e & 1) r = r * bb % m;
        bb = bb * bb % m;
        e >>= 1;
    }
    return (std::uint64_t)r;
}

std::uint64_t primitive_root(std::uint64_t p) {
    // p an odd prime; factor p-1 and test candidates
    std::uint64_t n = p - 1;
    std::vector<std::uint64_t> fac;
    std::uint64_t m = n;
    for (std::uint64_t d = 2; d * d <= m; ++d) {
        if (m % d == 0) {
            fac.push_back(d);
            while (m % d == 0) m /= d;
        }
    }
    if (m > 1) fac.push_back(m);
    for (std::uint64_t g = 2; g < p; ++g) {
        bool ok = true;
        for (std::uint64_t q : fac)
            if (pow_mod(g, n / q, p) == 1) {
                ok = false;
                break;
            }
        if (ok) return g;
    }
    throw PreconditionViolation("no primitive root found");
}

} // namespace

std::uint64_t euler_phi(std::uint64_t n) {
    std::uint64_t r = n;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            r -= r / d;
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) r -= r / n;
    return r;
}

CharacterGroup::CharacterGroup(std::uint64_t q) : q_(q) {
    if (q == 0) throw PreconditionViolation("modulus must be positive");
    std::uint64_t m = q;
    std::vector<std::pair<std::uint64_t, int>> pe;
    for (std::uint64_t d = 2; d * d <= m; ++d) {
        if (m % d == 0) {
            int e = 0;
            while (m % d == 0) {
                m /= d;
                ++e;
            }
            pe.push_back({d, e});
        }
    }
    if (m > 1) pe.push_back({m, 1});

    for (auto [p, e] : pe) {
        Factor f;
        f.p = p;
        f.e = e;
        f.pk = 1;
        for (int i = 0; i < e; ++i) f.pk *= p;
        if (p == 2) {
            if (e == 1) {
                f.gen_orders = {1};
                f.dlog.assign(2, 0);
            } else if (e == 2) {
                f.gen_orders = {2}; // generated by 3
                f.dlog.assign(4, 0);
                f.dlog[3 % 4] = 1;
                f.dlog[1] = 0;
            } else {
                // generators -1 (order 2) and 5 (order 2^{e-2})
                std::uint64_t half = f.pk >> 2;
                f.gen_orders = {2, half};
                f.dlog.assign(2 * f.pk, 0);
                std::uint64_t v = 1;
                for (std::uint64_t k = 0; k < half; ++k) {
                    // v = 5^k; +-v have dlogs (0,k) and (1,k)
                    f.dlog[2 * v] = 0;
                    f.dlog[2 * v + 1] = (std::uint32_t)k;
                    std::uint64_t w = f.pk - v;
                    f.dlog[2 * w] = 1;
                    f.dlog[2 * w + 1] = (std::uint32_t)k;
                    v = v * 5 % f.pk;
                }
            }
        } else {
            std::uint64_t ord = f.pk / p * (p - 1);
            std::uint64_t g = primitive_root(p);
            if (e > 1 && pow_mod(g, p - 1, p * p) == 1) g += p; // lift
            f.gen_orders = {ord};
            f.dlog.assign(f.pk, 0);
            std::uint64_t v = 1;
            for (std::uint64_t k = 0; k < ord; ++k) {
                f.dlog[v] = (std::uint32_t)k;
                v = v * g % f.pk;
            }
        }
        factors_.push_back(std::move(f));
    }
}

std::shared_ptr<const CharacterGroup> CharacterGroup::make(std::uint64_t q) {
    return std::shared_ptr<const CharacterGroup>(new CharacterGroup(q));
}

std::size_t CharacterGroup::size() const {
    std::size_t n = 1;
    for (const Factor& f : factors_)
        for (std::uint64_t o : f.gen_orders) n *= o;
    return n;
}

DirichletChar CharacterGroup::character(std::size_t index) const {
    if (index >= size()) throw PreconditionViolation("character index out of range");
    DirichletChar chi;
    chi.group_ = shared_from_this();
    chi.index_ = index;
    std::size_t rem = index;
    for (const Factor& f : factors_)
        for (std::uint64_t o : f.gen_orders) {
            chi.exponents_.push_back((std::uint32_t)(rem % o));
            rem /= o;
        }
    return chi;
}

std::vector<DirichletChar> CharacterGroup::all() const {
    std::vector<DirichletChar> out;
    out.reserve(size());
    for (std::size_t i = 0; i < size(); ++i) out.push_back(character(i));
    return out;
}

std::vector<DirichletChar> CharacterGroup::primitive() const {
    std::vector<DirichletChar> out;
    for (const DirichletChar& c : all())
        if (c.is_primitive()) out.push_back(c);
    return out;
}

std::uint64_t DirichletChar::modulus() const { return group_->modulus(); }

bool DirichletChar::phase(std::uint64_t n, std::int64_t* num, std::int64_t* den) const {
    std::uint64_t q = group_->modulus();
    *num = 0;
    *den = 1;
    if (q == 1) return true;
    std::size_t idx = 0;
    std::int64_t nums[32], dens[32];
    int nt = 0;
    for (const auto& f : group_->factors()) {
        std::uint64_t r = n % f.pk;
        if (r % f.p == 0) return false; // not coprime to q
        if (f.gen_orders.size() == 1) {
            std::uint64_t o = f.gen_orders[0];
            std::uint32_t a = exponents_[idx++];
            if (o > 1) {
                nums[nt] = (std::int64_t)((std::uint64_t)a * f.dlog[r] % o);
                dens[nt++] = (std::int64_t)o;
            }
        } else {
            std::uint64_t o1 = f.gen_orders[0], o2 = f.gen_orders[1];
            std::uint32_t a1 = exponents_[idx], a2 = exponents_[idx + 1];
            idx += 2;
            nums[nt] = (std::int64_t)((std::uint64_t)a1 * f.dlog[2 * r] % o1);
            dens[nt++] = (std::int64_t)o1;
            nums[nt] = (std::int64_t)((std::uint64_t)a2 * f.dlog[2 * r + 1] % o2);
            dens[nt++] = (std::int64_t)o2;
        }
    }
    std::int64_t lcm = 1;
    for (int i = 0; i < nt; ++i) lcm = std::lcm(lcm, dens[i]);
    std::int64_t nn = 0;
    for (int i = 0; i < nt; ++i) nn = (nn + nums[i] * (lcm / dens[i])) % lcm;
    *num = nn;
    *den = lcm;
    return true;
}

std::complex<double> DirichletChar::value(std::uint64_t n) const {
    std::int64_t a, b;
    if (!phase(n, &a, &b)) return {0.0, 0.0};
    double ang = 2.0 * 3.14159265358979323846 * (double)a / (double)b;
    return {std::cos(ang), std::sin(ang)};
}

int DirichletChar::parity() const {
    std::uint64_t q = group_->modulus();
    if (q <= 2) return 0;
    std::int64_t a, b;
    phase(q - 1, &a, &b); // chi(-1) = chi(q-1)
    // chi(-1) is +-1; odd iff the phase is exactly 1/2
    return (a != 0 && 2 * a == b) ? 1 : 0;
}

bool DirichletChar::is_principal() const {
    for (std::uint32_t e : exponents_)
        if (e != 0) return false;
    return true;
}

std::uint64_t DirichletChar::conductor() const {
    std::uint64_t cond = 1;
    std::size_t idx = 0;
    for (const auto& f : group_->factors()) {
        if (f.gen_orders.size() == 1) {
            std::uint32_t a = exponents_[idx++];
            if (f.p == 2) {
                if (f.e == 2) cond *= (a != 0) ? 4 : 1;
                // e == 1: only the trivial character, conductor 1
                continue;
            }
            if (a == 0) continue;
            // cyclic of order phi(p^e); chi factors through p^{e-1} iff p | a
            std::uint64_t pk = f.pk;
            std::uint64_t av = a;
            int e = f.e;
            while (e > 1 && av % f.p == 0) {
                av /= f.p;
                pk /= f.p;
                --e;
            }
            cond *= pk;
        } else {
            std::uint32_t a1 = exponents_[idx], a2 = exponents_[idx + 1];
            idx += 2;
            std::uint64_t o2 = f.gen_orders[1];
            if (a2 != 0) {
                // conductor 2^{e - v2(a2)}; a2 odd means full p^e
                std::uint64_t pk = f.pk;
                std::uint64_t av = a2;
                while (av % 2 == 0 && pk > 8) {
                    av /= 2;
                    pk /= 2;
                }
                cond *= pk;
            } else if (a1 != 0) {
                cond *= 4;
            }
            (void)o2;
        }
    }
    return cond;
}

bool DirichletChar::is_primitive() const { return conductor() == modulus(); }

double m_of_q(const DirichletChar& chi) {
    std::uint64_t q = chi.modulus();
    if (q <= 1 || chi.is_principal())
        throw PreconditionViolation("m_of_q requires q > 1 and a non-principal character");
    std::complex<double> sum{0.0, 0.0};
    double best = 0.0;
    for (std::uint64_t n = 1; n <= q; ++n) {
        sum += chi.value(n);
        best = std::max(best, std::abs(sum));
    }
    return best;
}

ival::Interval polya_vinogradov(std::uint64_t q, int parity) {
    ival::Interval qi((double)q);
    ival::Interval sq = ival::sqrt(qi);
    ival::Interval lq = ival::log(qi);
    ival::Interval llq = ival::log(lq);
    ival::Interval pi2 = ival::sqr(ival::pi());
    if (parity == 0)
        return 2.0 / pi2 * sq * lq + 4.0 / pi2 * sq * llq + 1.5 * sq;
    return 1.0 / (2.0 * ival::pi()) * sq * lq + 1.0 / ival::pi() * sq * llq + sq;
}

// ---------------------------------------------------------------------------
// zeta on the critical line
// ---------------------------------------------------------------------------

double rs_theta(double t) {
    double lt = std::log(t / (2.0 * 3.14159265358979323846));
    return 0.5 * t * lt - 0.5 * t - 3.14159265358979323846 / 8.0 + 1.0 / (48.0 * t) +
           7.0 / (5760.0 * t * t * t);
}

namespace {

// Euler-Maclaurin zeta(1/2 + it); N chosen so the Bernoulli tail converges
std::complex<double> zeta_half_em(double t) {
    using C = std::complex<double>;
    const double at = std::fabs(t);
    int N = (int)std::ceil(std::max(20.0, at / 3.0));
    static thread_local std::vector<double> logs{0.0, 0.0}, rsqrt{0.0, 1.0};
    while ((int)logs.size() <= N) {
        logs.push_back(std::log((double)logs.size()));
        rsqrt.push_back(1.0 / std::sqrt((double)(rsqrt.size())));
    }
    C s(0.5, t);
    ival::cdd acc;
    for (int n = 1; n < N; ++n) {
        double ph = -t * logs[n];
        double mag = rsqrt[n];
        acc += ival::cdd(C(mag * std::cos(ph), mag * std::sin(ph)));
    }
    C sum = acc.to_complex();
    C Nc((double)N, 0.0);
    C Ns = std::exp(-s * std::log((double)N)); // N^{-s}
    sum += Ns * Nc / (s - 1.0);                // N^{1-s}/(s-1)
    sum += 0.5 * Ns;
    // Bernoulli corrections: B_{2k}/(2k)! * N^{-s-2k+1} * prod (s+j)
    static const double B[] = {1.0 / 6,      -1.0 / 30,     1.0 / 42,      -1.0 / 30,
                               5.0 / 66,     -691.0 / 2730, 7.0 / 6,       -3617.0 / 510,
                               43867.0 / 798, -174611.0 / 330};
    C term = Ns / Nc; // N^{-s-1}
    C poly = s;
    double fact = 2.0; // (2k)!
    for (int k = 1; k <= 10; ++k) {
        // B_{2k}/(2k)! * poly * N^{-s-2k+1}; poly = s(s+1)...(s+2k-2)
        C contrib = (B[k - 1] / fact) * poly * term * Nc;
        sum += contrib;
        if (std::abs(contrib) < 1e-17 * (1.0 + std::abs(sum))) break;
        poly *= (s + C(2.0 * k - 1.0, 0.0)) * (s + C(2.0 * k, 0.0));
        fact *= (2.0 * k + 1.0) * (2.0 * k + 2.0);
        term /= Nc * Nc;
    }
    return sum;
}

} // namespace

double hardy_z(double t) {
    std::complex<double> z = zeta_half_em(t);
    double th = rs_theta(t);
    return (std::exp(std::complex<double>(0.0, th)) * z).real();
}

std::vector<double> zeta_zeros_up_to(double tmax) {
    std::vector<double> zeros;
    const double step = 0.01;
    double prev_t = 10.0;
    double prev_z = hardy_z(prev_t);
    for (double t = prev_t + step; t <= tmax + step; t += step) {
        double z = hardy_z(t);
        if (prev_z != 0.0 && z != 0.0 && (prev_z < 0) != (z < 0)) {
            double lo = prev_t, hi = t, zlo = prev_z;
            for (int i = 0; i < 60 && hi - lo > 1e-10; ++i) {
                double mid = 0.5 * (lo + hi);
                double zm = hardy_z(mid);
                if (zm == 0.0) {
                    lo = hi = mid;
                    break;
                }
                if ((zm < 0) == (zlo < 0)) {
                    lo = mid;
                    zlo = zm;
                } else {
                    hi = mid;
                }
            }
            double gamma = 0.5 * (lo + hi);
            if (gamma <= tmax) zeros.push_back(gamma);
        }
        prev_t = t;
        prev_z = z;
    }
    // consistency: the main term of the zero-counting function must match
    double T = tmax;
    double expected = T / (2.0 * 3.14159265358979323846) *
                          std::log(T / (2.0 * 3.14159265358979323846 * 2.718281828459045)) +
                      7.0 / 8.0;
    double diff = std::fabs((double)zeros.size() - expected);
    if (diff > 3.0 + 0.6 * std::log(T))
        throw NonConvergence("zero scan count " + std::to_string(zeros.size()) +
                             " deviates from the counting function estimate " +
                             std::to_string(expected));
    return zeros;
}

void write_zero_table(const std::string& path, const std::vector<double>& zeros,
                      const std::string& source_label) {
    std::ofstream out(path);
    if (!out) throw FormatError("cannot open zero table for writing: " + path);
    out << "# " << source_label << "\n";
    out.precision(12);
    out << std::fixed;
    for (double z : zeros) out << z << "\n";
}

} // namespace arcs::arith
