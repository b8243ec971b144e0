#include "arcs/vopt.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

namespace arcs::vopt {

using ival::Interval;

namespace {
constexpr int N = Taylor5::ORDER;
}

Taylor5 operator+(const Taylor5& a, const Taylor5& b) {
    Taylor5 r;
    for (int k = 0; k <= N; ++k) r.c[k] = a.c[k] + b.c[k];
    return r;
}

Taylor5 operator-(const Taylor5& a, const Taylor5& b) {
    Taylor5 r;
    for (int k = 0; k <= N; ++k) r.c[k] = a.c[k] - b.c[k];
    return r;
}

Taylor5 operator-(const Taylor5& a) {
    Taylor5 r;
    for (int k = 0; k <= N; ++k) r.c[k] = -a.c[k];
    return r;
}

Taylor5 operator*(const Taylor5& a, const Taylor5& b) {
    Taylor5 r = Taylor5::constant(Interval(0.0));
    for (int k = 0; k <= N; ++k) {
        Interval s(0.0);
        for (int j = 0; j <= k; ++j) s += a.c[j] * b.c[k - j];
        r.c[k] = s;
    }
    return r;
}

namespace {
Taylor5 recip(const Taylor5& b) {
    if (b.c[0].contains_zero())
        throw ival::DivisionByIntervalContainingZero("Taylor5 reciprocal at zero");
    Taylor5 r;
    r.c[0] = Interval(1.0) / b.c[0];
    for (int k = 1; k <= N; ++k) {
        Interval s(0.0);
        for (int j = 1; j <= k; ++j) s += b.c[j] * r.c[k - j];
        r.c[k] = -s / b.c[0];
    }
    return r;
}
} // namespace

Taylor5 operator/(const Taylor5& a, const Taylor5& b) { return a * recip(b); }

Taylor5 sqrt(const Taylor5& a) {
    Taylor5 r;
    r.c[0] = ival::sqrt(a.c[0]);
    Interval two_b0 = Interval(2.0) * r.c[0];
    for (int k = 1; k <= N; ++k) {
        Interval s = a.c[k];
        for (int j = 1; j < k; ++j) s -= r.c[j] * r.c[k - j];
        r.c[k] = s / two_b0;
    }
    return r;
}

Taylor5 exp(const Taylor5& a) {
    Taylor5 r;
    r.c[0] = ival::exp(a.c[0]);
    for (int k = 1; k <= N; ++k) {
        Interval s(0.0);
        for (int j = 1; j <= k; ++j) s += Interval((double)j) * a.c[j] * r.c[k - j];
        r.c[k] = s / Interval((double)k);
    }
    return r;
}

Taylor5 log(const Taylor5& a) {
    Taylor5 r;
    r.c[0] = ival::log(a.c[0]);
    for (int k = 1; k <= N; ++k) {
        Interval s = Interval((double)k) * a.c[k];
        for (int j = 1; j < k; ++j) s -= Interval((double)j) * r.c[j] * a.c[k - j];
        r.c[k] = s / (Interval((double)k) * a.c[0]);
    }
    return r;
}

namespace {
void sincos_taylor(const Taylor5& a, Taylor5& s, Taylor5& c) {
    s.c[0] = ival::sin(a.c[0]);
    c.c[0] = ival::cos(a.c[0]);
    for (int k = 1; k <= N; ++k) {
        Interval ss(0.0), cc(0.0);
        for (int j = 1; j <= k; ++j) {
            ss += Interval((double)j) * a.c[j] * c.c[k - j];
            cc += Interval((double)j) * a.c[j] * s.c[k - j];
        }
        s.c[k] = ss / Interval((double)k);
        c.c[k] = -cc / Interval((double)k);
    }
}
} // namespace

Taylor5 sin(const Taylor5& a) {
    Taylor5 s, c;
    sincos_taylor(a, s, c);
    return s;
}

Taylor5 cos(const Taylor5& a) {
    Taylor5 s, c;
    sincos_taylor(a, s, c);
    return c;
}

Taylor5 sqr(const Taylor5& a) { return a * a; }

Taylor5 pow_int(const Taylor5& a, int n) {
    if (n == 0) return Taylor5::constant(Interval(1.0));
    if (n < 0) return recip(pow_int(a, -n));
    Taylor5 r = a;
    for (int i = 1; i < n; ++i) r = r * a;
    return r;
}

Taylor5 taylor5_eval(const TFn& f, const Interval& x0) { return f(x0); }

Fn fn_of(const TFn& f) {
    return [f](const Interval& x) { return f(x).c[0]; };
}

Interval tight_eval(const TFn& f, const Interval& box) {
    Taylor5 direct = f(box);
    if (box.is_point()) return direct.c[0];
    Interval m(box.mid());
    Taylor5 at_mid = f(m);
    Interval centered = at_mid.c[0] + direct.c[1] * (box - m);
    return ival::intersect(direct.c[0], centered);
}

namespace {

struct Box {
    Interval x;
    Interval range;
};

// shared level-synchronous engine; minimizes f (negate for max)
Enclosure run_min(const BisectTask& task) {
    std::vector<Box> boxes{{task.domain, tight_eval(task.f, task.domain)}};
    auto point_eval = [&](double x) { return task.f(Interval(x)).c[0].hi(); };
    double incumbent = std::min({point_eval(task.domain.mid()), point_eval(task.domain.lo()),
                                 point_eval(task.domain.hi())});

    for (int level = 0; level < task.max_depth; ++level) {
        std::vector<Box> next;
        next.reserve(boxes.size() * 2);
        for (const Box& b : boxes) {
            double m = b.x.mid();
            if (!(m > b.x.lo() && m < b.x.hi())) {
                next.push_back(b); // box at floating-point resolution
                continue;
            }
            for (const Interval& half :
                 {Interval(b.x.lo(), m), Interval(m, b.x.hi())}) {
                Box nb{half, tight_eval(task.f, half)};
                incumbent = std::min(incumbent, point_eval(half.mid()));
                next.push_back(nb);
            }
        }
        if (level + 1 >= task.initial_splits) {
            std::vector<Box> kept;
            kept.reserve(next.size());
            for (const Box& b : next)
                if (b.range.lo() <= incumbent) kept.push_back(b);
            next.swap(kept);
        }
        boxes.swap(next);
    }

    double lo = incumbent;
    bool wide = false;
    for (const Box& b : boxes) {
        lo = std::min(lo, b.range.lo());
        if (b.range.width() > 1e-6 * std::max(1.0, std::fabs(incumbent))) wide = true;
    }
    return {Interval::unchecked(lo, incumbent), wide};
}

} // namespace

Enclosure enclose_min(const BisectTask& task) { return run_min(task); }

Enclosure enclose_max(const BisectTask& task) {
    BisectTask neg = task;
    TFn f = task.f;
    neg.f = [f](const Interval& x) { return -f(x); };
    Enclosure e = run_min(neg);
    return {Interval::unchecked(-e.value.hi(), -e.value.lo()), e.depth_exhausted};
}

namespace {

VerifyResult verify_cmp(const TFn& f, const TFn& g, const Interval& domain, int max_depth,
                        int initial_splits, bool strict) {
    std::deque<std::pair<Interval, int>> work{{domain, 0}};
    while (!work.empty()) {
        auto [box, depth] = work.front();
        work.pop_front();
        Interval fb = tight_eval(f, box);
        Interval gb = tight_eval(g, box);
        bool ok = strict ? fb.lo() > gb.hi() : fb.lo() >= gb.hi();
        if (ok && depth >= initial_splits) continue;
        // midpoint sample: certified violation?
        Interval m(box.mid());
        Interval fm = f(m).c[0];
        Interval gm = g(m).c[0];
        if (strict ? fm.hi() <= gm.lo() : fm.hi() < gm.lo())
            return {Outcome::Counterexample, box, "midpoint violates inequality"};
        if (depth >= max_depth) {
            if (ok) continue;
            return {Outcome::Inconclusive, box, "depth exhausted"};
        }
        double mid = box.mid();
        if (!(mid > box.lo() && mid < box.hi())) {
            if (ok) continue;
            return {Outcome::Inconclusive, box, "box at floating-point resolution"};
        }
        work.emplace_back(Interval(box.lo(), mid), depth + 1);
        work.emplace_back(Interval(mid, box.hi()), depth + 1);
    }
    return {Outcome::Verified, std::nullopt, ""};
}

} // namespace

VerifyResult verify_gt(const TFn& f, const TFn& g, const Interval& domain, int max_depth,
                       int initial_splits) {
    return verify_cmp(f, g, domain, max_depth, initial_splits, true);
}

VerifyResult verify_ge(const TFn& f, const TFn& g, const Interval& domain, int max_depth,
                       int initial_splits) {
    return verify_cmp(f, g, domain, max_depth, initial_splits, false);
}

VerifyResult verify_positive_near_zero(const TFn& g, double u0, int order, int max_depth,
                                       int initial_splits) {
    if (order < 1 || order > N)
        return {Outcome::Inconclusive, std::nullopt, "order outside 1..5"};
    Taylor5 t0 = g(Interval(0.0));
    for (int k = 0; k < order; ++k) {
        if (!(t0.c[k].lo() == 0.0 && t0.c[k].hi() == 0.0)) {
            VerifyResult r;
            r.outcome = Outcome::Inconclusive;
            r.detail = "coefficient " + std::to_string(k) + " not exactly zero: " + t0.c[k].str();
            return r;
        }
    }
    // g(u) = g^(order)(xi) u^order / order!  for some xi in [0, u]
    TFn coeff = [g, order](const Interval& x) {
        Taylor5 t = g(x);
        Taylor5 r = Taylor5::constant(t.c[order]);
        // d/dx of coefficient k at moving expansion point x is (k+1) c_{k+1}(x)
        if (order + 1 <= N)
            r.c[1] = Interval((double)(order + 1)) * t.c[order + 1];
        else
            r.c[1] = Interval::unchecked(-1e280, 1e280); // no derivative available
        return r;
    };
    TFn zero = [](const Interval&) { return Taylor5::constant(Interval(0.0)); };
    VerifyResult r = verify_gt(coeff, zero, Interval(0.0, u0), max_depth, initial_splits);
    if (r.outcome == Outcome::Verified)
        r.detail = "derivative order " + std::to_string(order) + " positive on [0, " +
                   std::to_string(u0) + "]";
    return r;
}

TailVerifyResult verify_with_tail(const TFn& f_core, double c, const Interval& core_domain,
                                  const TailSpec& tail, int max_depth, int initial_splits) {
    TFn cf = [c](const Interval&) { return Taylor5::constant(Interval(c)); };
    VerifyResult core = verify_gt(f_core, cf, core_domain, max_depth, initial_splits);
    if (!core.verified()) return {false, "core range bisection"};
    if (tail.u_boundary > 0) {
        VerifyResult t =
            verify_gt(tail.minorant_u, cf, Interval(0.0, tail.u_boundary), max_depth,
                      initial_splits);
        if (!t.verified()) return {false, "tail minorant"};
    }
    return {true, ""};
}

namespace {

Interval simpson_panel(const TFn& f, const Interval& seg) {
    Interval a(seg.lo()), b(seg.hi()), m(seg.mid());
    Interval h = b - a;
    Interval s = (f(a).c[0] + Interval(4.0) * f(m).c[0] + f(b).c[0]) * h / Interval(6.0);
    // remainder -(b-a)^5 f''''(xi) / 2880, f''''/24 = c4 over the segment
    Interval c4 = f(seg).c[4];
    Interval f4 = Interval(24.0) * c4;
    Interval rem = ival::pow_int(h, 5) / Interval(2880.0);
    Interval err = rem * f4;
    return s - err;
}

void integrate_rec(const TFn& f, const Interval& seg, double tol, int depth, Interval& acc) {
    Interval v = simpson_panel(f, seg);
    if (depth <= 0 || v.width() <= tol * seg.width()) {
        acc += v;
        return;
    }
    double m = seg.mid();
    integrate_rec(f, Interval(seg.lo(), m), tol, depth - 1, acc);
    integrate_rec(f, Interval(m, seg.hi()), tol, depth - 1, acc);
}

} // namespace

Interval integrate_verified(const TFn& f, const Interval& domain, double tol, int max_depth) {
    Interval acc(0.0);
    integrate_rec(f, domain, tol, max_depth, acc);
    return acc;
}

} // namespace arcs::vopt
