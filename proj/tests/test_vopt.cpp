#include "doctest.h"

#include "arcs/vopt.hpp"

#include <cmath>
#include <random>

using namespace arcs::vopt;
using arcs::ival::Interval;

TEST_SUITE_BEGIN("vopt");

namespace {

TFn square_fn() {
    return [](const Interval& x) {
        Taylor5 t = Taylor5::variable(x);
        return t * t;
    };
}

} // namespace

TEST_CASE("taylor coefficients of x^2 at 1") {
    Taylor5 t = taylor5_eval(square_fn(), Interval(1.0));
    CHECK(t.c[0].contains(1.0));
    CHECK(t.c[1].contains(2.0));
    CHECK(t.c[2].contains(1.0));
    for (int k = 3; k <= 5; ++k) {
        CHECK(t.c[k].contains(0.0));
        CHECK(t.c[k].mag() < 1e-14);
    }
}

TEST_CASE("taylor coefficients of sin at 0 are exact where dyadic") {
    TFn f = [](const Interval& x) { return sin(Taylor5::variable(x)); };
    Taylor5 t = taylor5_eval(f, Interval(0.0));
    CHECK(t.c[0].is_point());
    CHECK(t.c[0].lo() == 0.0);
    CHECK(t.c[1].contains(1.0));
    CHECK(t.c[2].is_point());
    CHECK(t.c[2].lo() == 0.0);
    CHECK(t.c[3].contains(-1.0 / 6.0));
    CHECK(t.c[3].width() < 1e-16);
}

TEST_CASE("taylor coefficients match finite differences for random expressions") {
    std::mt19937_64 gen(42);
    std::uniform_real_distribution<double> U(0.3, 2.0);
    for (int trial = 0; trial < 100; ++trial) {
        double a = U(gen), b = U(gen), c = U(gen);
        int which = trial % 4;
        auto scalar = [&](double x) {
            switch (which) {
                case 0: return std::exp(a * x) * std::sin(b * x);
                case 1: return std::sqrt(a + x * x) + c * x;
                case 2: return std::log(a + x * x) * std::cos(b * x);
                default: return (a + x) / (b + x * x);
            }
        };
        TFn f = [a, b, c, which](const Interval& xi) {
            Taylor5 x = Taylor5::variable(xi);
            switch (which) {
                case 0: return exp(a * x) * sin(b * x);
                case 1: return sqrt(a + x * x) + c * x;
                case 2: return log(a + x * x) * cos(b * x);
                default: return (a + x) / (b + x * x);
            }
        };
        double x0 = U(gen);
        Taylor5 t = taylor5_eval(f, Interval(x0));
        double h = 1e-3;
        double fp = (scalar(x0 + h) - scalar(x0 - h)) / (2.0 * h);
        double fpp = (scalar(x0 + h) - 2.0 * scalar(x0) + scalar(x0 - h)) / (h * h);
        CHECK(std::fabs(t.c[1].mid() - fp) < 1e-4 * (1.0 + std::fabs(fp)));
        CHECK(std::fabs(2.0 * t.c[2].mid() - fpp) < 2e-3 * (1.0 + std::fabs(fpp)));
    }
}

TEST_CASE("enclose_min basics") {
    BisectTask task{square_fn(), Interval(-1.0, 1.0), 20, 4};
    Enclosure e = enclose_min(task);
    CHECK(e.value.contains(0.0));
    CHECK(e.value.hi() < 1e-8);

    // deeper search never widens
    BisectTask deeper = task;
    deeper.max_depth = 30;
    Enclosure e2 = enclose_min(deeper);
    CHECK(e2.value.lo() >= e.value.lo() - 1e-15);
    CHECK(e2.value.hi() <= e.value.hi() + 1e-15);

    TFn shifted = [](const Interval& x) {
        Taylor5 t = Taylor5::variable(x);
        return (t - 0.3) * (t - 0.3) + 2.0;
    };
    Enclosure e3 = enclose_min({shifted, Interval(-1.0, 1.0), 30, 4});
    CHECK(e3.value.contains(2.0));
    CHECK(e3.value.width() < 1e-10);
    Enclosure e4 = enclose_max({shifted, Interval(0.0, 1.0), 30, 4});
    CHECK(e4.value.contains(2.49));
    CHECK(e4.value.width() < 1e-10);
}

TEST_CASE("verify_gt") {
    TFn f = square_fn();
    TFn g = [](const Interval& x) { return Taylor5::variable(x); };
    VerifyResult r = verify_gt(f, g, Interval(0.0, 2.0), 30, 2);
    CHECK(r.outcome == Outcome::Counterexample);
    REQUIRE(r.box.has_value());
    double m = r.box->mid();
    CHECK(m * m <= m); // the midpoint witnesses the violation of f > g

    TFn f2 = [](const Interval& x) {
        Taylor5 t = Taylor5::variable(x);
        return t * t + 0.3;
    };
    CHECK(verify_gt(f2, g, Interval(0.0, 2.0), 40, 2).verified());

    // soundness: sample the verified inequality
    std::mt19937_64 gen(9);
    std::uniform_real_distribution<double> U(0.0, 2.0);
    for (int i = 0; i < 1000; ++i) {
        double x = U(gen);
        CHECK(x * x + 0.3 > x);
    }
}

TEST_CASE("verify_positive_near_zero") {
    // x^3 (1 - x): third-order tangency; g''' = 6 - 24x stays positive below 1/4
    TFn g = [](const Interval& xi) {
        Taylor5 x = Taylor5::variable(xi);
        return x * x * x * (1.0 - x);
    };
    CHECK(verify_positive_near_zero(g, 0.2, 3, 30, 2).verified());
    CHECK_FALSE(verify_positive_near_zero(g, 0.5, 3, 30, 2).verified());
    // wrong order: coefficient 2 is not identically zero
    TFn g2 = [](const Interval& xi) {
        Taylor5 x = Taylor5::variable(xi);
        return x * x * (1.0 - x);
    };
    CHECK(verify_positive_near_zero(g2, 0.3, 3, 30, 2).outcome == Outcome::Inconclusive);
    CHECK(verify_positive_near_zero(g2, 0.3, 2, 30, 2).verified());
}

TEST_CASE("verify_with_tail degenerate claim") {
    TFn one = [](const Interval&) { return Taylor5::constant(Interval(1.0)); };
    TailSpec tail{one, 0.5, "constant minorant"};
    TailVerifyResult r = verify_with_tail(one, 0.0, Interval(1.0, 20.0), tail);
    CHECK(r.verified);
    TailVerifyResult bad = verify_with_tail(one, 2.0, Interval(1.0, 20.0), tail);
    CHECK_FALSE(bad.verified);
    CHECK(bad.failing_component == "core range bisection");
}

TEST_CASE("verified integration") {
    Interval v = integrate_verified(square_fn(), Interval(0.0, 1.0), 1e-13, 20);
    CHECK(v.contains(1.0 / 3.0));
    CHECK(v.width() < 1e-10);
    TFn s = [](const Interval& x) { return sin(Taylor5::variable(x)); };
    Interval w = integrate_verified(s, Interval(0.0, 3.14159265358979323846), 1e-13, 20);
    CHECK(w.contains(2.0 - 1e-15));
    CHECK(w.width() < 1e-9);
}

TEST_SUITE_END();
