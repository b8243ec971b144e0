#include "doctest.h"

#include "arcs/ival.hpp"

#include <cmath>
#include <random>

using namespace arcs::ival;

TEST_SUITE_BEGIN("ival");

TEST_CASE("endpoint arithmetic") {
    Interval a(1.0, 2.0), b(3.0, 4.0);
    Interval s = a + b;
    CHECK(s.lo() == 4.0);
    CHECK(s.hi() == 6.0);

    Interval m = Interval(-1.0, 1.0) * Interval(-1.0, 1.0);
    CHECK(m.lo() == -1.0);
    CHECK(m.hi() == 1.0);

    Interval d = Interval(1.0) / Interval(3.0);
    CHECK(d.contains(1.0 / 3.0));
    CHECK(d.width() <= 2.0 * std::ldexp(1.0, -54));

    CHECK_THROWS_AS(Interval(1.0) / Interval(-1.0, 1.0), DivisionByIntervalContainingZero);
    CHECK_THROWS_AS(Interval(1.0, 0.0), DomainViolation);
    CHECK_THROWS_AS(Interval(std::nan(""), 1.0), DomainViolation);
}

TEST_CASE("exact dyadic results stay exact") {
    Interval z = Interval(0.0) + Interval(0.0);
    CHECK(z.lo() == 0.0);
    CHECK(z.hi() == 0.0);
    Interval p = Interval(0.0) * Interval(1e300, 1e308);
    CHECK(p.is_point());
    Interval q = Interval(1.0) / Interval(4.0);
    CHECK(q.is_point());
    CHECK(q.lo() == 0.25);
    CHECK(sqrt(Interval(4.0)).is_point());
    CHECK(exp(Interval(0.0)).is_point());
    CHECK(log(Interval(1.0)).is_point());
    CHECK(sin(Interval(0.0)).is_point());
    CHECK(cos(Interval(0.0)).lo() == 1.0);
}

TEST_CASE("elementary examples") {
    CHECK(exp(Interval(0.0)).contains(1.0));
    CHECK(acos(Interval(1.0)).contains(0.0));
    Interval l = log(Interval(1.0, euler_e().hi()));
    CHECK(l.lo() <= 0.0);
    CHECK(l.hi() >= 1.0);
    CHECK(sin(Interval(1.0, 2.0)).contains(1.0)); // pi/2 inside
    CHECK(cos(Interval(3.0, 3.5)).contains(-1.0));
    CHECK(sin(Interval(0.0, 100.0)).hi() <= 1.0);
}

TEST_CASE("gamma") {
    CHECK(gamma_real(Interval(1.0)).contains(1.0));
    CHECK(gamma_real(Interval(0.5)).contains(1.7724538509055160273));
    CHECK(gamma_real(Interval(1.5)).contains(0.5 * 1.7724538509055160273));
    CHECK(gamma_real(Interval(2.5)).contains(0.75 * 1.7724538509055160273));
    Interval g = gamma_real(Interval(0.25)) / pow(Interval(2.0), Interval(0.75));
    CHECK(g.hi() <= 2.15581);
    CHECK(g.lo() >= 2.15580);
    CHECK(gamma_real(Interval(10.0)).contains(362880.0));
    CHECK_THROWS_AS(gamma_real(Interval(-1.0, 1.0)), DomainViolation);
}

TEST_CASE("si and e1") {
    CHECK(si(0.0).contains(0.0));
    Interval s = si(1e6);
    CHECK(s.lo() >= half_pi().lo() - 2e-6);
    CHECK(s.hi() <= half_pi().hi() + 2e-6);
    CHECK(si(1.0).contains(0.9460830703671830));
    CHECK(si(10.0).contains(1.6583475942188740));
    CHECK(si(-10.0).contains(-1.6583475942188740));
    CHECK(e1(1.0 / 200.0).hi() < std::log(200.0));
    CHECK(e1(1.0).contains(0.21938393439552028));
    CHECK(e1(10.0).contains(4.156968929685325e-6));
}

namespace {

double rnd(std::mt19937_64& g, double lo, double hi) {
    return lo + (hi - lo) * std::uniform_real_distribution<double>(0.0, 1.0)(g);
}

} // namespace

TEST_CASE("containment over random samples") {
    std::mt19937_64 gen(12345);
    int checked = 0;
    for (int i = 0; i < 10000; ++i) {
        double a = rnd(gen, -8.0, 8.0);
        double b = rnd(gen, -8.0, 8.0);
        if (a > b) std::swap(a, b);
        Interval X(a, b);
        double x = rnd(gen, a, b);
        int f = i % 9;
        auto check_one = [&](Interval FX, double fx) {
            CHECK(FX.contains(fx));
            ++checked;
        };
        switch (f) {
            case 0: check_one(exp(X), std::exp(x)); break;
            case 1:
                if (a > 0.0) check_one(log(X), std::log(x));
                break;
            case 2: check_one(sin(X), std::sin(x)); break;
            case 3: check_one(cos(X), std::cos(x)); break;
            case 4: check_one(atan(X), std::atan(x)); break;
            case 5:
                if (a >= 0.0) check_one(sqrt(X), std::sqrt(x));
                break;
            case 6: check_one(asinh(X), std::asinh(x)); break;
            case 7:
                if (a > -1.0 && b < 1.0) check_one(asin(X), std::asin(x));
                break;
            case 8:
                if (a > 0.1) check_one(gamma_real(X), std::tgamma(x));
                break;
        }
    }
    CHECK(checked > 5000);
}

TEST_CASE("monotone inclusion") {
    std::mt19937_64 gen(777);
    for (int i = 0; i < 500; ++i) {
        double a = rnd(gen, 0.05, 4.0);
        double b = a + rnd(gen, 0.0, 2.0);
        double a2 = a - rnd(gen, 0.0, 0.04);
        double b2 = b + rnd(gen, 0.0, 0.5);
        Interval X(a, b), Y(a2, b2);
        CHECK(exp(X).subset_of(exp(Y)));
        CHECK(log(X).subset_of(log(Y)));
        CHECK(sqrt(X).subset_of(sqrt(Y)));
        CHECK(sin(X).subset_of(sin(Y)));
        CHECK((X * X).subset_of(Y * Y));
        CHECK(gamma_real(X).subset_of(gamma_real(Y)));
    }
}

TEST_CASE("double-double accumulation") {
    dd s(0.0);
    for (int i = 0; i < 1000000; ++i) s += 0.1;
    CHECK(std::fabs(s.to_double() - 100000.0) < 1e-9);
    dd p = dd(1e16) + dd(1.0) - dd(1e16);
    CHECK(p.to_double() == 1.0);
    cdd c;
    c += cdd(std::complex<double>(1e-3, 2e-3));
    c += cdd(std::complex<double>(1.0, -2e-3));
    CHECK(c.to_complex().real() == doctest::Approx(1.001).epsilon(1e-15));
    CHECK(std::fabs(c.to_complex().imag()) < 1e-18);
}

TEST_CASE("underflowing exponentials keep a positive upper bound") {
    Interval tiny = exp(Interval(-1.6e7));
    CHECK(tiny.lo() >= 0.0);
    CHECK(tiny.hi() > 0.0);
    CHECK(tiny.hi() < 1e-300);
}

TEST_SUITE_END();
