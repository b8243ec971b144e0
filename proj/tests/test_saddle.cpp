#include "doctest.h"

#include "arcs/saddle.hpp"

#include <cmath>
#include <random>

using namespace arcs::saddle;
using arcs::ival::Interval;
using arcs::PreconditionViolation;
using arcs::UnsupportedRegion;

TEST_SUITE_BEGIN("saddle");

TEST_CASE("profile limits near zero") {
    RhoProfile p = rho_profile(Interval(1e-8));
    CHECK(std::fabs(p.j.mid() - 1.0) < 1e-6);
    CHECK(std::fabs(p.upsilon.mid() - 1.0) < 1e-6);
    CHECK(std::fabs(p.sin_theta0.mid()) < 1e-6);
    CHECK(std::fabs(p.cos_theta0.mid() - 1.0) < 1e-6);
    CHECK(std::fabs(p.Upsilon.mid() - 1.0) < 1e-6);
    // c1 ~ 4/rho, eta ~ 4/rho near zero
    CHECK(p.c1.mid() * 1e-8 == doctest::Approx(4.0).epsilon(1e-6));
    CHECK(p.eta_curv.mid() * 1e-8 == doctest::Approx(4.0).epsilon(1e-6));
    CHECK_THROWS(rho_profile(Interval(0.0, 1.0)));
}

TEST_CASE("profile invariants on random rho") {
    std::mt19937_64 gen(5);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    for (int i = 0; i < 500; ++i) {
        double rho = std::exp(U(gen) * 14.0 - 7.0);
        RhoProfile p = rho_profile(Interval(rho));
        CHECK(p.j.lo() >= 1.0 - 1e-14);
        CHECK(p.upsilon.lo() >= 1.0 - 1e-14);
        CHECK(p.Upsilon.lo() >= 0.798375987 - 1e-9);
        CHECK(p.Upsilon.hi() <= 1.0 + 1e-14);
        CHECK(p.c0.hi() > 1.0);
        CHECK(p.c0.lo() <= std::sqrt(2.0) + 1e-12);
        double floor = std::max(1.0, 4.0 / rho - 1.5);
        CHECK(p.eta_curv.hi() >= floor - 1e-9);
        Interval s2c2 = arcs::ival::sqr(p.sin_theta0) + arcs::ival::sqr(p.cos_theta0);
        CHECK(s2c2.contains(1.0));
        CHECK(s2c2.width() < 1e-12);
        double ups = p.upsilon.mid();
        double sin0_raw = std::sqrt(0.5 - 0.5 / ups);
        double cos0_raw = std::sqrt(0.5 + 0.5 / ups);
        double c0_raw = p.Upsilon.mid() * cos0_raw + sin0_raw;
        CHECK(p.c0.mid() == doctest::Approx(c0_raw).epsilon(1e-9));
        if (rho > 1e-2) {
            double c1_raw =
                std::sqrt((1.0 + 1.0 / ups) / (ups * ups - ups)) * p.Upsilon.mid();
            CHECK(p.c1.mid() == doctest::Approx(c1_raw).epsilon(1e-7));
        }
    }
}

TEST_CASE("E and its minorants") {
    CHECK(E_of(Interval(1.5)).lo() >= 0.1598);
    CHECK(E_of(Interval(0.0)).contains(0.0));
    CHECK(E_lower(Interval(0.0)).contains(0.0));
    CHECK(L_piecewise(Interval(2.0)).hi() == doctest::Approx(0.1598));
    CHECK(L_piecewise(Interval(1.0)).hi() == doctest::Approx(0.1065));

    std::mt19937_64 gen(17);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    for (int i = 0; i < 1000; ++i) {
        double rho = std::exp(U(gen) * std::log(1e3 / 1e-3)) * 1e-3;
        Interval ri(rho);
        Interval E = E_of(ri);
        Interval Eb = E_beta_form(ri);
        CHECK(E.lo() <= Eb.hi() + 1e-12);
        CHECK(Eb.lo() <= E.hi() + 1e-12);
        CHECK(L_piecewise(ri).lo() <= E_lower(ri).hi() + 1e-12);
        double cubic = rho / 8.0 - 5.0 * rho * rho * rho / 384.0;
        CHECK(cubic <= E.hi() + 1e-12);
        if (rho < 500.0) CHECK(E_of(Interval(rho * 1.1)).hi() >= E.lo() - 1e-12);
    }
}

TEST_CASE("quarter-pi branch closed form") {
    PrincoBoundTerms b = princo_bound(0.5, 100.0, 0.0);
    CHECK(b.same_sign_branch);
    double expected = std::exp(3.14159265358979323846 / 2.0) * std::pow(100.0, 0.25) / 2.0 *
                      std::exp(-25.0 * 3.14159265358979323846);
    CHECK(b.total.contains(expected));
    CHECK(b.total.width() / expected < 1e-10);
    CHECK(std::fabs(b.log_total - std::log(expected)) < 1e-6);
}

TEST_CASE("opposite-sign branch structure") {
    PrincoBoundTerms b = princo_bound(0.5, -100.0, 10.0);
    CHECK_FALSE(b.same_sign_branch);
    CHECK(b.C0.lo() >= 0.0);
    CHECK(b.C1.lo() >= 0.0);
    CHECK(b.C2.lo() >= 0.0);
    Interval t0 = b.C0 * arcs::ival::exp(-b.exp0);
    CHECK(b.total.hi() >= t0.lo());
    double tau = 100.0, delta = 10.0;
    double pd = tau / (3.14159265358979323846 * delta);
    double expected_e2 = std::min(pd * pd / 8.0, 25.0 * tau / 32.0);
    CHECK(b.exp2.contains(expected_e2));
    CHECK_THROWS_AS(princo_bound(-0.5, 10.0, 1.0), UnsupportedRegion);
    CHECK_THROWS_AS(princo_bound(0.5, 1.0, 0.0), PreconditionViolation);
}

TEST_CASE("corollary envelope examples") {
    Interval b0 = amanita_bound(0, 0.5, 150.0, 2.0);
    double e0 = 4.226 * std::exp(-0.1598 * 150.0);
    CHECK(b0.contains(e0));
    CHECK(b0.width() / e0 < 1e-9);

    Interval b2 = amanita_formula(2, 120.0, 10.0);
    double pi = 3.14159265358979323846;
    double e2 = 3.262 * std::pow(120.0 / (2.0 * pi * 10.0), 2.0) *
                std::exp(-0.1065 * std::pow(120.0 / (pi * 10.0), 2.0));
    CHECK(b2.contains(e2));
    CHECK(b2.width() / e2 < 1e-9);

    CHECK_THROWS_AS(amanita_bound(0, 0.5, 50.0, 0.0), PreconditionViolation);
    CHECK_THROWS_AS(amanita_bound(3, 0.5, 150.0, 0.0), PreconditionViolation);
    CHECK_THROWS_AS(amanita_bound(0, 1.5, 150.0, 0.0), PreconditionViolation);
    double lg = amanita_bound_log(0, 0.5, 150.0, 2.0);
    CHECK(std::fabs(lg - std::log(e0)) < 1e-6);
}

TEST_CASE("trivial bounds") {
    Interval t1 = trivial_bounds(1.0, 123.0, 0.0);
    CHECK(t1.contains(std::sqrt(3.14159265358979323846 / 2.0)));
    Interval t2 = trivial_bounds(0.5, 0.0, 0.0);
    CHECK(t2.hi() <= std::pow(2.0, 0.25) / 0.5);
    Interval t3 = trivial_bounds(0.5, 1.0, 10.0);
    double lidic = std::sqrt(3.14159265358979323846 / 2.0) *
                   (1.0 + 2.0 * 3.14159265358979323846) / 10.0;
    CHECK(t3.lo() <= lidic);
    Interval t4 = trivial_bounds(0.0, 0.0, 5.0);
    CHECK(t4.contains(std::sqrt(3.14159265358979323846 / 2.0) / 5.0));
}

TEST_CASE("p_sigma cases") {
    CHECK(p_sigma(0.5, Interval(2.0)).contains(std::pow(2.0, -1.5)));
    CHECK(p_sigma(3.0, Interval(2.0)).contains(2.0 + 0.5));
    CHECK(p_sigma(5.0, Interval(2.0)).contains(8.0 + 3.0 * 2.0 + 3.0 / 2.0));
}

TEST_CASE("suite smoke: c0 > 1 on a compact range") {
    arcs::vopt::TFn c0 = [](const Interval& x) {
        return detail::parts_rho<arcs::vopt::Taylor5>(arcs::vopt::Taylor5::variable(x)).c0;
    };
    arcs::vopt::TFn one = [](const Interval&) {
        return arcs::vopt::Taylor5::constant(Interval(1.0));
    };
    CHECK(arcs::vopt::verify_gt(c0, one, Interval(0.5, 2.0), 30, 2).verified());
}

TEST_SUITE_END();
