#include "doctest.h"

#include "arcs/weights.hpp"
#include "arcs/vopt.hpp"

#include <cmath>

using namespace arcs::weights;
using arcs::ival::Interval;

TEST_SUITE_BEGIN("weights");

TEST_CASE("base functions") {
    CHECK(h_fn(Interval(1.0), 0).contains(std::sqrt(std::exp(1.0))));
    CHECK(eta_circ(Interval(1.0)).contains(1.0));
    CHECK(eta_circ(Interval(2.0)).contains(0.0));
    CHECK(Weight::gaussian().eval(0.0).contains(1.0));
    CHECK(Weight::gaussian().eta0() == 1.0);
    CHECK(Weight::t2gaussian().eta0() == 0.0);
    CHECK(Weight::t2gaussian().eval(2.0).contains(4.0 * std::exp(-2.0)));
}

TEST_CASE("eta2 piecewise form against direct convolution") {
    // oracle: eta2(x) = int eta1(w) eta1(x/w) dw/w, eta1 = 2 on [1/2, 1]
    auto eta2_oracle = [](double x) {
        int N = 200000;
        double lo = std::max(0.5, x), hi = std::min(1.0, 2.0 * x);
        if (hi <= lo) return 0.0;
        double s = 0.0, h = (hi - lo) / N;
        for (int i = 0; i < N; ++i) {
            double w = lo + (i + 0.5) * h;
            s += 4.0 / w * h;
        }
        return s;
    };
    CHECK(eta2(Interval(0.5)).contains(4.0 * std::log(2.0)));
    for (double x : {0.3, 0.45, 0.5, 0.7, 0.9}) {
        double oracle = eta2_oracle(x);
        Interval v = eta2(Interval(x));
        CHECK(std::fabs(v.mid() - oracle) < 1e-4);
    }
    CHECK(eta2(Interval(0.2)).contains(0.0));
    CHECK(eta2(Interval(1.1)).contains(0.0));
}

TEST_CASE("C constants") {
    const CkConstants& c = ck_constants();
    // independent closed form for C0
    double c0_expected = 92.0 * std::exp(-0.5) - 12.0 * std::exp(1.5);
    CHECK(c.C0.contains(c0_expected));
    CHECK(c.C0.contains(2.02055184));
    CHECK(c.C1.contains(2.0 * std::sqrt(std::exp(1.0))));
    CHECK(c.C2.contains(10.79195821037));
    CHECK(c.C2.width() < 1e-9);
    CHECK(c.C3.contains(75.1295251672));
    CHECK(c.C3.width() < 1e-8);
    CHECK(c.c4_interior.contains(1152.69754862));
    CHECK(c.C4.contains(2013.18185012));
    CHECK(c.C4.width() < 1e-6);

    CHECK(std::fabs(c.alpha21.mid() - 0.48756597185712) < 1e-11);
    CHECK(std::fabs(c.alpha22.mid() - 1.48777169309489) < 1e-11);
    CHECK(std::fabs(c.alpha31.mid() - 1.04294565694978) < 1e-10);
    CHECK(std::fabs(c.alpha32.mid() - 1.80999654602916) < 1e-10);
    CHECK(std::fabs(c.alpha41.mid() - 0.45839599852663) < 1e-10);
    CHECK(std::fabs(c.alpha42.mid() - 1.54626346975533) < 1e-10);

    // sign changes certified at the root enclosures
    CHECK(h_fn(Interval(c.alpha21.lo()), 2).lo() * h_fn(Interval(c.alpha21.hi()), 2).hi() < 0.0);

    // ratio ladder
    CHECK((c.C1 / c.C0).hi() < (c.C2 / c.C1).lo());
    CHECK((c.C2 / c.C1).hi() < (c.C3 / c.C2).lo());
    CHECK((c.C3 / c.C2).hi() < (c.C4 / c.C3).lo());
}

TEST_CASE("Mh l1 bounds") {
    MhL1Bounds b = mh_l1_bounds();
    CHECK(b.plain.hi() <= 16.1939176);
    CHECK(b.plain.lo() >= 16.19);
    CHECK(b.weighted.hi() <= 27.8622803);
    CHECK(b.weighted.lo() >= 27.86);

    // inflating the C_k by 1% raises both majorants
    CkConstants inflated = ck_constants();
    for (Interval* v : {&inflated.C0, &inflated.C1, &inflated.C2, &inflated.C3, &inflated.C4})
        *v = *v * Interval(1.01);
    MhL1Bounds b2 = mh_l1_bounds(inflated);
    CHECK(b2.plain.lo() > b.plain.hi());
    CHECK(b2.weighted.lo() > b.weighted.hi());
}

TEST_CASE("gaussian and t2 norm tables") {
    NormTable g = norm_table(Weight::gaussian());
    double spi = std::sqrt(3.14159265358979323846);
    CHECK(g.L2().contains(std::sqrt(spi / 2.0)));
    CHECK(g.DerivL2().contains(std::sqrt(spi / 4.0)));
    CHECK(arcs::ival::sqr(g.L2Log()).hi() <= 1.94753);
    CHECK(g.L1OverSqrtT().hi() <= 2.15581);
    CHECK(g.L1TimesSqrtT().hi() <= 1.03045);
    CHECK(g.DerivL1TimesSqrtT().contains(1.0779107130090633)); // 2^{1/4} Gamma(5/4)

    NormTable t = norm_table(Weight::t2gaussian());
    CHECK(t.L2().contains(std::sqrt(3.0 / 8.0 * spi)));
    CHECK(t.DerivL2().contains(std::sqrt(7.0 / 16.0 * spi)));
    CHECK(arcs::ival::sqr(t.L2Log()).hi() <= 0.16364);
    CHECK(t.L1OverSqrtT().hi() <= 1.07791);
    CHECK(t.L1TimesSqrtT().hi() <= 1.54568);
    CHECK(t.DerivL1OverSqrtT().hi() <= 1.48469);
    CHECK(t.DerivL1OverSqrtT().lo() >= 1.4846);
    CHECK(t.DerivL1TimesSqrtT().hi() <= 1.72169);
    CHECK(t.DerivL1TimesSqrtT().lo() >= 1.7216);
}

TEST_CASE("h norm closed forms match the printed radicals") {
    // |h/sqrt t|_2^2 = 31989/(8e) - 585 e^3/8 and |h' sqrt t|_2^2
    Interval a = arcs::ival::sqr(etaplus_l1_t_sigma(0.0) /
                                 arcs::ival::sqrt(arcs::ival::gamma_real(Interval(2.0)) / 2.0));
    double expect_a = 31989.0 / (8.0 * std::exp(1.0)) - 585.0 * std::exp(3.0) / 8.0;
    CHECK(a.contains(expect_a));
    CHECK(std::sqrt(expect_a) == doctest::Approx(1.5023459).epsilon(1e-6));
}

TEST_CASE("eta_plus norm table at H = 200") {
    NormTable n = norm_table(Weight::eta_plus(200.0));
    CHECK(n.L2().hi() <= 0.80044);
    CHECK(n.L2().hi() <= 0.800129 + 274.8569 / std::pow(200.0, 3.5));
    CHECK(n.L2Log().hi() <= 0.8299818);
    CHECK(n.DerivL2().hi() <= 10.845789);
    CHECK(n.DerivL2().lo() >= 10.8);
    // (paytoplay)-style coefficient
    for (double s : {-0.5, 0.5, 1.0, 2.0}) {
        Interval v = etaplus_l1_t_sigma(s);
        Interval gam = arcs::ival::sqrt(arcs::ival::gamma_real(Interval(s) + 2.0));
        CHECK((v / gam).hi() <= 1.062319);
        CHECK((v / gam).lo() >= 1.06231);
    }
    for (double s : {-0.5, 0.5, 1.0}) {
        Interval v = etaplus_deriv_l1_t_sigma(s);
        Interval bound = Interval(2.922875) *
                             arcs::ival::sqrt(arcs::ival::gamma_real(Interval(s) + 1.0)) +
                         Interval(1.062319) *
                             arcs::ival::sqrt(arcs::ival::gamma_real(Interval(s) + 3.0));
        CHECK(v.hi() <= bound.hi() * (1.0 + 1e-9));
        CHECK(v.hi() >= bound.lo() * 0.9);
    }
    // sup-norm family
    double lf = (1.0 + 4.0 / 3.14159265358979323846 * std::log(200.0)) / 200.0;
    CHECK(n.linf->hi() <= 1.0 + 2.06440727 * lf * (1.0 + 1e-9));
    CHECK(n.linf_log->hi() <= 0.279491 + 1.069456 * lf + 1e-9);
    CHECK(n.linf_over_t->hi() <= 1.08754396 + 1.70181609 * lf + 1e-9);
    CHECK(n.linf_times_t->hi() <= 1.06473476 + 3.25312 * lf + 1e-9);
    CHECK(h_prime_inf().hi() <= 2.805820379671);
    CHECK(h_prime_inf().lo() >= 2.8058);
}

TEST_CASE("band-limit tail bounds") {
    Interval a = etaplus_circ_l2(200.0);
    CHECK(a.hi() <= 274.857 / std::pow(200.0, 3.5));
    CHECK(a.lo() >= 274.0 / std::pow(200.0, 3.5));
    // doubling H divides the bound by 2^3.5
    Interval b = etaplus_circ_l2(400.0);
    CHECK(b.hi() * std::pow(2.0, 3.5) <= a.hi() * (1.0 + 1e-9));
    CHECK(b.lo() * std::pow(2.0, 3.5) >= a.lo() * (1.0 - 1e-9));

    CHECK(circ_l2log_max_factor().contains(0.14882234545));
    CHECK(circ_l2log_max_factor().width() < 1e-9);
    Interval c = etaplus_circ_l2log_sq(200.0);
    CHECK(c.hi() <= 27427.502 / std::pow(200.0, 7.0) * (1.0 + 1e-6));
}

TEST_CASE("eta_circ l2 and pointwise eta_plus") {
    Interval l2sq = eta_circ_l2_sq();
    CHECK(l2sq.contains(0.640205997366));
    CHECK(l2sq.width() < 1e-9);

    // |eta_plus|_2 quadrature must land between |eta_circ|_2 -+ the band bound
    double H = 200.0;
    double band = etaplus_circ_l2(H).hi();
    double circ = std::sqrt(l2sq.mid());
    double acc = 0.0;
    int N = 120000;
    double tmax = 12.0, h = tmax / N;
    for (int i = 0; i < N; ++i) {
        double t = (i + 0.5) * h;
        double v = eta_plus_d(t, H);
        acc += v * v * h;
    }
    double l2 = std::sqrt(acc);
    CHECK(l2 >= circ - band - 2e-5);
    CHECK(l2 <= circ + band + 2e-5);

    // |eta_plus - eta_circ|_2 by direct quadrature below the proven bound
    double acc2 = 0.0;
    for (int i = 0; i < N; ++i) {
        double t = (i + 0.5) * h;
        double d = eta_plus_d(t, H) -
                   (t < 2.0 ? std::pow(t * (2.0 - t), 3.0) *
                                  std::exp(-0.5 * (t - 1.0) * (t - 1.0))
                            : 0.0);
        acc2 += d * d * h;
    }
    CHECK(std::sqrt(acc2) <= band * (1.0 + 1e-3) + 1e-6);
}

TEST_CASE("eta_star evaluator") {
    // mass: int eta_star = int eta2 * int t2gauss = sqrt(pi/2)
    double acc = 0.0;
    int N = 60000;
    double h = 12.0 / N;
    for (int i = 0; i < N; ++i) acc += eta_star_d((i + 0.5) * h) * h;
    CHECK(acc == doctest::Approx(std::sqrt(3.14159265358979323846 / 2.0)).epsilon(1e-6));
    CHECK(eta_star_d(0.1) >= 0.0);
    CHECK(Weight::star_conv().eval(1.0).lo() > 0.0);
}

TEST_SUITE_END();
