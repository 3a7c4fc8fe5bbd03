#include <cmath>

#include "doctest.h"
#include "expansion.hpp"
#include "model.hpp"
#include "oracle.hpp"
#include "sweep.hpp"

using namespace isr;

namespace {

Scenario fig1a(double nu = 1.0, double gamma = 1.0) {
    Scenario s;
    s.t = 0.0;
    s.T = 6.0 / 52.0;
    s.x = std::log(100.0);
    s.k = s.x;
    s.y = 0.04;
    s.nu = nu;
    s.gamma = gamma;
    s.point = {s.x, 0.04};
    return s;
}

ModelSpec fig1_heston() { return make_heston({1.15, 0.04, 0.2, -0.4}); }

ModelSpec fig4_recip() {
    ReciprocalHestonParams p;
    p.mu = 0.05;
    p.a = 5.0;
    p.b = 0.04;
    p.kappa = 0.01;
    p.rho = 0.2;
    return make_reciprocal_heston(p);
}

Scenario fig4b(double nu = 1.0) {
    Scenario s = fig1a(nu);
    s.T = 0.25;
    return s;
}

}  // namespace

TEST_CASE("constant coefficients: no corrections") {
    ModelSpec bs = make_black_scholes(0.06, 0.22);
    Scenario s = fig1a(2.0, 1.5);
    CoefficientTable t = taylor_coeffs(bs, s.point);
    PsiTerms psi = psi_terms(s, t);
    CHECK(psi.psi1 == 0.0);
    CHECK(psi.psi2 == 0.0);
    BsInputs in{s.t, s.T, s.x, s.k, 0.22};
    CHECK(psi.psi0 ==
          doctest::Approx(-t.at0(Family::HalfLambda2) * s.horizon() -
                          s.gamma * s.nu * bs_price(in))
              .epsilon(1e-15));
    PriceTerms pr = price_terms(s, t);
    CHECK(pr.p1 == 0.0);
    CHECK(pr.p2 == 0.0);
    CHECK(pr.total() == doctest::Approx(bs_price(in)).epsilon(1e-15));
}

TEST_CASE("nu = 0 reduces psi to the lambda^2 integrals") {
    Scenario s = fig1a(0.0);
    CoefficientTable t = taylor_coeffs(fig1_heston(), s.point);
    PsiTerms psi = psi_terms(s, t);
    CHECK(psi.psi1_op == 0.0);
    CHECK(psi.psi1 == doctest::Approx(-appendix_first_order(t, s)).epsilon(1e-15));
    CHECK(psi.bracket_cross == 0.0);
    CHECK(psi.bracket_exp == 0.0);
}

TEST_CASE("heston fig 1(a) regression constants (verified against the psi PDE oracle)") {
    // PDE reference at this scenario: psi = -2.66541 (series within 0.11%).
    Scenario s = fig1a();
    CoefficientTable t = taylor_coeffs(fig1_heston(), s.point);
    PsiTerms psi = psi_terms(s, t);
    CHECK(psi.psi0 == doctest::Approx(-2.70982207752986).epsilon(1e-10));
    CHECK(psi.psi1 == doctest::Approx(0.00312544144695218).epsilon(1e-9));
    CHECK(psi.psi2 == doctest::Approx(0.0440465947096366).epsilon(1e-9));
    PriceTerms pr = price_terms(s, t);
    CHECK(pr.p0 == doctest::Approx(2.70975797496575).epsilon(1e-10));
    CHECK(pr.p1 == doctest::Approx(-0.00312544144695218).epsilon(1e-9));
    CHECK(pr.p2 == doctest::Approx(-0.0123737449783155).epsilon(1e-9));
}

TEST_CASE("price terms equal the psi operator machinery") {
    // p1 = -(psi1 operator part)/(gamma nu) when Omega == 0
    for (double nu : {1.0, -2.0, 3.0}) {
        Scenario s = fig1a(nu, 1.3);
        CoefficientTable t = taylor_coeffs(fig1_heston(), s.point);
        PsiTerms psi = psi_terms(s, t);
        PriceTerms pr = price_terms(s, t);
        CHECK(pr.p1 ==
              doctest::Approx(-psi.psi1_op / (s.gamma * s.nu)).epsilon(1e-14));
        CHECK(pr.p2 ==
              doctest::Approx(-psi.psi2_op / (s.gamma * s.nu)).epsilon(1e-14));
    }
}

TEST_CASE("appendix first order closed form") {
    Scenario s = fig1a();
    CoefficientTable t = taylor_coeffs(fig1_heston(), s.point);

    SUBCASE("vanishes at the anchor with zero order-0 drift") {
        CoefficientTable z = t;
        z.coeff(Family::HalfSigma2, 0, 0) = 0.0;
        z.coeff(Family::DriftY, 0, 0) = 0.0;
        CHECK(appendix_first_order(z, s) == 0.0);
    }

    SUBCASE("matches quadrature across displacements") {
        for (double dx : {-0.05, 0.0, 0.04}) {
            for (double dy : {-0.01, 0.0, 0.008}) {
                Scenario d = s;
                d.x += dx;
                d.y += dy;
                CHECK(appendix_first_order(t, d) ==
                      doctest::Approx(quad_first_order(t, d)).epsilon(1e-12));
            }
        }
    }

    SUBCASE("formula sign equals quadrature sign off the anchor") {
        Scenario d = s;
        d.y += 0.01;
        const double closed = appendix_first_order(t, d);
        const double quad = quad_first_order(t, d);
        CHECK(closed * quad > 0.0);
    }
}

TEST_CASE("appendix second order cross closed form") {
    Scenario s = fig1a();
    CoefficientTable th = taylor_coeffs(fig1_heston(), s.point);
    CoefficientTable tr = taylor_coeffs(fig4_recip(), s.point);

    SUBCASE("zero first-order coefficients give zero") {
        CoefficientTable z = th;
        for (int fam = 0; fam < kNumFamilies; ++fam) z.c[fam][1] = z.c[fam][2] = 0.0;
        CHECK(appendix_second_order_cross(z, s) == 0.0);
    }

    SUBCASE("matches the nested quadrature oracle") {
        for (double dx : {-0.04, 0.02}) {
            Scenario d = s;
            d.x += dx;
            d.y += 0.006;
            CHECK(std::abs(appendix_second_order_cross(th, d) -
                           quad_second_order_cross(th, d)) < 1e-10);
            Scenario r = fig4b();
            r.x += dx;
            r.y += 0.006;
            CHECK(std::abs(appendix_second_order_cross(tr, r) -
                           quad_second_order_cross(tr, r)) < 1e-10);
        }
    }

    SUBCASE("x-free lambda: only the (l2)_{0,1} block contributes") {
        // reciprocal heston lambda depends on y alone
        CHECK(tr.coeff(Family::HalfLambda2, 1, 0) == 0.0);
        Scenario r = fig4b();
        r.x += 0.1;  // x-displacement must not enter through the l10 block
        CoefficientTable zeroed = tr;
        zeroed.coeff(Family::HalfLambda2, 1, 0) = 0.0;
        CHECK(appendix_second_order_cross(tr, r) == appendix_second_order_cross(zeroed, r));
    }
}

TEST_CASE("appendix lambda2 second order closed form") {
    Scenario sh = fig1a();
    CoefficientTable th = taylor_coeffs(fig1_heston(), sh.point);
    Scenario sr = fig4b();
    CoefficientTable tr = taylor_coeffs(fig4_recip(), sr.point);

    SUBCASE("zero second-order coefficients give zero") {
        CoefficientTable z = th;
        for (int fam = 0; fam < kNumFamilies; ++fam) z.c[fam][3] = z.c[fam][4] = z.c[fam][5] = 0.0;
        CHECK(appendix_lambda2_second(z, sh, ModelKind::Heston) == 0.0);
    }

    SUBCASE("closed form vs quadrature, both presets") {
        for (double dx : {-0.05, 0.03}) {
            for (double dy : {-0.008, 0.01}) {
                Scenario d = sh;
                d.x += dx;
                d.y += dy;
                CHECK(std::abs(appendix_lambda2_second(th, d, ModelKind::Heston) -
                               appendix_lambda2_second(th, d, ModelKind::Generic)) < 1e-10);
                Scenario r = sr;
                r.x += dx;
                r.y += dy;
                CHECK(std::abs(appendix_lambda2_second(tr, r, ModelKind::ReciprocalHeston) -
                               appendix_lambda2_second(tr, r, ModelKind::Generic)) < 1e-10);
            }
        }
    }
}

TEST_CASE("appendix dy term") {
    Scenario s = fig1a();
    CoefficientTable t = taylor_coeffs(fig1_heston(), s.point);

    SUBCASE("zero (s2)_01 gives zero") {
        CoefficientTable z = t;
        z.coeff(Family::HalfSigma2, 0, 1) = 0.0;
        CHECK(appendix_dy_term(z, s) == 0.0);
    }

    SUBCASE("matches the opalg quadrature oracle") {
        for (double dx : {-0.06, 0.0, 0.05}) {
            Scenario d = s;
            d.x += dx;
            CHECK(std::abs(appendix_dy_term(t, d) - quad_dy_term(t, d)) < 1e-10);
        }
    }

    SUBCASE("deep out of the money both sides vanish together") {
        Scenario d = s;
        d.k = d.x + 1.0;
        const double closed = appendix_dy_term(t, d);
        const double quad = quad_dy_term(t, d);
        CHECK(std::abs(closed) < 1e-10);
        CHECK(std::abs(closed - quad) < 1e-12);
    }
}

TEST_CASE("psi2 exponential term") {
    Scenario s = fig1a();
    CoefficientTable t = taylor_coeffs(fig1_heston(), s.point);

    SUBCASE("gamma nu = 0 removes the contribution") {
        Scenario z = fig1a(0.0);
        PsiTerms psi = psi_terms(z, t);
        CHECK(psi.bracket_exp == 0.0);
    }

    SUBCASE("printed formula and convolution reference agree") {
        for (double dx : {-0.05, 0.0, 0.04}) {
            Scenario d = s;
            d.x += dx;
            ExpTermValues ev = psi2_exp_term(t, d);
            CHECK(ev.printed == doctest::Approx(ev.convolution).epsilon(1e-9));
            CHECK(std::isfinite(ev.printed));
        }
    }

    SUBCASE("shrinking maturity scaling") {
        // (T-t1)^{3/2} dt1 against the 1/sqrt(T-t+t1-t) factor integrates to
        // (T-t)^2; both evaluation routes measure the same slope.
        double prev_p = 0.0, prev_c = 0.0;
        double ratio_p = 0.0, ratio_c = 0.0;
        for (double tau : {0.02, 0.01, 0.005}) {
            Scenario d = s;
            d.T = d.t + tau;
            ExpTermValues ev = psi2_exp_term(t, d);
            if (prev_c != 0.0) {
                ratio_p = prev_p / ev.printed;
                ratio_c = prev_c / ev.convolution;
            }
            prev_p = ev.printed;
            prev_c = ev.convolution;
        }
        CHECK(ratio_c == doctest::Approx(4.0).epsilon(0.02));
        CHECK(ratio_p == doctest::Approx(ratio_c).epsilon(1e-6));
    }
}

TEST_CASE("pricing-measure drift: Omega enters p1 through the hatted Y anchor") {
    auto make_omega_model = [](double omega) {
        return make_custom(
            [](double, double y) {
                return (-0.5 * std::sqrt(y) + std::sqrt(0.04) / 3.0) * std::sqrt(y);
            },
            [](double, double y) { return std::sqrt(y); },
            [](double, double y) {
                return 1.15 * (0.04 - y) +
                       -0.4 * 0.2 * std::sqrt(y) *
                           (-0.5 * std::sqrt(y) + std::sqrt(0.04) / 3.0) * std::sqrt(y) /
                           std::sqrt(y);
            },
            [](double, double y) { return 0.2 * std::sqrt(y); }, -0.4,
            omega == 0.0 ? std::function<double(double, double)>()
                         : [omega](double, double) { return omega; });
    };
    Scenario s = fig1a();
    ModelSpec m0 = make_omega_model(0.0);
    ModelSpec m1 = make_omega_model(0.1);
    CoefficientTable t0 = taylor_coeffs(m0, s.point, DerivMode::FiniteDifference);
    CoefficientTable t1 = taylor_coeffs(m1, s.point, DerivMode::FiniteDifference);
    PriceTerms p0 = price_terms(s, t0);
    PriceTerms p1 = price_terms(s, t1);

    // the hatted-drift shift moves the Y-anchor of G1, which acts on p^BS
    // through (s2)_{0,1}(Y - ybar)(dxx - dx); trace the exact difference
    const double dt = s.horizon();
    BsInputs in{s.t, s.T, s.x, s.k, t0.sigma0()};
    const double gamma_bs = bs_dx(in, 2) - bs_dx(in, 1);
    const double s01 = t0.coeff(Family::HalfSigma2, 0, 1);
    const double drift_shift = t1.at0(Family::DriftYHat) - t0.at0(Family::DriftYHat);
    const double expected_diff = s01 * drift_shift * gamma_bs * 0.5 * dt * dt;
    CHECK(p1.p1 - p0.p1 == doctest::Approx(expected_diff).epsilon(1e-7));
    CHECK(p1.p2 != p0.p2);

    // measure-change arbitration: the series with Omega = 0.1 must still
    // track a Monte-Carlo price simulated under the shifted drift
    McConfig mc;
    mc.paths = 200000;
    mc.steps = 100;
    mc.seed = 7;
    McResult ref = mc_price(m1, s, mc);
    CHECK(std::abs(p1.total() - ref.price) < 3.0 * ref.std_error);
}

TEST_CASE("rho^2 -> 1 kills the (1 - rho^2) bracket") {
    ModelSpec m = make_custom(
        [](double, double y) { return 0.1 * std::sqrt(y); },
        [](double, double y) { return std::sqrt(y); },
        [](double, double y) { return 1.15 * (0.04 - y); },
        [](double, double y) { return 0.2 * std::sqrt(y); }, 1.0 - 1e-12);
    Scenario s = fig1a();
    CoefficientTable t = taylor_coeffs(m, s.point, DerivMode::FiniteDifference);
    PsiTerms psi = psi_terms(s, t);
    const double bracket_sum = psi.bracket_eta + psi.bracket_cross + psi.bracket_exp;
    CHECK(std::abs(psi.psi2_bracket) < 1e-11 * std::max(1.0, std::abs(bracket_sum)));
}

TEST_CASE("degenerate maturity limits") {
    Scenario s = fig1a();
    s.T = s.t + 1e-12;
    s.k = s.x - 0.1;  // in the money
    CoefficientTable t = taylor_coeffs(fig1_heston(), s.point);
    PsiTerms psi = psi_terms(s, t);
    CHECK(psi.psi0 == doctest::Approx(-s.gamma * s.nu * call_payoff(s.x, s.k)).epsilon(1e-12));
    CHECK(psi.psi1 == 0.0);
    CHECK(psi.psi2 == 0.0);
    PriceTerms pr = price_terms(s, t);
    CHECK(pr.p0 == doctest::Approx(call_payoff(s.x, s.k)).epsilon(1e-12));
    CHECK(pr.p1 == 0.0);
}

TEST_CASE("quadrature order below 2 is rejected") {
    Scenario s = fig1a();
    CoefficientTable t = taylor_coeffs(fig1_heston(), s.point);
    ExpansionOptions opts;
    opts.quad_order = 1;
    CHECK_THROWS_AS(psi_terms(s, t, opts), std::invalid_argument);
}

TEST_CASE("epsilon residual of the truncated series scales like eps^3") {
    // light version of the acceptance check: one displaced point, 4th-order
    // finite differences, ratio for eps 0.2 -> 0.1 near the theoretical 8.
    ModelSpec m = fig1_heston();
    Scenario base = fig1a();
    CoefficientTable table = taylor_coeffs(m, base.point);
    ExpansionOptions opts;
    opts.quad_order = 16;
    opts.hermite_order = 32;

    auto residual = [&](double eps) {
        CoefficientTable st = table.scaled(eps);
        auto psibar = [&](double t, double x, double y) {
            Scenario s = base;
            s.t = t;
            s.x = x;
            s.y = y;
            return psi_terms(s, st, opts).total();
        };
        const double x = base.x + 0.04, y = base.y + 0.008, t = base.t;
        const double hx = 5e-4, hy = 1e-4, ht = 1e-5;
        auto f = [&](double xx, double yy) { return psibar(t, xx, yy); };
        const double f0 = f(x, y);
        const double fx =
            (-f(x + 2 * hx, y) + 8 * f(x + hx, y) - 8 * f(x - hx, y) + f(x - 2 * hx, y)) /
            (12 * hx);
        const double fxx = (-f(x + 2 * hx, y) + 16 * f(x + hx, y) - 30 * f0 + 16 * f(x - hx, y) -
                            f(x - 2 * hx, y)) /
                           (12 * hx * hx);
        const double fy =
            (-f(x, y + 2 * hy) + 8 * f(x, y + hy) - 8 * f(x, y - hy) + f(x, y - 2 * hy)) /
            (12 * hy);
        const double fyy = (-f(x, y + 2 * hy) + 16 * f(x, y + hy) - 30 * f0 + 16 * f(x, y - hy) -
                            f(x, y - 2 * hy)) /
                           (12 * hy * hy);
        const double fxy =
            (f(x + hx, y + hy) - f(x + hx, y - hy) - f(x - hx, y + hy) + f(x - hx, y - hy)) /
            (4 * hx * hy);
        const double ft = (psibar(t + ht, x, y) - psibar(t - ht, x, y)) / (2 * ht);
        auto chi = [&](Family fam) {
            return m.family(fam).value(base.point.x_bar + eps * (x - base.point.x_bar),
                                       base.point.y_bar + eps * (y - base.point.y_bar));
        };
        return std::abs(ft + chi(Family::HalfSigma2) * (fxx - fx) + chi(Family::DriftY) * fy +
                        chi(Family::HalfBeta2) * fyy + chi(Family::CrossXY) * fxy +
                        (1.0 - m.rho * m.rho) * chi(Family::HalfBeta2) * fy * fy -
                        chi(Family::HalfLambda2));
    };
    const double ratio = residual(0.2) / residual(0.1);
    CHECK(ratio > 6.5);
    CHECK(ratio < 9.5);
}
