#include <cmath>
#include <vector>

#include "doctest.h"
#include "model.hpp"
#include "opalg.hpp"
#include "oracle.hpp"

using namespace isr;

namespace {

const ExpansionPoint kAnchor{std::log(100.0), 0.04};

CoefficientTable fig1_table() {
    return taylor_coeffs(make_heston({1.15, 0.04, 0.2, -0.4}), kAnchor);
}

BsInputs atm_bs(double sigma0) {
    BsInputs in;
    in.t = 0.0;
    in.T = 6.0 / 52.0;
    in.x = kAnchor.x_bar;
    in.k = kAnchor.x_bar;
    in.sigma0 = sigma0;
    return in;
}

double binom(int n, int k) {
    double r = 1.0;
    for (int t = 1; t <= k; ++t) r = r * (n - k + t) / t;
    return r;
}

double falling(int n, int k) {
    double r = 1.0;
    for (int t = 0; t < k; ++t) r *= (n - t);
    return r;
}

// test function family f = poly(x - xbar, y - ybar) * p^BS(x), with exact
// mixed derivatives via Leibniz and bs_dx.
struct PolyTimesBs {
    Poly2 poly;
    BsInputs bs;

    double deriv(double x, double y, int a, int b) const {
        const double dx = x - kAnchor.x_bar, dy = y - kAnchor.y_bar;
        BsInputs in = bs;
        in.x = x;
        double acc = 0.0;
        for (int r = 0; r <= a; ++r) {
            // d^r/dx^r d^b/dy^b of the polynomial factor
            double pval = 0.0;
            for (const auto& [m, c] : poly.coeffs) {
                if (m.first < r || m.second < b) continue;
                pval += c * falling(m.first, r) * falling(m.second, b) *
                        std::pow(dx, m.first - r) * std::pow(dy, m.second - b);
            }
            if (pval != 0.0) acc += binom(a, r) * pval * bs_dx(in, a - r);
        }
        return acc;
    }
    double value(double x, double y) const { return deriv(x, y, 0, 0); }
};

// A_n applied to the test function, with all derivatives exact.
double apply_an(const CoefficientTable& t, int n, const PolyTimesBs& f, double x, double y,
                bool hatted = false) {
    const double dx = x - t.point.x_bar, dy = y - t.point.y_bar;
    auto chi_n = [&](Family fam) {
        double acc = 0.0;
        for (int k = 0; k <= n; ++k)
            acc += t.coeff(fam, n - k, k) * std::pow(dx, n - k) * std::pow(dy, k);
        return acc;
    };
    return chi_n(Family::HalfSigma2) * (f.deriv(x, y, 2, 0) - f.deriv(x, y, 1, 0)) +
           chi_n(hatted ? Family::DriftYHat : Family::DriftY) * f.deriv(x, y, 0, 1) +
           chi_n(Family::HalfBeta2) * f.deriv(x, y, 0, 2) +
           chi_n(Family::CrossXY) * f.deriv(x, y, 1, 1);
}

// evaluation of a normal-ordered operator against the test function
double apply_op(const DiffOperator& op, const PolyTimesBs& f, double x, double y) {
    const double dx = x - kAnchor.x_bar, dy = y - kAnchor.y_bar;
    double acc = 0.0;
    for (const auto& [k, c] : op.terms())
        acc += c * std::pow(dx, k.i) * std::pow(dy, k.j) * f.deriv(x, y, k.a, k.b);
    return acc;
}

Poly2 monomial(int i, int j) {
    Poly2 p;
    p.add(1.0, i, j);
    return p;
}

}  // namespace

TEST_CASE("compose canonical commutator") {
    DiffOperator ddx = DiffOperator::term(1.0, 0, 0, 1, 0);
    DiffOperator xmono = DiffOperator::term(1.0, 1, 0, 0, 0);
    DiffOperator c = compose(ddx, xmono);
    CHECK(c.terms().size() == 2);
    CHECK(c.terms().at(OpKey{1, 0, 1, 0}) == 1.0);
    CHECK(c.terms().at(OpKey{0, 0, 0, 0}) == 1.0);

    DiffOperator a = DiffOperator::term(0.7, 1, 1, 1, 0) + DiffOperator::term(-0.2, 0, 0, 0, 2);
    DiffOperator ai = compose(a, DiffOperator::identity());
    CHECK(ai.terms() == a.terms());
    DiffOperator ia = compose(DiffOperator::identity(), a);
    CHECK(ia.terms() == a.terms());
}

TEST_CASE("compose equals sequential application on polynomials") {
    // deterministic little LCG for coefficient variety
    unsigned long seed = 12345;
    auto next = [&seed]() {
        seed = seed * 6364136223846793005ull + 1442695040888963407ull;
        return static_cast<double>((seed >> 33) % 2000) / 1000.0 - 1.0;
    };
    for (int trial = 0; trial < 20; ++trial) {
        // monomial degree <= 2 per factor keeps the product inside the caps
        DiffOperator a, b;
        for (int t = 0; t < 3; ++t) {
            a.add(next(), (t * 7 + 1) % 2, t % 2, (t + 1) % 3, t % 2);
            b.add(next(), t % 2, (t * 5 + 1) % 2, t % 2, (t + 2) % 3);
        }
        DiffOperator ab = compose(a, b);
        for (int i = 0; i + 0 <= 4; ++i) {
            for (int j = 0; i + j <= 4; ++j) {
                Poly2 f = monomial(i, j);
                Poly2 seq = apply_to_poly(a, apply_to_poly(b, f));
                Poly2 direct = apply_to_poly(ab, f);
                for (double dx : {-0.3, 0.4}) {
                    for (double dy : {-0.02, 0.05}) {
                        CHECK(direct.eval(dx, dy) ==
                              doctest::Approx(seq.eval(dx, dy)).epsilon(1e-12));
                    }
                }
            }
        }
    }
}

TEST_CASE("construction order does not change the canonical form") {
    DiffOperator a;
    a.add(0.5, 1, 0, 2, 0).add(-0.25, 0, 1, 0, 1).add(1.5, 0, 0, 1, 1);
    DiffOperator b;
    b.add(1.5, 0, 0, 1, 1).add(0.5, 1, 0, 2, 0).add(-0.25, 0, 1, 0, 1);
    CHECK(a.terms() == b.terms());
    // cancelling terms are purged
    DiffOperator c;
    c.add(1.0, 1, 1, 0, 0).add(-1.0, 1, 1, 0, 0);
    CHECK(c.empty());
}

TEST_CASE("degree and order caps are enforced") {
    CHECK_THROWS_AS(DiffOperator::term(1.0, 3, 2, 0, 0), std::domain_error);
    CHECK_THROWS_AS(DiffOperator::term(1.0, 0, 0, 4, 3), std::domain_error);
    DiffOperator d3 = DiffOperator::term(1.0, 2, 2, 3, 3);
    CHECK_THROWS_AS(compose(d3, d3), std::domain_error);
}

TEST_CASE("X and Y operators: action on 1 and commutation") {
    CoefficientTable t = fig1_table();
    const double tau = 0.07;
    XYPair xy = build_xy(t, 0.0, tau);
    Poly2 one = Poly2::constant(1.0);

    Poly2 x1 = apply_to_poly(xy.x_op, one);
    const double s0 = t.at0(Family::HalfSigma2);
    CHECK(x1.eval(0.2, 0.0) ==
          doctest::Approx(kAnchor.x_bar + 0.2 - tau * s0).epsilon(1e-14));

    Poly2 y1 = apply_to_poly(xy.y_op, one);
    const double c0 = t.at0(Family::DriftY);
    CHECK(y1.eval(0.0, 0.01) ==
          doctest::Approx(kAnchor.y_bar + 0.01 + tau * c0).epsilon(1e-14));

    DiffOperator comm = compose(xy.x_op, xy.y_op) - compose(xy.y_op, xy.x_op);
    for (int i = 0; i + 0 <= 4; ++i)
        for (int j = 0; i + j <= 4; ++j) {
            Poly2 img = apply_to_poly(comm, monomial(i, j));
            for (double dx : {-0.2, 0.3})
                for (double dy : {-0.01, 0.02}) CHECK(std::abs(img.eval(dx, dy)) < 1e-12);
        }

    CHECK_THROWS_AS(build_xy(t, 0.1, 0.05), std::invalid_argument);
}

TEST_CASE("semigroup composition on polynomials") {
    CoefficientTable t = fig1_table();
    const double t0 = 0.0, t1 = 0.05, t2 = 0.11;
    for (int i = 0; i + 0 <= 3; ++i) {
        for (int j = 0; i + j <= 3; ++j) {
            Poly2 f = monomial(i, j);
            Poly2 two_step = semigroup_poly(semigroup_poly(f, t, t1, t2), t, t0, t1);
            Poly2 one_step = semigroup_poly(f, t, t0, t2);
            for (double dx : {-0.3, 0.0, 0.25})
                for (double dy : {-0.015, 0.02})
                    CHECK(two_step.eval(dx, dy) ==
                          doctest::Approx(one_step.eval(dx, dy)).epsilon(1e-12));
        }
    }
}

TEST_CASE("semigroup action matches the Gaussian convolution") {
    CoefficientTable t = fig1_table();
    const double tau = 6.0 / 52.0;
    Poly2 f;
    f.add(1.0, 2, 1);  // (x - xbar)^2 (y - ybar)
    const double x = kAnchor.x_bar + 0.1, y = kAnchor.y_bar + 0.005;
    Poly2 img = semigroup_poly(f, t, 0.0, tau);
    auto fv = [&](double xx, double yy) {
        return std::pow(xx - kAnchor.x_bar, 2) * (yy - kAnchor.y_bar);
    };
    const double conv = gaussian_convolution(fv, t, 0.0, tau, x, y, 64);
    CHECK(img.eval(x - kAnchor.x_bar, y - kAnchor.y_bar) ==
          doctest::Approx(conv).epsilon(1e-8));
}

TEST_CASE("gaussian convolution moments match the operator action") {
    CoefficientTable t = fig1_table();
    const double tau = 0.08, x = kAnchor.x_bar - 0.04, y = kAnchor.y_bar + 0.008;
    for (int i = 0; i + 0 <= 2; ++i) {
        for (int j = 0; i + j <= 2; ++j) {
            Poly2 img = semigroup_poly(monomial(i, j), t, 0.0, tau);
            auto fv = [&](double xx, double yy) {
                return std::pow(xx - kAnchor.x_bar, i) * std::pow(yy - kAnchor.y_bar, j);
            };
            const double conv = gaussian_convolution(fv, t, 0.0, tau, x, y, 64);
            CHECK(std::abs(img.eval(x - kAnchor.x_bar, y - kAnchor.y_bar) - conv) < 1e-10);
        }
    }
}

TEST_CASE("build_g structure") {
    CoefficientTable t = fig1_table();
    const double tau = 0.06;

    SUBCASE("zero first-order coefficients give the zero operator") {
        CoefficientTable z = t;
        for (int fam = 0; fam < kNumFamilies; ++fam) z.c[fam][1] = z.c[fam][2] = 0.0;
        CHECK(build_g(1, z, 0.0, tau).empty());
    }

    SUBCASE("the (s2)_01 (Y - ybar)(dxx - dx) term lifts onto dy dxx") {
        // isolate the half-sigma^2 family
        CoefficientTable z = t;
        for (int fam = 0; fam < kNumFamilies; ++fam)
            if (fam != static_cast<int>(Family::HalfSigma2)) z.c[fam][1] = z.c[fam][2] = 0.0;
        DiffOperator g = build_g(1, z, 0.0, tau);
        const double expected =
            t.coeff(Family::HalfSigma2, 0, 1) * tau * 2.0 * t.at0(Family::HalfBeta2);
        CHECK(g.terms().at(OpKey{0, 0, 2, 1}) == doctest::Approx(expected).epsilon(1e-14));
    }

    SUBCASE("full table includes the cross-family lift as well") {
        DiffOperator g = build_g(1, t, 0.0, tau);
        const double expected =
            t.coeff(Family::HalfSigma2, 0, 1) * tau * 2.0 * t.at0(Family::HalfBeta2) +
            t.coeff(Family::CrossXY, 0, 1) * tau * t.at0(Family::CrossXY);
        CHECK(g.terms().at(OpKey{0, 0, 2, 1}) == doctest::Approx(expected).epsilon(1e-14));
    }

    CHECK_THROWS_AS(build_g(3, t, 0.0, tau), std::invalid_argument);
}

TEST_CASE("apply_to_pbs basics") {
    CoefficientTable t = fig1_table();
    BsInputs in = atm_bs(t.sigma0());
    CHECK(apply_to_pbs(DiffOperator{}, in, 0.05, kAnchor) == 0.0);

    DiffOperator heat = DiffOperator::term(1.0, 0, 0, 2, 0) + DiffOperator::term(-1.0, 0, 0, 1, 0);
    const double closed =
        std::exp(in.x) * norm_pdf(in.d_plus()) / (in.sigma0 * std::sqrt(in.tau()));
    CHECK(apply_to_pbs(heat, in, 0.05, kAnchor) == doctest::Approx(closed).epsilon(1e-14));

    // any dy factor annihilates p^BS
    DiffOperator dy_op = DiffOperator::term(3.0, 1, 1, 2, 1);
    CHECK(apply_to_pbs(dy_op, in, 0.05, kAnchor) == 0.0);

    DiffOperator overflow = DiffOperator::term(1.0, 0, 0, 6, 0);
    CHECK_NOTHROW(apply_to_pbs(overflow, in, 0.05, kAnchor));
}

TEST_CASE("G1 applied to p^BS matches the frozen-coefficient grid oracle") {
    // G1(t,t1) p^BS(t) = P0(t,t1) A1 p^BS(t1): right side via Gauss-Hermite
    // convolution with finite-difference derivatives of the price.
    CoefficientTable t = fig1_table();
    BsInputs in = atm_bs(t.sigma0());
    const double t1 = 0.05;
    in.x += 0.03;
    const double x = in.x, y = kAnchor.y_bar + 0.004;

    DiffOperator g1 = build_g(1, t, in.t, t1);
    const double lhs = apply_to_pbs(g1, in, y, kAnchor);

    auto a1_pbs = [&](double xx, double yy) {
        BsInputs node = in;
        node.t = t1;
        const double h = 1e-4;
        auto price = [&](double xv) {
            BsInputs p = node;
            p.x = xv;
            return bs_price(p);
        };
        const double px = (price(xx + h) - price(xx - h)) / (2.0 * h);
        const double pxx = (price(xx + h) - 2.0 * price(xx) + price(xx - h)) / (h * h);
        const double dx = xx - kAnchor.x_bar, dy = yy - kAnchor.y_bar;
        const double s1 = t.coeff(Family::HalfSigma2, 1, 0) * dx +
                          t.coeff(Family::HalfSigma2, 0, 1) * dy;
        return s1 * (pxx - px);  // all dy-families annihilate p^BS
    };
    const double rhs = gaussian_convolution(a1_pbs, t, in.t, t1, x, y, 64);
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-6));
}

TEST_CASE("commutation lemma on poly * p^BS test functions") {
    CoefficientTable t = fig1_table();
    BsInputs in = atm_bs(t.sigma0());
    const double t1 = 0.06;

    for (int n : {1, 2}) {
        for (int mono_i : {0, 1}) {
            PolyTimesBs f;
            f.bs = in;
            f.poly.add(1.0, mono_i, 1);
            f.poly.add(0.5, 0, 0);
            for (double dx : {-0.05, 0.08}) {
                const double x = in.x + dx, y = kAnchor.y_bar + 0.006;
                // lhs: P0(t,t1) [A_n f]
                auto anf = [&](double xx, double yy) { return apply_an(t, n, f, xx, yy); };
                const double lhs = gaussian_convolution(anf, t, in.t, t1, x, y, 64);
                // rhs: G_n(t,t1) [P0(t,t1) f] with derivatives moved inside
                DiffOperator gn = build_g(n, t, in.t, t1);
                double rhs = 0.0;
                for (const auto& [key, c] : gn.terms()) {
                    auto fd = [&](double xx, double yy) { return f.deriv(xx, yy, key.a, key.b); };
                    rhs += c * std::pow(x - kAnchor.x_bar, key.i) *
                           std::pow(y - kAnchor.y_bar, key.j) *
                           gaussian_convolution(fd, t, in.t, t1, x, y, 64);
                }
                CHECK(lhs == doctest::Approx(rhs).epsilon(1e-7));
            }
        }
    }
}

TEST_CASE("semigroup merges the time arguments of an inner G1") {
    // P0(t,t1) G1(t1,t2) f = G1(t,t2) P0(t,t1) f  - the inner operator is
    // re-anchored at t, not left at t1.
    CoefficientTable t = fig1_table();
    BsInputs in = atm_bs(t.sigma0());
    const double t1 = 0.04, t2 = 0.09;
    PolyTimesBs f;
    f.bs = in;
    f.poly.add(1.0, 0, 1);
    f.poly.add(-0.3, 1, 0);
    f.poly.add(2.0, 0, 0);

    const double x = in.x - 0.06, y = kAnchor.y_bar + 0.007;

    DiffOperator g_inner_t1 = build_g(1, t, t1, t2);
    auto g_t1_f = [&](double xx, double yy) { return apply_op(g_inner_t1, f, xx, yy); };
    const double lhs = gaussian_convolution(g_t1_f, t, in.t, t1, x, y, 64);

    auto eval_gn_conv = [&](const DiffOperator& gn) {
        double acc = 0.0;
        for (const auto& [key, c] : gn.terms()) {
            auto fd = [&](double xx, double yy) { return f.deriv(xx, yy, key.a, key.b); };
            acc += c * std::pow(x - kAnchor.x_bar, key.i) * std::pow(y - kAnchor.y_bar, key.j) *
                   gaussian_convolution(fd, t, in.t, t1, x, y, 64);
        }
        return acc;
    };
    const double rhs_merged = eval_gn_conv(build_g(1, t, in.t, t2));
    const double rhs_unmerged = eval_gn_conv(g_inner_t1);

    CHECK(lhs == doctest::Approx(rhs_merged).epsilon(1e-7));
    CHECK(std::abs(lhs - rhs_unmerged) > 1e-4 * std::abs(lhs));
}
