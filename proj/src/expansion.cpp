#include "expansion.hpp"

#include <cmath>

#include "oracle.hpp"
#include "quadrature.hpp"

namespace isr {

namespace {

constexpr double kDegenerateHorizon = 1e-10;

BsInputs bs_inputs(const Scenario& scen, const CoefficientTable& table) {
    BsInputs in;
    in.t = scen.t;
    in.T = scen.T;
    in.x = scen.x;
    in.k = scen.k;
    in.sigma0 = table.sigma0();
    return in;
}

// int_t^T apply(G_n(t,t1), pBS) dt1; integrand polynomial in t1, exact.
double integral_g(int n, const Scenario& scen, const CoefficientTable& table,
                  const BsInputs& in, int quad_order, bool hatted) {
    QuadRule rule = gauss_legendre(quad_order, scen.t, scen.T);
    double acc = 0.0;
    for (int i = 0; i < quad_order; ++i) {
        DiffOperator g = build_g(n, table, scen.t, rule.nodes[i], hatted);
        acc += rule.weights[i] * apply_to_pbs(g, in, scen.y, table.point);
    }
    return acc;
}

// int_t^T dt1 int_{t1}^T dt2 apply(G1(t,t1) G1(t,t2), pBS).
// Both operators are anchored at the valuation time t: commuting the
// semigroup through the inner G1 merges its time arguments,
//   P0(t,t1) G1(t1,t2) = G1(t,t2) P0(t,t1).
double integral_g1g1(const Scenario& scen, const CoefficientTable& table, const BsInputs& in,
                     int quad_order, bool hatted) {
    QuadRule outer = gauss_legendre(quad_order, scen.t, scen.T);
    double acc = 0.0;
    for (int i = 0; i < quad_order; ++i) {
        const double t1 = outer.nodes[i];
        DiffOperator g_outer = build_g(1, table, scen.t, t1, hatted);
        QuadRule inner = gauss_legendre(quad_order, t1, scen.T);
        double inner_acc = 0.0;
        for (int j = 0; j < quad_order; ++j) {
            DiffOperator g_inner = build_g(1, table, scen.t, inner.nodes[j], hatted);
            DiffOperator prod = compose(g_outer, g_inner);
            inner_acc += inner.weights[j] * apply_to_pbs(prod, in, scen.y, table.point);
        }
        acc += outer.weights[i] * inner_acc;
    }
    return acc;
}

// Complete closed form of int_t^T (l2)_2(X,Y) dt1: second moments of the
// operator pair, including the variance/covariance parts of (X-x)^2, (X-x)(Y-y)
// and (Y-y)^2 acting on 1.
double lambda2_second_closed(const CoefficientTable& table, const Scenario& scen) {
    const double dt = scen.horizon();
    const double u = scen.x - table.point.x_bar;
    const double v = scen.y - table.point.y_bar;
    const double s0 = table.at0(Family::HalfSigma2);
    const double c0 = table.at0(Family::DriftY);
    const double r0 = table.at0(Family::CrossXY);
    const double b0 = table.at0(Family::HalfBeta2);
    const double l20 = table.coeff(Family::HalfLambda2, 2, 0);
    const double l11 = table.coeff(Family::HalfLambda2, 1, 1);
    const double l02 = table.coeff(Family::HalfLambda2, 0, 2);

    const double dt2 = dt * dt, dt3 = dt2 * dt;
    const double ix = u * u * dt - u * s0 * dt2 + s0 * s0 * dt3 / 3.0 + s0 * dt2;
    const double ixy = u * v * dt + 0.5 * dt2 * (u * c0 - v * s0) - dt3 / 3.0 * s0 * c0 +
                       0.5 * r0 * dt2;
    const double iy = v * v * dt + v * c0 * dt2 + c0 * c0 * dt3 / 3.0 + b0 * dt2;
    return l20 * ix + l11 * ixy + l02 * iy;
}

double lambda2_second_quadrature(const CoefficientTable& table, const Scenario& scen,
                                 int quad_order) {
    Poly2 f;
    f.add(table.coeff(Family::HalfLambda2, 2, 0), 2, 0);
    f.add(table.coeff(Family::HalfLambda2, 1, 1), 1, 1);
    f.add(table.coeff(Family::HalfLambda2, 0, 2), 0, 2);
    const double u = scen.x - table.point.x_bar;
    const double v = scen.y - table.point.y_bar;
    QuadRule rule = gauss_legendre(quad_order, scen.t, scen.T);
    double acc = 0.0;
    for (size_t i = 0; i < rule.nodes.size(); ++i) {
        Poly2 img = semigroup_poly(f, table, scen.t, rule.nodes[i]);
        acc += rule.weights[i] * img.eval(u, v);
    }
    return acc;
}

}  // namespace

double appendix_first_order(const CoefficientTable& table, const Scenario& scen) {
    const double dt = scen.horizon();
    const double u = scen.x - table.point.x_bar;
    const double v = scen.y - table.point.y_bar;
    const double l10 = table.coeff(Family::HalfLambda2, 1, 0);
    const double l01 = table.coeff(Family::HalfLambda2, 0, 1);
    const double s0 = table.at0(Family::HalfSigma2);
    const double c0 = table.at0(Family::DriftY);
    return l10 * (u * dt - 0.5 * s0 * dt * dt) + l01 * (v * dt + 0.5 * c0 * dt * dt);
}

double appendix_second_order_cross(const CoefficientTable& table, const Scenario& scen) {
    const double dt = scen.horizon();
    const double u = scen.x - table.point.x_bar;
    const double v = scen.y - table.point.y_bar;
    const double l10 = table.coeff(Family::HalfLambda2, 1, 0);
    const double l01 = table.coeff(Family::HalfLambda2, 0, 1);
    const double s0 = table.at0(Family::HalfSigma2);
    const double c0 = table.at0(Family::DriftY);
    const double s10 = table.coeff(Family::HalfSigma2, 1, 0);
    const double s01 = table.coeff(Family::HalfSigma2, 0, 1);
    const double c10 = table.coeff(Family::DriftY, 1, 0);
    const double c01 = table.coeff(Family::DriftY, 0, 1);
    const double half_dt2 = 0.5 * dt * dt;
    const double third_dt = dt / 3.0;
    return -l10 * half_dt2 * (s10 * u + s01 * v + third_dt * (-s10 * s0 + s01 * c0)) +
           l01 * half_dt2 * (c10 * u + c01 * v + third_dt * (-c10 * s0 + c01 * c0));
}

double appendix_lambda2_second(const CoefficientTable& table, const Scenario& scen,
                               ModelKind kind, int quad_order) {
    if (kind == ModelKind::Generic) return lambda2_second_quadrature(table, scen, quad_order);
    return lambda2_second_closed(table, scen);
}

double appendix_dy_term(const CoefficientTable& table, const Scenario& scen) {
    const double dt = scen.horizon();
    const double l01 = table.coeff(Family::HalfLambda2, 0, 1);
    const double s01 = table.coeff(Family::HalfSigma2, 0, 1);
    if (l01 == 0.0 || s01 == 0.0) return 0.0;
    BsInputs in = bs_inputs(scen, table);
    const double gamma_bs = bs_dx(in, 2) - bs_dx(in, 1);  // e^x phi(d+)/(sigma0 sqrt(T-t))
    return l01 * s01 * gamma_bs * dt * dt * dt / 3.0;
}

ExpTermValues psi2_exp_term(const CoefficientTable& table, const Scenario& scen, int quad_order,
                            int hermite_order) {
    ExpTermValues out;
    const double s01 = table.coeff(Family::HalfSigma2, 0, 1);
    if (s01 == 0.0) return out;

    const double dt = scen.horizon();
    const double sig0 = table.sigma0();
    const double sig0_sq = sig0 * sig0;

    // Substitute t1 = T - v^2 so the (T-t1)^{3/2} endpoint behaviour becomes
    // polynomial in v; same rule drives both evaluations.
    QuadRule rule = gauss_legendre(quad_order, 0.0, std::sqrt(dt));
    const double pref = s01 * s01 / (2.0 * M_PI * sig0_sq);
    double printed = 0.0, convol = 0.0;
    for (size_t i = 0; i < rule.nodes.size(); ++i) {
        const double v = rule.nodes[i];
        const double t1 = scen.T - v * v;
        const double w = rule.weights[i] * 2.0 * v;
        const double tau1 = scen.T - t1;  // = v^2

        const double arg = scen.T - scen.t + t1 - scen.t;
        const double z = (scen.k - scen.x) + 0.5 * sig0_sq * dt;
        printed += w * std::pow(tau1, 1.5) / std::sqrt(arg) *
                   std::exp(2.0 * scen.k - z * z / (sig0_sq * arg));

        auto dzeta_sq = [&](double x1, double) {
            BsInputs node_in;
            node_in.t = t1;
            node_in.T = scen.T;
            node_in.x = x1;
            node_in.k = scen.k;
            node_in.sigma0 = sig0;
            const double g = bs_dx(node_in, 2) - bs_dx(node_in, 1);
            const double dz = tau1 * s01 * g;
            return dz * dz;
        };
        const double s_elapsed = t1 - scen.t;
        if (tau1 > 2.0 * s_elapsed) {
            convol += w * gaussian_convolution(dzeta_sq, table, scen.t, t1, scen.x, scen.y,
                                               hermite_order);
        } else {
            // (dy zeta)^2 is narrower than the kernel here; integrate with the
            // Hermite weight attached to its own Gaussian factor instead.
            QuadRule gh = gauss_hermite(hermite_order);
            const double uvar = 0.5 * sig0_sq * tau1;          // g width^2
            const double vvar = sig0_sq * s_elapsed;           // kernel width^2
            const double kap = scen.k - 0.5 * sig0_sq * tau1;  // g center
            const double mx = scen.x - s_elapsed * table.at0(Family::HalfSigma2);
            const double amp = tau1 * tau1 * s01 * s01 / (2.0 * M_PI * sig0_sq * tau1);
            double acc = 0.0;
            for (int n = 0; n < hermite_order; ++n) {
                const double x1 = kap + std::sqrt(2.0 * uvar) * gh.nodes[n];
                acc += gh.weights[n] * std::exp(2.0 * x1 - (x1 - mx) * (x1 - mx) / (2.0 * vvar));
            }
            acc *= amp * std::sqrt(2.0 * uvar) / std::sqrt(2.0 * M_PI * vvar);
            convol += w * acc;
        }
    }
    out.printed = pref * printed;
    out.convolution = convol;
    return out;
}

PsiTerms psi_terms(const Scenario& scen, const CoefficientTable& table,
                   const ExpansionOptions& opts) {
    scen.validate();
    opts.validate();
    PsiTerms out;
    out.exp_source = opts.exp_source;
    const double dt = scen.horizon();
    const double gn = scen.gamma * scen.nu;

    if (dt < kDegenerateHorizon) {
        out.psi0_option = -gn * call_payoff(scen.x, scen.k);
        out.psi0 = out.psi0_option;
        return out;
    }

    BsInputs in = bs_inputs(scen, table);
    in.validate();
    const double p0 = bs_price(in);

    out.psi0_lambda = -table.at0(Family::HalfLambda2) * dt;
    out.psi0_option = -gn * p0;
    out.psi0 = out.psi0_lambda + out.psi0_option;

    out.psi1_op = -gn * integral_g(1, scen, table, in, opts.quad_order, false);
    out.psi1_lambda = -appendix_first_order(table, scen);
    out.psi1 = out.psi1_op + out.psi1_lambda;

    out.psi2_op = -gn * (integral_g1g1(scen, table, in, opts.quad_order, false) +
                         integral_g(2, scen, table, in, opts.quad_order, false));
    out.psi2_lambda2 = -lambda2_second_closed(table, scen);
    out.psi2_cross = -appendix_second_order_cross(table, scen);

    const double l01 = table.coeff(Family::HalfLambda2, 0, 1);
    out.bracket_eta = l01 * l01 * dt * dt * dt / 3.0;
    out.bracket_cross = 2.0 * gn * appendix_dy_term(table, scen);
    ExpTermValues ev = psi2_exp_term(table, scen, opts.quad_order, opts.hermite_order);
    out.exp_printed = ev.printed;
    out.exp_convolution = ev.convolution;
    const double e_used = (opts.exp_source == ExpSource::Printed) ? ev.printed : ev.convolution;
    out.bracket_exp = gn * gn * e_used;

    const double one_m_rho2 = 1.0 - table.rho * table.rho;
    out.psi2_bracket = one_m_rho2 * table.at0(Family::HalfBeta2) *
                       (out.bracket_eta + out.bracket_cross + out.bracket_exp);
    out.psi2 = out.psi2_op + out.psi2_lambda2 + out.psi2_cross + out.psi2_bracket;
    return out;
}

PriceTerms price_terms(const Scenario& scen, const CoefficientTable& table,
                       const ExpansionOptions& opts) {
    scen.validate();
    opts.validate();
    PriceTerms out;
    const double dt = scen.horizon();
    if (dt < kDegenerateHorizon) {
        out.p0 = call_payoff(scen.x, scen.k);
        return out;
    }
    BsInputs in = bs_inputs(scen, table);
    in.validate();
    out.p0 = bs_price(in);
    out.p1 = integral_g(1, scen, table, in, opts.quad_order, true);
    out.p2 = integral_g(2, scen, table, in, opts.quad_order, true) +
             integral_g1g1(scen, table, in, opts.quad_order, true);
    return out;
}

}  // namespace isr
