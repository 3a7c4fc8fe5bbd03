#include "sharpe.hpp"

#include <cmath>

namespace isr {

namespace {

constexpr double kRadicandZeroBand = 1e-12;

}  // namespace

SharpeApproximation implied_sharpe_from_table(const Scenario& scen, const CoefficientTable& table,
                                              ModelKind kind, const SharpeOptions& opts,
                                              bool omega_is_zero) {
    scen.validate();
    opts.validate();
    const double dt = scen.horizon();
    const double gn = scen.gamma * scen.nu;

    SharpeApproximation out;
    out.order = opts.order;
    out.exp_term_source = opts.expansion.exp_source;
    out.method = opts.method.value_or(omega_is_zero ? Method::MmmRemark : Method::General);
    if (out.method == Method::MmmRemark && !omega_is_zero)
        throw std::invalid_argument("implied_sharpe: mmm_remark method requires Omega == 0");

    out.psi = psi_terms(scen, table, opts.expansion);
    out.price = price_terms(scen, table, opts.expansion);

    // gamma nu p0 + psi0 assembled from components so the option legs cancel
    // exactly and the radicand lands on lambda0^2.
    const double numer = (gn * out.price.p0 + out.psi.psi0_option) + out.psi.psi0_lambda;
    out.radicand = numer / (-0.5 * dt);
    if (out.radicand < -kRadicandZeroBand)
        throw value_dominance_error("implied_sharpe: value dominance violated (radicand < 0)");
    out.lambda0 = out.radicand > 0.0 ? std::sqrt(out.radicand) : 0.0;
    if (opts.order == 0) return out;

    if (out.radicand <= kRadicandZeroBand)
        throw degenerate_anchor_error("implied_sharpe: Lambda0 ~ 0, corrections undefined");

    // Order-matching of gamma nu p^eps + psi^eps = -(T-t) (Lambda^eps)^2 / 2:
    //   Lambda_k = -(gamma nu p_k + psi_k + (T-t)/2 sum_{i+j=k, i,j>=1}
    //              Lambda_i Lambda_j) / ((T-t) Lambda_0).
    if (out.method == Method::General) {
        const double n1 = gn * out.price.p1 + out.psi.psi1;
        out.lambda1 = -n1 / (out.lambda0 * dt);
        if (opts.order >= 2) {
            const double n2 = gn * out.price.p2 + out.psi.psi2 + 0.5 * dt * out.lambda1 * out.lambda1;
            out.lambda2 = -n2 / (dt * out.lambda0);
        }
    } else {
        // Minimal-martingale-measure shortcut: the option legs of psi_n and
        // gamma nu p_n cancel, leaving the lambda^2 integrals and the bracket.
        const double a1 = -out.psi.psi1_lambda;  // int (l2)_1(X,Y)
        out.lambda1 = a1 / (out.lambda0 * dt);
        if (opts.order >= 2) {
            const double a2 = -out.psi.psi2_lambda2;   // int (l2)_2(X,Y)
            const double a12 = -out.psi.psi2_cross;    // int G1 int (l2)_1(X,Y)
            out.lambda2 = (a2 + a12 - out.psi.psi2_bracket -
                           0.5 * dt * out.lambda1 * out.lambda1) /
                          (dt * out.lambda0);
        }
    }
    (void)kind;
    return out;
}

SharpeApproximation implied_sharpe(const Scenario& scen, const ModelSpec& model,
                                   const SharpeOptions& opts) {
    CoefficientTable table = taylor_coeffs(model, scen.point, DerivMode::Analytic);
    return implied_sharpe_from_table(scen, table, model_kind_of(model), opts,
                                     model.omega_is_zero());
}

double merton_value(double t, double w, double lambda, double gamma, double T) {
    if (!(gamma > 0.0)) throw std::invalid_argument("merton_value: gamma must be positive");
    return -std::exp(-gamma * w - (T - t) * 0.5 * lambda * lambda) / gamma;
}

PsiGradients psi_gradients(const Scenario& scen, const ModelSpec& model,
                           const SharpeOptions& opts) {
    const double h = 1e-5;
    CoefficientTable table = taylor_coeffs(model, scen.point, DerivMode::Analytic);
    auto psibar = [&](double x, double y) {
        Scenario s = scen;
        s.x = x;
        s.y = y;
        return psi_terms(s, table, opts.expansion).total();
    };
    PsiGradients g;
    g.dpsi_dx = (psibar(scen.x + h, scen.y) - psibar(scen.x - h, scen.y)) / (2.0 * h);
    g.dpsi_dy = (psibar(scen.x, scen.y + h) - psibar(scen.x, scen.y - h)) / (2.0 * h);
    return g;
}

double optimal_strategy(const Scenario& scen, const ModelSpec& model, const PsiGradients& grads) {
    const double sig = model.sigma(scen.x, scen.y);
    if (!(sig > 0.0)) throw std::domain_error("optimal_strategy: degenerate market (sigma == 0)");
    const double mu = model.mu(scen.x, scen.y);
    const double beta = model.beta(scen.x, scen.y);
    const double sig2 = sig * sig;
    return (mu + model.rho * beta * sig * grads.dpsi_dy + sig2 * grads.dpsi_dx) /
           (sig2 * scen.gamma);
}

}  // namespace isr
