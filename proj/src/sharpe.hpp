#pragma once

#include <optional>

#include "expansion.hpp"
#include "model.hpp"
#include "types.hpp"

namespace isr {

enum class Method { General, MmmRemark };

struct SharpeOptions {
    int order = 2;                         // 0 | 1 | 2
    std::optional<Method> method;          // unset => MmmRemark when Omega == 0
    ExpansionOptions expansion;

    void validate() const {
        if (order < 0 || order > 2) throw std::invalid_argument("sharpe: order must be 0, 1 or 2");
        expansion.validate();
    }
};

struct SharpeApproximation {
    double lambda0 = 0.0;
    double lambda1 = 0.0;
    double lambda2 = 0.0;
    double radicand = 0.0;  // (gamma nu p0 + psi0) / (-(T-t)/2); equals lambda(xbar,ybar)^2
    int order = 2;
    Method method = Method::MmmRemark;
    ExpSource exp_term_source = ExpSource::Convolution;
    PsiTerms psi;
    PriceTerms price;

    double total() const {
        double v = lambda0;
        if (order >= 1) v += lambda1;
        if (order >= 2) v += lambda2;
        return v;
    }
};

SharpeApproximation implied_sharpe(const Scenario& scen, const ModelSpec& model,
                                   const SharpeOptions& opts = {});

// Table-level entry point (table and model kind already computed).
SharpeApproximation implied_sharpe_from_table(const Scenario& scen, const CoefficientTable& table,
                                              ModelKind kind, const SharpeOptions& opts,
                                              bool omega_is_zero);

// Merton value -(1/gamma) exp(-gamma w - (T-t) lambda^2 / 2).
double merton_value(double t, double w, double lambda, double gamma, double T);

struct PsiGradients {
    double dpsi_dx = 0.0;
    double dpsi_dy = 0.0;
};

// Central differences (step 1e-5) of the assembled series psi-bar in (x, y).
PsiGradients psi_gradients(const Scenario& scen, const ModelSpec& model,
                           const SharpeOptions& opts = {});

// Ansatz-reduced candidate strategy pi* = (mu + rho beta sigma dpsi_dy
// + sigma^2 dpsi_dx) / (sigma^2 gamma), in currency units of S.
double optimal_strategy(const Scenario& scen, const ModelSpec& model, const PsiGradients& grads);

}  // namespace isr
