#pragma once

#include "model.hpp"
#include "opalg.hpp"
#include "types.hpp"

namespace isr {

enum class ExpSource { Convolution, Printed };

struct ExpansionOptions {
    int quad_order = 32;     // Gauss-Legendre nodes per time axis
    int hermite_order = 64;  // Gauss-Hermite nodes per spatial axis
    ExpSource exp_source = ExpSource::Convolution;

    void validate() const {
        if (quad_order < 2) throw std::invalid_argument("expansion: quadrature order < 2 rejected");
        if (hermite_order < 2) throw std::invalid_argument("expansion: hermite order < 2 rejected");
    }
};

// Series terms of the distortion function, with the component breakdown the
// assembly identities need.
struct PsiTerms {
    double psi0 = 0.0, psi1 = 0.0, psi2 = 0.0;

    double psi0_lambda = 0.0;   // -(l2)_0 (T-t)
    double psi0_option = 0.0;   // -gamma nu p^BS
    double psi1_op = 0.0;       // -gamma nu int G1 p^BS
    double psi1_lambda = 0.0;   // -int (l2)_1(X,Y)
    double psi2_op = 0.0;       // -gamma nu (int int G1 G1 + int G2) p^BS
    double psi2_lambda2 = 0.0;  // -int (l2)_2(X,Y)
    double psi2_cross = 0.0;    // -int G1 int (l2)_1(X,Y)
    double psi2_bracket = 0.0;  // (1-rho^2)(b2)_0 [ eta^2 + cross + exp ]

    // Bracket summands (before the (1-rho^2)(b2)_0 prefactor).
    double bracket_eta = 0.0;    // (l2)_{0,1}^2 (T-t)^3/3
    double bracket_cross = 0.0;  // 2 gamma nu * dy-term
    double bracket_exp = 0.0;    // gamma^2 nu^2 * (exp-term actually used)
    double exp_printed = 0.0;      // printed-formula evaluation of int P0 (dy zeta)^2
    double exp_convolution = 0.0;  // Gauss-Hermite convolution evaluation
    ExpSource exp_source = ExpSource::Convolution;

    double total() const { return psi0 + psi1 + psi2; }
};

struct PriceTerms {
    double p0 = 0.0, p1 = 0.0, p2 = 0.0;
    double total() const { return p0 + p1 + p2; }
};

PsiTerms psi_terms(const Scenario& scen, const CoefficientTable& table,
                   const ExpansionOptions& opts = {});

PriceTerms price_terms(const Scenario& scen, const CoefficientTable& table,
                       const ExpansionOptions& opts = {});

// ---- Closed-form time integrals ----

// int_t^T (l2)_1(X(t,t1), Y(t,t1)) dt1.
double appendix_first_order(const CoefficientTable& table, const Scenario& scen);

// int_t^T G1(t,t1) int_{t1}^T (l2)_1(X(t,t2), Y(t,t2)) dt2 dt1.
double appendix_second_order_cross(const CoefficientTable& table, const Scenario& scen);

enum class ModelKind { Heston, ReciprocalHeston, Generic };

// int_t^T (l2)_2(X(t,t1), Y(t,t1)) dt1. Closed form for the preset kinds;
// Generic evaluates by quadrature over the semigroup action.
double appendix_lambda2_second(const CoefficientTable& table, const Scenario& scen,
                               ModelKind kind, int quad_order = 32);

// int_t^T (l2)_{0,1} (T-t1) dy (int_{t1}^T G1(t,t2) dt2) p^BS(t) dt1
//   = (l2)_{0,1} (s2)_{0,1} e^x phi(d+) / (sigma0 sqrt(T-t)) * (T-t)^3/3.
double appendix_dy_term(const CoefficientTable& table, const Scenario& scen);

struct ExpTermValues {
    double printed = 0.0;
    double convolution = 0.0;
};

// int_t^T P0(t,t1) (dy zeta(t1))^2 dt1, evaluated both from the printed
// formula and from the Gauss-Hermite convolution reference.
ExpTermValues psi2_exp_term(const CoefficientTable& table, const Scenario& scen,
                            int quad_order = 32, int hermite_order = 64);

inline ModelKind model_kind_of(const ModelSpec& m) {
    switch (m.kind) {
        case PresetKind::Heston: return ModelKind::Heston;
        case PresetKind::ReciprocalHeston: return ModelKind::ReciprocalHeston;
        default: return ModelKind::Generic;
    }
}

}  // namespace isr
