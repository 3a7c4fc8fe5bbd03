#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>

#include "types.hpp"

namespace isr {

// Index layout for Taylor coefficients chi_{i,j} through total order 2:
// slots (i,j) = (0,0),(1,0),(0,1),(2,0),(1,1),(0,2).
enum class Family : int {
    HalfSigma2 = 0,   // (1/2) sigma^2
    DriftY,           // c - rho beta lambda
    CrossXY,          // rho sigma beta
    HalfBeta2,        // (1/2) beta^2
    HalfLambda2,      // (1/2) lambda^2
    DriftYHat,        // c - rho beta lambda - sqrt(1-rho^2) beta Omega
};
inline constexpr int kNumFamilies = 6;

// A scalar coefficient field on (x, y): value closure plus optional analytic
// partial-derivative closure partial(x, y, ix, iy) for ix+iy <= 2.
struct FamilyFunc {
    std::function<double(double, double)> value;
    std::function<double(double, double, int, int)> partial;  // null => finite differences
};

enum class PresetKind { Custom, BlackScholes, Heston, ReciprocalHeston };

struct HestonParams {
    double kappa = 0.0;  // mean-reversion rate
    double theta = 0.0;  // long-run variance
    double delta = 0.0;  // vol-of-vol
    double rho = 0.0;

    void validate() const {
        if (!(kappa > 0.0) || !(theta > 0.0) || !(delta > 0.0))
            throw std::invalid_argument("heston: kappa, theta, delta must be positive");
        if (!(std::abs(rho) < 1.0))
            throw std::invalid_argument("heston: |rho| must be < 1");
    }
};

struct ReciprocalHestonParams {
    double mu = 0.0;
    double a = 0.0;
    double b = 0.0;
    double kappa = 0.0;
    double rho = 0.0;
    // When true, the y^2 drift coefficient uses a (1 - rho^2) denominator
    // instead of the (1 - rho)^2 one. Off by default.
    bool rho_squared_drift = false;

    void validate() const {
        if (!(mu != 0.0)) throw std::invalid_argument("reciprocal_heston: mu must be nonzero");
        if (!(std::abs(rho) < 1.0))
            throw std::invalid_argument("reciprocal_heston: |rho| must be < 1");
        if (2.0 * a * kappa < b * b)
            throw std::invalid_argument("reciprocal_heston: Feller condition 2*a*kappa >= b^2 violated");
    }
    bool satisfies_feller() const { return 2.0 * a * kappa >= b * b; }
};

// Local stochastic volatility model: raw SDE coefficients plus the six derived
// coefficient families the expansion consumes. Immutable after construction.
struct ModelSpec {
    std::string name = "custom";
    PresetKind kind = PresetKind::Custom;

    std::function<double(double, double)> mu;
    std::function<double(double, double)> sigma;
    std::function<double(double, double)> c;
    std::function<double(double, double)> beta;
    std::function<double(double, double)> omega;  // null => identically 0
    double rho = 0.0;

    std::array<FamilyFunc, kNumFamilies> families;

    HestonParams heston{};
    ReciprocalHestonParams recip{};

    bool omega_is_zero() const { return !static_cast<bool>(omega); }
    double lambda(double x, double y) const { return mu(x, y) / sigma(x, y); }
    double omega_value(double x, double y) const { return omega ? omega(x, y) : 0.0; }

    const FamilyFunc& family(Family f) const { return families[static_cast<int>(f)]; }

    // Checks the state invariants at one evaluation point.
    void validate_at(double x, double y) const {
        if (!(std::abs(rho) < 1.0)) throw std::invalid_argument("model: |rho| must be < 1");
        double s = sigma(x, y);
        if (!(s > 0.0)) throw std::domain_error("model: sigma must be positive at (x,y)");
        if (!std::isfinite(mu(x, y) / s)) throw std::domain_error("model: lambda not finite at (x,y)");
    }
};

struct CoefficientTable {
    std::array<std::array<double, 6>, kNumFamilies> c{};
    ExpansionPoint point;
    double rho = 0.0;

    static int slot(int ix, int iy) {
        if (ix == 0 && iy == 0) return 0;
        if (ix == 1 && iy == 0) return 1;
        if (ix == 0 && iy == 1) return 2;
        if (ix == 2 && iy == 0) return 3;
        if (ix == 1 && iy == 1) return 4;
        if (ix == 0 && iy == 2) return 5;
        throw std::invalid_argument("coefficient table: order must satisfy ix+iy <= 2");
    }

    double coeff(Family f, int ix, int iy) const { return c[static_cast<int>(f)][slot(ix, iy)]; }
    double& coeff(Family f, int ix, int iy) { return c[static_cast<int>(f)][slot(ix, iy)]; }
    double at0(Family f) const { return c[static_cast<int>(f)][0]; }

    double sigma0() const { return std::sqrt(2.0 * at0(Family::HalfSigma2)); }

    // Order-n coefficients scaled by eps^n (the epsilon-family table).
    CoefficientTable scaled(double eps) const {
        CoefficientTable out = *this;
        for (int f = 0; f < kNumFamilies; ++f) {
            for (int s = 1; s <= 2; ++s) out.c[f][s] *= eps;
            for (int s = 3; s <= 5; ++s) out.c[f][s] *= eps * eps;
        }
        return out;
    }
};

enum class DerivMode { Analytic, FiniteDifference };

// Taylor coefficients chi_{n-k,k} of every family at the expansion point,
// orders 0..2. Analytic mode uses registered partials where available and
// falls back to central differences with h = max(1e-5, 1e-5*|anchor|).
CoefficientTable taylor_coeffs(const ModelSpec& model, const ExpansionPoint& point,
                               DerivMode mode = DerivMode::Analytic);

ModelSpec make_black_scholes(double mu, double sigma);
ModelSpec make_heston(const HestonParams& p);
ModelSpec make_reciprocal_heston(const ReciprocalHestonParams& p);

// Generic model from raw SDE coefficients; families are composed closures and
// all Taylor coefficients come from finite differences.
ModelSpec make_custom(std::function<double(double, double)> mu,
                      std::function<double(double, double)> sigma,
                      std::function<double(double, double)> c,
                      std::function<double(double, double)> beta, double rho,
                      std::function<double(double, double)> omega = nullptr);

}  // namespace isr
