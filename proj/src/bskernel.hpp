#pragma once

#include <cmath>
#include <stdexcept>

namespace isr {

inline double norm_pdf(double z) {
    return 0.3989422804014326779 * std::exp(-0.5 * z * z);
}

inline double norm_cdf(double z) {
    return 0.5 * std::erfc(-z * M_SQRT1_2);
}

// Inputs of the constant-volatility call price p^BS in log coordinates.
struct BsInputs {
    double t = 0.0;       // valuation time
    double T = 0.0;       // maturity
    double x = 0.0;       // log spot
    double k = 0.0;       // log strike
    double sigma0 = 0.0;  // constant volatility

    double tau() const { return T - t; }

    void validate() const {
        if (!(T > t)) throw std::invalid_argument("bskernel: requires T > t");
        if (!(sigma0 > 0.0)) throw std::invalid_argument("bskernel: requires sigma0 > 0");
    }

    double d_plus() const {
        double s = sigma0 * std::sqrt(tau());
        return (x - k + 0.5 * sigma0 * sigma0 * tau()) / s;
    }
    double d_minus() const {
        double s = sigma0 * std::sqrt(tau());
        return (x - k - 0.5 * sigma0 * sigma0 * tau()) / s;
    }
};

// Call price e^x Phi(d+) - e^k Phi(d-).
double bs_price(const BsInputs& in);

// n-th x-derivative of bs_price, n in 0..6, exact.
// Built on the identity (dxx - dx) p = e^x phi(d+) / (sigma0 sqrt(T-t)).
double bs_dx(const BsInputs& in, int n);

inline constexpr int kMaxBsDerivOrder = 6;

}  // namespace isr
