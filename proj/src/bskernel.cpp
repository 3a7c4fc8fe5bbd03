#include "bskernel.hpp"

#include <array>

namespace isr {

double bs_price(const BsInputs& in) {
    in.validate();
    return std::exp(in.x) * norm_cdf(in.d_plus()) - std::exp(in.k) * norm_cdf(in.d_minus());
}

namespace {

// q(x) := (dxx - dx) p^BS = e^x phi(d+) / s, with s = sigma0 sqrt(T-t).
// Repeated differentiation stays inside the family q(x) * poly(d+):
//   d/dx [q P(d+)] = q [ (1 - d+/s) P(d+) + P'(d+)/s ].
// poly coefficients in powers of d+, low degree (<= 4 for order cap 6).
std::array<double, 8> poly_step(const std::array<double, 8>& p, double inv_s) {
    std::array<double, 8> out{};
    for (int d = 0; d < 7; ++d) {
        out[d] += p[d];                               // 1 * P
        out[d + 1] -= p[d] * inv_s;                   // -(d+/s) * P
        if (d >= 1) out[d - 1] += d * p[d] * inv_s;   // P'/s
    }
    return out;
}

}  // namespace

double bs_dx(const BsInputs& in, int n) {
    if (n < 0 || n > kMaxBsDerivOrder)
        throw std::invalid_argument("bs_dx: unsupported derivative order");
    if (n == 0) return bs_price(in);
    in.validate();

    const double dp = in.d_plus();
    const double s = in.sigma0 * std::sqrt(in.tau());
    const double q = std::exp(in.x) * norm_pdf(dp) / s;
    const double delta = std::exp(in.x) * norm_cdf(dp);  // dx p^BS
    if (n == 1) return delta;

    // dx^n p = dx^{n-1} p + dx^{n-2} q, unrolled with the polynomial recursion.
    std::array<double, 8> poly{};
    poly[0] = 1.0;
    double acc = delta;
    double horner = 1.0;  // P_0(d+)
    acc += q * horner;    // n = 2
    for (int order = 3; order <= n; ++order) {
        poly = poly_step(poly, 1.0 / s);
        horner = 0.0;
        for (int d = 7; d >= 0; --d) horner = horner * dp + poly[d];
        acc += q * horner;
    }
    return acc;
}

}  // namespace isr
