#pragma once

#include <vector>

namespace isr {

struct QuadRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

// Gauss-Legendre rule on [a, b]. Exact for polynomials of degree <= 2n-1.
QuadRule gauss_legendre(int n, double a, double b);

// Gauss-Hermite rule for integrals of the form \int e^{-x^2} f(x) dx
// (physicists' weight). Nodes/weights cached per order.
QuadRule gauss_hermite(int n);

}  // namespace isr
