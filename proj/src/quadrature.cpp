#include "quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

namespace isr {

namespace {

// Nodes/weights on the reference interval [-1, 1], computed once per order.
QuadRule legendre_reference(int n) {
    QuadRule r;
    r.nodes.resize(n);
    r.weights.resize(n);
    const int m = (n + 1) / 2;
    for (int k = 0; k < m; ++k) {
        double x = std::cos(M_PI * (k + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (int j = 2; j <= n; ++j) {
                double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        double w = 2.0 / ((1.0 - x * x) * dp * dp);
        r.nodes[k] = -x;
        r.nodes[n - 1 - k] = x;
        r.weights[k] = w;
        r.weights[n - 1 - k] = w;
    }
    return r;
}

// Hermite nodes via Newton iteration on the orthonormal recurrence
// (standard "gauher" construction).
QuadRule hermite_reference(int n) {
    QuadRule r;
    r.nodes.resize(n);
    r.weights.resize(n);
    const double pim4 = 0.7511255444649425;  // pi^{-1/4}
    const int m = (n + 1) / 2;
    double x = 0.0;
    for (int k = 0; k < m; ++k) {
        if (k == 0) {
            x = std::sqrt(2.0 * n + 1.0) - 1.85575 * std::pow(2.0 * n + 1.0, -1.0 / 6.0);
        } else if (k == 1) {
            x -= 1.14 * std::pow(static_cast<double>(n), 0.426) / x;
        } else if (k == 2) {
            x = 1.86 * x - 0.86 * r.nodes[n - 1];
        } else if (k == 3) {
            x = 1.91 * x - 0.91 * r.nodes[n - 2];
        } else {
            x = 2.0 * x - r.nodes[n - k + 1];
        }
        double pp = 0.0;
        for (int iter = 0; iter < 200; ++iter) {
            double p1 = pim4, p2 = 0.0;
            for (int j = 0; j < n; ++j) {
                double p3 = p2;
                p2 = p1;
                p1 = x * std::sqrt(2.0 / (j + 1.0)) * p2 -
                     std::sqrt(static_cast<double>(j) / (j + 1.0)) * p3;
            }
            pp = std::sqrt(2.0 * n) * p2;
            double dx = p1 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        r.nodes[n - 1 - k] = x;
        r.nodes[k] = -x;
        r.weights[n - 1 - k] = 2.0 / (pp * pp);
        r.weights[k] = r.weights[n - 1 - k];
    }
    if (n % 2 == 1) r.nodes[n / 2] = 0.0;
    return r;
}

std::map<int, QuadRule> g_legendre_cache;
std::map<int, QuadRule> g_hermite_cache;
std::mutex g_cache_mutex;

const QuadRule& cached(std::map<int, QuadRule>& cache, int n, QuadRule (*make)(int)) {
    std::lock_guard<std::mutex> lock(g_cache_mutex);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, make(n)).first;
    return it->second;
}

}  // namespace

QuadRule gauss_legendre(int n, double a, double b) {
    if (n < 2) throw std::invalid_argument("gauss_legendre: order must be >= 2");
    const QuadRule& ref = cached(g_legendre_cache, n, legendre_reference);
    QuadRule r;
    r.nodes.resize(n);
    r.weights.resize(n);
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    for (int i = 0; i < n; ++i) {
        r.nodes[i] = mid + half * ref.nodes[i];
        r.weights[i] = half * ref.weights[i];
    }
    return r;
}

QuadRule gauss_hermite(int n) {
    if (n < 2) throw std::invalid_argument("gauss_hermite: order must be >= 2");
    return cached(g_hermite_cache, n, hermite_reference);
}

}  // namespace isr
