#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "model.hpp"
#include "types.hpp"

namespace isr {

// Finite-difference grid for the psi / pricing PDE solvers.
struct Grid2D {
    double x_lo = 0.0, x_hi = 0.0;
    double y_lo = 0.0, y_hi = 0.0;
    int nx = 0, ny = 0;
    long nt = 0;        // 0 => from the parabolic stability bound
    double pad = 6.0;   // boundary padding in multiples of the local std dev

    void validate() const {
        if (nx < 41 || ny < 41) throw std::invalid_argument("grid: nx, ny must be >= 41");
        if (!(x_hi > x_lo) || !(y_hi > y_lo)) throw std::invalid_argument("grid: empty range");
    }

    double dx() const { return (x_hi - x_lo) / (nx - 1); }
    double dy() const { return (y_hi - y_lo) / (ny - 1); }

    // Centers the grid on the scenario point with `pad` standard deviations of
    // the frozen diffusions on each side (y clipped to stay positive).
    static Grid2D around(const Scenario& scen, const ModelSpec& model, int nx, int ny,
                         long nt = 0, double pad = 6.0);

    // Grid with every step halved (for refinement certification).
    Grid2D refined() const;
};

struct PdeResult {
    Grid2D grid;
    long nt_used = 0;
    bool boundary_flagged = false;  // oscillation detected along a boundary line
    std::vector<double> values;     // row-major [ix * ny + iy] at the valuation time

    double at(double x, double y) const;  // bilinear interpolation
};

// Backward IMEX solve of the semilinear distortion PDE
//   0 = (dt + A~) psi + (1-rho^2)(b^2/2)(dy psi)^2 - l^2/2,
//   psi(T) = -gamma nu (e^x - e^k)^+,
// with full (x,y)-dependent coefficients. Linear part implicit (ADI),
// quadratic gradient term and mixed derivative explicit.
PdeResult solve_psi_pde(const ModelSpec& model, const Scenario& scen, const Grid2D& grid);

// Linear pricing PDE 0 = (dt + A^) p, p(T) = (e^x - e^k)^+ under the hatted
// drift (minimal martingale measure when Omega == 0).
PdeResult solve_price_pde(const ModelSpec& model, const Scenario& scen, const Grid2D& grid);

struct McConfig {
    long paths = 1'000'000;
    int steps = 200;
    std::uint64_t seed = 42;
    bool antithetic = false;
    int chunks = 64;  // independent RNG streams; result independent of threading

    void validate() const {
        if (paths < 10'000) throw std::invalid_argument("mc: paths must be >= 10^4");
        if (steps < 1) throw std::invalid_argument("mc: steps must be >= 1");
        if (chunks < 1) throw std::invalid_argument("mc: chunks must be >= 1");
    }
};

struct McResult {
    double price = 0.0;
    double std_error = 0.0;
    long rejected = 0;  // non-finite paths dropped
};

// Euler full-truncation Monte Carlo price under the pricing measure. The
// reciprocal-Heston preset simulates the CIR reciprocal 1/Y and inverts.
McResult mc_price(const ModelSpec& model, const Scenario& scen, const McConfig& cfg);

// Lambda = sqrt(-2 (gamma nu p + psi) / (T - t)); throws value_dominance_error
// when the radicand is negative.
double implied_sharpe_reference(double psi_value, double price_value, const Scenario& scen);

// Tensor Gauss-Hermite integral of f against the frozen-coefficient Gaussian
// kernel with covariance C~ = (t1-t) [[s2, rsb], [rsb, b2]]_0 and mean
// (x - (t1-t)(s2/2)_0, y + (t1-t)(c - rho beta lambda)_0). Falls back to a
// 1-D rule when the y-variance vanishes.
double gaussian_convolution(const std::function<double(double, double)>& f,
                            const CoefficientTable& table, double t, double t1, double x,
                            double y, int nodes = 64, bool hatted = false);

}  // namespace isr
