#pragma once

#include <cmath>
#include <stdexcept>

namespace isr {

// Anchor where all coefficient families are Taylor-expanded.
struct ExpansionPoint {
    double x_bar = 0.0;
    double y_bar = 0.0;
};

// One evaluation request: market state, option, investor.
struct Scenario {
    double t = 0.0;
    double T = 0.0;       // maturity, T > t
    double x = 0.0;       // log spot
    double y = 0.0;       // volatility factor
    double k = 0.0;       // log strike
    double nu = 0.0;      // signed option count
    double gamma = 1.0;   // risk aversion, > 0
    double w = 0.0;       // initial wealth (value-function outputs only)
    ExpansionPoint point;

    double horizon() const { return T - t; }

    void validate() const {
        if (!(T > t)) throw std::invalid_argument("scenario: requires T > t");
        if (!(gamma > 0.0)) throw std::invalid_argument("scenario: requires gamma > 0");
        if (!std::isfinite(x) || !std::isfinite(y) || !std::isfinite(k) || !std::isfinite(nu))
            throw std::invalid_argument("scenario: non-finite field");
    }
};

inline double call_payoff(double x, double k) {
    double v = std::exp(x) - std::exp(k);
    return v > 0.0 ? v : 0.0;
}

// Raised when the value-dominance supposition V(t,s,w-nu*p,nu) >= U(w) fails,
// i.e. no positive implied Sharpe ratio exists.
class value_dominance_error : public std::runtime_error {
public:
    explicit value_dominance_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Raised when Lambda_0 ~ 0 and a correction order >= 1 was requested.
class degenerate_anchor_error : public std::runtime_error {
public:
    explicit degenerate_anchor_error(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace isr
