#include "opalg.hpp"

#include <cmath>

namespace isr {

namespace {

void check_caps(int i, int j, int a, int b) {
    if (i < 0 || j < 0 || a < 0 || b < 0)
        throw std::invalid_argument("opalg: negative power in operator term");
    if (i + j > kMaxMonomialDegree)
        throw std::domain_error("opalg: monomial degree cap exceeded");
    if (a + b > kMaxDerivOrder)
        throw std::domain_error("opalg: derivative order cap exceeded");
}

double binom(int n, int k) {
    double r = 1.0;
    for (int t = 1; t <= k; ++t) r = r * (n - k + t) / t;
    return r;
}

double falling(int n, int k) {
    double r = 1.0;
    for (int t = 0; t < k; ++t) r *= (n - t);
    return r;
}

}  // namespace

DiffOperator& DiffOperator::add(double coeff, int i, int j, int a, int b) {
    check_caps(i, j, a, b);
    if (coeff == 0.0) return *this;
    OpKey key{i, j, a, b};
    double& slot = terms_[key];
    slot += coeff;
    if (slot == 0.0) terms_.erase(key);
    return *this;
}

DiffOperator& DiffOperator::operator+=(const DiffOperator& o) {
    for (const auto& [k, v] : o.terms_) add(v, k.i, k.j, k.a, k.b);
    return *this;
}

DiffOperator& DiffOperator::operator*=(double s) {
    if (s == 0.0) {
        terms_.clear();
        return *this;
    }
    for (auto& [k, v] : terms_) v *= s;
    return *this;
}

DiffOperator compose(const DiffOperator& a, const DiffOperator& b) {
    // Per term pair: m_A D_A m_B D_B with D_A = dx^p dy^q pushed through the
    // monomial m_B by Leibniz:
    //   dx^p (x-xbar)^i = sum_r C(p,r) i!/(i-r)! (x-xbar)^{i-r} dx^{p-r}.
    DiffOperator out;
    for (const auto& [ka, ca] : a.terms()) {
        for (const auto& [kb, cb] : b.terms()) {
            const int rmax = std::min(ka.a, kb.i);
            const int smax = std::min(ka.b, kb.j);
            for (int r = 0; r <= rmax; ++r) {
                for (int s = 0; s <= smax; ++s) {
                    double factor = binom(ka.a, r) * falling(kb.i, r) * binom(ka.b, s) *
                                    falling(kb.j, s);
                    out.add(ca * cb * factor, ka.i + kb.i - r, ka.j + kb.j - s,
                            ka.a + kb.a - r, ka.b + kb.b - s);
                }
            }
        }
    }
    return out;
}

double Poly2::eval(double dx, double dy) const {
    double acc = 0.0;
    for (const auto& [k, v] : coeffs) acc += v * std::pow(dx, k.first) * std::pow(dy, k.second);
    return acc;
}

int Poly2::degree() const {
    int d = 0;
    for (const auto& [k, v] : coeffs) {
        (void)v;
        d = std::max(d, k.first + k.second);
    }
    return d;
}

Poly2 apply_to_poly(const DiffOperator& op, const Poly2& f) {
    Poly2 out;
    for (const auto& [k, c] : op.terms()) {
        for (const auto& [m, fc] : f.coeffs) {
            int px = m.first, py = m.second;
            if (k.a > px || k.b > py) continue;
            double dcoef = falling(px, k.a) * falling(py, k.b);
            out.add(c * fc * dcoef, px - k.a + k.i, py - k.b + k.j);
        }
    }
    return out;
}

double apply_to_pbs(const DiffOperator& op, const BsInputs& in, double y,
                    const ExpansionPoint& point) {
    double acc = 0.0;
    const double dx = in.x - point.x_bar, dy = y - point.y_bar;
    for (const auto& [k, c] : op.terms()) {
        if (k.b > 0) continue;  // dy p^BS = 0
        if (k.a > kMaxBsDerivOrder) throw std::domain_error("apply_to_pbs: derivative order overflow");
        acc += c * std::pow(dx, k.i) * std::pow(dy, k.j) * bs_dx(in, k.a);
    }
    return acc;
}

XYPair build_xy(const CoefficientTable& table, double t, double t1, bool hatted) {
    if (t1 < t) throw std::invalid_argument("build_xy: requires t1 >= t");
    const double tau = t1 - t;
    const double s0 = table.at0(Family::HalfSigma2);
    const double r0 = table.at0(Family::CrossXY);
    const double b0 = table.at0(Family::HalfBeta2);
    const double c0 = table.at0(hatted ? Family::DriftYHat : Family::DriftY);
    XYPair xy;
    xy.x_op.add(1.0, 1, 0, 0, 0);
    xy.x_op.add(table.point.x_bar - tau * s0, 0, 0, 0, 0);
    xy.x_op.add(tau * 2.0 * s0, 0, 0, 1, 0);
    xy.x_op.add(tau * r0, 0, 0, 0, 1);
    xy.y_op.add(1.0, 0, 1, 0, 0);
    xy.y_op.add(table.point.y_bar + tau * c0, 0, 0, 0, 0);
    xy.y_op.add(tau * 2.0 * b0, 0, 0, 0, 1);
    xy.y_op.add(tau * r0, 0, 0, 1, 0);
    return xy;
}

namespace {

// (X - xbar)^p (Y - ybar)^q as a normal-ordered operator.
DiffOperator centered_xy_power(const CoefficientTable& table, double t, double t1, bool hatted,
                               int p, int q) {
    const double tau = t1 - t;
    const double s0 = table.at0(Family::HalfSigma2);
    const double r0 = table.at0(Family::CrossXY);
    const double b0 = table.at0(Family::HalfBeta2);
    const double c0 = table.at0(hatted ? Family::DriftYHat : Family::DriftY);
    DiffOperator xc;  // X - xbar
    xc.add(1.0, 1, 0, 0, 0);
    xc.add(-tau * s0, 0, 0, 0, 0);
    xc.add(tau * 2.0 * s0, 0, 0, 1, 0);
    xc.add(tau * r0, 0, 0, 0, 1);
    DiffOperator yc;  // Y - ybar
    yc.add(1.0, 0, 1, 0, 0);
    yc.add(tau * c0, 0, 0, 0, 0);
    yc.add(tau * 2.0 * b0, 0, 0, 0, 1);
    yc.add(tau * r0, 0, 0, 1, 0);
    DiffOperator out = DiffOperator::identity();
    for (int r = 0; r < p; ++r) out = compose(out, xc);
    for (int r = 0; r < q; ++r) out = compose(out, yc);
    return out;
}

}  // namespace

DiffOperator build_g(int n, const CoefficientTable& table, double t, double t1, bool hatted) {
    if (n != 1 && n != 2) throw std::invalid_argument("build_g: unsupported order (n must be 1 or 2)");
    if (t1 < t) throw std::invalid_argument("build_g: requires t1 >= t");

    struct Part {
        Family fam;
        DiffOperator deriv;
    };
    DiffOperator dxx_minus_dx = DiffOperator::term(1.0, 0, 0, 2, 0) + DiffOperator::term(-1.0, 0, 0, 1, 0);
    const Part parts[4] = {
        {Family::HalfSigma2, dxx_minus_dx},
        {hatted ? Family::DriftYHat : Family::DriftY, DiffOperator::term(1.0, 0, 0, 0, 1)},
        {Family::HalfBeta2, DiffOperator::term(1.0, 0, 0, 0, 2)},
        {Family::CrossXY, DiffOperator::term(1.0, 0, 0, 1, 1)},
    };

    DiffOperator g;
    for (const Part& part : parts) {
        for (int k = 0; k <= n; ++k) {
            const double coeff = table.coeff(part.fam, n - k, k);
            if (coeff == 0.0) continue;
            DiffOperator mono = centered_xy_power(table, t, t1, hatted, n - k, k);
            DiffOperator term = compose(mono, part.deriv);
            term *= coeff;
            g += term;
        }
    }
    return g;
}

Poly2 semigroup_poly(const Poly2& f, const CoefficientTable& table, double t, double t1,
                     bool hatted) {
    if (t1 < t) throw std::invalid_argument("semigroup_poly: requires t1 >= t");
    Poly2 out;
    const Poly2 one = Poly2::constant(1.0);
    for (const auto& [m, c] : f.coeffs) {
        DiffOperator op = centered_xy_power(table, t, t1, hatted, m.first, m.second);
        Poly2 img = apply_to_poly(op, one);
        img *= c;
        out += img;
    }
    return out;
}

}  // namespace isr
