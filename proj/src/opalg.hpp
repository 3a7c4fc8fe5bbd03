#pragma once

#include <map>
#include <utility>

#include "bskernel.hpp"
#include "model.hpp"

namespace isr {

inline constexpr int kMaxMonomialDegree = 4;
inline constexpr int kMaxDerivOrder = 6;

// Key of one normal-ordered term
//   coeff * (x - xbar)^i (y - ybar)^j * d^a/dx^a d^b/dy^b
// monomials multiply on the left of the derivatives.
struct OpKey {
    int i = 0, j = 0, a = 0, b = 0;
    bool operator<(const OpKey& o) const {
        if (i != o.i) return i < o.i;
        if (j != o.j) return j < o.j;
        if (a != o.a) return a < o.a;
        return b < o.b;
    }
    bool operator==(const OpKey& o) const { return i == o.i && j == o.j && a == o.a && b == o.b; }
};

// Sparse normal-ordered differential operator with polynomial coefficients in
// (x - xbar, y - ybar). Canonical form: terms sorted by key, merged, zero
// coefficients purged.
class DiffOperator {
public:
    DiffOperator() = default;

    static DiffOperator identity() { return term(1.0, 0, 0, 0, 0); }
    static DiffOperator term(double coeff, int i, int j, int a, int b) {
        DiffOperator op;
        op.add(coeff, i, j, a, b);
        return op;
    }

    DiffOperator& add(double coeff, int i, int j, int a, int b);
    DiffOperator& operator+=(const DiffOperator& o);
    DiffOperator& operator*=(double s);

    friend DiffOperator operator+(DiffOperator a, const DiffOperator& b) { return a += b; }
    friend DiffOperator operator-(DiffOperator a, const DiffOperator& b) {
        DiffOperator nb = b;
        nb *= -1.0;
        return a += nb;
    }
    friend DiffOperator operator*(double s, DiffOperator a) { return a *= s; }

    bool empty() const { return terms_.empty(); }
    const std::map<OpKey, double>& terms() const { return terms_; }

private:
    std::map<OpKey, double> terms_;
};

// Normal-ordered product a(b(.)) using dx (x-xbar) = (x-xbar) dx + 1 and the
// y analogue; associative.
DiffOperator compose(const DiffOperator& a, const DiffOperator& b);

// Bivariate polynomial in the centered variables (x - xbar, y - ybar).
struct Poly2 {
    std::map<std::pair<int, int>, double> coeffs;

    static Poly2 constant(double v) {
        Poly2 p;
        if (v != 0.0) p.coeffs[{0, 0}] = v;
        return p;
    }
    Poly2& add(double c, int i, int j) {
        if (c == 0.0) return *this;
        double& slot = coeffs[{i, j}];
        slot += c;
        if (slot == 0.0) coeffs.erase({i, j});
        return *this;
    }
    Poly2& operator+=(const Poly2& o) {
        for (const auto& [k, v] : o.coeffs) add(v, k.first, k.second);
        return *this;
    }
    Poly2& operator*=(double s) {
        if (s == 0.0) {
            coeffs.clear();
            return *this;
        }
        for (auto& [k, v] : coeffs) v *= s;
        return *this;
    }
    double eval(double dx, double dy) const;  // dx = x - xbar, dy = y - ybar
    int degree() const;
};

// Exact application of an operator to a polynomial.
Poly2 apply_to_poly(const DiffOperator& op, const Poly2& f);

// Evaluates op p^BS at the point (in.x, y); uses bs_dx for d/dx powers and
// d/dy p^BS = 0.
double apply_to_pbs(const DiffOperator& op, const BsInputs& in, double y,
                    const ExpansionPoint& point);

struct XYPair {
    DiffOperator x_op;  // X(t,t1), uncentered
    DiffOperator y_op;  // Y(t,t1), uncentered
};

// The commuting first-degree operators X(t,t1), Y(t,t1); hatted=true puts the
// pricing-measure drift coefficient in Y.
XYPair build_xy(const CoefficientTable& table, double t, double t1, bool hatted = false);

// G_n(t,t1) = A_n(X(t,t1), Y(t,t1)), n in {1,2}, fully expanded to normal
// order. hatted=true substitutes the hatted drift family.
DiffOperator build_g(int n, const CoefficientTable& table, double t, double t1,
                     bool hatted = false);

// P0(t,t1) f for polynomial f: substitutes (X,Y) into f and lets the result
// act on the constant 1, returning the image polynomial.
Poly2 semigroup_poly(const Poly2& f, const CoefficientTable& table, double t, double t1,
                     bool hatted = false);

}  // namespace isr
