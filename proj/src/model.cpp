#include "model.hpp"

namespace isr {

namespace {

double fd_step(double anchor) { return std::max(1e-5, 1e-5 * std::abs(anchor)); }

double central_partial(const std::function<double(double, double)>& f, double x, double y,
                       int ix, int iy) {
    const double hx = fd_step(x), hy = fd_step(y);
    if (ix == 0 && iy == 0) return f(x, y);
    if (ix == 1 && iy == 0) return (f(x + hx, y) - f(x - hx, y)) / (2.0 * hx);
    if (ix == 0 && iy == 1) return (f(x, y + hy) - f(x, y - hy)) / (2.0 * hy);
    if (ix == 2 && iy == 0) return (f(x + hx, y) - 2.0 * f(x, y) + f(x - hx, y)) / (hx * hx);
    if (ix == 0 && iy == 2) return (f(x, y + hy) - 2.0 * f(x, y) + f(x, y - hy)) / (hy * hy);
    if (ix == 1 && iy == 1)
        return (f(x + hx, y + hy) - f(x + hx, y - hy) - f(x - hx, y + hy) + f(x - hx, y - hy)) /
               (4.0 * hx * hy);
    throw std::invalid_argument("taylor_coeffs: order must satisfy ix+iy <= 2");
}

double factorial_norm(int ix, int iy) {
    // 1 / (ix! iy!) for ix+iy <= 2: only the pure second derivatives pick up 1/2.
    return (ix == 2 || iy == 2) ? 0.5 : 1.0;
}

// Families built by composing the raw SDE closures; used by custom models and
// as the hatted-drift composition when Omega is present.
std::array<FamilyFunc, kNumFamilies> composed_families(
    std::function<double(double, double)> mu, std::function<double(double, double)> sigma,
    std::function<double(double, double)> c, std::function<double(double, double)> beta,
    double rho, std::function<double(double, double)> omega) {
    std::array<FamilyFunc, kNumFamilies> fam;
    fam[static_cast<int>(Family::HalfSigma2)].value = [sigma](double x, double y) {
        double s = sigma(x, y);
        return 0.5 * s * s;
    };
    fam[static_cast<int>(Family::DriftY)].value = [mu, sigma, c, beta, rho](double x, double y) {
        return c(x, y) - rho * beta(x, y) * mu(x, y) / sigma(x, y);
    };
    fam[static_cast<int>(Family::CrossXY)].value = [sigma, beta, rho](double x, double y) {
        return rho * sigma(x, y) * beta(x, y);
    };
    fam[static_cast<int>(Family::HalfBeta2)].value = [beta](double x, double y) {
        double b = beta(x, y);
        return 0.5 * b * b;
    };
    fam[static_cast<int>(Family::HalfLambda2)].value = [mu, sigma](double x, double y) {
        double l = mu(x, y) / sigma(x, y);
        return 0.5 * l * l;
    };
    if (omega) {
        double root = std::sqrt(1.0 - rho * rho);
        auto mm = fam[static_cast<int>(Family::DriftY)].value;
        fam[static_cast<int>(Family::DriftYHat)].value = [mm, beta, omega, root](double x, double y) {
            return mm(x, y) - root * beta(x, y) * omega(x, y);
        };
    } else {
        fam[static_cast<int>(Family::DriftYHat)] = fam[static_cast<int>(Family::DriftY)];
    }
    return fam;
}

FamilyFunc y_only(std::function<double(double)> v, std::function<double(double)> d1,
                  std::function<double(double)> d2) {
    FamilyFunc f;
    f.value = [v](double, double y) { return v(y); };
    f.partial = [v, d1, d2](double, double y, int ix, int iy) {
        if (ix > 0) return 0.0;  // x-independent family
        if (iy == 0) return v(y);
        if (iy == 1) return d1(y);
        return d2(y);
    };
    return f;
}

}  // namespace

CoefficientTable taylor_coeffs(const ModelSpec& model, const ExpansionPoint& point,
                               DerivMode mode) {
    model.validate_at(point.x_bar, point.y_bar);
    CoefficientTable table;
    table.point = point;
    table.rho = model.rho;
    static const int orders[6][2] = {{0, 0}, {1, 0}, {0, 1}, {2, 0}, {1, 1}, {0, 2}};
    for (int fi = 0; fi < kNumFamilies; ++fi) {
        const FamilyFunc& fam = model.families[fi];
        for (int s = 0; s < 6; ++s) {
            const int ix = orders[s][0], iy = orders[s][1];
            double d;
            if (mode == DerivMode::Analytic && fam.partial)
                d = fam.partial(point.x_bar, point.y_bar, ix, iy);
            else
                d = central_partial(fam.value, point.x_bar, point.y_bar, ix, iy);
            if (!std::isfinite(d))
                throw std::domain_error("taylor_coeffs: non-finite coefficient (outside model domain?)");
            table.c[fi][s] = factorial_norm(ix, iy) * d;
        }
    }
    return table;
}

ModelSpec make_black_scholes(double mu, double sigma) {
    if (!(sigma > 0.0)) throw std::invalid_argument("black_scholes: sigma must be positive");
    ModelSpec m;
    m.name = "black_scholes";
    m.kind = PresetKind::BlackScholes;
    m.rho = 0.0;
    m.mu = [mu](double, double) { return mu; };
    m.sigma = [sigma](double, double) { return sigma; };
    m.c = [](double, double) { return 0.0; };
    m.beta = [](double, double) { return 0.0; };
    auto constant = [](double v) {
        FamilyFunc f;
        f.value = [v](double, double) { return v; };
        f.partial = [v](double, double, int ix, int iy) { return (ix + iy == 0) ? v : 0.0; };
        return f;
    };
    double lam = mu / sigma;
    m.families[static_cast<int>(Family::HalfSigma2)] = constant(0.5 * sigma * sigma);
    m.families[static_cast<int>(Family::DriftY)] = constant(0.0);
    m.families[static_cast<int>(Family::CrossXY)] = constant(0.0);
    m.families[static_cast<int>(Family::HalfBeta2)] = constant(0.0);
    m.families[static_cast<int>(Family::HalfLambda2)] = constant(0.5 * lam * lam);
    m.families[static_cast<int>(Family::DriftYHat)] = constant(0.0);
    return m;
}

ModelSpec make_heston(const HestonParams& p) {
    p.validate();
    ModelSpec m;
    m.name = "heston";
    m.kind = PresetKind::Heston;
    m.heston = p;
    m.rho = p.rho;
    const double kappa = p.kappa, theta = p.theta, delta = p.delta, rho = p.rho;
    // lambda(y) = -sqrt(y)/2 + sqrt(theta)/3, the affine-class market price of risk.
    auto lam = [theta](double y) { return -0.5 * std::sqrt(y) + std::sqrt(theta) / 3.0; };
    m.mu = [lam](double, double y) { return lam(y) * std::sqrt(y); };
    m.sigma = [](double, double y) { return std::sqrt(y); };
    m.c = [kappa, theta, rho, delta, lam](double, double y) {
        return kappa * (theta - y) + rho * delta * lam(y) * std::sqrt(y);
    };
    m.beta = [delta](double, double y) { return delta * std::sqrt(y); };

    m.families[static_cast<int>(Family::HalfSigma2)] =
        y_only([](double y) { return 0.5 * y; }, [](double) { return 0.5; },
               [](double) { return 0.0; });
    // c - rho beta lambda collapses to the CIR drift kappa (theta - y).
    m.families[static_cast<int>(Family::DriftY)] =
        y_only([kappa, theta](double y) { return kappa * (theta - y); },
               [kappa](double) { return -kappa; }, [](double) { return 0.0; });
    m.families[static_cast<int>(Family::CrossXY)] =
        y_only([rho, delta](double y) { return rho * delta * y; },
               [rho, delta](double) { return rho * delta; }, [](double) { return 0.0; });
    m.families[static_cast<int>(Family::HalfBeta2)] =
        y_only([delta](double y) { return 0.5 * delta * delta * y; },
               [delta](double) { return 0.5 * delta * delta; }, [](double) { return 0.0; });
    m.families[static_cast<int>(Family::HalfLambda2)] = y_only(
        [lam](double y) {
            double l = lam(y);
            return 0.5 * l * l;
        },
        [lam](double y) { return lam(y) * (-0.25 / std::sqrt(y)); },
        [lam, theta](double y) {
            double lp = -0.25 / std::sqrt(y);
            double lpp = 0.125 / (y * std::sqrt(y));
            (void)theta;
            return lp * lp + lam(y) * lpp;
        });
    m.families[static_cast<int>(Family::DriftYHat)] = m.families[static_cast<int>(Family::DriftY)];
    return m;
}

ModelSpec make_reciprocal_heston(const ReciprocalHestonParams& p) {
    p.validate();
    ModelSpec m;
    m.name = "reciprocal_heston";
    m.kind = PresetKind::ReciprocalHeston;
    m.recip = p;
    m.rho = p.rho;
    const double mu = p.mu, rho = p.rho;
    const double denom = p.rho_squared_drift ? (1.0 - rho * rho) : (1.0 - rho) * (1.0 - rho);
    const double D = 2.0 * (p.b * p.b - p.a * p.kappa) / (mu * mu * denom);  // y^2 drift coefficient
    const double E = std::sqrt(2.0 / (1.0 - rho * rho)) * p.b / mu;          // beta = -E y^{3/2}
    const double a = p.a;

    m.mu = [mu](double, double) { return mu; };
    m.sigma = [](double, double y) { return std::sqrt(y); };
    m.c = [a, D](double, double y) { return a * y + D * y * y; };
    m.beta = [E](double, double y) { return -E * y * std::sqrt(y); };

    m.families[static_cast<int>(Family::HalfSigma2)] =
        y_only([](double y) { return 0.5 * y; }, [](double) { return 0.5; },
               [](double) { return 0.0; });
    // c - rho beta lambda = (a + rho E mu) y + D y^2.
    const double a_eff = a + rho * E * mu;
    m.families[static_cast<int>(Family::DriftY)] =
        y_only([a_eff, D](double y) { return a_eff * y + D * y * y; },
               [a_eff, D](double y) { return a_eff + 2.0 * D * y; },
               [D](double) { return 2.0 * D; });
    m.families[static_cast<int>(Family::CrossXY)] =
        y_only([rho, E](double y) { return -rho * E * y * y; },
               [rho, E](double y) { return -2.0 * rho * E * y; },
               [rho, E](double) { return -2.0 * rho * E; });
    m.families[static_cast<int>(Family::HalfBeta2)] =
        y_only([E](double y) { return 0.5 * E * E * y * y * y; },
               [E](double y) { return 1.5 * E * E * y * y; },
               [E](double y) { return 3.0 * E * E * y; });
    m.families[static_cast<int>(Family::HalfLambda2)] =
        y_only([mu](double y) { return 0.5 * mu * mu / y; },
               [mu](double y) { return -0.5 * mu * mu / (y * y); },
               [mu](double y) { return mu * mu / (y * y * y); });
    m.families[static_cast<int>(Family::DriftYHat)] = m.families[static_cast<int>(Family::DriftY)];
    return m;
}

ModelSpec make_custom(std::function<double(double, double)> mu,
                      std::function<double(double, double)> sigma,
                      std::function<double(double, double)> c,
                      std::function<double(double, double)> beta, double rho,
                      std::function<double(double, double)> omega) {
    if (!mu || !sigma || !c || !beta) throw std::invalid_argument("custom model: null coefficient");
    if (!(std::abs(rho) < 1.0)) throw std::invalid_argument("custom model: |rho| must be < 1");
    ModelSpec m;
    m.name = "custom";
    m.kind = PresetKind::Custom;
    m.rho = rho;
    m.mu = mu;
    m.sigma = sigma;
    m.c = c;
    m.beta = beta;
    m.omega = omega;
    m.families = composed_families(mu, sigma, c, beta, rho, omega);
    return m;
}

}  // namespace isr
