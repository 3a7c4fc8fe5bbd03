#include "oracle.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include "quadrature.hpp"

namespace isr {

// ---------------------------------------------------------------------------
// Grid2D
// ---------------------------------------------------------------------------

Grid2D Grid2D::around(const Scenario& scen, const ModelSpec& model, int nx, int ny, long nt,
                      double pad) {
    const double rt = std::sqrt(scen.horizon());
    const double sx = model.sigma(scen.x, scen.y) * rt;
    const double sy_raw = std::abs(model.beta(scen.x, scen.y)) * rt;
    const double sy = std::max(sy_raw, 0.01 * std::max(1.0, std::abs(scen.y)));
    Grid2D g;
    g.x_lo = scen.x - pad * sx;
    g.x_hi = scen.x + pad * sx;
    g.y_lo = std::max(1e-6, scen.y - pad * sy);
    g.y_hi = scen.y + pad * sy;
    g.nx = nx;
    g.ny = ny;
    g.nt = nt;
    g.pad = pad;
    // keep the evaluation point on a grid node (no interpolation error there)
    const double dy = (g.y_hi - g.y_lo) / (ny - 1);
    const double shift = scen.y - (g.y_lo + std::round((scen.y - g.y_lo) / dy) * dy);
    g.y_lo += shift;
    g.y_hi += shift;
    if (g.y_lo <= 0.0) {
        g.y_lo += dy;
        g.y_hi += dy;
    }
    g.validate();
    return g;
}

Grid2D Grid2D::refined() const {
    Grid2D g = *this;
    g.nx = 2 * (nx - 1) + 1;
    g.ny = 2 * (ny - 1) + 1;
    if (nt > 0) g.nt = 2 * nt;
    return g;
}

double PdeResult::at(double x, double y) const {
    const int nx = grid.nx, ny = grid.ny;
    const double fx = (x - grid.x_lo) / grid.dx();
    const double fy = (y - grid.y_lo) / grid.dy();
    int ix = static_cast<int>(std::floor(fx));
    int iy = static_cast<int>(std::floor(fy));
    ix = std::clamp(ix, 0, nx - 2);
    iy = std::clamp(iy, 0, ny - 2);
    const double ax = std::clamp(fx - ix, 0.0, 1.0);
    const double ay = std::clamp(fy - iy, 0.0, 1.0);
    auto v = [&](int i, int j) { return values[static_cast<size_t>(i) * ny + j]; };
    return (1.0 - ax) * ((1.0 - ay) * v(ix, iy) + ay * v(ix, iy + 1)) +
           ax * ((1.0 - ay) * v(ix + 1, iy) + ay * v(ix + 1, iy + 1));
}

// ---------------------------------------------------------------------------
// IMEX ADI solver shared by the psi and pricing PDEs
// ---------------------------------------------------------------------------

namespace {

struct PdeCoeffs {
    // per grid node, row-major [ix * ny + iy]
    std::vector<double> a;    // (1/2) sigma^2        -> a (dxx - dx)
    std::vector<double> by;   // y-drift family       -> by dy
    std::vector<double> d;    // (1/2) beta^2         -> d dyy
    std::vector<double> cxy;  // rho sigma beta       -> cxy dxdy
    std::vector<double> src;  // (1/2) lambda^2 source (psi PDE only)
    std::vector<double> nl;   // (1-rho^2)(1/2) beta^2 (psi PDE only)
};

void thomas_solve(std::vector<double>& lo, std::vector<double>& di, std::vector<double>& up,
                  std::vector<double>& rhs, int n) {
    for (int i = 1; i < n; ++i) {
        const double m = lo[i] / di[i - 1];
        di[i] -= m * up[i - 1];
        rhs[i] -= m * rhs[i - 1];
    }
    rhs[n - 1] /= di[n - 1];
    for (int i = n - 2; i >= 0; --i) rhs[i] = (rhs[i] - up[i] * rhs[i + 1]) / di[i];
}


class AdiSolver {
public:
    AdiSolver(const ModelSpec& model, const Scenario& scen, const Grid2D& grid, bool psi_pde)
        : model_(model), scen_(scen), grid_(grid), psi_pde_(psi_pde) {
        grid_.validate();
        nx_ = grid_.nx;
        ny_ = grid_.ny;
        dx_ = grid_.dx();
        dy_ = grid_.dy();
        fill_coeffs();
    }

    PdeResult solve() {
        const double horizon = scen_.horizon();
        long nt = grid_.nt > 0 ? grid_.nt : stable_nt(horizon);
        const double dt = horizon / nt;

        const size_t n = static_cast<size_t>(nx_) * ny_;
        std::vector<double> u(n), lx(n), ly(n), expl(n), y1(n);
        const double gn = psi_pde_ ? -scen_.gamma * scen_.nu : 1.0;
        for (int i = 0; i < nx_; ++i) {
            const double payoff = cell_averaged_payoff(grid_.x_lo + i * dx_);
            for (int j = 0; j < ny_; ++j) u[idx(i, j)] = gn * payoff;
        }

        for (long step = 0; step < nt; ++step) {
            apply_lx(u, lx);
            apply_ly(u, ly);
            explicit_part(u, expl);
            // Douglas predictor then directionally implicit corrections.
            for (size_t p = 0; p < n; ++p) y1[p] = u[p] + dt * (lx[p] + ly[p] + expl[p]);
            for (size_t p = 0; p < n; ++p) y1[p] -= dt * lx[p];
            solve_x(y1, dt);
            for (size_t p = 0; p < n; ++p) y1[p] -= dt * ly[p];
            solve_y(y1, dt);
            u.swap(y1);
            if ((step & 63) == 0) check_stable(u);
        }
        check_stable(u);

        PdeResult out;
        out.grid = grid_;
        out.nt_used = nt;
        out.boundary_flagged = boundary_oscillates(u);
        out.values = std::move(u);
        return out;
    }

private:
    size_t idx(int i, int j) const { return static_cast<size_t>(i) * ny_ + j; }

    // cell average of (e^x - e^k)^+ over [x - dx/2, x + dx/2]; smooths the
    // strike kink so the spatial error stays cleanly second order.
    double cell_averaged_payoff(double x) const {
        const double a = x - 0.5 * dx_, b = x + 0.5 * dx_;
        const double k = scen_.k, ek = std::exp(k);
        if (b <= k) return 0.0;
        const double lo = std::max(a, k);
        return ((std::exp(b) - std::exp(lo)) - ek * (b - lo)) / dx_;
    }

    void fill_coeffs() {
        const size_t n = static_cast<size_t>(nx_) * ny_;
        co_.a.resize(n);
        co_.by.resize(n);
        co_.d.resize(n);
        co_.cxy.resize(n);
        if (psi_pde_) {
            co_.src.resize(n);
            co_.nl.resize(n);
        }
        const Family drift = psi_pde_ ? Family::DriftY : Family::DriftYHat;
        const double one_m_rho2 = 1.0 - model_.rho * model_.rho;
        for (int i = 0; i < nx_; ++i) {
            const double x = grid_.x_lo + i * dx_;
            for (int j = 0; j < ny_; ++j) {
                const double y = grid_.y_lo + j * dy_;
                const size_t p = idx(i, j);
                co_.a[p] = model_.family(Family::HalfSigma2).value(x, y);
                co_.by[p] = model_.family(drift).value(x, y);
                co_.d[p] = model_.family(Family::HalfBeta2).value(x, y);
                co_.cxy[p] = model_.family(Family::CrossXY).value(x, y);
                if (psi_pde_) {
                    co_.src[p] = model_.family(Family::HalfLambda2).value(x, y);
                    co_.nl[p] = one_m_rho2 * co_.d[p];
                }
            }
        }
    }

    long stable_nt(double horizon) const {
        double denom = 0.0;
        const size_t n = static_cast<size_t>(nx_) * ny_;
        for (size_t p = 0; p < n; ++p) {
            double d = 2.0 * co_.a[p] / (dx_ * dx_) + 2.0 * co_.d[p] / (dy_ * dy_) +
                       std::abs(co_.cxy[p]) / (dx_ * dy_) + co_.a[p] / dx_ +
                       std::abs(co_.by[p]) / dy_;
            denom = std::max(denom, d);
        }
        const double dt = 0.45 / std::max(denom, 1e-12);
        return std::max<long>(50, static_cast<long>(std::ceil(horizon / dt)));
    }

    // ghost values encode the boundary conditions: linear extrapolation in x
    // (zero second derivative), zero-Neumann mirror in y.
    double up(const std::vector<double>& u, int i, int j) const {
        if (i < 0) return 2.0 * u[idx(0, std::clamp(j, 0, ny_ - 1))] - u[idx(1, std::clamp(j, 0, ny_ - 1))];
        if (i >= nx_) return 2.0 * u[idx(nx_ - 1, std::clamp(j, 0, ny_ - 1))] - u[idx(nx_ - 2, std::clamp(j, 0, ny_ - 1))];
        if (j < 0) return u[idx(i, 1)];
        if (j >= ny_) return u[idx(i, ny_ - 2)];
        return u[idx(i, j)];
    }

    void apply_lx(const std::vector<double>& u, std::vector<double>& out) const {
        for (int i = 0; i < nx_; ++i)
            for (int j = 0; j < ny_; ++j) {
                const size_t p = idx(i, j);
                const double um = up(u, i - 1, j), u0 = u[p], upp = up(u, i + 1, j);
                out[p] = co_.a[p] * ((um - 2.0 * u0 + upp) / (dx_ * dx_) - (upp - um) / (2.0 * dx_));
            }
    }

    void apply_ly(const std::vector<double>& u, std::vector<double>& out) const {
        for (int i = 0; i < nx_; ++i)
            for (int j = 0; j < ny_; ++j) {
                const size_t p = idx(i, j);
                const double um = up(u, i, j - 1), u0 = u[p], upp = up(u, i, j + 1);
                out[p] = co_.by[p] * (upp - um) / (2.0 * dy_) +
                         co_.d[p] * (um - 2.0 * u0 + upp) / (dy_ * dy_);
            }
    }

    void explicit_part(const std::vector<double>& u, std::vector<double>& out) const {
        for (int i = 0; i < nx_; ++i)
            for (int j = 0; j < ny_; ++j) {
                const size_t p = idx(i, j);
                double mixed = 0.0;
                if (co_.cxy[p] != 0.0)
                    mixed = co_.cxy[p] *
                            (up(u, i + 1, j + 1) - up(u, i + 1, j - 1) - up(u, i - 1, j + 1) +
                             up(u, i - 1, j - 1)) /
                            (4.0 * dx_ * dy_);
                double v = mixed;
                if (psi_pde_) {
                    const double dyu = (up(u, i, j + 1) - up(u, i, j - 1)) / (2.0 * dy_);
                    v += co_.nl[p] * dyu * dyu - co_.src[p];
                }
                out[p] = v;
            }
    }

    void solve_x(std::vector<double>& rhs_grid, double dt) {
        std::vector<double> lo(nx_), di(nx_), upr(nx_), r(nx_);
        for (int j = 0; j < ny_; ++j) {
            for (int i = 0; i < nx_; ++i) {
                const size_t p = idx(i, j);
                const double a = co_.a[p];
                if (i == 0) {
                    // ghost-eliminated row: Lx u = -a (u1 - u0)/dx
                    lo[i] = 0.0;
                    di[i] = 1.0 - dt * a / dx_;
                    upr[i] = dt * a / dx_;
                } else if (i == nx_ - 1) {
                    lo[i] = -dt * a / dx_;
                    di[i] = 1.0 + dt * a / dx_;
                    upr[i] = 0.0;
                } else {
                    const double diff = a / (dx_ * dx_);
                    const double conv = a / (2.0 * dx_);
                    lo[i] = -dt * (diff + conv);
                    di[i] = 1.0 + dt * 2.0 * diff;
                    upr[i] = -dt * (diff - conv);
                }
                r[i] = rhs_grid[p];
            }
            thomas_solve(lo, di, upr, r, nx_);
            for (int i = 0; i < nx_; ++i) rhs_grid[idx(i, j)] = r[i];
        }
    }

    void solve_y(std::vector<double>& rhs_grid, double dt) {
        std::vector<double> lo(ny_), di(ny_), upr(ny_), r(ny_);
        for (int i = 0; i < nx_; ++i) {
            for (int j = 0; j < ny_; ++j) {
                const size_t p = idx(i, j);
                const double b = co_.by[p], d = co_.d[p];
                if (j == 0) {
                    // Neumann mirror: Ly u = 2 d (u1 - u0)/dy^2
                    lo[j] = 0.0;
                    di[j] = 1.0 + dt * 2.0 * d / (dy_ * dy_);
                    upr[j] = -dt * 2.0 * d / (dy_ * dy_);
                } else if (j == ny_ - 1) {
                    lo[j] = -dt * 2.0 * d / (dy_ * dy_);
                    di[j] = 1.0 + dt * 2.0 * d / (dy_ * dy_);
                    upr[j] = 0.0;
                } else {
                    const double diff = d / (dy_ * dy_);
                    const double conv = b / (2.0 * dy_);
                    lo[j] = -dt * (diff - conv);
                    di[j] = 1.0 + dt * 2.0 * diff;
                    upr[j] = -dt * (diff + conv);
                }
                r[j] = rhs_grid[p];
            }
            thomas_solve(lo, di, upr, r, ny_);
            for (int j = 0; j < ny_; ++j) rhs_grid[idx(i, j)] = r[j];
        }
    }

    void check_stable(const std::vector<double>& u) const {
        for (double v : u)
            if (!std::isfinite(v) || std::abs(v) > 1e10)
                throw std::runtime_error("pde solver: instability detected (blow-up); refine nt");
    }

    // oscillation along a boundary line is an instability precursor
    bool boundary_oscillates(const std::vector<double>& u) const {
        double scale = 0.0;
        for (double v : u) scale = std::max(scale, std::abs(v));
        const double tol = 1e-7 * std::max(scale, 1.0);
        auto line_flips = [&](auto value, int n) {
            int flips = 0;
            double prev_diff = 0.0;
            for (int s = 1; s < n; ++s) {
                const double diff = value(s) - value(s - 1);
                if (std::abs(diff) > tol && std::abs(prev_diff) > tol &&
                    diff * prev_diff < 0.0)
                    ++flips;
                if (std::abs(diff) > tol) prev_diff = diff;
            }
            return flips > n / 3;
        };
        if (line_flips([&](int j) { return u[idx(0, j)]; }, ny_)) return true;
        if (line_flips([&](int j) { return u[idx(nx_ - 1, j)]; }, ny_)) return true;
        if (line_flips([&](int i) { return u[idx(i, 0)]; }, nx_)) return true;
        if (line_flips([&](int i) { return u[idx(i, ny_ - 1)]; }, nx_)) return true;
        return false;
    }

    const ModelSpec& model_;
    const Scenario& scen_;
    Grid2D grid_;
    bool psi_pde_;
    int nx_ = 0, ny_ = 0;
    double dx_ = 0.0, dy_ = 0.0;
    PdeCoeffs co_;
};

}  // namespace

PdeResult solve_psi_pde(const ModelSpec& model, const Scenario& scen, const Grid2D& grid) {
    scen.validate();
    return AdiSolver(model, scen, grid, true).solve();
}

PdeResult solve_price_pde(const ModelSpec& model, const Scenario& scen, const Grid2D& grid) {
    scen.validate();
    return AdiSolver(model, scen, grid, false).solve();
}

// ---------------------------------------------------------------------------
// Monte Carlo
// ---------------------------------------------------------------------------

namespace {

inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

// Deterministic normal generator: splitmix64 stream + Box-Muller.
class NormalStream {
public:
    explicit NormalStream(std::uint64_t seed) : state_(seed) {}

    double next() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double u1 = to_unit(splitmix64(state_));
        const double u2 = to_unit(splitmix64(state_));
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 2.0 * M_PI * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

private:
    static double to_unit(std::uint64_t x) {
        return (static_cast<double>(x >> 11) + 0.5) * 0x1.0p-53;
    }
    std::uint64_t state_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

struct ChunkStats {
    double sum = 0.0;
    double sum_sq = 0.0;
    long n = 0;
    long rejected = 0;
};

struct RecipCir {
    double kappa_z, theta_z, vol_z;
};

RecipCir recip_cir_params(const ReciprocalHestonParams& p) {
    const double denom =
        p.rho_squared_drift ? (1.0 - p.rho * p.rho) : (1.0 - p.rho) * (1.0 - p.rho);
    const double D = 2.0 * (p.b * p.b - p.a * p.kappa) / (p.mu * p.mu * denom);
    const double E = std::sqrt(2.0 / (1.0 - p.rho * p.rho)) * p.b / p.mu;
    RecipCir z;
    z.kappa_z = p.a + p.rho * E * p.mu;
    z.theta_z = (E * E - D) / z.kappa_z;
    z.vol_z = E;
    return z;
}

ChunkStats run_chunk(const ModelSpec& model, const Scenario& scen, const McConfig& cfg,
                     long n_paths, std::uint64_t chunk_seed) {
    ChunkStats st;
    NormalStream rng(chunk_seed);
    const int steps = cfg.steps;
    const double dt = scen.horizon() / steps;
    const double sq_dt = std::sqrt(dt);
    const double rho = model.rho;
    const double rho_c = std::sqrt(1.0 - rho * rho);
    const double ek = std::exp(scen.k);
    const bool recip = model.kind == PresetKind::ReciprocalHeston;
    const RecipCir cir = recip ? recip_cir_params(model.recip) : RecipCir{0, 0, 0};
    const double y_floor = (model.kind == PresetKind::Heston) ? 0.0 : 1e-8;
    const Family drift = Family::DriftYHat;

    const int reps = cfg.antithetic ? 2 : 1;
    std::vector<double> z1s(steps), z2s(steps);
    for (long p = 0; p < n_paths; ++p) {
        for (int s = 0; s < steps; ++s) {
            z1s[s] = rng.next();
            z2s[s] = rng.next();
        }
        double payoff_acc = 0.0;
        bool ok = true;
        for (int rep = 0; rep < reps && ok; ++rep) {
            const double flip = (rep == 0) ? 1.0 : -1.0;
            double x = scen.x;
            if (recip) {
                double z = 1.0 / std::max(scen.y, 1e-12);
                for (int s = 0; s < steps; ++s) {
                    const double z1 = flip * z1s[s], z2 = flip * z2s[s];
                    const double zp = std::max(z, 1e-8);
                    const double y = std::max(1.0 / zp, 1e-8);
                    x += -0.5 * y * dt + std::sqrt(y) * sq_dt * z1;
                    z += cir.kappa_z * (cir.theta_z - zp) * dt +
                         cir.vol_z * std::sqrt(zp) * sq_dt * (rho * z1 + rho_c * z2);
                }
            } else {
                double y = scen.y;
                for (int s = 0; s < steps; ++s) {
                    const double z1 = flip * z1s[s], z2 = flip * z2s[s];
                    const double yp = std::max(y, y_floor);
                    const double sig = model.sigma(x, std::max(yp, 1e-14));
                    const double beta = model.beta(x, std::max(yp, 1e-14));
                    const double by = model.family(drift).value(x, std::max(yp, 1e-14));
                    x += -0.5 * sig * sig * dt + sig * sq_dt * z1;
                    y += by * dt + beta * sq_dt * (rho * z1 + rho_c * z2);
                }
            }
            if (!std::isfinite(x)) {
                ok = false;
                break;
            }
            const double v = std::exp(x) - ek;
            const double pay = v > 0.0 ? v : 0.0;
            if (!std::isfinite(pay)) {
                ok = false;
                break;
            }
            payoff_acc += pay;
        }
        if (!ok) {
            ++st.rejected;
            continue;
        }
        const double sample = payoff_acc / reps;
        st.sum += sample;
        st.sum_sq += sample * sample;
        ++st.n;
    }
    return st;
}

}  // namespace

McResult mc_price(const ModelSpec& model, const Scenario& scen, const McConfig& cfg) {
    scen.validate();
    cfg.validate();
    const int chunks = cfg.chunks;
    std::vector<ChunkStats> stats(chunks);
    std::vector<long> counts(chunks);
    const long base = cfg.paths / chunks, extra = cfg.paths % chunks;
    for (int c = 0; c < chunks; ++c) counts[c] = base + (c < extra ? 1 : 0);

    const unsigned n_threads =
        std::max(1u, std::min(std::thread::hardware_concurrency(), 8u));
    std::vector<std::thread> pool;
    std::atomic<int> next{0};
    auto worker = [&]() {
        for (;;) {
            const int c = next.fetch_add(1);
            if (c >= chunks) return;
            std::uint64_t seed_state = cfg.seed + 0x632BE59BD9B4E019ull * (c + 1);
            const std::uint64_t chunk_seed = splitmix64(seed_state);
            stats[c] = run_chunk(model, scen, cfg, counts[c], chunk_seed);
        }
    };
    for (unsigned t = 0; t < n_threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();

    ChunkStats total;
    for (const ChunkStats& s : stats) {  // fixed order: bit-reproducible
        total.sum += s.sum;
        total.sum_sq += s.sum_sq;
        total.n += s.n;
        total.rejected += s.rejected;
    }
    if (total.rejected > 0 && total.rejected > cfg.paths / 10000)
        throw std::runtime_error("mc_price: too many non-finite paths");
    if (total.n == 0) throw std::runtime_error("mc_price: no valid paths");
    McResult out;
    out.price = total.sum / total.n;
    const double var = std::max(0.0, total.sum_sq / total.n - out.price * out.price);
    out.std_error = std::sqrt(var / total.n);
    out.rejected = total.rejected;
    return out;
}

// ---------------------------------------------------------------------------
// Reference Lambda and Gaussian convolution
// ---------------------------------------------------------------------------

double implied_sharpe_reference(double psi_value, double price_value, const Scenario& scen) {
    scen.validate();
    const double dt = scen.horizon();
    const double radicand = -2.0 * (scen.gamma * scen.nu * price_value + psi_value) / dt;
    if (radicand < -1e-12)
        throw value_dominance_error("implied_sharpe_reference: value dominance violated");
    return radicand > 0.0 ? std::sqrt(radicand) : 0.0;
}

double gaussian_convolution(const std::function<double(double, double)>& f,
                            const CoefficientTable& table, double t, double t1, double x,
                            double y, int nodes, bool hatted) {
    const double tau = t1 - t;
    const double mx = x - tau * table.at0(Family::HalfSigma2);
    const double my = y + tau * table.at0(hatted ? Family::DriftYHat : Family::DriftY);
    if (tau <= 0.0) return f(mx, my);

    const double s2 = 2.0 * table.at0(Family::HalfSigma2);
    const double b2 = 2.0 * table.at0(Family::HalfBeta2);
    const double rsb = table.at0(Family::CrossXY);
    const double c11 = tau * s2, c22 = tau * b2, c12 = tau * rsb;
    if (c11 < 0.0 || c22 < 0.0 || (c11 * c22 - c12 * c12) < -1e-12 * std::max(1.0, c11 * c22))
        throw std::domain_error("gaussian_convolution: covariance not positive semi-definite");

    const QuadRule gh = gauss_hermite(nodes);
    const double inv_sqrt_pi = 0.5641895835477563;

    if (c11 <= 0.0 && c22 <= 0.0) return f(mx, my);
    if (c22 <= 0.0) {  // 1-D in x (beta_0 == 0)
        const double l11 = std::sqrt(c11);
        double acc = 0.0;
        for (int i = 0; i < nodes; ++i)
            acc += gh.weights[i] * f(mx + M_SQRT2 * l11 * gh.nodes[i], my);
        return acc * inv_sqrt_pi;
    }
    if (c11 <= 0.0) {  // 1-D in y
        const double l22 = std::sqrt(c22);
        double acc = 0.0;
        for (int i = 0; i < nodes; ++i)
            acc += gh.weights[i] * f(mx, my + M_SQRT2 * l22 * gh.nodes[i]);
        return acc * inv_sqrt_pi;
    }

    const double l11 = std::sqrt(c11);
    const double l21 = c12 / l11;
    const double l22 = std::sqrt(std::max(0.0, c22 - l21 * l21));
    double acc = 0.0;
    if (l22 == 0.0) {  // perfectly correlated: single Hermite axis
        for (int i = 0; i < nodes; ++i) {
            const double u = M_SQRT2 * gh.nodes[i];
            acc += gh.weights[i] * f(mx + l11 * u, my + l21 * u);
        }
        return acc * inv_sqrt_pi;
    }
    for (int i = 0; i < nodes; ++i) {
        const double ui = M_SQRT2 * gh.nodes[i];
        double row = 0.0;
        for (int j = 0; j < nodes; ++j) {
            const double uj = M_SQRT2 * gh.nodes[j];
            row += gh.weights[j] * f(mx + l11 * ui, my + l21 * ui + l22 * uj);
        }
        acc += gh.weights[i] * row;
    }
    return acc * inv_sqrt_pi * inv_sqrt_pi;
}

}  // namespace isr
