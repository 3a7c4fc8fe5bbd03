#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "config.hpp"
#include "model.hpp"
#include "oracle.hpp"
#include "sharpe.hpp"

namespace isr {

enum class SweepAxis { Gamma, LogStrike, Maturity, Nu };

struct SweepConfig {
    ModelSpec model;
    Scenario base;
    SweepAxis axis = SweepAxis::Gamma;
    double axis_min = 0.0, axis_max = 1.0;
    int axis_count = 1;
    std::vector<double> nu_values;  // family per axis point; defaults to {base.nu}

    SharpeOptions sharpe;
    bool oracle_pde = false;
    bool oracle_mc = false;
    int grid_nx = 101, grid_ny = 61;
    long grid_nt = 0;
    double grid_pad = 6.0;
    McConfig mc;
    std::string output_path = "sweep.csv";

    static SweepConfig from_config(const Config& cfg);
    static SweepConfig from_file(const std::string& path);
};

struct SweepRow {
    double axis_value = 0.0, nu = 0.0, gamma = 0.0, k = 0.0, T = 0.0;
    double lambda0 = 0.0, lambda1 = 0.0, lambda2 = 0.0, lambda_total = 0.0;
    double p0 = 0.0, p1 = 0.0, p2 = 0.0;
    double psi0 = 0.0, psi1 = 0.0, psi2 = 0.0;
    double radicand = 0.0;
    std::string method, exp_term_source;
    double lambda_oracle = 0.0, pde_psi = 0.0, mc_price_value = 0.0, mc_std_error = 0.0;
    std::string error;  // empty when the point evaluated cleanly
};

struct SweepResult {
    std::vector<SweepRow> rows;
    bool with_oracles = false;
    long point_errors = 0;

    std::string to_csv() const;
    std::string to_json() const;
};

SweepResult run_sweep(const SweepConfig& cfg);

struct CompareReport {
    std::string text;  // key = value lines
    long failures = 0;
};

// Oracle comparison at the config's base scenario: series orders vs the PDE
// reference, closed-form vs quadrature deltas for every appendix operation,
// and the PDE/MC price cross-check.
CompareReport run_compare(const SweepConfig& cfg);

// Quadrature counterparts of the appendix closed forms (verification path).
double quad_first_order(const CoefficientTable& table, const Scenario& scen, int quad_order = 32);
double quad_second_order_cross(const CoefficientTable& table, const Scenario& scen,
                               int quad_order = 32);
double quad_dy_term(const CoefficientTable& table, const Scenario& scen, int quad_order = 32);

// The six figure-family configs with the caption parameters embedded.
const std::vector<std::pair<std::string, std::string>>& builtin_presets();
std::string presets_text();

std::string format_double(double v);

}  // namespace isr
