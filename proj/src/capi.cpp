#include "isr/isr.h"

#include <cstring>
#include <fstream>
#include <iostream>
#include <new>
#include <string>

#include "model.hpp"
#include "sharpe.hpp"
#include "sweep.hpp"

namespace {

thread_local std::string t_last_error;

void set_error(const std::string& msg) { t_last_error = msg; }

isr_status classify(const std::exception& e) {
    set_error(e.what());
    if (dynamic_cast<const isr::value_dominance_error*>(&e)) return ISR_ERR_VALUE_DOMINANCE;
    if (dynamic_cast<const isr::degenerate_anchor_error*>(&e)) return ISR_ERR_DEGENERATE_ANCHOR;
    if (dynamic_cast<const std::domain_error*>(&e)) return ISR_ERR_DOMAIN;
    if (dynamic_cast<const std::invalid_argument*>(&e)) return ISR_ERR_INVALID_ARGUMENT;
    return ISR_ERR_INTERNAL;
}

template <typename Fn>
isr_status guarded(Fn&& fn) {
    try {
        fn();
        return ISR_OK;
    } catch (const std::exception& e) {
        return classify(e);
    } catch (...) {
        set_error("unknown error");
        return ISR_ERR_INTERNAL;
    }
}

isr::Scenario to_scenario(const isr_scenario& s) {
    isr::Scenario out;
    out.t = s.t;
    out.T = s.T;
    out.x = s.x;
    out.y = s.y;
    out.k = s.k;
    out.nu = s.nu;
    out.gamma = s.gamma;
    out.w = s.w;
    out.point.x_bar = s.x_bar;
    out.point.y_bar = s.y_bar;
    return out;
}

isr_status write_text(const char* path, const std::string& text) {
    if (!path || std::strlen(path) == 0 || std::strcmp(path, "-") == 0) {
        std::cout << text;
        return ISR_OK;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        set_error(std::string("cannot open output file: ") + path);
        return ISR_ERR_IO;
    }
    out << text;
    return ISR_OK;
}

}  // namespace

extern "C" {

struct isr_model {
    isr::ModelSpec spec;
};

isr_model* isr_model_heston(double kappa, double theta, double delta, double rho) {
    try {
        isr::HestonParams p{kappa, theta, delta, rho};
        return new isr_model{isr::make_heston(p)};
    } catch (const std::exception& e) {
        set_error(e.what());
        return nullptr;
    }
}

isr_model* isr_model_reciprocal_heston(double mu, double a, double b, double kappa, double rho,
                                       int use_rho_squared_drift) {
    try {
        isr::ReciprocalHestonParams p;
        p.mu = mu;
        p.a = a;
        p.b = b;
        p.kappa = kappa;
        p.rho = rho;
        p.rho_squared_drift = use_rho_squared_drift != 0;
        return new isr_model{isr::make_reciprocal_heston(p)};
    } catch (const std::exception& e) {
        set_error(e.what());
        return nullptr;
    }
}

isr_model* isr_model_black_scholes(double mu, double sigma) {
    try {
        return new isr_model{isr::make_black_scholes(mu, sigma)};
    } catch (const std::exception& e) {
        set_error(e.what());
        return nullptr;
    }
}

void isr_model_free(isr_model* model) { delete model; }

isr_status isr_implied_sharpe(const isr_model* model, const isr_scenario* scenario,
                              const isr_eval_options* options, isr_sharpe_result* out) {
    if (!model || !scenario || !out) {
        set_error("null argument");
        return ISR_ERR_INVALID_ARGUMENT;
    }
    return guarded([&] {
        isr::SharpeOptions opts;
        if (options) {
            opts.order = options->order;
            if (options->method == ISR_METHOD_GENERAL) opts.method = isr::Method::General;
            if (options->method == ISR_METHOD_MMM_REMARK) opts.method = isr::Method::MmmRemark;
            opts.expansion.exp_source = options->exp_source == ISR_EXP_PRINTED
                                            ? isr::ExpSource::Printed
                                            : isr::ExpSource::Convolution;
            if (options->quad_order > 0) opts.expansion.quad_order = options->quad_order;
            if (options->hermite_order > 0) opts.expansion.hermite_order = options->hermite_order;
        }
        isr::SharpeApproximation sa =
            isr::implied_sharpe(to_scenario(*scenario), model->spec, opts);
        out->lambda0 = sa.lambda0;
        out->lambda1 = sa.lambda1;
        out->lambda2 = sa.lambda2;
        out->lambda_total = sa.total();
        out->psi0 = sa.psi.psi0;
        out->psi1 = sa.psi.psi1;
        out->psi2 = sa.psi.psi2;
        out->p0 = sa.price.p0;
        out->p1 = sa.price.p1;
        out->p2 = sa.price.p2;
        out->radicand = sa.radicand;
        out->method_used =
            sa.method == isr::Method::General ? ISR_METHOD_GENERAL : ISR_METHOD_MMM_REMARK;
        out->exp_source_used = sa.exp_term_source == isr::ExpSource::Printed
                                   ? ISR_EXP_PRINTED
                                   : ISR_EXP_CONVOLUTION;
    });
}

isr_status isr_merton_value(double t, double w, double lambda, double gamma, double T,
                            double* out) {
    if (!out) {
        set_error("null argument");
        return ISR_ERR_INVALID_ARGUMENT;
    }
    return guarded([&] { *out = isr::merton_value(t, w, lambda, gamma, T); });
}

isr_status isr_run_sweep(const char* config_path, const char* out_path, int as_json, int verbose,
                         long* point_errors) {
    if (!config_path) {
        set_error("null config path");
        return ISR_ERR_INVALID_ARGUMENT;
    }
    long errors = 0;
    isr_status st = guarded([&] {
        isr::SweepConfig cfg = isr::SweepConfig::from_file(config_path);
        isr::SweepResult res = isr::run_sweep(cfg);
        errors = res.point_errors;
        const std::string text = as_json ? res.to_json() : res.to_csv();
        const char* path = out_path ? out_path : cfg.output_path.c_str();
        isr_status ws = write_text(path, text);
        if (ws != ISR_OK) throw std::runtime_error(isr_last_error());
        if (verbose)
            std::cerr << "sweep: " << res.rows.size() << " rows, " << errors
                      << " point errors -> " << path << "\n";
    });
    if (point_errors) *point_errors = errors;
    if (st != ISR_OK) return st;
    if (errors > 0) {
        set_error("sweep finished with per-point errors");
        return ISR_ERR_POINT_FAILURES;
    }
    return ISR_OK;
}

isr_status isr_run_compare(const char* config_path, const char* out_path, int verbose,
                           long* failures) {
    if (!config_path) {
        set_error("null config path");
        return ISR_ERR_INVALID_ARGUMENT;
    }
    long fails = 0;
    isr_status st = guarded([&] {
        isr::SweepConfig cfg = isr::SweepConfig::from_file(config_path);
        isr::CompareReport rep = isr::run_compare(cfg);
        fails = rep.failures;
        const char* path = out_path ? out_path : "-";
        isr_status ws = write_text(path, rep.text);
        if (ws != ISR_OK) throw std::runtime_error(isr_last_error());
        if (verbose) std::cerr << "compare: " << fails << " failures\n";
    });
    if (failures) *failures = fails;
    if (st != ISR_OK) return st;
    if (fails > 0) {
        set_error("compare finished with failures");
        return ISR_ERR_POINT_FAILURES;
    }
    return ISR_OK;
}

char* isr_presets(void) {
    try {
        const std::string text = isr::presets_text();
        char* out = new char[text.size() + 1];
        std::memcpy(out, text.c_str(), text.size() + 1);
        return out;
    } catch (const std::exception& e) {
        set_error(e.what());
        return nullptr;
    }
}

void isr_string_free(char* s) { delete[] s; }

const char* isr_last_error(void) { return t_last_error.c_str(); }

const char* isr_version(void) { return "0.1.0"; }

}  // extern "C"
