// sweep-cli: simulate, sweep, classify, steady-state and analytic reports.
// Exit codes: 0 success, 1 runtime error, 2 configuration error.

#include "dtcsim/io.hpp"
#include "dtcsim/spectral.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

using namespace dtcsim;

namespace {

struct CommonOptions {
    std::string config_path;
    std::map<std::string, std::string> overrides;
};

void add_setting_flags(CLI::App* cmd, CommonOptions& opts) {
    cmd->add_option("--config", opts.config_path, "key = value config file");
    for (const auto& key : setting_keys()) {
        cmd->add_option_function<std::string>(
            "--" + key, [&opts, key](const std::string& v) { opts.overrides[key] = v; },
            "overrides '" + key + "'");
    }
}

SweepConfig build_config(const CommonOptions& opts, SweepConfig base = {}) {
    if (!opts.config_path.empty()) apply_settings(base, load_settings_file(opts.config_path));
    Settings flags(opts.overrides.begin(), opts.overrides.end());
    apply_settings(base, flags);
    return base;
}

std::string fmt(double v, int precision) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    if (std::isnan(v)) return "nan";
    if (v == 0.0) v = 0.0;  // no "-0.000000"
    std::ostringstream ss;
    ss.setf(std::ios::fixed);
    ss.precision(precision);
    ss << v;
    return ss.str();
}

std::string fmt(cplx z, int precision) {
    const double tiny = 0.5 * std::pow(10.0, -precision);
    if (std::abs(z.real()) < tiny) z.real(0.0);
    if (std::abs(z.imag()) < tiny) return fmt(z.real(), precision);
    return fmt(z.real(), precision) + (z.imag() < 0 ? " - " : " + ") +
           fmt(std::abs(z.imag()), precision) + "i";
}

void print_label(std::ostream& out, const PhaseLabel& label, bool diverged) {
    const auto& d = label.diagnostics;
    out << "label = " << label.text() << '\n'
        << "n = " << d.response_order_n << '\n'
        << "max_amp = " << format_double(d.max_amp) << '\n'
        << "dominant_freq = " << format_double(d.dominant_freq) << '\n'
        << "d2 = " << format_double(d.d2) << '\n'
        << "sigma_amp = " << format_double(d.sigma_amp) << '\n'
        << "diverged = " << (diverged ? "true" : "false") << '\n';
    if (!label.note.empty()) out << "note = " << label.note << '\n';
}

void emit_report(const std::vector<std::pair<std::string, std::string>>& report,
                 const std::string& path) {
    std::ostringstream ss;
    for (const auto& [k, v] : report) ss << k << " = " << v << '\n';
    std::cout << ss.str();
    if (!path.empty()) {
        std::ofstream out(path);
        if (!out) throw std::runtime_error("cannot write '" + path + "'");
        out << ss.str();
    }
}

int run_simulate(const CommonOptions& opts, const std::string& perturbed_out) {
    auto cfg = build_config(opts);
    cfg.model.validate();
    cfg.integrator.validate();
    cfg.classifier.validate();
    const auto out_path = cfg.output.empty() ? std::string("trajectory.csv") : cfg.output;
    const auto original = simulate(cfg.model, cfg.integrator);
    const auto perturbed = simulate(cfg.model, cfg.integrator, cfg.classifier.perturbation_delta);
    write_trajectory_csv(out_path, original, cfg);
    if (!perturbed_out.empty()) {
        write_trajectory_csv(perturbed_out, perturbed, cfg, cfg.classifier.perturbation_delta);
    }
    const auto label = classify(original, perturbed, cfg.model.kind, cfg.model.drive(), cfg.classifier);
    std::cout << "trajectory = " << out_path << '\n';
    print_label(std::cout, label, original.diverged);
    return 0;
}

int run_sweep_cmd(const CommonOptions& opts) {
    auto cfg = build_config(opts);
    if (cfg.output.empty()) cfg.output = "phase_diagram.csv";
    const auto diagram = run_sweep(cfg);
    write_phase_diagram(cfg.output, diagram);
    std::cout << "diagram = " << cfg.output << '\n'
              << "cells = " << diagram.cells.size() << '\n';
    for (auto k : {PhaseKind::NP, PhaseKind::SB, PhaseKind::UB, PhaseKind::DTC_2T, PhaseKind::DTC_HO,
                   PhaseKind::NB, PhaseKind::SBB, PhaseKind::Chaotic, PhaseKind::OtherNonDTC}) {
        const double r = area_ratio(diagram, k);
        if (r > 0.0) std::cout << "area_" << to_string(k) << " = " << format_double(r) << '\n';
    }
    std::cout << "wall_time_s = " << diagram.wall_time_s << '\n';
    return 0;
}

int run_classify(const CommonOptions& opts, const std::string& original_path,
                 const std::string& perturbed_path) {
    const auto o = read_trajectory_csv(original_path);
    const auto p = read_trajectory_csv(perturbed_path);
    if (o.settings.model.kind != p.settings.model.kind) {
        throw ConfigError("trajectories come from different models");
    }
    // Model and drive come from the original file; flags may override classifier keys.
    auto cfg = build_config(opts, o.settings);
    const auto label = classify(o.trajectory, p.trajectory, cfg.model.kind, cfg.model.drive(),
                                cfg.classifier);
    print_label(std::cout, label, o.trajectory.diverged);
    return 0;
}

int run_steady_state(const CommonOptions& opts, int precision, const std::string& out) {
    const auto cfg = build_config(opts);
    cfg.model.validate();
    std::vector<std::pair<std::string, std::string>> r;
    r.emplace_back("model", std::string(to_string(cfg.model.kind)));
    if (is_dicke_family(cfg.model.kind)) {
        const auto& d = cfg.model.dicke;
        r.emplace_back("g_c", fmt(critical_coupling(d), precision));
        r.emplace_back("g0", fmt(d.g0(), precision));
        r.emplace_back("normal_phase", "alpha = 0, beta = 0, sz = -1");
        r.emplace_back("normal_phase_stable", d.g_ratio < 1.0 ? "true" : "false");
    } else {
        const auto ss = lmg_steady_state(cfg.model.lmg);
        r.emplace_back("normal", "X = 0, Y = 0, Z = -1");
        r.emplace_back("overdamped", ss.overdamped ? "true" : "false");
        r.emplace_back("symmetry_broken_branches", std::to_string(ss.symmetry_broken.size()));
        for (const auto& b : ss.symmetry_broken) {
            const std::string pre = b.branch > 0 ? "sb_plus_" : "sb_minus_";
            r.emplace_back(pre + "X", fmt(b.Xs, precision));
            r.emplace_back(pre + "Y", fmt(b.Ys, precision));
            r.emplace_back(pre + "Z", fmt(b.Zs, precision));
            r.emplace_back(pre + "Lambda", fmt(b.Lambda, precision));
        }
    }
    emit_report(r, out);
    return 0;
}

int run_analytic(const CommonOptions& opts, int precision, const std::string& out) {
    const auto cfg = build_config(opts);
    cfg.model.validate();
    std::vector<std::pair<std::string, std::string>> r;
    r.emplace_back("model", std::string(to_string(cfg.model.kind)));
    if (is_dicke_family(cfg.model.kind)) {
        const auto& d = cfg.model.dicke;
        const auto om = polariton_frequencies(d.omega, d.kappa, d.g_ratio);
        const auto modes = eigenmodes(d.omega, d.kappa, d.g_ratio);
        const auto pred = resonance_prediction(d.omega, d.kappa, d.g_ratio);
        r.emplace_back("g_c", fmt(critical_coupling(d), precision));
        r.emplace_back("Omega_plus", fmt(om[0], precision));
        r.emplace_back("Omega_minus", fmt(om[1], precision));
        r.emplace_back("eps_plus_upper", fmt(modes.eps_plus_upper, precision));
        r.emplace_back("eps_plus_lower", fmt(modes.eps_plus_lower, precision));
        r.emplace_back("eps_minus_upper", fmt(modes.eps_minus_upper, precision));
        r.emplace_back("eps_minus_lower", fmt(modes.eps_minus_lower, precision));
        r.emplace_back("kappa_c_prime", pred.critical.kappa_c_prime
                                            ? fmt(*pred.critical.kappa_c_prime, precision)
                                            : std::string("none"));
        r.emplace_back("kappa_c_dprime", fmt(pred.critical.kappa_c_dprime, precision));
        r.emplace_back("delta", fmt(pred.delta, precision));
        r.emplace_back("omega_r", fmt(pred.omega_r, precision));
        r.emplace_back("omega_r_large_kappa", fmt(pred.omega_r_large_kappa, precision));
        r.emplace_back("A_r", fmt(pred.a_r, precision));
        r.emplace_back("kappa_max", fmt(pred.kappa_max, precision));
        r.emplace_back("prediction_unreliable", pred.prediction_unreliable ? "true" : "false");
    } else {
        const auto& p = cfg.model.lmg;
        const auto lc = lambda_critical(p);
        for (std::size_t i = 0; i < lc.roots.size(); ++i) {
            const auto key = lc.roots.size() == 1 ? std::string("lambda_c")
                                                  : "lambda_c_" + std::to_string(i + 1);
            r.emplace_back(key, fmt(lc.roots[i].value, precision) +
                                    (lc.roots[i].real ? "" : " (complex)"));
        }
        const auto nf = natural_frequency(p);
        r.emplace_back("Omega_0", fmt(nf.value, precision) + (nf.imaginary ? "i" : ""));
        r.emplace_back("omega_r", fmt(nf.resonance(1), precision));
        const auto ss = lmg_steady_state(p);
        r.emplace_back("overdamped", ss.overdamped ? "true" : "false");
        for (const auto& b : ss.symmetry_broken) {
            const std::string pre = b.branch > 0 ? "sb_plus_" : "sb_minus_";
            r.emplace_back(pre + "X", fmt(b.Xs, precision));
            r.emplace_back(pre + "Y", fmt(b.Ys, precision));
            r.emplace_back(pre + "Z", fmt(b.Zs, precision));
        }
    }
    emit_report(r, out);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Parametric-resonance time-crystal simulator"};
    app.require_subcommand(1);

    CommonOptions sim_opts, sweep_opts, cls_opts, ss_opts, an_opts;
    std::string perturbed_out, original_path, perturbed_path, report_out;
    int precision = 6;

    auto* sim = app.add_subcommand("simulate", "integrate one trajectory and classify it");
    add_setting_flags(sim, sim_opts);
    sim->add_option("--perturbed-output", perturbed_out, "also write the delta-perturbed trajectory");

    auto* sweep = app.add_subcommand("sweep", "two-axis phase-diagram sweep");
    add_setting_flags(sweep, sweep_opts);

    auto* cls = app.add_subcommand("classify", "classify a stored trajectory pair");
    add_setting_flags(cls, cls_opts);
    cls->add_option("original", original_path)->required();
    cls->add_option("perturbed", perturbed_path)->required();

    auto* ss = app.add_subcommand("steady-state", "fixed points of the static model");
    add_setting_flags(ss, ss_opts);
    auto* an = app.add_subcommand("analytic", "closed-form resonance report");
    add_setting_flags(an, an_opts);
    for (auto* c : {ss, an}) {
        c->add_option("--precision", precision, "decimal places")->check(CLI::Range(1, 17));
        c->add_option("--report", report_out, "also write the report to this file");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (*sim) return run_simulate(sim_opts, perturbed_out);
        if (*sweep) return run_sweep_cmd(sweep_opts);
        if (*cls) return run_classify(cls_opts, original_path, perturbed_path);
        if (*ss) return run_steady_state(ss_opts, precision, report_out);
        if (*an) return run_analytic(an_opts, precision, report_out);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
