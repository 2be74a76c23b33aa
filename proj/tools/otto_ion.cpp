// otto_ion.cpp: command-line front end. Four subcommands: cycle (one full
// cycle, JSON record), sweep (efficiency sweep over the hot field, CSV/JSON
// table), adiabatic (ramp trajectories for each tau), validate (dual-route
// self checks).

#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "otto/config.hpp"
#include "otto/dynamics.hpp"
#include "otto/engine.hpp"
#include "otto/io.hpp"
#include "otto/thermo.hpp"
#include "otto/validate.hpp"

namespace {

using otto::cli::Command;
using otto::cli::RunConfig;

struct CommonArgs {
    std::string config_path;
    std::vector<std::string> sets;
    std::string out_path;
    std::string format;
    std::uint64_t seed = 0;
};

void add_common(CLI::App* cmd, CommonArgs& a) {
    cmd->add_option("--config", a.config_path, "JSON config file (flat object, strict keys)");
    cmd->add_option("--set", a.sets, "override a config key, key=value (repeatable)")
        ->take_all();
    cmd->add_option("--out", a.out_path, "output path (default: stdout)");
    cmd->add_option("--format", a.format, "output format: csv or json");
    cmd->add_option("--seed", a.seed, "pseudorandom seed");
}

RunConfig build_config(Command cmd, CLI::App* app, CommonArgs& a) {
    RunConfig cfg = RunConfig::defaults(cmd);
    if (!a.config_path.empty()) otto::cli::apply_config_file(cfg, a.config_path);
    for (const auto& s : a.sets) otto::cli::apply_set(cfg, s);
    if (app->count("--out") > 0) cfg.output_path = a.out_path;
    if (app->count("--format") > 0) cfg.output_format = a.format;
    if (app->count("--seed") > 0) cfg.seed = a.seed;
    cfg.validate();
    return cfg;
}

nlohmann::json params_json(const otto::model::EngineParams& p) {
    nlohmann::json j;
    j["g"] = p.g;
    j["b_h"] = p.b_h;
    j["b_l"] = p.b_l;
    j["omega"] = p.omega;
    j["k"] = p.k;
    j["kt_hot"] = p.kt_hot;
    j["tau"] = p.tau;
    j["steps"] = p.steps;
    j["meas_cost"] = p.meas_cost;
    j["z_convention"] = otto::cli::to_string(p.zconv);
    return j;
}

int cmd_cycle(const RunConfig& cfg) {
    if (cfg.output_format != "json")
        throw otto::ConfigError("cycle emits a JSON record; use --format json");
    const auto rec = otto::engine::run_cycle(cfg.engine_params());

    nlohmann::json j;
    j["q_hot"] = rec.ledger.q_hot;
    j["q_cold"] = rec.ledger.q_cold;
    j["w_expand"] = rec.ledger.w_expand;
    j["w_compress"] = rec.ledger.w_compress;
    j["w_net_by_system"] = rec.ledger.w_net_by_system;
    j["eta"] = rec.ledger.eta;
    j["eta_m"] = rec.ledger.eta_m;
    j["residual"] = rec.diagnostics.first_law_residual;
    j["measurement"] = {{"observed_g", rec.observed_g},
                        {"probability", rec.measure_probability},
                        {"mode", rec.exhaust_mode == otto::engine::ExhaustMode::selective
                                     ? "selective"
                                     : "nonselective"}};
    j["diagnostics"] = {
        {"first_law_residual", rec.diagnostics.first_law_residual},
        {"ground_fidelity_after_compression", rec.diagnostics.ground_fidelity_after_compression},
        {"z_convention_discrepancy", rec.diagnostics.z_convention_discrepancy},
        {"expansion_bookkeeping_vs_dynamic", rec.diagnostics.expansion_bookkeeping_vs_dynamic},
        {"compression_bookkeeping_vs_dynamic",
         rec.diagnostics.compression_bookkeeping_vs_dynamic},
        {"ideal_efficiency", rec.diagnostics.ideal_efficiency}};
    j["params"] = params_json(rec.params);
    otto::io::write_output(cfg.output_path, j.dump(2) + "\n");
    return 0;
}

int cmd_sweep(const RunConfig& cfg) {
    const auto grid = otto::engine::linear_grid(cfg.b_h_min, cfg.b_h_max, cfg.n_points);
    const auto points = otto::engine::sweep_efficiency(cfg.engine_params(), grid);

    otto::io::Table t;
    t.columns = {"b_h", "work", "eta", "eta_m", "flagged"};
    for (const auto& pt : points)
        t.rows.push_back({pt.b_h, pt.work, pt.eta, pt.eta_m, static_cast<double>(pt.flagged)});
    otto::io::write_output(cfg.output_path,
                           cfg.output_format == "csv" ? otto::io::to_csv(t) : otto::io::to_json(t));
    return 0;
}

int cmd_adiabatic(const RunConfig& cfg) {
    const auto p = cfg.engine_params();
    const int ntau = static_cast<int>(cfg.tau_list.size());
    std::vector<std::vector<otto::dynamics::TrajectorySample>> runs(ntau);

    const otto::la::Density rho0 = otto::thermo::gibbs_joint(p, p.b_h);
    std::vector<std::exception_ptr> errors(ntau);
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < ntau; ++i) {
        try {
            otto::dynamics::RampSpec ramp{p.b_h, p.b_l, cfg.tau_list[i]};
            runs[i] = otto::dynamics::evolve_liouville(rho0, p, ramp, {p.steps});
        } catch (...) {
            errors[i] = std::current_exception();
        }
    }
    for (const auto& e : errors)
        if (e) std::rethrow_exception(e);

    otto::io::Table t;
    t.columns = {"tau", "t", "b", "p1", "p2", "xi", "trace", "purity"};
    for (int i = 0; i < ntau; ++i) {
        const otto::dynamics::RampSpec ramp{p.b_h, p.b_l, cfg.tau_list[i]};
        for (const auto& s : runs[i]) {
            t.rows.push_back({cfg.tau_list[i], s.t, otto::dynamics::field_ramp(ramp, s.t), s.p1,
                              s.p2, s.xi, s.rho.mat().trace().real(), s.rho.purity()});
        }
    }
    otto::io::write_output(cfg.output_path,
                           cfg.output_format == "csv" ? otto::io::to_csv(t) : otto::io::to_json(t));
    return 0;
}

int cmd_validate(const RunConfig& cfg, bool inject_perturbation) {
    otto::validate::ValidationOptions opts;
    opts.seed = cfg.seed;
    opts.inject_spectrum_perturbation = inject_perturbation;
    const auto results = otto::validate::run_validation(opts);

    nlohmann::json checks = nlohmann::json::array();
    std::string report;
    for (const auto& r : results) {
        report += (r.passed ? "[PASS] " : "[FAIL] ") + r.name +
                  "  residual=" + otto::io::format_double(r.residual) +
                  "  tolerance=" + otto::io::format_double(r.tolerance) + "\n";
        checks.push_back({{"name", r.name},
                          {"passed", r.passed},
                          {"residual", r.residual},
                          {"tolerance", r.tolerance}});
    }
    const bool ok = otto::validate::all_passed(results);
    nlohmann::json j;
    j["all_passed"] = ok;
    j["checks"] = checks;
    report += j.dump(2) + "\n";
    otto::io::write_output(cfg.output_path, report);
    return ok ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"single-ion quantum Otto engine simulator"};
    app.require_subcommand(1);

    CommonArgs a_cycle, a_sweep, a_adiabatic, a_validate;
    auto* c_cycle = app.add_subcommand("cycle", "run one full cycle, emit the JSON record");
    auto* c_sweep = app.add_subcommand("sweep", "efficiency sweep over the hot field");
    auto* c_adiabatic = app.add_subcommand("adiabatic", "ramp trajectories for each tau");
    auto* c_validate = app.add_subcommand("validate", "run the dual-route self checks");
    add_common(c_cycle, a_cycle);
    add_common(c_sweep, a_sweep);
    add_common(c_adiabatic, a_adiabatic);
    add_common(c_validate, a_validate);
    bool inject_perturbation = false;
    c_validate->add_flag("--inject-perturbation", inject_perturbation,
                         "perturb one closed-form eigenvalue (sensitivity check)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help
        app.exit(e);
        return 2;
    }

    try {
        if (c_cycle->parsed()) return cmd_cycle(build_config(Command::cycle, c_cycle, a_cycle));
        if (c_sweep->parsed()) return cmd_sweep(build_config(Command::sweep, c_sweep, a_sweep));
        if (c_adiabatic->parsed())
            return cmd_adiabatic(build_config(Command::adiabatic, c_adiabatic, a_adiabatic));
        if (c_validate->parsed())
            return cmd_validate(build_config(Command::validate, c_validate, a_validate),
                                inject_perturbation);
    } catch (const otto::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
