#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <string>

#include "solarpump/cli/commands.hpp"
#include "solarpump/cli/config.hpp"
#include "solarpump/cli/validation.hpp"
#include "solarpump/error.hpp"
#include "solarpump/plant/plant_models.hpp"

using namespace solarpump;

namespace {

enum Exit { ok = 0, usage = 1, config = 2, numeric = 3 };

int exit_code(ErrorKind k) {
    switch (k) {
        case ErrorKind::config_error:
        case ErrorKind::io_error: return config;
        default: return numeric;
    }
}

std::string footer() {
    std::string s = "Transfer-function presets (--preset):\n";
    for (const auto& p : plant::presets()) s += "  " + p.id + std::string(p.id.size() < 16 ? 16 - p.id.size() : 1, ' ') + p.description + "\n";
    s += "\nValidation registry (validate):\n";
    for (const auto& e : cli::validation_registry()) s += "  " + e.id + "\n      " + e.description + "\n";
    s += "\n--tf takes \"num: c_n ... c_0 / den: d_m ... d_0\". tf actions run on K G, or on K G/(1 + K G)\n"
         "with --closed-loop; routh uses the denominator of that system.\n"
         "Exit codes: 0 ok, 1 usage, 2 config or IO, 3 numeric failure.\n";
    return s;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Solar-tracked PV water pumping: simulation and analysis"};
    app.footer(footer());
    app.require_subcommand(1);
    app.fallthrough();

    std::string config_path, out_dir, preset, tf_text, gains_text;
    std::optional<double> gain, dt, t_end;
    bool closed_loop = false;
    app.add_option("--config", config_path, "scenario / analysis config file");
    app.add_option("--out", out_dir, "directory for output files (default: primary CSV to stdout)");
    app.add_option("--preset", preset, "transfer-function preset id");
    app.add_option("--tf", tf_text, "explicit transfer function");
    app.add_option("--gain", gain, "loop gain K multiplying the system");
    app.add_flag("--closed-loop", closed_loop, "analyse the unity-feedback loop");
    app.add_option("--dt", dt, "step-response time step [s]");
    app.add_option("--t-end", t_end, "step-response horizon [s]");
    app.add_option("--gains", gains_text, "log-spaced gain sweep a:b:n");

    auto* pv_curve = app.add_subcommand("pv-curve", "I-V and P-V curve of the array");
    auto* solar_angles = app.add_subcommand("solar-angles", "sun position and optimal tracker angles over a day");
    auto* track_sim = app.add_subcommand("track-sim", "LDR tracker following the configured sun path");
    auto* mppt_run = app.add_subcommand("mppt-run", "MPPT trajectory on the configured array");
    auto* tf = app.add_subcommand("tf", "transfer-function analysis");
    std::string tf_action;
    tf->add_option("action", tf_action, "analyze | step | bode | rlocus | routh | errors")
        ->required()
        ->check(CLI::IsMember({"analyze", "step", "bode", "rlocus", "routh", "errors"}));
    auto* scenario = app.add_subcommand("scenario", "closed-loop plant scenario");
    std::string scenario_action;
    scenario->add_option("action", scenario_action, "run")->required()->check(CLI::IsMember({"run"}));
    auto* validate = app.add_subcommand("validate", "recompute every registered reference number");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return usage;
    }

    std::optional<std::string> out;
    if (!out_dir.empty()) out = out_dir;

    cli::AppConfig cfg;
    cli::AnalysisRequest req;
    try {
        if (!config_path.empty()) cfg = cli::parse_config(config_path);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return config;
    }

    if (tf->parsed()) {
        try {
            if (cfg.analysis) req = *cfg.analysis;
            if (!preset.empty()) {
                plant::preset(preset);
                req.preset = preset;
                req.tf.reset();
            }
            if (!tf_text.empty()) {
                req.tf = lti::TransferFunction::parse(tf_text);
                if (preset.empty()) req.preset.reset();
            }
            if (gain) req.gain = *gain;
            if (closed_loop) req.closed_loop = true;
            if (dt) req.dt = *dt;
            if (t_end) req.t_end = *t_end;
            if (!gains_text.empty()) req.gains = cli::parse_gain_range(gains_text);
            cli::resolve_system(req);
        } catch (const Error& e) {
            std::cerr << "usage error: " << e.what() << "\n";
            return usage;
        }
    }

    try {
        cli::CommandResult res;
        if (pv_curve->parsed()) res = cli::cmd_pv_curve(cfg);
        else if (solar_angles->parsed()) res = cli::cmd_solar_angles(cfg);
        else if (track_sim->parsed()) res = cli::cmd_track_sim(cfg);
        else if (mppt_run->parsed()) res = cli::cmd_mppt_run(cfg);
        else if (tf->parsed()) res = cli::cmd_tf(cli::parse_tf_action(tf_action), req);
        else if (scenario->parsed()) res = cli::cmd_scenario_run(cfg);
        else if (validate->parsed()) res = cli::cmd_validate();
        cli::deliver(res, out, std::cout, std::cerr);
    } catch (const Error& e) {
        std::cerr << "error (" << to_string(e.kind()) << "): " << e.what() << "\n";
        return exit_code(e.kind());
    }
    return ok;
}
