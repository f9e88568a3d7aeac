#include "solarpump/cli/commands.hpp"

#include <fmt/format.h>

#include <cmath>
#include <filesystem>

#include "solarpump/cli/csv.hpp"
#include "solarpump/cli/validation.hpp"
#include "solarpump/error.hpp"
#include "solarpump/geometry/solar_geometry.hpp"
#include "solarpump/lti/error_constants.hpp"
#include "solarpump/lti/frequency.hpp"
#include "solarpump/lti/root_locus.hpp"
#include "solarpump/lti/routh.hpp"
#include "solarpump/lti/time_response.hpp"
#include "solarpump/mppt/mppt.hpp"
#include "solarpump/plant/plant_models.hpp"
#include "solarpump/pv/pv_model.hpp"
#include "solarpump/sim/scenario.hpp"
#include "solarpump/tracking/tracking.hpp"

namespace solarpump::cli {

using lti::TransferFunction;

namespace {

CsvCell opt_cell(double v) {
    if (std::isfinite(v)) return v;
    return std::string();
}

long long b(bool v) { return v ? 1 : 0; }

}  // namespace

CommandResult cmd_pv_curve(const AppConfig& cfg) {
    const auto& ap = cfg.scenario.pv;
    ap.validate();
    double voc = pv::open_circuit_voltage(ap);
    auto curve = pv::iv_curve(ap, pv::voltage_grid(voc, cfg.pv_curve_points));
    CsvTable t({"v", "i", "p"});
    for (size_t k = 0; k < curve.voltages.size(); ++k) t.add_row({curve.voltages[k], curve.currents[k], curve.powers[k]});
    auto mpp = pv::find_mpp(ap);
    std::string summary = fmt::format("V_oc {:.6g} V, MPP {:.6g} V x {:.6g} A = {:.6g} W{}\n", voc, mpp.V_mpp, mpp.I_mpp,
                                      mpp.P_mpp, mpp.multimodal ? " (multimodal)" : "");
    for (const auto& s : curve.skipped) summary += fmt::format("skipped V = {:.6g}: {}\n", s.voltage, s.reason);
    return {{{"pv_curve.csv", t.render()}}, summary};
}

CommandResult cmd_solar_angles(const AppConfig& cfg) {
    const auto& so = cfg.solar;
    CsvTable t({"n", "ST", "delta", "theta_e", "theta_z", "theta_SA", "theta_TE", "theta_TA", "alpha", "beta"});
    const double delta = geometry::declination(so.day_of_year);
    const long steps = std::lround(std::floor((so.st_end - so.st_start) / so.st_step + 1e-9));
    int misses = 0;
    for (long k = 0; k <= steps; ++k) {
        double st = so.st_start + static_cast<double>(k) * so.st_step;
        auto ze = geometry::zenith_and_elevation(so.latitude_deg, delta, st);
        // azimuth profile: the hour-angle sweep -90..90 maps onto bearings 90..270
        double sa = 180.0 + st;
        std::vector<CsvCell> row{static_cast<long long>(so.day_of_year), st, delta, ze.theta_e, ze.theta_z, sa};
        if (ze.theta_e > 0.0) {
            auto sol = geometry::optimal_orientation({ze.theta_e, sa}, so.target_alpha, so.target_beta);
            misses += sol.analytic_miss ? 1 : 0;
            row.insert(row.end(), {sol.orientation.theta_TE, sol.orientation.theta_TA, sol.achieved_alpha, sol.achieved_beta});
        } else {
            row.insert(row.end(), {std::string(), std::string(), std::string(), std::string()});
        }
        t.add_row(std::move(row));
    }
    return {{{"solar_angles.csv", t.render()}},
            fmt::format("{} rows, declination {:.6g} deg, {} grid fallbacks\n", t.size(), delta, misses)};
}

CommandResult cmd_track_sim(const AppConfig& cfg) {
    const auto& sc = cfg.scenario;
    std::vector<tracking::TrackSample> path;
    const long steps = std::lround(sc.duration_s / sc.tracker_period_s);
    for (long k = 0; k <= steps; ++k) {
        double t = static_cast<double>(k) * sc.tracker_period_s;
        path.push_back({sim::interpolate_sun(sc.sun_path, t), sim::interpolate_irradiance(sc.irradiance_profile, t)});
    }
    auto run = tracking::tracking_sim(path, sc.thresholds, sc.motor_step_deg, sc.tracker_initial);
    CsvTable t({"step", "theta_TE", "theta_TA", "alpha", "tl", "tr", "bl", "br", "az_cmd", "el_cmd"});
    for (size_t k = 0; k < run.size(); ++k) {
        const auto& s = run[k];
        std::string az = s.command.park ? "park" : tracking::to_string(s.command.azimuth_move);
        std::string el = s.command.park ? "park" : tracking::to_string(s.command.elevation_move);
        t.add_row({static_cast<long long>(k), s.orientation.theta_TE, s.orientation.theta_TA, s.alpha,
                   static_cast<long long>(s.readings.top_left), static_cast<long long>(s.readings.top_right),
                   static_cast<long long>(s.readings.bottom_left), static_cast<long long>(s.readings.bottom_right), az, el});
    }
    std::string summary = run.empty() ? "no steps\n"
                                      : fmt::format("{} steps, final alpha {:.6g} deg\n", run.size(), run.back().alpha);
    return {{{"track_sim.csv", t.render()}}, summary};
}

CommandResult cmd_mppt_run(const AppConfig& cfg) {
    const auto& sc = cfg.scenario;
    auto run = mppt::mppt_run(sc.pv, sc.mppt_algorithm, mppt::initial_state(sc.mppt_v_init, sc.mppt_dV_step), cfg.mppt_steps);
    CsvTable t({"iter", "v_ref", "i", "p"});
    for (const auto& p : run.points) t.add_row({static_cast<long long>(p.iter), p.v_ref, p.current, p.power});
    auto mpp = pv::find_mpp(sc.pv);
    std::string summary = fmt::format("{}: {} iterations, final V_ref {:.6g} V, MPP {:.6g} W at {:.6g} V\n",
                                      mppt::to_string(sc.mppt_algorithm), run.points.size(), run.final_state.V_ref, mpp.P_mpp,
                                      mpp.V_mpp);
    if (run.error) summary += "stopped: " + *run.error + "\n";
    return {{{"mppt_run.csv", t.render()}}, summary};
}

CommandResult cmd_scenario_run(const AppConfig& cfg) {
    auto trace = sim::run_scenario(cfg.scenario);
    CsvTable t({"t", "irradiance", "pv_power_W", "soc_pct", "pump1_on", "pump2_on", "tank2_level_pct", "soil_moisture_pct",
                "theta_TE", "theta_TA", "alpha", "tank1_level_pct", "battery_relay", "pump1_latch", "pump2_latch",
                "pump1_flow_Lpm", "pump2_flow_Lpm", "tank1_L", "tank2_L", "delivered_L", "v_ref"});
    for (const auto& r : trace.rows)
        t.add_row({r.t, r.irradiance, r.pv_power_W, r.soc_pct, b(r.pump1_on), b(r.pump2_on), r.tank2_level_pct,
                   r.soil_moisture_pct, r.theta_TE, r.theta_TA, r.alpha, r.tank1_level_pct, b(r.battery_relay), b(r.pump1_latch),
                   b(r.pump2_latch), r.pump1_flow_Lpm, r.pump2_flow_Lpm, r.tank1_L, r.tank2_L, r.delivered_L, r.v_ref});
    const auto& s = trace.summary;
    const double dt = cfg.scenario.dt_s;
    std::string summary;
    summary += fmt::format("{:<24}{:>14.6g}\n", "final_soc_pct", s.final_soc_pct);
    summary += fmt::format("{:<24}{:>14.6g}\n", "pump1_on_s", static_cast<double>(s.pump1_on_steps) * dt);
    summary += fmt::format("{:<24}{:>14.6g}\n", "pump2_on_s", static_cast<double>(s.pump2_on_steps) * dt);
    summary += fmt::format("{:<24}{:>14}\n", "pump1_starts", s.pump1_starts);
    summary += fmt::format("{:<24}{:>14}\n", "pump2_starts", s.pump2_starts);
    summary += fmt::format("{:<24}{:>14.6g}\n", "water_delivered_L", s.water_delivered_L);
    summary += fmt::format("{:<24}{:>14.6g}\n", "pv_energy_Wh", s.pv_energy_Wh);
    summary += fmt::format("{:<24}{:>14.6g}\n", "pump_energy_Wh", s.pump_energy_Wh);
    return {{{"trace.csv", t.render()}, {"summary.txt", summary}}, summary};
}

CommandResult cmd_validate() {
    auto rows = run_validation_report();
    std::string text = validation_text(rows);
    return {{{"validation.csv", validation_table(rows).render()}, {"validation.txt", text}}, text};
}

TfAction parse_tf_action(const std::string& name) {
    if (name == "analyze") return TfAction::analyze;
    if (name == "step") return TfAction::step;
    if (name == "bode") return TfAction::bode;
    if (name == "rlocus") return TfAction::rlocus;
    if (name == "routh") return TfAction::routh;
    if (name == "errors") return TfAction::errors;
    throw Error(ErrorKind::invalid_input, "unknown tf action '" + name + "'");
}

TransferFunction resolve_system(const AnalysisRequest& req) {
    if (req.preset && req.tf) throw Error(ErrorKind::invalid_input, "give either a preset or a transfer function, not both");
    if (!req.preset && !req.tf) throw Error(ErrorKind::invalid_input, "no system given (use --preset or --tf)");
    TransferFunction g = req.preset ? plant::preset(*req.preset).tf : *req.tf;
    if (!std::isfinite(req.gain) || req.gain == 0.0) throw Error(ErrorKind::invalid_input, "gain must be finite and nonzero");
    return g.scaled(req.gain);
}

CommandResult cmd_tf(TfAction action, const AnalysisRequest& req) {
    const TransferFunction open = resolve_system(req);
    const TransferFunction sys = req.closed_loop ? lti::tf_unity_feedback(open) : open;
    const std::vector<double> gains = expand(req.gains.value_or(GainRange{}));

    switch (action) {
        case TfAction::step: {
            double t_end = req.t_end.value_or(lti::default_step_t_end(sys));
            double dt = req.dt.value_or(lti::default_step_dt(sys, t_end));
            auto tr = lti::step_response(sys, t_end, dt);
            CsvTable t({"t", "y"});
            for (size_t k = 0; k < tr.t.size(); ++k) t.add_row({tr.t[k], tr.y[k]});
            std::string summary;
            if (tr.diverged) {
                summary = "response diverges\n";
            } else {
                try {
                    auto m = lti::step_metrics(tr);
                    summary = fmt::format("rise {:.6g} s, settling {:.6g} s, overshoot {:.6g}%, peak {:.6g} at {:.6g} s, final {:.6g}\n",
                                          m.rise_time_s, m.settling_time_s, m.overshoot_pct, m.peak, m.peak_time_s,
                                          m.steady_state_value);
                } catch (const Error& e) {
                    summary = std::string("no step metrics: ") + e.what() + "\n";
                }
            }
            return {{{"step.csv", t.render()}}, summary};
        }
        case TfAction::bode: {
            auto fr = lti::frequency_response(sys, lti::default_frequency_grid());
            CsvTable t({"omega", "magnitude_db", "phase_deg"});
            for (size_t k = 0; k < fr.omegas.size(); ++k) t.add_row({fr.omegas[k], fr.magnitude_db[k], fr.phase_deg[k]});
            auto m = lti::stability_margins(fr);
            auto show = [](const std::optional<double>& v) { return v ? fmt::format("{:.6g}", *v) : std::string("none"); };
            return {{{"bode.csv", t.render()}},
                    fmt::format("gain margin {} dB at {} rad/s, phase margin {} deg at {} rad/s\n", show(m.gain_margin_db),
                                show(m.gm_freq_rad_s), show(m.phase_margin_deg), show(m.pm_freq_rad_s))};
        }
        case TfAction::rlocus: {
            auto locus = lti::root_locus(sys, gains);
            CsvTable t({"gain", "branch", "real", "imag"});
            for (const auto& pt : locus)
                for (size_t k = 0; k < pt.poles.size(); ++k)
                    t.add_row({pt.gain, static_cast<long long>(k), pt.poles[k].real(), pt.poles[k].imag()});
            return {{{"rlocus.csv", t.render()}}, fmt::format("{} gains, {} branches\n", locus.size(), sys.den().degree())};
        }
        case TfAction::routh: {
            auto r = lti::routh_table(sys.den());
            std::vector<std::string> header{"power"};
            size_t width = r.table.empty() ? 0 : r.table.front().size();
            for (size_t k = 0; k < width; ++k) header.push_back(fmt::format("c{}", k));
            CsvTable t(header);
            int power = sys.den().degree();
            for (const auto& row : r.table) {
                std::vector<CsvCell> cells{static_cast<long long>(power--)};
                for (size_t k = 0; k < width; ++k) cells.push_back(k < row.size() ? row[k] : 0.0);
                t.add_row(std::move(cells));
            }
            return {{{"routh.csv", t.render()}},
                    fmt::format("{} ({} sign changes{}{}); root-sign check: {}\n", lti::to_string(r.verdict), r.sign_changes,
                                r.epsilon_substituted ? ", epsilon substituted" : "", r.zero_row ? ", zero row" : "",
                                lti::to_string(lti::root_sign_verdict(sys.den())))};
        }
        case TfAction::errors: {
            auto curve = lti::ss_error_vs_gain(open, gains);
            CsvTable t({"gain", "e_step"});
            for (size_t k = 0; k < curve.gains.size(); ++k) t.add_row({curve.gains[k], opt_cell(curve.e_step[k])});
            auto ec = lti::error_constants(open);
            std::string summary = fmt::format("type {}, Kp {:.6g}, Kv {:.6g}, Ka {:.6g}\n", ec.system_type, ec.Kp_pos, ec.Kv_vel, ec.Ka_acc);
            for (const auto& gt : curve.targets) {
                if (gt.met_everywhere)
                    summary += fmt::format("e_step <= {:g}: met over the whole sweep\n", gt.target_error);
                else if (gt.gain)
                    summary += fmt::format("e_step <= {:g}: gain multiplier {:.6g}\n", gt.target_error, *gt.gain);
                else
                    summary += fmt::format("e_step <= {:g}: not reached in the sweep\n", gt.target_error);
            }
            return {{{"errors.csv", t.render()}}, summary};
        }
        case TfAction::analyze: {
            CsvTable t({"quantity", "value"});
            t.add_row({std::string("transfer_function"), sys.to_text()});
            t.add_row({std::string("dc_gain"), opt_cell(sys.dc_gain())});
            auto add_roots = [&t](const char* name, const std::vector<lti::cplx>& rs) {
                for (size_t k = 0; k < rs.size(); ++k) {
                    t.add_row({fmt::format("{}_{}_real", name, k), rs[k].real()});
                    t.add_row({fmt::format("{}_{}_imag", name, k), rs[k].imag()});
                }
            };
            add_roots("pole", sys.poles());
            if (!sys.num().is_zero() && sys.num().degree() > 0) add_roots("zero", sys.zeros());
            auto r = lti::routh_table(sys.den());
            t.add_row({std::string("routh_verdict"), std::string(lti::to_string(r.verdict))});
            auto m = lti::stability_margins(lti::frequency_response(sys, lti::default_frequency_grid()));
            auto put = [&t](const char* name, const std::optional<double>& v) {
                if (v) t.add_row({std::string(name), *v});
            };
            put("gain_margin_db", m.gain_margin_db);
            put("gm_freq_rad_s", m.gm_freq_rad_s);
            put("phase_margin_deg", m.phase_margin_deg);
            put("pm_freq_rad_s", m.pm_freq_rad_s);
            if (r.verdict == lti::Verdict::stable && sys.proper()) {
                try {
                    double t_end = req.t_end.value_or(lti::default_step_t_end(sys));
                    auto sm = lti::step_metrics(lti::step_response(sys, t_end, req.dt.value_or(lti::default_step_dt(sys, t_end))));
                    t.add_row({std::string("rise_time_s"), sm.rise_time_s});
                    t.add_row({std::string("settling_time_s"), sm.settling_time_s});
                    t.add_row({std::string("overshoot_pct"), sm.overshoot_pct});
                    t.add_row({std::string("peak"), sm.peak});
                    t.add_row({std::string("peak_time_s"), sm.peak_time_s});
                } catch (const Error&) {
                    // metrics are optional in the overview
                }
            }
            std::string text = t.render();
            return {{{"analyze.csv", text}}, fmt::format("{}; {}\n", sys.to_text(), lti::to_string(r.verdict))};
        }
    }
    throw Error(ErrorKind::invalid_input, "unknown tf action");
}

void deliver(const CommandResult& res, const std::optional<std::string>& out_dir, std::ostream& out, std::ostream& err) {
    if (!out_dir) {
        if (!res.files.empty()) out << res.files.front().content;
        err << res.summary;
        return;
    }
    std::error_code ec;
    std::filesystem::create_directories(*out_dir, ec);
    if (ec) throw Error(ErrorKind::io_error, fmt::format("cannot create output directory '{}': {}", *out_dir, ec.message()));
    for (const auto& f : res.files) write_text_file((std::filesystem::path(*out_dir) / f.name).string(), f.content);
    out << res.summary;
}

}  // namespace solarpump::cli
