#include "solarpump/sim/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "solarpump/error.hpp"

namespace solarpump::sim {

namespace {

void check(bool ok, const std::string& what) {
    if (!ok) throw Error(ErrorKind::config_error, what);
}

bool pct(double v) { return v >= 0.0 && v <= 100.0; }

template <class P>
void check_profile(const std::vector<P>& p, const char* name) {
    check(!p.empty(), std::string(name) + " profile is empty");
    for (size_t i = 1; i < p.size(); ++i)
        check(p[i].t > p[i - 1].t, std::string(name) + " breakpoints must have increasing times");
}

template <class P, class F>
double interp(const std::vector<P>& p, double t, F field) {
    if (t <= p.front().t) return field(p.front());
    if (t >= p.back().t) return field(p.back());
    auto hi = std::upper_bound(p.begin(), p.end(), t, [](double x, const P& q) { return x < q.t; });
    auto lo = hi - 1;
    double f = (t - lo->t) / (hi->t - lo->t);
    return field(*lo) + f * (field(*hi) - field(*lo));
}

}  // namespace

void ScenarioConfig::validate() const {
    check(duration_s > 0.0, "duration_s must be > 0");
    check(dt_s > 0.0, "dt_s must be > 0");
    check(dt_s <= duration_s, "dt_s must not exceed duration_s");
    check_profile(irradiance_profile, "irradiance");
    check_profile(sun_path, "sun_path");
    for (const auto& p : irradiance_profile) check(p.w_m2 >= 0.0, "irradiance must be >= 0");
    check(battery_capacity_Wh > 0.0, "battery capacity_Wh must be > 0");
    check(pct(soc_init_pct) && pct(battery_cutoff_pct) && pct(battery_reconnect_pct), "battery percentages must lie in [0, 100]");
    check(battery_cutoff_pct <= battery_reconnect_pct, "battery cutoff_pct must not exceed reconnect_pct");
    check(tank1_volume_L > 0.0 && tank2_volume_L > 0.0, "tank volumes must be > 0");
    check(pct(tank1_init_pct) && pct(tank2_init_pct), "tank initial levels must lie in [0, 100]");
    check(pct(tank_low_pct) && pct(tank_full_pct), "tank thresholds must lie in [0, 100]");
    check(tank_low_pct < tank_full_pct, "tank_low_pct must be below tank_full_pct");
    check(pump_flow_Lpm > 0.0 && pump_power_W >= 0.0 && pump_tau_s > 0.0, "pump flow and time constant must be > 0");
    check(pct(soil_init_pct) && pct(soil_dry_pct) && pct(soil_wet_pct), "soil percentages must lie in [0, 100]");
    check(soil_dry_pct < soil_wet_pct, "soil dry_pct must be below wet_pct");
    check(soil_gain_pct_per_L >= 0.0 && soil_decay_pct_per_h >= 0.0, "soil rates must be >= 0");
    check(motor_step_deg > 0.0, "motor_step_deg must be > 0");
    check(tracker_period_s >= dt_s, "tracker period_s must be >= dt_s");
    check(thresholds.avgsum_min > 0.0 && thresholds.diff_deadband > 0.0, "tracker thresholds must be > 0");
    check(mppt_dV_step > 0.0, "mppt dV_step must be > 0");
    check(mppt_v_init >= 0.0, "mppt v_init must be >= 0");
    try {
        pv.validate();
    } catch (const Error& e) {
        throw Error(ErrorKind::config_error, std::string("pv: ") + e.what());
    }
}

RelayState control_logic_step(const RelayState& prev, const PlantLevels& lv, const ScenarioConfig& cfg) {
    RelayState r = prev;
    if (lv.tank2_pct < cfg.tank_low_pct) r.pump1 = true;
    if (lv.tank2_pct >= cfg.tank_full_pct) r.pump1 = false;
    if (lv.soil_pct < cfg.soil_dry_pct) r.pump2 = true;
    if (lv.soil_pct >= cfg.soil_wet_pct) r.pump2 = false;
    if (lv.soc_pct < cfg.battery_cutoff_pct) r.battery_relay = false;
    if (lv.soc_pct >= cfg.battery_reconnect_pct) r.battery_relay = true;
    return r;
}

PumpOutput pump_dynamics_step(double flow, bool running, double dt, const ScenarioConfig& cfg) {
    if (!(dt > 0.0)) throw Error(ErrorKind::invalid_input, "dt must be > 0");
    double target = running ? cfg.pump_flow_Lpm : 0.0;
    double next = target + (flow - target) * std::exp(-dt / cfg.pump_tau_s);
    return {next, cfg.pump_power_W * next / cfg.pump_flow_Lpm};
}

double interpolate_irradiance(const std::vector<IrradiancePoint>& p, double t) {
    return interp(p, t, [](const IrradiancePoint& q) { return q.w_m2; });
}

geometry::SunPosition interpolate_sun(const std::vector<SunPoint>& p, double t) {
    return {interp(p, t, [](const SunPoint& q) { return q.theta_SE; }),
            interp(p, t, [](const SunPoint& q) { return q.theta_SA; })};
}

SimTrace run_scenario(const ScenarioConfig& cfg) {
    cfg.validate();

    const double dt = cfg.dt_s;
    const long steps = std::lround(cfg.duration_s / dt);
    const long tracker_every = std::max(1L, std::lround(cfg.tracker_period_s / dt));

    double tank1 = cfg.tank1_volume_L * cfg.tank1_init_pct / 100.0;
    double tank2 = cfg.tank2_volume_L * cfg.tank2_init_pct / 100.0;
    double delivered = 0.0;
    double soc = cfg.soc_init_pct;
    double soil = cfg.soil_init_pct;
    double flow1 = 0.0, flow2 = 0.0;

    RelayState relay;
    relay.battery_relay = soc >= cfg.battery_cutoff_pct;
    relay = control_logic_step(relay, {100.0 * tank2 / cfg.tank2_volume_L, soil, soc}, cfg);

    geometry::TrackerOrientation orient = cfg.tracker_initial;
    mppt::MpptState mp = mppt::initial_state(cfg.mppt_v_init, cfg.mppt_dV_step);
    pv::PvArrayParams ap = cfg.pv;

    SimTrace trace;
    trace.rows.reserve(static_cast<size_t>(steps) + 1);

    auto record = [&](double t, double irr, double p_pv, double alpha) {
        TraceRow r{};
        r.t = t;
        r.irradiance = irr;
        r.pv_power_W = p_pv;
        r.soc_pct = soc;
        r.pump1_on = relay.pump1 && relay.battery_relay;
        r.pump2_on = relay.pump2 && relay.battery_relay;
        r.tank2_level_pct = 100.0 * tank2 / cfg.tank2_volume_L;
        r.soil_moisture_pct = soil;
        r.theta_TE = orient.theta_TE;
        r.theta_TA = orient.theta_TA;
        r.alpha = alpha;
        r.tank1_level_pct = 100.0 * tank1 / cfg.tank1_volume_L;
        r.battery_relay = relay.battery_relay;
        r.pump1_latch = relay.pump1;
        r.pump2_latch = relay.pump2;
        r.pump1_flow_Lpm = flow1;
        r.pump2_flow_Lpm = flow2;
        r.tank1_L = tank1;
        r.tank2_L = tank2;
        r.delivered_L = delivered;
        r.v_ref = mp.V_ref;
        trace.rows.push_back(r);
    };

    {
        auto sun0 = interpolate_sun(cfg.sun_path, 0.0);
        record(0.0, interpolate_irradiance(cfg.irradiance_profile, 0.0), 0.0, geometry::angle_of_incidence(sun0, orient));
    }

    SimSummary& sum = trace.summary;
    for (long k = 0; k < steps; ++k) {
        const double t = static_cast<double>(k) * dt;
        const double irr = interpolate_irradiance(cfg.irradiance_profile, t);
        const auto sun = interpolate_sun(cfg.sun_path, t);

        if (k % tracker_every == 0) {
            auto cmd = tracking::tracking_step(tracking::ldr_model(sun, orient, irr), cfg.thresholds);
            orient = tracking::apply_command(orient, cmd, cfg.motor_step_deg, cfg.tracker_initial);
        }
        const double alpha = geometry::angle_of_incidence(sun, orient);
        double effective = sun.theta_SE > 0.0 ? irr * std::max(0.0, std::cos(alpha * std::acos(-1.0) / 180.0)) : 0.0;

        ap.irradiance_G_T = effective;
        const double V = mp.V_ref;
        const double I = pv::array_current(ap, V);
        switch (cfg.mppt_algorithm) {
            case mppt::Algorithm::po: mp = mppt::po_step(mp, V, I); break;
            case mppt::Algorithm::po_printed: mp = mppt::po_step(mp, V, I, mppt::PoVariant::printed); break;
            case mppt::Algorithm::ic: mp = mppt::ic_step(mp, V, I); break;
        }
        mp.V_ref = std::max(0.0, mp.V_ref);
        // a blocking diode keeps the array from sinking current
        const double p_pv = std::max(0.0, V * I);

        relay = control_logic_step(relay, {100.0 * tank2 / cfg.tank2_volume_L, soil, soc}, cfg);
        const bool run1 = relay.pump1 && relay.battery_relay;
        const bool run2 = relay.pump2 && relay.battery_relay;
        const bool was1 = trace.rows.back().pump1_on, was2 = trace.rows.back().pump2_on;

        auto p1 = pump_dynamics_step(flow1, run1, dt, cfg);
        auto p2 = pump_dynamics_step(flow2, run2, dt, cfg);
        flow1 = p1.flow_Lpm;
        flow2 = p2.flow_Lpm;

        double v1 = std::min({flow1 / 60.0 * dt, tank1, cfg.tank2_volume_L - tank2});
        v1 = std::max(0.0, v1);
        tank1 -= v1;
        tank2 += v1;
        double v2 = std::max(0.0, std::min(flow2 / 60.0 * dt, tank2));
        tank2 -= v2;
        delivered += v2;

        const double load = p1.load_W + p2.load_W;
        soc += (p_pv - load) * dt / 3600.0 / cfg.battery_capacity_Wh * 100.0;
        soc = std::clamp(soc, 0.0, 100.0);
        soil += cfg.soil_gain_pct_per_L * v2 - cfg.soil_decay_pct_per_h * dt / 3600.0;
        soil = std::clamp(soil, 0.0, 100.0);

        sum.pv_energy_Wh += p_pv * dt / 3600.0;
        sum.pump_energy_Wh += load * dt / 3600.0;
        sum.pump1_on_steps += run1 ? 1 : 0;
        sum.pump2_on_steps += run2 ? 1 : 0;
        sum.pump1_starts += run1 && !was1 ? 1 : 0;
        sum.pump2_starts += run2 && !was2 ? 1 : 0;

        record(static_cast<double>(k + 1) * dt, irr, p_pv, alpha);
    }
    sum.final_soc_pct = soc;
    sum.water_delivered_L = delivered;
    return trace;
}

}  // namespace solarpump::sim
