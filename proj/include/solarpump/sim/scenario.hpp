#pragma once

#include <vector>

#include "solarpump/geometry/solar_geometry.hpp"
#include "solarpump/mppt/mppt.hpp"
#include "solarpump/pv/pv_model.hpp"
#include "solarpump/tracking/tracking.hpp"

namespace solarpump::sim {

struct IrradiancePoint {
    double t;
    double w_m2;
};

struct SunPoint {
    double t;
    double theta_SE;
    double theta_SA;
};

struct ScenarioConfig {
    double duration_s = 7200.0;
    double dt_s = 0.1;

    std::vector<IrradiancePoint> irradiance_profile{{0.0, 250.0}, {7200.0, 400.0}};
    std::vector<SunPoint> sun_path{{0.0, 20.0, 100.0}, {7200.0, 45.0, 135.0}};

    double battery_capacity_Wh = 100.0;
    double soc_init_pct = 5.0;
    double battery_cutoff_pct = 10.0;     // relay opens below this
    double battery_reconnect_pct = 15.0;  // and closes again at this

    double tank1_volume_L = 39.5;
    double tank2_volume_L = 39.5;
    double tank1_init_pct = 100.0;
    double tank2_init_pct = 15.0;
    double tank_low_pct = 20.0;
    double tank_full_pct = 90.0;

    double pump_flow_Lpm = 5.0;
    double pump_power_W = 60.0;
    double pump_tau_s = 0.1;

    double soil_init_pct = 31.0;
    double soil_dry_pct = 30.0;
    double soil_wet_pct = 70.0;
    double soil_gain_pct_per_L = 2.0;
    double soil_decay_pct_per_h = 1.0;

    pv::PvArrayParams pv;

    tracking::TrackingThresholds thresholds;
    double motor_step_deg = 1.8;
    double tracker_period_s = 1.0;
    geometry::TrackerOrientation tracker_initial{20.0, 100.0};

    mppt::Algorithm mppt_algorithm = mppt::Algorithm::po;
    double mppt_dV_step = 0.5;
    double mppt_v_init = 15.0;

    // throws config_error naming the offending field
    void validate() const;
};

struct RelayState {
    bool pump1 = false;  // latched demand
    bool pump2 = false;
    bool battery_relay = true;
};

struct PlantLevels {
    double tank2_pct;
    double soil_pct;
    double soc_pct;
};

RelayState control_logic_step(const RelayState& prev, const PlantLevels& levels, const ScenarioConfig& cfg);

struct PumpOutput {
    double flow_Lpm;
    double load_W;
};

// Exact first-order response of the pump flow toward rated flow (or zero).
PumpOutput pump_dynamics_step(double flow_Lpm, bool running, double dt, const ScenarioConfig& cfg);

struct TraceRow {
    double t;
    double irradiance;
    double pv_power_W;
    double soc_pct;
    bool pump1_on;
    bool pump2_on;
    double tank2_level_pct;
    double soil_moisture_pct;
    double theta_TE;
    double theta_TA;
    double alpha;
    double tank1_level_pct;
    bool battery_relay;
    bool pump1_latch;
    bool pump2_latch;
    double pump1_flow_Lpm;
    double pump2_flow_Lpm;
    double tank1_L;
    double tank2_L;
    double delivered_L;
    double v_ref;
};

struct SimSummary {
    double final_soc_pct = 0.0;
    long pump1_on_steps = 0;
    long pump2_on_steps = 0;
    int pump1_starts = 0;
    int pump2_starts = 0;
    double water_delivered_L = 0.0;
    double pv_energy_Wh = 0.0;
    double pump_energy_Wh = 0.0;
};

struct SimTrace {
    std::vector<TraceRow> rows;  // t = 0 first, then one row per step
    SimSummary summary;
};

double interpolate_irradiance(const std::vector<IrradiancePoint>& p, double t);
geometry::SunPosition interpolate_sun(const std::vector<SunPoint>& p, double t);

SimTrace run_scenario(const ScenarioConfig& cfg);

}  // namespace solarpump::sim
