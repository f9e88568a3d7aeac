#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "solarpump/pv/pv_model.hpp"

namespace solarpump::mppt {

enum class Action { hold, increase, decrease };

struct MpptState {
    double V_prev = 0.0;
    double I_prev = 0.0;
    double P_prev = 0.0;
    double V_ref = 0.0;
    double dV_step = 0.5;
    int iteration = 0;
    Action last_action = Action::hold;
    bool conductance_undefined = false;
};

MpptState initial_state(double V_start, double dV_step = 0.5);

struct ConverterSetting {
    double duty_D = 0.0;
};

double boost_ratio(const ConverterSetting& cs);
// D = 1 - V_battery / V_ref, clamped to [0, 0.95]
ConverterSetting duty_for_reference(double V_battery, double V_ref);

enum class PoVariant {
    prose,    // climb toward higher power
    printed,  // branch directions as tabulated in the source algorithm
};

MpptState po_step(const MpptState& st, double V_now, double I_now, PoVariant variant = PoVariant::prose);
MpptState ic_step(const MpptState& st, double V_now, double I_now);

enum class Algorithm { po, po_printed, ic };
Algorithm parse_algorithm(const std::string& name);
const char* to_string(Algorithm a);

struct TrajectoryPoint {
    int iter;
    double v_ref;
    double current;
    double power;
};

struct MpptRun {
    std::vector<TrajectoryPoint> points;
    MpptState final_state;
    std::optional<std::string> error;  // set when a measurement failed
};

// Current drawn from the source when it is held at a given voltage.
using CurrentSource = std::function<double(double)>;

// Each iteration measures I at the present V_ref and applies the update law.
MpptRun mppt_run(const CurrentSource& source, Algorithm algo, const MpptState& st0, int steps);
MpptRun mppt_run(const pv::PvArrayParams& ap, Algorithm algo, const MpptState& st0, int steps);

}  // namespace solarpump::mppt
