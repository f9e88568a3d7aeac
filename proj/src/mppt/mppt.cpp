#include "solarpump/mppt/mppt.hpp"

#include <algorithm>
#include <cmath>

#include "solarpump/error.hpp"

namespace solarpump::mppt {

MpptState initial_state(double V_start, double dV_step) {
    if (!(dV_step > 0.0)) throw Error(ErrorKind::invalid_input, "perturbation step must be > 0");
    MpptState st;
    st.V_ref = V_start;
    st.dV_step = dV_step;
    return st;
}

double boost_ratio(const ConverterSetting& cs) {
    if (!(cs.duty_D < 1.0)) throw Error(ErrorKind::invalid_duty, "duty cycle must be < 1");
    if (cs.duty_D < 0.0) throw Error(ErrorKind::invalid_duty, "duty cycle must be >= 0");
    return 1.0 / (1.0 - cs.duty_D);
}

ConverterSetting duty_for_reference(double V_battery, double V_ref) {
    if (!(V_ref > 0.0)) return {0.0};
    return {std::clamp(1.0 - V_battery / V_ref, 0.0, 0.95)};
}

namespace {

int sign(double v) { return (v > 0.0) - (v < 0.0); }

MpptState advance(const MpptState& st, double V, double I, Action act) {
    MpptState next = st;
    if (act == Action::increase) next.V_ref += st.dV_step;
    if (act == Action::decrease) next.V_ref -= st.dV_step;
    next.last_action = act;
    next.V_prev = V;
    next.I_prev = I;
    next.P_prev = V * I;
    next.iteration = st.iteration + 1;
    return next;
}

}  // namespace

MpptState po_step(const MpptState& st, double V, double I, PoVariant variant) {
    double dP = V * I - st.P_prev;
    double dV = V - st.V_prev;
    Action act;
    if (dP == 0.0)
        act = Action::hold;
    else if (sign(dP) == sign(dV))
        act = Action::increase;
    else
        act = Action::decrease;
    if (variant == PoVariant::printed && act != Action::hold)
        act = act == Action::increase ? Action::decrease : Action::increase;
    MpptState next = advance(st, V, I, act);
    next.conductance_undefined = false;
    return next;
}

MpptState ic_step(const MpptState& st, double V, double I) {
    double dV = V - st.V_prev;
    double dI = I - st.I_prev;
    Action act = Action::hold;
    bool undefined = false;
    if (dV == 0.0) {
        if (dI > 0.0) act = Action::increase;
        if (dI < 0.0) act = Action::decrease;
    } else if (V == 0.0) {
        undefined = true;
    } else {
        double inc = dI / dV;
        double neg = -I / V;
        if (std::abs(inc - neg) <= 1e-6 * std::max(std::abs(inc), std::abs(neg)))
            act = Action::hold;
        else
            act = inc > neg ? Action::increase : Action::decrease;
    }
    MpptState next = advance(st, V, I, act);
    next.conductance_undefined = undefined;
    return next;
}

Algorithm parse_algorithm(const std::string& name) {
    if (name == "po") return Algorithm::po;
    if (name == "po_printed") return Algorithm::po_printed;
    if (name == "ic") return Algorithm::ic;
    throw Error(ErrorKind::invalid_input, "unknown MPPT algorithm '" + name + "' (expected po, po_printed or ic)");
}

const char* to_string(Algorithm a) {
    switch (a) {
        case Algorithm::po: return "po";
        case Algorithm::po_printed: return "po_printed";
        case Algorithm::ic: return "ic";
    }
    return "unknown";
}

MpptRun mppt_run(const CurrentSource& source, Algorithm algo, const MpptState& st0, int steps) {
    if (steps < 1) throw Error(ErrorKind::invalid_input, "MPPT run needs at least one step");
    MpptRun run;
    MpptState st = st0;
    for (int k = 0; k < steps; ++k) {
        double V = st.V_ref;
        double I = 0.0;
        try {
            I = source(V);
        } catch (const Error& e) {
            run.error = e.what();
            break;
        }
        run.points.push_back({k, V, I, V * I});
        switch (algo) {
            case Algorithm::po: st = po_step(st, V, I); break;
            case Algorithm::po_printed: st = po_step(st, V, I, PoVariant::printed); break;
            case Algorithm::ic: st = ic_step(st, V, I); break;
        }
    }
    run.final_state = st;
    return run;
}

MpptRun mppt_run(const pv::PvArrayParams& ap, Algorithm algo, const MpptState& st0, int steps) {
    return mppt_run([&ap](double v) { return pv::array_current(ap, v); }, algo, st0, steps);
}

}  // namespace solarpump::mppt
