#include "solarpump/plant/plant_models.hpp"

#include <algorithm>
#include <cmath>

#include "solarpump/error.hpp"

namespace solarpump::plant {

TransferFunction motor_tf(const MotorParams& mp) {
    double gain = mp.K_s * mp.K_a * mp.K_d_discr * mp.K_t * mp.N_gear;
    Polynomial den{mp.L * mp.J, mp.b_friction * mp.L + mp.R * mp.J, mp.R * mp.b_friction + mp.K_t * mp.K_e, 0.0};
    return {Polynomial{gain}, den};
}

TransferFunction motor_numeric_tf() { return {Polynomial{0.0001563}, Polynomial{1.2e-8, 7.51e-6, 0.0001625, 0.0}}; }

TransferFunction motor_velocity_tf() { return {Polynomial{0.0001563}, Polynomial{1.2e-8, 7.51e-6, 0.0001625}}; }

namespace {

TransferFunction cancel_origin(const Polynomial& num, const Polynomial& den) {
    if (num.is_zero()) return {Polynomial{0.0}, Polynomial{1.0}};
    int k = std::min(num.trailing_zeros(), den.trailing_zeros());
    return {num.shifted_down(k), den.shifted_down(k)};
}

}  // namespace

TransferFunction pid_tf(const PidParams& pp) {
    if (pp.N_filter < 0.0) throw Error(ErrorKind::invalid_input, "derivative filter coefficient must be >= 0");
    if (pp.N_filter == 0.0) return cancel_origin(Polynomial{pp.K_d, pp.K_p, pp.K_i}, Polynomial{1.0, 0.0});
    const double N = pp.N_filter;
    Polynomial num{pp.K_p + pp.K_d * N, pp.K_p * N + pp.K_i, pp.K_i * N};
    return cancel_origin(num, Polynomial{1.0, N, 0.0});
}

TransferFunction series_pid(double gain, double a, double b) {
    Polynomial num = Polynomial{a, 1.0} * Polynomial{b, 1.0};
    return {num.scaled(gain), Polynomial{1.0, 0.0}};
}

Polynomial closed_loop_char_poly(const TransferFunction& C, const TransferFunction& G) {
    Polynomial p = G.den() * C.den() + G.num() * C.num();
    if (p.is_zero()) throw Error(ErrorKind::degenerate_system, "1 + GC cancels to zero");
    return p.monic();
}

TransferFunction pump_tf(double K, double tau) {
    if (!(tau > 0.0)) throw Error(ErrorKind::invalid_input, "pump time constant must be > 0");
    return {Polynomial{K}, Polynomial{tau, 1.0}};
}

TransferFunction tank_tf(const TankParams& tp) {
    if (!(tp.area_A > 0.0 && tp.outflow_R > 0.0 && tp.rho > 0.0))
        throw Error(ErrorKind::invalid_input, "tank parameters must be > 0");
    return {Polynomial{tp.outflow_R}, Polynomial{tp.outflow_R * tp.area_A, tp.rho}};
}

double valve_flow(const ValveParams& vp, double h) { return vp.c_v * vp.a_v * std::sqrt(h); }

ValveLinearization valve_linearize(const ValveParams& vp) {
    if (!(vp.h_0 > 0.0))
        throw Error(ErrorKind::singular_linearization, "valve flow is not differentiable at zero head");
    if (!(vp.c_v > 0.0 && vp.a_v > 0.0)) throw Error(ErrorKind::invalid_input, "valve coefficients must be > 0");
    double D = vp.c_v * vp.a_v / (2.0 * std::sqrt(vp.h_0));
    return {D, 1.0 / D, valve_flow(vp, vp.h_0)};
}

TransferFunction tank_loop_tf(double k_i, double k_s, double k_v, double tau_v) {
    if (!(tau_v > 0.0)) throw Error(ErrorKind::invalid_input, "valve time constant must be > 0");
    return {Polynomial{k_i * k_s * k_v}, Polynomial{tau_v, 1.0}};
}

TransferFunction tank_second_order(double K) { return {Polynomial{5.0 * K}, Polynomial{1.0, 0.02241, 5.0}}; }

TransferFunction second_order(double K, double wn, double zeta) {
    return {Polynomial{K * wn * wn}, Polynomial{1.0, 2.0 * zeta * wn, wn * wn}};
}

TransferFunction cascade_plant() { return pump_tf(5.0, 0.1) * tank_tf({100.0, 0.01, 1.0}); }

CascadeSystem cascade_system(double K_sensor, const PidParams& pid, SensorKind sensor) {
    CascadeSystem cs;
    cs.plant = cascade_plant();
    cs.controller = pid_tf(pid);
    cs.sensor = sensor == SensorKind::gain ? TransferFunction::gain(K_sensor)
                                           : TransferFunction{Polynomial{K_sensor, 0.0}, Polynomial{1.0}};
    TransferFunction forward = cs.controller * cs.plant;
    cs.open_loop = forward * cs.sensor;
    cs.closed_loop = lti::tf_feedback(forward, cs.sensor);
    cs.sensed_closed_loop = lti::tf_unity_feedback(cs.open_loop);
    return cs;
}

TransferFunction metering_pump_tf() { return {Polynomial{1.869}, Polynomial{1.0, 12.32, 0.4582}}; }

const std::vector<Preset>& presets() {
    static const std::vector<Preset> all = [] {
        std::vector<Preset> v;
        v.push_back({"motor_numeric", "numeric tracker motor, open loop", motor_numeric_tf()});
        v.push_back({"motor_symbolic", "tracker motor from the listed physical constants", motor_tf(MotorParams{})});
        v.push_back({"motor_velocity", "numeric tracker motor, speed output", motor_velocity_tf()});
        v.push_back({"pump_storage", "pump 5/(475 s + 1)", pump_tf(5.0, 475.0)});
        v.push_back({"pump_loop", "pump 5/(0.1 s + 1)", pump_tf(5.0, 0.1)});
        v.push_back({"tank_001", "tank 0.01/(s + 1)", tank_tf({100.0, 0.01, 1.0})});
        v.push_back({"tank_2nd_order", "tank level 5/(s^2 + 0.02241 s + 5)", tank_second_order(1.0)});
        v.push_back({"cascade", "pump x tank plant 0.05/(0.1 s^2 + 1.1 s + 1)", cascade_plant()});
        v.push_back({"metering_pump", "metering pump 1.869/(s^2 + 12.32 s + 0.4582)", metering_pump_tf()});
        return v;
    }();
    return all;
}

const Preset& preset(const std::string& id) {
    for (const auto& p : presets())
        if (p.id == id) return p;
    throw Error(ErrorKind::invalid_input, "unknown preset '" + id + "'");
}

SecondOrderShape second_order_shape(const Polynomial& den) {
    if (den.degree() != 2) throw Error(ErrorKind::invalid_input, "second-order shape needs a quadratic");
    Polynomial m = den.monic();
    double wn = std::sqrt(m.coeff_of_power(0));
    return {wn, m.coeff_of_power(1) / (2.0 * wn)};
}

}  // namespace solarpump::plant
