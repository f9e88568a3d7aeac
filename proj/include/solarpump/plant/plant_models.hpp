#pragma once

#include <string>
#include <vector>

#include "solarpump/lti/transfer_function.hpp"

namespace solarpump::plant {

using lti::Polynomial;
using lti::TransferFunction;

struct MotorParams {
    double J = 0.01;            // kg m^2
    double b_friction = 1e-6;   // N m s
    double K_t = 0.0125;        // N m / A
    double K_e = 0.0125;        // V s / rad
    double R = 1.0;             // ohm
    double L = 0.5;             // H
    double K_a = 1.0;
    double K_s = 1.0;
    double K_d_discr = 1.0;
    double N_gear = 1.0;
};

// K_s K_a K_d K_t N / (LJ s^3 + (bL + RJ) s^2 + (Rb + K_t K_e) s)
TransferFunction motor_tf(const MotorParams& mp);
// The numeric open-loop motor system quoted with the tracker design.
TransferFunction motor_numeric_tf();
// Speed form of the numeric motor system (one integrator removed).
TransferFunction motor_velocity_tf();

struct PidParams {
    double K_p = 0.0;
    double K_i = 0.0;
    double K_d = 0.0;
    double N_filter = 0.0;  // 0 selects the unfiltered ideal derivative
};

// N = 0: (K_d s^2 + K_p s + K_i)/s. N > 0: K_p + K_i/s + K_d N s/(s + N).
// Factors of s shared by numerator and denominator are cancelled.
TransferFunction pid_tf(const PidParams& pp);
// gain (1 + a s)(1 + b s) / s
TransferFunction series_pid(double gain, double a, double b);

// Monic numerator of 1 + G C.
Polynomial closed_loop_char_poly(const TransferFunction& C, const TransferFunction& G);

TransferFunction pump_tf(double K, double tau);

struct TankParams {
    double area_A = 100.0;
    double outflow_R = 0.01;
    double rho = 1.0;
};
// R / (R A s + rho)
TransferFunction tank_tf(const TankParams& tp);

struct ValveParams {
    double c_v = 1.0;
    double a_v = 1.0;
    double h_0 = 1.0;
};

struct ValveLinearization {
    double D_slope;  // df/dh at h_0
    double k_v;      // 1 / D_slope
    double f_h0;     // steady outflow c_v a_v sqrt(h_0)
};

double valve_flow(const ValveParams& vp, double h);
ValveLinearization valve_linearize(const ValveParams& vp);

// k_i k_s k_v / (tau_v s + 1)
TransferFunction tank_loop_tf(double k_i, double k_s, double k_v, double tau_v);

// 5K / (s^2 + 0.02241 s + 5)
TransferFunction tank_second_order(double K);
// K wn^2 / (s^2 + 2 zeta wn s + wn^2)
TransferFunction second_order(double K, double wn, double zeta);

enum class SensorKind { gain, derivative };

struct CascadeSystem {
    TransferFunction plant;        // pump x tank
    TransferFunction controller;
    TransferFunction sensor;
    TransferFunction open_loop;    // C G H
    TransferFunction closed_loop;  // C G / (1 + C G H)
    TransferFunction sensed_closed_loop;  // C G H / (1 + C G H)
};

// Pump 5/(0.1 s + 1) into tank 0.01/(s + 1) with a sensor gain in the
// feedback path. The derivative sensor variant is K_sensor * s.
CascadeSystem cascade_system(double K_sensor, const PidParams& pid, SensorKind sensor = SensorKind::gain);
TransferFunction cascade_plant();

TransferFunction metering_pump_tf();

struct Preset {
    std::string id;
    std::string description;
    TransferFunction tf;
};

const std::vector<Preset>& presets();
const Preset& preset(const std::string& id);

// Derived quantities of a monic second-order denominator s^2 + a s + b.
struct SecondOrderShape {
    double wn;
    double zeta;
};
SecondOrderShape second_order_shape(const Polynomial& den);

}  // namespace solarpump::plant
