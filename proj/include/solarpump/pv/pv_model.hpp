#pragma once

#include <string>
#include <vector>

namespace solarpump::pv {

inline constexpr double k_boltzmann = 1.381e-23;  // J/K
inline constexpr double q_electron = 1.602e-19;   // C
inline constexpr double silicon_band_gap_eV = 1.12;

struct PvCellParams {
    double I_ph = 8.0;      // A, at 1000 W/m^2
    double I_o1 = 1e-10;    // A
    double I_o2 = 1e-6;     // A
    double R_s = 0.01;      // ohm
    double R_p = 100.0;     // ohm
    double a1 = 1.0;
    double a2 = 2.0;
    double T_c = 298.15;    // K

    void validate() const;
};

struct PvArrayParams {
    PvCellParams cell;
    int N_s = 36;
    int N_p = 1;
    double area_A = 0.6;             // m^2
    double irradiance_G_T = 1000.0;  // W/m^2
    // Saturation currents follow T^3 exp(-Eg/(a k T)) relative to T_ref.
    // With this off, temperature only enters through the thermal voltages.
    bool io_temperature_scaling = true;
    double T_ref = 298.15;

    void validate() const;
};

double thermal_voltage(double a, double T_c);

// Implicit double-diode cell equation at terminal voltage V_c.
double cell_current(const PvCellParams& p, double V_c);

// Cell parameters at the array's irradiance and temperature.
PvCellParams effective_cell(const PvArrayParams& ap);

// Implicit array equation at terminal voltage V_a.
double array_current(const PvArrayParams& ap, double V_a);

// I - RHS(I) of the array equation; zero at the solution.
double array_residual(const PvArrayParams& ap, double V_a, double I_a);
double cell_residual(const PvCellParams& p, double V_c, double I_c);

double open_circuit_voltage(const PvArrayParams& ap);

struct SkippedPoint {
    double voltage;
    std::string reason;
};

struct IvCurve {
    std::vector<double> voltages;
    std::vector<double> currents;
    std::vector<double> powers;
    std::vector<SkippedPoint> skipped;
};

IvCurve iv_curve(const PvArrayParams& ap, const std::vector<double>& v_grid);
std::vector<double> voltage_grid(double v_max, int points);

struct MppResult {
    double V_mpp = 0.0;
    double I_mpp = 0.0;
    double P_mpp = 0.0;
    bool multimodal = false;
};

// Coarse scan over [0, V_oc] followed by golden-section refinement.
MppResult find_mpp(const PvArrayParams& ap);

double pv_efficiency(double V_a, double I_a, double area_A, double G_T);

}  // namespace solarpump::pv
