#include "solarpump/cli/validation.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <map>

#include "solarpump/error.hpp"
#include "solarpump/lti/error_constants.hpp"
#include "solarpump/lti/frequency.hpp"
#include "solarpump/lti/routh.hpp"
#include "solarpump/lti/time_response.hpp"
#include "solarpump/mppt/mppt.hpp"
#include "solarpump/plant/plant_models.hpp"
#include "solarpump/pv/pv_model.hpp"
#include "solarpump/sim/scenario.hpp"

namespace solarpump::cli {

using lti::Polynomial;
using lti::TransferFunction;

const char* to_string(ClaimStatus s) {
    switch (s) {
        case ClaimStatus::match: return "MATCH";
        case ClaimStatus::deviates: return "DEVIATES";
        case ClaimStatus::qualitative: return "QUALITATIVE";
    }
    return "?";
}

const char* to_string(ToleranceKind k) {
    switch (k) {
        case ToleranceKind::absolute: return "absolute";
        case ToleranceKind::relative: return "relative";
        case ToleranceKind::none: return "none";
    }
    return "?";
}

ReferenceClaim numeric_claim(std::string id, std::string description, double claimed, std::string unit, double computed,
                             double tolerance, ToleranceKind kind, std::string derivation) {
    ReferenceClaim c;
    c.id = std::move(id);
    c.description = std::move(description);
    c.claimed = claimed;
    c.unit = std::move(unit);
    c.computed = computed;
    c.tolerance = tolerance;
    c.tolerance_kind = kind;
    c.derivation = std::move(derivation);
    double a = std::abs(computed - claimed);
    c.abs_dev = a;
    c.rel_dev = claimed != 0.0 ? a / std::abs(claimed) : (a == 0.0 ? 0.0 : HUGE_VAL);
    double dev = kind == ToleranceKind::absolute ? a : *c.rel_dev;
    c.status = std::isfinite(computed) && dev <= tolerance ? ClaimStatus::match : ClaimStatus::deviates;
    return c;
}

namespace {

std::string num(double v) { return fmt::format("{:.6g}", v); }

std::string poly_text(const Polynomial& p) {
    std::string out;
    for (double c : p.coeffs()) out += (out.empty() ? "" : " ") + num(c);
    return out;
}

std::string roots_text(const std::vector<lti::cplx>& rs) {
    std::string out;
    for (auto r : rs) {
        if (!out.empty()) out += "; ";
        out += r.imag() == 0.0 ? num(r.real()) : fmt::format("{}{:+.6g}i", num(r.real()), r.imag());
    }
    return out;
}

ReferenceClaim readout(double claimed, const char* unit, double computed, std::string derivation) {
    return numeric_claim("", "", claimed, unit, computed, tol_readout_rel, ToleranceKind::relative, std::move(derivation));
}

ReferenceClaim analytic(double claimed, const char* unit, double computed, std::string derivation) {
    return numeric_claim("", "", claimed, unit, computed, tol_analytic_rel, ToleranceKind::relative, std::move(derivation));
}

ReferenceClaim pole(double claimed, double computed, std::string derivation) {
    return numeric_claim("", "", claimed, "", computed, tol_pole_abs, ToleranceKind::absolute, std::move(derivation));
}

ReferenceClaim statement(std::string claimed, std::string computed, bool agrees, std::string derivation) {
    ReferenceClaim c;
    c.claimed_text = std::move(claimed);
    c.computed_text = std::move(computed);
    c.status = agrees ? ClaimStatus::match : ClaimStatus::deviates;
    c.derivation = std::move(derivation);
    return c;
}

// A numeric claim for which no comparable number exists.
ReferenceClaim unmatched(double claimed, const char* unit, std::string computed, std::string derivation) {
    ReferenceClaim c;
    c.claimed = claimed;
    c.unit = unit;
    c.computed_text = std::move(computed);
    c.status = ClaimStatus::deviates;
    c.derivation = std::move(derivation);
    return c;
}

ReferenceClaim observed(std::optional<double> value, const char* unit, std::string text, std::string derivation) {
    ReferenceClaim c;
    c.computed = value;
    c.unit = unit;
    c.computed_text = std::move(text);
    c.claimed_text = "no numeric value given";
    c.status = ClaimStatus::qualitative;
    c.derivation = std::move(derivation);
    return c;
}

// Shared, lazily computed analyses.
class Context {
public:
    const lti::StepMetrics& metrics(const std::string& key, const TransferFunction& closed) {
        auto it = step_.find(key);
        if (it != step_.end()) return it->second;
        auto trace = lti::step_response(closed, lti::default_step_t_end(closed));
        return step_.emplace(key, lti::step_metrics(trace)).first->second;
    }

    const lti::Margins& margins(const std::string& key, const TransferFunction& open) {
        auto it = margins_.find(key);
        if (it != margins_.end()) return it->second;
        auto fr = lti::frequency_response(open, lti::log_grid(1e-3, 1e5, 20000));
        return margins_.emplace(key, lti::stability_margins(fr)).first->second;
    }

    const sim::SimTrace& scenario() {
        if (!trace_) trace_ = sim::run_scenario(sim::ScenarioConfig{});
        return *trace_;
    }

private:
    std::map<std::string, lti::StepMetrics> step_;
    std::map<std::string, lti::Margins> margins_;
    std::optional<sim::SimTrace> trace_;
};

// ---- systems under test ----

TransferFunction motor_open(double K) { return plant::motor_numeric_tf().scaled(K); }
TransferFunction motor_closed(double K) { return lti::tf_unity_feedback(motor_open(K)); }

plant::PidParams tuned1() { return {0.653, 1.085, 0.03, 19.23}; }
plant::PidParams tuned2() { return {4.67, 3.91, -0.0047, 1002.69}; }
constexpr double kCascadeSensor = 50.0;

TransferFunction pid2_open() { return plant::series_pid(747.5, 0.12, 0.12) * plant::tank_second_order(1.0); }

// The tabulated motor PID gains are all negative, so the loop only closes
// stably with the sign inverted: L = -C G.
TransferFunction table1_controller() { return plant::pid_tf({-69.94, -729.46, -1.651, 4558.36}); }
TransferFunction table1_open() { return (table1_controller() * plant::motor_numeric_tf()).scaled(-1.0); }

plant::PidParams quartic_pid() { return {9.51202, 5.6443, 0.00022, 0.0}; }
constexpr double kQuarticLoopGain = 100.0;
Polynomial quartic_poly() {
    return plant::closed_loop_char_poly(plant::pid_tf(quartic_pid()), plant::motor_numeric_tf().scaled(kQuarticLoopGain));
}

double critical_motor_gain() {
    const auto g = plant::motor_numeric_tf();  // monic s^3 + a2 s^2 + a1 s
    const auto& d = g.den();
    const double b0 = g.num().coeff_of_power(0);
    return d.coeff_of_power(2) * d.coeff_of_power(1) / b0;
}

lti::cplx upper_pole(const TransferFunction& tf) {
    auto ps = tf.poles();
    return *std::max_element(ps.begin(), ps.end(), [](auto a, auto b) { return a.imag() < b.imag(); });
}

std::vector<double> gain_sweep() {
    std::vector<double> g;
    for (int i = 0; i <= 160; ++i) g.push_back(std::pow(10.0, -2.0 + 0.05 * i));
    return g;
}

double margin_value(const std::optional<double>& v) { return v ? *v : std::nan(""); }

const char* kMotor10 = "unity loop 10 G_motor; step by RK4 on the controllable realization, 10-90% rise, 2% band";
const char* kMotor100 = "unity loop 100 G_motor; step by RK4 on the controllable realization, 10-90% rise, 2% band";

using Compute = ReferenceClaim (*)(Context&);

struct Entry {
    const char* id;
    const char* description;
    Compute compute;
};

std::string literal_motor_verdict(double K) {
    auto r = lti::routh_table(motor_closed(K).den());
    return fmt::format("{} ({} sign changes; closed loop is stable only for K < {:.1f})", lti::to_string(r.verdict),
                       r.sign_changes, critical_motor_gain());
}

// Step metrics of the tuned cascade measured at the sensor output.
TransferFunction cascade_sensed(const plant::PidParams& p) { return plant::cascade_system(kCascadeSensor, p).sensed_closed_loop; }

const std::vector<Entry>& entries() {
    static const std::vector<Entry> all = {
        // ---- pole locations and model identities ----
        {"tank2_pole_real", "tank level loop 5/(s^2+0.02241s+5), real part of the complex pole pair",
         [](Context&) { return pole(-0.0112, upper_pole(plant::tank_second_order(1.0)).real(), "companion-matrix roots of s^2+0.02241s+5"); }},
        {"tank2_pole_imag", "tank level loop, imaginary part of the complex pole pair",
         [](Context&) { return pole(2.236, upper_pole(plant::tank_second_order(1.0)).imag(), "companion-matrix roots of s^2+0.02241s+5"); }},
        {"tank2_natural_frequency", "tank level loop natural frequency",
         [](Context&) {
             return pole(2.23, plant::second_order_shape(plant::tank_second_order(1.0).den()).wn,
                         "wn = sqrt(5) = 2.23607; the quoted value is truncated rather than rounded");
         }},
        {"tank2_damping", "tank level loop damping ratio",
         [](Context&) {
             return pole(0.005, plant::second_order_shape(plant::tank_second_order(1.0).den()).zeta, "zeta = 0.02241/(2 sqrt(5))");
         }},
        {"cascade_plant_identity", "pump 5/(0.1s+1) times tank 0.01/(s+1)",
         [](Context&) {
             TransferFunction expect{Polynomial{0.05}, Polynomial{0.1, 1.1, 1.0}};
             auto got = plant::cascade_plant();
             bool same = got.num() == expect.num() && got.den() == expect.den();
             return statement("0.05/(0.1s^2+1.1s+1)", "num " + poly_text(got.num()) + " / den " + poly_text(got.den()) + " (monic)",
                              same, "polynomial product, both sides normalized to a monic denominator");
         }},
        {"cascade_plant_pole_slow", "cascade plant slow pole",
         [](Context&) { return pole(-1.0, plant::cascade_plant().poles().back().real(), "roots of 0.1s^2+1.1s+1"); }},
        {"cascade_plant_pole_fast", "cascade plant fast pole",
         [](Context&) { return pole(-10.0, plant::cascade_plant().poles().front().real(), "roots of 0.1s^2+1.1s+1"); }},
        {"cascade_plant_damping", "cascade plant damping ratio",
         [](Context&) {
             return analytic(1.0, "", plant::second_order_shape(plant::cascade_plant().den()).zeta,
                             "s^2+11s+10: zeta = 11/(2 sqrt(10)); two distinct real poles mean zeta > 1");
         }},
        {"tank_first_order_identity", "tank R/(RAs+rho) with A=100, R=0.01, rho=1",
         [](Context&) {
             auto t = plant::tank_tf({100.0, 0.01, 1.0});
             bool same = t.num() == Polynomial{0.01} && t.den() == Polynomial{1.0, 1.0};
             return statement("0.01/(s+1)", "num " + poly_text(t.num()) + " / den " + poly_text(t.den()), same, "direct substitution");
         }},
        {"metering_pump_dc_gain", "metering pump 1.869/(s^2+12.32s+0.4582) DC gain",
         [](Context&) {
             double g = plant::metering_pump_tf().dc_gain();
             return observed(g, "", num(g), "evaluation at s = 0");
         }},
        {"metering_pump_poles", "metering pump poles",
         [](Context&) {
             return observed(std::nullopt, "", roots_text(plant::metering_pump_tf().poles()), "roots of s^2+12.32s+0.4582");
         }},
        {"motor_symbolic_consistency", "motor model from the listed constants vs the numeric motor model",
         [](Context&) {
             auto sym = plant::motor_tf(plant::MotorParams{});
             auto numeric = plant::motor_numeric_tf();
             return statement("numeric model " + poly_text(numeric.den()) + " (monic)", "listed constants give " + poly_text(sym.den()),
                              sym.den() == numeric.den(),
                              "LJ s^3 + (bL+RJ) s^2 + (Rb+KtKe) s with the listed J, b, Kt, Ke, R, L; both denominators monic");
         }},

        // ---- motor position loop ----
        {"motor_k1e5_stability", "motor loop at K = 1e5, stability of the quoted step response",
         [](Context&) {
             return statement("stable, settles to 1", literal_motor_verdict(1e5), false,
                              "Routh table of den(G) + 1e5 num(G); the quoted metrics are reproduced at K = 10 (rows below)");
         }},
        {"motor_k1e6_stability", "motor loop at K = 1e6, stability of the quoted step response",
         [](Context&) {
             return statement("stable, settles to 1", literal_motor_verdict(1e6), false,
                              "Routh table of den(G) + 1e6 num(G); the quoted metrics are reproduced at K = 100 (rows below)");
         }},
        {"motor_k1e5_rise_time", "motor loop quoted as K = 1e5, rise time (evaluated at K = 10)",
         [](Context& c) { return readout(0.156, "s", c.metrics("m10", motor_closed(10)).rise_time_s, kMotor10); }},
        {"motor_k1e5_overshoot", "motor loop quoted as K = 1e5, overshoot (evaluated at K = 10)",
         [](Context& c) { return readout(2.79, "%", c.metrics("m10", motor_closed(10)).overshoot_pct, kMotor10); }},
        {"motor_k1e5_peak_time", "motor loop quoted as K = 1e5, time of peak (evaluated at K = 10)",
         [](Context& c) { return readout(0.325, "s", c.metrics("m10", motor_closed(10)).peak_time_s, kMotor10); }},
        {"motor_k1e5_bode_point", "motor loop quoted as K = 1e5, open-loop magnitude at 116 rad/s (evaluated at K = 10)",
         [](Context&) {
             double mag = lti::frequency_response(motor_open(10), {116.0}).magnitude_db.front();
             double literal = lti::frequency_response(motor_open(1e5), {116.0}).magnitude_db.front();
             return readout(-36.3, "dB", mag,
                            fmt::format("20 log10 |10 G(j116)|; at the literal K = 1e5 the magnitude is {:.4g} dB", literal));
         }},
        {"motor_k1e5_phase_margin", "motor loop quoted as K = 1e5, phase margin (evaluated at K = 10)",
         [](Context& c) {
             return readout(67.4, "deg", margin_value(c.margins("m10", motor_open(10)).phase_margin_deg),
                            "0 dB crossing of 10 G(jw) on a 20000-point log grid");
         }},
        {"motor_k1e5_pm_frequency", "motor loop quoted as K = 1e5, gain crossover frequency (evaluated at K = 10)",
         [](Context& c) {
             return readout(8.93, "rad/s", margin_value(c.margins("m10", motor_open(10)).pm_freq_rad_s),
                            "0 dB crossing of 10 G(jw) on a 20000-point log grid");
         }},
        {"motor_k1e6_rise_time", "motor loop quoted as K = 1e6, rise time (evaluated at K = 100)",
         [](Context& c) { return readout(0.0264, "s", c.metrics("m100", motor_closed(100)).rise_time_s, kMotor100); }},
        {"motor_k1e6_overshoot", "motor loop quoted as K = 1e6, overshoot (evaluated at K = 100)",
         [](Context& c) { return readout(51.7, "%", c.metrics("m100", motor_closed(100)).overshoot_pct, kMotor100); }},
        {"motor_k1e6_peak", "motor loop quoted as K = 1e6, peak value (evaluated at K = 100)",
         [](Context& c) { return readout(1.52, "", c.metrics("m100", motor_closed(100)).peak, kMotor100); }},
        {"motor_k1e6_peak_time", "motor loop quoted as K = 1e6, time of peak (evaluated at K = 100)",
         [](Context& c) { return readout(0.0687, "s", c.metrics("m100", motor_closed(100)).peak_time_s, kMotor100); }},
        {"motor_k1e6_settling_time", "motor loop quoted as K = 1e6, 2% settling time (evaluated at K = 100)",
         [](Context& c) { return readout(0.419, "s", c.metrics("m100", motor_closed(100)).settling_time_s, kMotor100); }},
        {"motor_k1e6_gain_margin", "motor loop quoted as K = 1e6, gain margin (evaluated at K = 100)",
         [](Context& c) {
             return readout(16.3, "dB", margin_value(c.margins("m100", motor_open(100)).gain_margin_db),
                            "-180 deg crossing of 100 G(jw) on a 20000-point log grid");
         }},
        {"motor_k1e6_gm_frequency", "motor loop quoted as K = 1e6, phase crossover frequency (evaluated at K = 100)",
         [](Context& c) {
             return readout(116.0, "rad/s", margin_value(c.margins("m100", motor_open(100)).gm_freq_rad_s),
                            "-180 deg crossing of 100 G(jw) on a 20000-point log grid");
         }},
        {"motor_k1e6_phase_margin", "motor loop quoted as K = 1e6, phase margin (evaluated at K = 100)",
         [](Context& c) {
             return readout(23.0, "deg", margin_value(c.margins("m100", motor_open(100)).phase_margin_deg),
                            "0 dB crossing of 100 G(jw) on a 20000-point log grid");
         }},
        {"motor_k1e6_pm_frequency", "motor loop quoted as K = 1e6, gain crossover frequency (evaluated at K = 100)",
         [](Context& c) {
             return readout(43.8, "rad/s", margin_value(c.margins("m100", motor_open(100)).pm_freq_rad_s),
                            "0 dB crossing of 100 G(jw) on a 20000-point log grid");
         }},
        {"motor_open_loop_dc_gain", "motor speed model DC gain",
         [](Context&) {
             return analytic(0.962, "", plant::motor_velocity_tf().dc_gain(),
                             "0.0001563/0.0001625 from the speed form; the position form has a pole at s = 0");
         }},
        {"motor_closed_loop_dc_gain", "motor unity-feedback loop DC gain",
         [](Context&) {
             return analytic(0.000156, "", motor_closed(1.0).dc_gain(),
                             "G/(1+G) at s = 0 with an integrating G is exactly 1; the quoted value equals the bare numerator constant");
         }},
        {"motor_gain_for_error_0.1", "gain for 10% step error on the motor speed model",
         [](Context&) {
             auto c = lti::ss_error_vs_gain(plant::motor_velocity_tf(), gain_sweep(), {0.1});
             return analytic(9.36, "", c.targets[0].gain.value_or(std::nan("")), "1/(1 + 0.962 K) = 0.1, bisection in log K");
         }},
        {"motor_gain_for_error_0.01", "gain for 1% step error on the motor speed model",
         [](Context&) {
             auto c = lti::ss_error_vs_gain(plant::motor_velocity_tf(), gain_sweep(), {0.01});
             return analytic(102.9, "", c.targets[0].gain.value_or(std::nan("")), "1/(1 + 0.962 K) = 0.01, bisection in log K");
         }},
        {"motor_loop_gain_for_error_0.1", "gain for 10% step error on the motor position loop",
         [](Context&) {
             auto c = lti::ss_error_vs_gain(plant::motor_numeric_tf(), gain_sweep(), {0.1});
             return unmatched(57582.0, "", c.targets[0].met_everywhere ? "met for every K > 0 (type-1 loop, zero step error)" : "not met",
                              "system type from the origin poles of G; the quoted figure equals (1/e - 1)/0.0001563");
         }},
        {"motor_loop_gain_for_error_0.01", "gain for 1% step error on the motor position loop",
         [](Context&) {
             auto c = lti::ss_error_vs_gain(plant::motor_numeric_tf(), gain_sweep(), {0.01});
             return unmatched(633400.0, "", c.targets[0].met_everywhere ? "met for every K > 0 (type-1 loop, zero step error)" : "not met",
                              "system type from the origin poles of G; the quoted figure equals (1/e - 1)/0.0001563");
         }},

        // ---- tuned motor PID ----
        {"motor_pid_rise_time", "tuned motor PID, rise time",
         [](Context& c) { return readout(0.0303, "s", c.metrics("t1", lti::tf_unity_feedback(table1_open())).rise_time_s, "unity loop -C G (the tabulated gains are negative)"); }},
        {"motor_pid_settling_time", "tuned motor PID, 2% settling time",
         [](Context& c) { return readout(0.179, "s", c.metrics("t1", lti::tf_unity_feedback(table1_open())).settling_time_s, "unity loop -C G"); }},
        {"motor_pid_overshoot", "tuned motor PID, overshoot",
         [](Context& c) { return readout(23.2, "%", c.metrics("t1", lti::tf_unity_feedback(table1_open())).overshoot_pct, "unity loop -C G"); }},
        {"motor_pid_peak", "tuned motor PID, peak value",
         [](Context& c) { return readout(1.23, "", c.metrics("t1", lti::tf_unity_feedback(table1_open())).peak, "unity loop -C G"); }},
        {"motor_pid_gain_margin", "tuned motor PID, gain margin",
         [](Context& c) { return readout(42.8, "dB", margin_value(c.margins("t1", table1_open()).gain_margin_db), "-C G on a 20000-point log grid"); }},
        {"motor_pid_gm_frequency", "tuned motor PID, phase crossover frequency",
         [](Context& c) { return readout(1630.0, "rad/s", margin_value(c.margins("t1", table1_open()).gm_freq_rad_s), "-C G on a 20000-point log grid"); }},
        {"motor_pid_phase_margin", "tuned motor PID, phase margin",
         [](Context& c) { return readout(60.0, "deg", margin_value(c.margins("t1", table1_open()).phase_margin_deg), "-C G on a 20000-point log grid"); }},
        {"motor_pid_pm_frequency", "tuned motor PID, gain crossover frequency",
         [](Context& c) { return readout(39.9, "rad/s", margin_value(c.margins("t1", table1_open()).pm_freq_rad_s), "-C G on a 20000-point log grid"); }},
        {"motor_pid_literal_sign", "tuned motor PID closed with the gains as printed",
         [](Context&) {
             auto L = table1_controller() * plant::motor_numeric_tf();
             auto r = lti::routh_table(lti::tf_unity_feedback(L).den());
             return statement("stable", fmt::format("{} ({} sign changes)", lti::to_string(r.verdict), r.sign_changes),
                              r.verdict == lti::Verdict::stable, "Routh table of 1 + C G with negative Kp, Ki, Kd");
         }},
        {"motor_pid_locus_pole", "tuned motor PID root locus, real open-loop pole",
         [](Context&) {
             double best = 0.0;
             for (auto p : table1_open().poles())
                 if (p.imag() == 0.0 && std::abs(p.real() + 650.0) < std::abs(best + 650.0)) best = p.real();
             return pole(-650.0, best, "open-loop poles of -C G: " + roots_text(table1_open().poles()) + "; nearest to -650 reported");
         }},

        // ---- fourth-order characteristic polynomial ----
        {"quartic_coeff_s3", "motor PID characteristic polynomial, s^3 coefficient",
         [](Context&) { return analytic(625.8, "", quartic_poly().coeff_of_power(3), "monic den(G)den(C) + num(G)num(C) at loop gain 100"); }},
        {"quartic_coeff_s2", "motor PID characteristic polynomial, s^2 coefficient",
         [](Context&) { return analytic(1.382e4, "", quartic_poly().coeff_of_power(2), "monic den(G)den(C) + num(G)num(C) at loop gain 100"); }},
        {"quartic_coeff_s1", "motor PID characteristic polynomial, s^1 coefficient",
         [](Context&) { return analytic(1.239e7, "", quartic_poly().coeff_of_power(1), "monic den(G)den(C) + num(G)num(C) at loop gain 100"); }},
        {"quartic_coeff_s0", "motor PID characteristic polynomial, s^0 coefficient",
         [](Context&) { return analytic(7.349e6, "", quartic_poly().coeff_of_power(0), "monic den(G)den(C) + num(G)num(C) at loop gain 100"); }},
        {"quartic_stability", "motor PID characteristic polynomial, stability verdict",
         [](Context&) {
             auto p = quartic_poly();
             auto r = lti::routh_table(p);
             bool oracle = lti::root_sign_verdict(p) == r.verdict;
             return statement("stable",
                              fmt::format("{} ({} sign changes; roots {}; root-sign check {})", lti::to_string(r.verdict), r.sign_changes,
                                          roots_text(lti::poly_roots(p)), oracle ? "agrees" : "disagrees"),
                              r.verdict == lti::Verdict::stable, "Routh table, cross-checked by the real parts of the roots");
         }},
        {"quartic_routh_first_column", "motor PID Routh table, first column",
         [](Context&) {
             auto r = lti::routh_table(quartic_poly());
             std::string col;
             for (double v : r.first_column) col += (col.empty() ? "" : " ") + num(v);
             return statement("tabulated entries equal the raw coefficients", col, false,
                              "Routh recursion; a stable verdict needs every entry positive");
         }},
        {"quartic_symbolic_route", "s^3 coefficient when the motor model is built from the listed constants",
         [](Context&) {
             auto p = plant::closed_loop_char_poly(plant::pid_tf(quartic_pid()), plant::motor_tf(plant::MotorParams{}).scaled(kQuarticLoopGain));
             return analytic(625.8, "", p.coeff_of_power(3), "(bL+RJ)/(LJ) with the listed motor constants");
         }},

        // ---- cascade tank loop ----
        {"cascade_routh_k0.1", "cascade unity loop at K = 0.1, Routh verdict",
         [](Context&) {
             auto d = lti::tf_unity_feedback(plant::cascade_plant().scaled(0.1)).den();
             auto v = lti::routh_table(d).verdict;
             return statement("stable", lti::to_string(v), v == lti::Verdict::stable, "Routh on 0.1s^2 + 1.1s + (1 + K/20)");
         }},
        {"cascade_routh_k1", "cascade unity loop at K = 1, Routh verdict",
         [](Context&) {
             auto v = lti::routh_table(lti::tf_unity_feedback(plant::cascade_plant()).den()).verdict;
             return statement("stable", lti::to_string(v), v == lti::Verdict::stable, "Routh on 0.1s^2 + 1.1s + (1 + K/20)");
         }},
        {"cascade_routh_k10", "cascade unity loop at K = 10, Routh verdict",
         [](Context&) {
             auto v = lti::routh_table(lti::tf_unity_feedback(plant::cascade_plant().scaled(10)).den()).verdict;
             return statement("stable", lti::to_string(v), v == lti::Verdict::stable, "Routh on 0.1s^2 + 1.1s + (1 + K/20)");
         }},
        {"cascade_routh_k100", "cascade unity loop at K = 100, Routh verdict",
         [](Context&) {
             auto v = lti::routh_table(lti::tf_unity_feedback(plant::cascade_plant().scaled(100)).den()).verdict;
             return statement("stable", lti::to_string(v), v == lti::Verdict::stable, "Routh on 0.1s^2 + 1.1s + (1 + K/20)");
         }},
        {"cascade_routh_k1000", "cascade unity loop at K = 1000, Routh verdict",
         [](Context&) {
             auto v = lti::routh_table(lti::tf_unity_feedback(plant::cascade_plant().scaled(1000)).den()).verdict;
             return statement("stable", lti::to_string(v), v == lti::Verdict::stable, "Routh on 0.1s^2 + 1.1s + (1 + K/20)");
         }},
        {"cascade_routh_k1e6", "cascade unity loop at K = 1e6, Routh verdict",
         [](Context&) {
             auto v = lti::routh_table(lti::tf_unity_feedback(plant::cascade_plant().scaled(1e6)).den()).verdict;
             return statement("stable", lti::to_string(v), v == lti::Verdict::stable, "Routh on 0.1s^2 + 1.1s + (1 + K/20)");
         }},
        {"cascade_gain_for_error_0.1", "cascade gain for 10% step error",
         [](Context&) {
             auto c = lti::ss_error_vs_gain(plant::cascade_plant(), gain_sweep(), {0.1});
             return analytic(180.0, "", c.targets[0].gain.value_or(std::nan("")), "1/(1 + 0.05 K) = 0.1, bisection in log K");
         }},
        {"cascade_gain_for_error_0.01", "cascade gain for 1% step error",
         [](Context&) {
             auto c = lti::ss_error_vs_gain(plant::cascade_plant(), gain_sweep(), {0.01});
             return analytic(1980.0, "", c.targets[0].gain.value_or(std::nan("")), "1/(1 + 0.05 K) = 0.01, bisection in log K");
         }},
        {"cascade_step_error_k1", "cascade steady-state step error at K = 1",
         [](Context&) {
             return analytic(0.048, "", lti::error_constants(plant::cascade_plant()).e_step,
                             "1/(1 + Kp) with Kp = 0.05; the quoted value is 0.05/1.05");
         }},
        {"cascade_tuned1_rise_time", "cascade with first PID tuning, rise time",
         [](Context& c) { return readout(0.812, "s", c.metrics("c1", cascade_sensed(tuned1())).rise_time_s, "sensed output C G H/(1 + C G H), H = 50"); }},
        {"cascade_tuned1_settling_time", "cascade with first PID tuning, 2% settling time",
         [](Context& c) { return readout(3.04, "s", c.metrics("c1", cascade_sensed(tuned1())).settling_time_s, "sensed output C G H/(1 + C G H), H = 50"); }},
        {"cascade_tuned1_overshoot", "cascade with first PID tuning, overshoot",
         [](Context& c) { return readout(7.47, "%", c.metrics("c1", cascade_sensed(tuned1())).overshoot_pct, "sensed output C G H/(1 + C G H), H = 50"); }},
        {"cascade_tuned1_peak", "cascade with first PID tuning, peak value",
         [](Context& c) { return readout(1.07, "", c.metrics("c1", cascade_sensed(tuned1())).peak, "sensed output C G H/(1 + C G H), H = 50"); }},
        {"cascade_tuned2_rise_time", "cascade with final PID tuning, rise time",
         [](Context& c) { return readout(0.146, "s", c.metrics("c2", cascade_sensed(tuned2())).rise_time_s, "sensed output C G H/(1 + C G H), H = 50"); }},
        {"cascade_tuned2_settling_time", "cascade with final PID tuning, 2% settling time",
         [](Context& c) { return readout(0.796, "s", c.metrics("c2", cascade_sensed(tuned2())).settling_time_s, "sensed output C G H/(1 + C G H), H = 50"); }},
        {"cascade_tuned2_overshoot", "cascade with final PID tuning, overshoot",
         [](Context& c) { return readout(18.1, "%", c.metrics("c2", cascade_sensed(tuned2())).overshoot_pct, "sensed output C G H/(1 + C G H), H = 50"); }},
        {"cascade_tuned2_peak", "cascade with final PID tuning, peak value",
         [](Context& c) { return readout(1.18, "", c.metrics("c2", cascade_sensed(tuned2())).peak, "sensed output C G H/(1 + C G H), H = 50"); }},
        {"cascade_tuned2_gain_margin", "cascade with final PID tuning, gain margin",
         [](Context& c) {
             return readout(38.9, "dB", margin_value(c.margins("c2", plant::cascade_system(kCascadeSensor, tuned2()).open_loop).gain_margin_db),
                            "C G H on a 20000-point log grid");
         }},
        {"cascade_tuned2_gm_frequency", "cascade with final PID tuning, phase crossover frequency",
         [](Context& c) {
             return readout(101.0, "rad/s", margin_value(c.margins("c2", plant::cascade_system(kCascadeSensor, tuned2()).open_loop).gm_freq_rad_s),
                            "C G H on a 20000-point log grid");
         }},
        {"cascade_tuned2_phase_margin", "cascade with final PID tuning, phase margin",
         [](Context& c) {
             return readout(49.3, "deg", margin_value(c.margins("c2", plant::cascade_system(kCascadeSensor, tuned2()).open_loop).phase_margin_deg),
                            "C G H on a 20000-point log grid");
         }},
        {"cascade_tuned2_pm_frequency", "cascade with final PID tuning, gain crossover frequency",
         [](Context& c) {
             return readout(8.77, "rad/s", margin_value(c.margins("c2", plant::cascade_system(kCascadeSensor, tuned2()).open_loop).pm_freq_rad_s),
                            "C G H on a 20000-point log grid");
         }},

        // ---- series PID on the second-order tank ----
        {"pid2_rise_time", "series PID 747.5(1+0.12s)^2/s on the tank loop, rise time",
         [](Context& c) { return readout(0.0204, "s", c.metrics("p2", lti::tf_unity_feedback(pid2_open())).rise_time_s, "unity loop C G, RK4 step"); }},
        {"pid2_overshoot", "series PID on the tank loop, overshoot",
         [](Context& c) { return readout(14.4, "%", c.metrics("p2", lti::tf_unity_feedback(pid2_open())).overshoot_pct, "unity loop C G, RK4 step"); }},
        {"pid2_peak", "series PID on the tank loop, peak value",
         [](Context& c) { return readout(1.14, "", c.metrics("p2", lti::tf_unity_feedback(pid2_open())).peak, "unity loop C G, RK4 step"); }},
        {"pid2_settling_time", "series PID on the tank loop, 2% settling time",
         [](Context& c) { return readout(0.165, "s", c.metrics("p2", lti::tf_unity_feedback(pid2_open())).settling_time_s, "unity loop C G, RK4 step"); }},
        {"pid2_peak_time", "series PID on the tank loop, time of peak",
         [](Context& c) { return readout(0.059, "s", c.metrics("p2", lti::tf_unity_feedback(pid2_open())).peak_time_s, "unity loop C G, RK4 step"); }},
        {"pid2_zero", "series PID double zero",
         [](Context&) { return pole(-8.24, pid2_open().zeros().front().real(), "roots of (1 + 0.12 s)^2, i.e. -1/0.12"); }},
        {"pid2_integrator", "series PID integrator pole",
         [](Context&) { return pole(0.0, plant::series_pid(747.5, 0.12, 0.12).poles().front().real(), "denominator s"); }},

        // ---- storage pump ----
        {"pump_time_constant", "storage pump 5/(475s+1), time constant",
         [](Context&) {
             auto tf = plant::pump_tf(5.0, 475.0);
             return analytic(112.0, "s", -1.0 / tf.poles().front().real(), "-1/pole");
         }},
        {"pump_rise_time", "storage pump, 10-90% rise time",
         [](Context& c) {
             return readout(174.0, "s", c.metrics("pump", plant::pump_tf(5.0, 475.0)).rise_time_s,
                            fmt::format("RK4 step of 5/(475s+1); closed form 475 ln 9 = {:.5g}", 475.0 * std::log(9.0)));
         }},
        {"pump_settling_time", "storage pump, 2% settling time",
         [](Context& c) {
             return readout(310.0, "s", c.metrics("pump", plant::pump_tf(5.0, 475.0)).settling_time_s,
                            fmt::format("RK4 step of 5/(475s+1); closed form 475 ln 50 = {:.5g}", 475.0 * std::log(50.0)));
         }},
        {"pump_position_constant", "storage pump, position error constant",
         [](Context&) { return analytic(5.0, "", lti::error_constants(plant::pump_tf(5.0, 475.0)).Kp_pos, "G(0)"); }},
        {"pump_velocity_constant", "storage pump, velocity error constant",
         [](Context&) { return analytic(0.0, "", lti::error_constants(plant::pump_tf(5.0, 475.0)).Kv_vel, "lim s G(s), type 0"); }},
        {"pump_acceleration_constant", "storage pump, acceleration error constant",
         [](Context&) { return analytic(0.0, "", lti::error_constants(plant::pump_tf(5.0, 475.0)).Ka_acc, "lim s^2 G(s), type 0"); }},
        {"pump_step_error", "storage pump, steady-state step error",
         [](Context&) {
             return analytic(0.833, "", lti::error_constants(plant::pump_tf(5.0, 475.0)).e_step, "1/(1 + Kp); the quoted value is 5/6");
         }},
        {"pump_time_constant_from_volume", "storage pump time constant from tank volume over flow",
         [](Context&) {
             sim::ScenarioConfig sc;
             return analytic(475.0, "s", sc.tank1_volume_L / sc.pump_flow_Lpm * 60.0, "39.5 L / 5 L/min in seconds");
         }},
        {"pump_locus_zero", "storage pump root locus, finite zero",
         [](Context&) {
             auto z = plant::pump_tf(5.0, 475.0).zeros();
             return unmatched(0.6925, "", z.empty() ? "no finite zeros" : roots_text(z), "numerator of 5/(475s+1) is constant");
         }},

        // ---- observed behaviour with no numeric reference ----
        {"pv_temperature_effect", "array power at high voltage, 25 C vs 45 C",
         [](Context&) {
             pv::PvArrayParams cool, warm;
             warm.cell.T_c = 318.15;
             double pc = 35.0 * pv::array_current(cool, 35.0), pw = 35.0 * pv::array_current(warm, 35.0);
             // 35 V is past open circuit for 36 cells; 0.9 V_oc is still on the producing side
             double vh = 0.9 * pv::open_circuit_voltage(cool);
             double qc = vh * pv::array_current(cool, vh), qw = vh * pv::array_current(warm, vh);
             return observed(qw - qc, "W",
                             fmt::format("P(35 V) {:.5g} W at 25 C, {:.5g} W at 45 C; P({:.3g} V) {:.5g} W vs {:.5g} W", pc, pw,
                                         vh, qc, qw),
                             "double-diode array, saturation currents scaled with temperature");
         }},
        {"pv_irradiance_effect", "array MPP at 400, 700 and 1000 W/m^2",
         [](Context&) {
             std::string s;
             double last = 0.0;
             bool rising = true;
             for (double g : {400.0, 700.0, 1000.0}) {
                 pv::PvArrayParams ap;
                 ap.irradiance_G_T = g;
                 double p = pv::find_mpp(ap).P_mpp;
                 rising = rising && p > last;
                 last = p;
                 s += fmt::format("{}{:.5g} W", s.empty() ? "" : ", ", p);
             }
             return observed(std::nullopt, "", s + (rising ? " (increasing)" : " (not increasing)"), "scan plus golden-section search");
         }},
        {"pv_efficiency_stc", "array efficiency at the MPP, 1000 W/m^2",
         [](Context&) {
             pv::PvArrayParams ap;
             auto m = pv::find_mpp(ap);
             double eta = 100.0 * pv::pv_efficiency(m.V_mpp, m.I_mpp, ap.area_A, ap.irradiance_G_T);
             return observed(eta, "%", fmt::format("{:.4g}% with A = {} m^2", eta, ap.area_A), "P_mpp/(A G)");
         }},
        {"mppt_printed_branches", "hill climbing with the branch directions as tabulated",
         [](Context&) {
             pv::PvArrayParams ap;
             double pm = pv::find_mpp(ap).P_mpp;
             auto run = mppt::mppt_run(ap, mppt::Algorithm::po_printed, mppt::initial_state(15.0, 0.5), 200);
             auto prose = mppt::mppt_run(ap, mppt::Algorithm::po, mppt::initial_state(15.0, 0.5), 200);
             return observed(std::nullopt, "",
                             fmt::format("final power {:.4g} W as tabulated vs {:.4g} W climbing uphill (MPP {:.4g} W)",
                                         run.points.back().power, prose.points.back().power, pm),
                             "200 iterations from 15 V, 0.5 V steps");
         }},
        {"scenario_soc_shape", "battery state of charge over the two-hour scenario",
         [](Context& c) {
             const auto& rows = c.scenario().rows;
             std::string events;
             for (size_t i = 1; i < rows.size(); ++i) {
                 if (rows[i].pump1_on && !rows[i - 1].pump1_on) events += fmt::format("pump1 on at {:.1f} s; ", rows[i].t);
                 if (rows[i].pump2_on && !rows[i - 1].pump2_on) events += fmt::format("pump2 on at {:.1f} s; ", rows[i].t);
             }
             return observed(rows.back().soc_pct, "%",
                             events + fmt::format("SOC {:.4g}% -> {:.4g}%", rows.front().soc_pct, rows.back().soc_pct),
                             "default scenario, dt = 0.1 s");
         }},
    };
    return all;
}

}  // namespace

const std::vector<RegistryEntry>& validation_registry() {
    static const std::vector<RegistryEntry> ids = [] {
        std::vector<RegistryEntry> v;
        for (const auto& e : entries()) v.push_back({e.id, e.description});
        return v;
    }();
    return ids;
}

std::vector<ReferenceClaim> run_validation_report() {
    Context ctx;
    std::vector<ReferenceClaim> out;
    for (const auto& e : entries()) {
        ReferenceClaim c;
        try {
            c = e.compute(ctx);
        } catch (const Error& err) {
            c = ReferenceClaim{};
            c.status = ClaimStatus::deviates;
            c.computed_text = std::string("analysis failed: ") + to_string(err.kind()) + ": " + err.what();
        }
        c.id = e.id;
        c.description = e.description;
        if (c.claimed && c.claimed_text.empty()) c.claimed_text = num(*c.claimed);
        if (c.computed && c.computed_text.empty()) c.computed_text = num(*c.computed);
        out.push_back(std::move(c));
    }
    return out;
}

CsvTable validation_table(const std::vector<ReferenceClaim>& rows) {
    CsvTable t({"id", "description", "claimed", "unit", "computed", "computed_detail", "abs_dev", "rel_dev", "tolerance", "tolerance_kind",
                "status", "derivation"});
    auto opt = [](const std::optional<double>& v) -> CsvCell {
        if (v && std::isfinite(*v)) return *v;
        if (v) return format_real(*v);
        return std::string();
    };
    for (const auto& r : rows) {
        t.add_row({r.id, r.description, r.claimed ? opt(r.claimed) : CsvCell{r.claimed_text}, r.unit,
                   r.computed && std::isfinite(*r.computed) ? opt(r.computed) : CsvCell{r.computed_text}, r.computed_text, opt(r.abs_dev),
                   opt(r.rel_dev), opt(r.tolerance), std::string(to_string(r.tolerance_kind)), std::string(to_string(r.status)),
                   r.derivation});
    }
    return t;
}

std::string validation_text(const std::vector<ReferenceClaim>& rows) {
    std::string out;
    int counts[3] = {0, 0, 0};
    for (const auto& r : rows) {
        ++counts[static_cast<int>(r.status)];
        out += fmt::format("{:<12} {:<34} claimed {:<14} computed {}\n", to_string(r.status), r.id, r.claimed_text,
                           r.computed_text);
    }
    out += fmt::format("{} rows: {} MATCH, {} DEVIATES, {} QUALITATIVE\n", rows.size(), counts[0], counts[1], counts[2]);
    return out;
}

}  // namespace solarpump::cli
