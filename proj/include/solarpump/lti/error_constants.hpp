#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "solarpump/lti/transfer_function.hpp"

namespace solarpump::lti {

// Infinite limits are represented by +infinity.
struct ErrorConstants {
    int system_type = 0;
    double Kp_pos = 0.0;
    double Kv_vel = 0.0;
    double Ka_acc = 0.0;
    double e_step = 0.0;
    double e_ramp = 0.0;
    double e_parabola = 0.0;
};

// Unity-feedback steady-state constants of an open-loop transfer function.
ErrorConstants error_constants(const TransferFunction& G_open);

struct GainTarget {
    double target_error;
    std::optional<double> gain;  // absent when the target is not reached on the range
    bool met_everywhere = false;
};

struct ErrorCurve {
    std::vector<double> gains;
    std::vector<double> e_step;
    std::vector<GainTarget> targets;
};

// Step error of K*G_unit over the gain list; each target is located by
// bisection in log(K) between the bracketing gains.
ErrorCurve ss_error_vs_gain(const TransferFunction& G_unit, const std::vector<double>& gains,
                            const std::vector<double>& targets = {0.1, 0.01});

}  // namespace solarpump::lti
