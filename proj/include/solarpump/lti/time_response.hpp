#pragma once

#include <vector>

#include "solarpump/lti/transfer_function.hpp"

namespace solarpump::lti {

struct TimeSeries {
    std::vector<double> t;
    std::vector<double> y;
    bool diverged = false;
};

struct StepMetrics {
    double rise_time_s = 0.0;
    double settling_time_s = 0.0;
    double overshoot_pct = 0.0;
    double peak = 0.0;
    double peak_time_s = 0.0;
    double steady_state_value = 0.0;
};

// min(1/(20*max|p|), t_end/2000) over nonzero poles
double default_step_dt(const TransferFunction& tf, double t_end);
// ten slowest-pole time constants, or 10 s when there is no decaying pole
double default_step_t_end(const TransferFunction& tf);

// Unit step through a controllable-canonical realization integrated with
// fixed-step RK4. Samples are taken at t = 0, h, 2h, ..., t_end where h is
// dt shrunk so that t_end is hit exactly.
TimeSeries step_response(const TransferFunction& tf, double t_end, double dt);
TimeSeries step_response(const TransferFunction& tf, double t_end);

// 10-90% rise, 2% settling band, final value = last sample.
StepMetrics step_metrics(const TimeSeries& trace);

}  // namespace solarpump::lti
