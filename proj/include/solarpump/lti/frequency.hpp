#pragma once

#include <optional>
#include <vector>

#include "solarpump/lti/transfer_function.hpp"

namespace solarpump::lti {

struct FrequencyResponse {
    std::vector<double> omegas;
    std::vector<double> magnitude_db;
    std::vector<double> phase_deg;
};

struct Margins {
    std::optional<double> gain_margin_db;
    std::optional<double> gm_freq_rad_s;
    std::optional<double> phase_margin_deg;
    std::optional<double> pm_freq_rad_s;
};

std::vector<double> log_grid(double lo, double hi, int points);
// 400 points over [1e-2, 1e4] rad/s
std::vector<double> default_frequency_grid();

// Phase is the sum of per-root arguments, so it is continuous in omega
// except where a root sits on the imaginary axis.
FrequencyResponse frequency_response(const TransferFunction& tf, const std::vector<double>& omegas);

// Crossings are located by interpolation linear in log(omega). When
// several crossings exist the smallest margin is reported.
Margins stability_margins(const FrequencyResponse& fr);

}  // namespace solarpump::lti
