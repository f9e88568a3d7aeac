#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "solarpump/lti/transfer_function.hpp"
#include "solarpump/sim/scenario.hpp"

namespace solarpump::cli {

// Logarithmically spaced gain sweep "a:b:n".
struct GainRange {
    double lo = 1e-2;
    double hi = 1e4;
    int count = 200;
};

GainRange parse_gain_range(std::string_view text);
std::vector<double> expand(const GainRange& g);

struct AnalysisRequest {
    std::optional<std::string> preset;
    std::optional<lti::TransferFunction> tf;
    double gain = 1.0;
    bool closed_loop = false;  // analyse K G / (1 + K G) instead of K G
    std::optional<double> t_end;
    std::optional<double> dt;
    std::optional<GainRange> gains;
};

// Hour-angle sweep for the solar-angles table.
struct SolarAnglesConfig {
    double latitude_deg = 30.0;
    int day_of_year = 172;
    double st_start = -90.0;
    double st_end = 90.0;
    double st_step = 15.0;
    double target_alpha = 0.0;
    double target_beta = 0.0;
};

struct AppConfig {
    sim::ScenarioConfig scenario;
    SolarAnglesConfig solar;
    int pv_curve_points = 200;
    int mppt_steps = 200;
    std::optional<AnalysisRequest> analysis;
};

// INI text: [section] headers, "key = value" lines, '#' or ';' comments.
// Errors are config_error with "<source>:<line>[:<col>]: message".
AppConfig parse_config_text(std::string_view text, const std::string& source = "<config>");
AppConfig parse_config(const std::string& path);

}  // namespace solarpump::cli
