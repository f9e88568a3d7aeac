#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "solarpump/cli/config.hpp"

namespace solarpump::cli {

struct OutputFile {
    std::string name;
    std::string content;
};

// Files to write under --out (the first one is the primary CSV) and a
// human-readable summary.
struct CommandResult {
    std::vector<OutputFile> files;
    std::string summary;
};

CommandResult cmd_pv_curve(const AppConfig& cfg);
CommandResult cmd_solar_angles(const AppConfig& cfg);
CommandResult cmd_track_sim(const AppConfig& cfg);
CommandResult cmd_mppt_run(const AppConfig& cfg);
CommandResult cmd_scenario_run(const AppConfig& cfg);
CommandResult cmd_validate();

enum class TfAction { analyze, step, bode, rlocus, routh, errors };
TfAction parse_tf_action(const std::string& name);

// Preset or explicit transfer function, scaled by the request gain.
lti::TransferFunction resolve_system(const AnalysisRequest& req);
CommandResult cmd_tf(TfAction action, const AnalysisRequest& req);

// With an output directory every file is written there and the summary goes
// to `out`. Without one the primary file goes to `out` and the summary to
// `err`.
void deliver(const CommandResult& res, const std::optional<std::string>& out_dir, std::ostream& out, std::ostream& err);

}  // namespace solarpump::cli
