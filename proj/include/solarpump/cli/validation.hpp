#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "solarpump/cli/csv.hpp"

namespace solarpump::cli {

enum class ClaimStatus { match, deviates, qualitative };
enum class ToleranceKind { absolute, relative, none };

const char* to_string(ClaimStatus s);
const char* to_string(ToleranceKind k);

// Figure readouts get a loose relative band, pole locations an absolute
// one, closed-form identities a tight relative one.
inline constexpr double tol_pole_abs = 1e-3;
inline constexpr double tol_readout_rel = 0.15;
inline constexpr double tol_analytic_rel = 1e-3;

// One published number (or statement) next to its recomputed value.
struct ReferenceClaim {
    std::string id;
    std::string description;
    std::optional<double> claimed;
    std::string claimed_text;
    std::string unit;
    std::optional<double> computed;
    std::string computed_text;
    std::optional<double> abs_dev;
    std::optional<double> rel_dev;
    std::optional<double> tolerance;
    ToleranceKind tolerance_kind = ToleranceKind::none;
    ClaimStatus status = ClaimStatus::qualitative;
    std::string derivation;
};

// Numeric comparison; status is MATCH exactly when the deviation of the
// registered kind is within tolerance.
ReferenceClaim numeric_claim(std::string id, std::string description, double claimed, std::string unit, double computed,
                             double tolerance, ToleranceKind kind, std::string derivation);

struct RegistryEntry {
    std::string id;
    std::string description;
};

// Registry ids in report order.
const std::vector<RegistryEntry>& validation_registry();

std::vector<ReferenceClaim> run_validation_report();

CsvTable validation_table(const std::vector<ReferenceClaim>& rows);
std::string validation_text(const std::vector<ReferenceClaim>& rows);

}  // namespace solarpump::cli
