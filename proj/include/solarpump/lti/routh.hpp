#pragma once

#include <vector>

#include "solarpump/lti/polynomial.hpp"

namespace solarpump::lti {

enum class Verdict { stable, unstable, marginal };
const char* to_string(Verdict v);

struct RouthResult {
    std::vector<std::vector<double>> table;  // one row per power, s^n first
    std::vector<double> first_column;
    int sign_changes = 0;
    Verdict verdict = Verdict::stable;
    bool epsilon_substituted = false;
    bool zero_row = false;
};

RouthResult routh_table(const Polynomial& p);

// Independent route: sign of the real parts of the computed roots.
// Roots with |Re| < tol count as marginal.
Verdict root_sign_verdict(const Polynomial& p, double tol = 1e-7);
int right_half_plane_count(const Polynomial& p, double tol = 1e-7);

}  // namespace solarpump::lti
