#include "solarpump/lti/routh.hpp"

#include <algorithm>
#include <cmath>

#include "solarpump/error.hpp"

namespace solarpump::lti {

const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::stable: return "stable";
        case Verdict::unstable: return "unstable";
        case Verdict::marginal: return "marginal";
    }
    return "unknown";
}

RouthResult routh_table(const Polynomial& p) {
    if (p.is_zero()) throw Error(ErrorKind::invalid_input, "Routh table of the zero polynomial");
    if (p.degree() < 1) throw Error(ErrorKind::invalid_input, "Routh table needs degree >= 1");

    const int n = p.degree();
    const size_t width = static_cast<size_t>(n) / 2 + 1;
    const double eps = 1e-9 * p.max_abs();
    const auto& c = p.coeffs();

    RouthResult r;
    r.table.assign(static_cast<size_t>(n) + 1, std::vector<double>(width, 0.0));
    for (size_t j = 0; 2 * j < c.size(); ++j) r.table[0][j] = c[2 * j];
    for (size_t j = 0; 2 * j + 1 < c.size(); ++j) r.table[1][j] = c[2 * j + 1];

    auto all_zero = [](const std::vector<double>& row) {
        return std::all_of(row.begin(), row.end(), [](double v) { return v == 0.0; });
    };
    // row i replaced by the derivative of the auxiliary polynomial built from row i-1
    auto auxiliary = [&](size_t i) {
        int power = n - static_cast<int>(i) + 1;
        auto& prev = r.table[i - 1];
        auto& row = r.table[i];
        std::fill(row.begin(), row.end(), 0.0);
        for (size_t j = 0; j < width; ++j) {
            int pw = power - 2 * static_cast<int>(j);
            if (pw <= 0) break;
            row[j] = prev[j] * pw;
        }
        r.zero_row = true;
    };
    auto fix_leading = [&](size_t i) {
        if (all_zero(r.table[i])) auxiliary(i);
        if (r.table[i][0] == 0.0) {
            r.table[i][0] = eps;
            r.epsilon_substituted = true;
        }
    };

    fix_leading(1);
    for (size_t i = 2; i <= static_cast<size_t>(n); ++i) {
        const auto& a = r.table[i - 2];
        const auto& b = r.table[i - 1];
        for (size_t j = 0; j + 1 < width; ++j) {
            double lhs = b[0] * a[j + 1];
            double rhs = a[0] * b[j + 1];
            double diff = lhs - rhs;
            // exact cancellation up to rounding is a structural zero
            if (std::abs(diff) <= 1e-12 * (std::abs(lhs) + std::abs(rhs))) diff = 0.0;
            r.table[i][j] = diff / b[0];
        }
        fix_leading(i);
    }

    for (const auto& row : r.table) r.first_column.push_back(row[0]);
    for (size_t i = 1; i < r.first_column.size(); ++i)
        if ((r.first_column[i] > 0) != (r.first_column[i - 1] > 0)) ++r.sign_changes;

    if (r.sign_changes > 0)
        r.verdict = Verdict::unstable;
    else if (r.epsilon_substituted || r.zero_row)
        r.verdict = Verdict::marginal;
    else
        r.verdict = Verdict::stable;
    return r;
}

int right_half_plane_count(const Polynomial& p, double tol) {
    int k = 0;
    for (cplx z : poly_roots(p))
        if (z.real() >= tol) ++k;
    return k;
}

Verdict root_sign_verdict(const Polynomial& p, double tol) {
    bool marginal = false;
    for (cplx z : poly_roots(p)) {
        if (z.real() >= tol) return Verdict::unstable;
        if (std::abs(z.real()) < tol) marginal = true;
    }
    return marginal ? Verdict::marginal : Verdict::stable;
}

}  // namespace solarpump::lti
