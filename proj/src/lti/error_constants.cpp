#include "solarpump/lti/error_constants.hpp"

#include <cmath>
#include <limits>

#include "solarpump/error.hpp"

namespace solarpump::lti {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

double inverse(double v) { return std::isinf(v) ? 0.0 : (v == 0.0 ? kInf : 1.0 / v); }
}  // namespace

ErrorConstants error_constants(const TransferFunction& G) {
    ErrorConstants ec;
    if (G.num().is_zero()) {
        ec.e_step = 1.0;
        ec.e_ramp = ec.e_parabola = kInf;
        return ec;
    }
    int nz = G.num().trailing_zeros();
    int dz = G.den().trailing_zeros();
    ec.system_type = dz - nz;
    double ratio = G.num().coeff_of_power(nz) / G.den().coeff_of_power(dz);

    // lim s^k G(s) as s -> 0
    auto limit = [&](int k) {
        int excess = k - ec.system_type;
        if (excess > 0) return 0.0;
        if (excess == 0) return ratio;
        return kInf;
    };
    ec.Kp_pos = limit(0);
    ec.Kv_vel = limit(1);
    ec.Ka_acc = limit(2);
    ec.e_step = std::isinf(ec.Kp_pos) ? 0.0 : (1.0 + ec.Kp_pos == 0.0 ? kInf : 1.0 / (1.0 + ec.Kp_pos));
    ec.e_ramp = inverse(ec.Kv_vel);
    ec.e_parabola = inverse(ec.Ka_acc);
    return ec;
}

ErrorCurve ss_error_vs_gain(const TransferFunction& G_unit, const std::vector<double>& gains,
                            const std::vector<double>& targets) {
    if (gains.empty()) throw Error(ErrorKind::invalid_input, "error curve needs at least one gain");
    for (size_t i = 0; i < gains.size(); ++i)
        if (!(gains[i] > 0.0) || (i > 0 && !(gains[i] > gains[i - 1])))
            throw Error(ErrorKind::invalid_input, "gains must be positive and ascending");

    auto err = [&](double k) { return error_constants(G_unit.scaled(k)).e_step; };
    ErrorCurve c;
    c.gains = gains;
    for (double k : gains) c.e_step.push_back(err(k));

    for (double target : targets) {
        GainTarget gt{target, std::nullopt, false};
        bool all = true;
        for (double e : c.e_step) all = all && e <= target;
        if (all) {
            gt.met_everywhere = true;
            gt.gain = gains.front();
        } else {
            for (size_t i = 1; i < gains.size(); ++i) {
                if (c.e_step[i - 1] > target && c.e_step[i] <= target) {
                    double lo = std::log(gains[i - 1]), hi = std::log(gains[i]);
                    for (int it = 0; it < 200 && hi - lo > 1e-15 * std::abs(hi); ++it) {
                        double mid = 0.5 * (lo + hi);
                        (err(std::exp(mid)) > target ? lo : hi) = mid;
                    }
                    gt.gain = std::exp(hi);
                    break;
                }
            }
        }
        c.targets.push_back(gt);
    }
    return c;
}

}  // namespace solarpump::lti
