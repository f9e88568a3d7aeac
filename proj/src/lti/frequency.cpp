#include "solarpump/lti/frequency.hpp"

#include <cmath>
#include <numbers>

#include "solarpump/error.hpp"

namespace solarpump::lti {

namespace {
constexpr double kDeg = 180.0 / std::numbers::pi;
}

std::vector<double> log_grid(double lo, double hi, int points) {
    if (!(lo > 0.0) || !(hi > lo) || points < 2) throw Error(ErrorKind::invalid_input, "bad frequency grid bounds");
    std::vector<double> g(static_cast<size_t>(points));
    double a = std::log10(lo), b = std::log10(hi);
    for (int i = 0; i < points; ++i) g[static_cast<size_t>(i)] = std::pow(10.0, a + (b - a) * i / (points - 1));
    return g;
}

std::vector<double> default_frequency_grid() { return log_grid(1e-2, 1e4, 400); }

FrequencyResponse frequency_response(const TransferFunction& tf, const std::vector<double>& omegas) {
    for (size_t i = 0; i < omegas.size(); ++i) {
        if (!(omegas[i] > 0.0) || (i > 0 && !(omegas[i] > omegas[i - 1])))
            throw Error(ErrorKind::invalid_input, "frequency grid must be positive and strictly increasing");
    }
    const auto zeros = tf.zeros();
    const auto poles = tf.poles();
    const double k = tf.num().leading();

    FrequencyResponse fr;
    fr.omegas = omegas;
    for (double w : omegas) {
        cplx s(0.0, w);
        if (std::abs(tf.den()(s)) == 0.0) s = cplx(0.0, w * (1.0 + 1e-12));
        cplx g = tf(s);
        fr.magnitude_db.push_back(20.0 * std::log10(std::abs(g)));
        double ph = k < 0.0 ? -180.0 : 0.0;
        for (cplx z : zeros) ph += std::arg(s - z) * kDeg;
        for (cplx p : poles) ph -= std::arg(s - p) * kDeg;
        fr.phase_deg.push_back(ph);
    }
    if (!fr.phase_deg.empty()) {
        double shift = 0.0;
        double first = fr.phase_deg.front();
        while (first + shift > 45.0) shift -= 360.0;
        while (first + shift <= -315.0) shift += 360.0;
        for (double& p : fr.phase_deg) p += shift;
    }
    return fr;
}

namespace {

struct Crossing {
    double omega;
    double other;
};

// all points where `level` crosses `target`, with `other` interpolated alongside
std::vector<Crossing> crossings(const std::vector<double>& w, const std::vector<double>& level,
                                const std::vector<double>& other, double target) {
    std::vector<Crossing> out;
    for (size_t i = 0; i + 1 < w.size(); ++i) {
        double a = level[i] - target, b = level[i + 1] - target;
        if (a == 0.0 && i > 0) continue;  // counted by the previous segment
        if (a * b > 0.0 || (a == 0.0 && b == 0.0)) continue;
        double f = a == b ? 0.0 : a / (a - b);
        double lw = std::log(w[i]) + f * (std::log(w[i + 1]) - std::log(w[i]));
        out.push_back({std::exp(lw), other[i] + f * (other[i + 1] - other[i])});
    }
    return out;
}

}  // namespace

Margins stability_margins(const FrequencyResponse& fr) {
    Margins m;
    const auto& w = fr.omegas;
    if (w.size() < 2) return m;

    double lo = fr.phase_deg.front(), hi = fr.phase_deg.front();
    for (double p : fr.phase_deg) {
        lo = std::min(lo, p);
        hi = std::max(hi, p);
    }
    int k_lo = static_cast<int>(std::floor((lo + 180.0) / 360.0));
    int k_hi = static_cast<int>(std::ceil((hi + 180.0) / 360.0));
    for (int k = k_lo; k <= k_hi; ++k) {
        for (const auto& c : crossings(w, fr.phase_deg, fr.magnitude_db, -180.0 + 360.0 * k)) {
            double gm = -c.other;
            if (!m.gain_margin_db || gm < *m.gain_margin_db) {
                m.gain_margin_db = gm;
                m.gm_freq_rad_s = c.omega;
            }
        }
    }
    for (const auto& c : crossings(w, fr.magnitude_db, fr.phase_deg, 0.0)) {
        double pm = std::remainder(180.0 + c.other, 360.0);
        if (pm == -180.0) pm = 180.0;
        if (!m.phase_margin_deg || pm < *m.phase_margin_deg) {
            m.phase_margin_deg = pm;
            m.pm_freq_rad_s = c.omega;
        }
    }
    return m;
}

}  // namespace solarpump::lti
