#include "solarpump/lti/time_response.hpp"

#include <algorithm>
#include <cmath>

#include "solarpump/error.hpp"

namespace solarpump::lti {

double default_step_dt(const TransferFunction& tf, double t_end) {
    double fastest = 0.0;
    for (cplx p : tf.poles()) fastest = std::max(fastest, std::abs(p));
    double dt = t_end / 2000.0;
    if (fastest > 0.0) dt = std::min(dt, 1.0 / fastest / 20.0);
    return dt;
}

double default_step_t_end(const TransferFunction& tf) {
    double slowest = 0.0;
    for (cplx p : tf.poles()) {
        if (p.real() >= 0.0) return 10.0;
        double rate = -p.real();
        slowest = slowest == 0.0 ? rate : std::min(slowest, rate);
    }
    return slowest > 0.0 ? 10.0 / slowest : 10.0;
}

TimeSeries step_response(const TransferFunction& tf, double t_end) {
    return step_response(tf, t_end, default_step_dt(tf, t_end));
}

TimeSeries step_response(const TransferFunction& tf, double t_end, double dt) {
    if (!tf.proper()) throw Error(ErrorKind::unsupported, "step response of an improper transfer function");
    if (!(dt > 0.0) || !(t_end >= 10.0 * dt))
        throw Error(ErrorKind::invalid_input, "step response needs dt > 0 and t_end >= 10*dt");

    const int n = tf.den().degree();
    // den is monic: s^n + a[1] s^(n-1) + ... + a[n]
    std::vector<double> a(static_cast<size_t>(n) + 1), b(static_cast<size_t>(n) + 1);
    for (int i = 0; i <= n; ++i) {
        a[static_cast<size_t>(i)] = tf.den().coeff_of_power(n - i);
        b[static_cast<size_t>(i)] = tf.num().coeff_of_power(n - i);
    }
    const double d = b[0];
    std::vector<double> c(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) c[static_cast<size_t>(i)] = b[static_cast<size_t>(i) + 1] - d * a[static_cast<size_t>(i) + 1];

    const long steps = static_cast<long>(std::ceil(t_end / dt - 1e-9));
    const double h = t_end / static_cast<double>(steps);

    TimeSeries out;
    out.t.reserve(static_cast<size_t>(steps) + 1);
    out.y.reserve(static_cast<size_t>(steps) + 1);
    for (cplx p : tf.poles())
        if (p.real() > 1e-12 * std::max(1.0, std::abs(p))) out.diverged = true;

    std::vector<double> x(static_cast<size_t>(n), 0.0), k1(x), k2(x), k3(x), k4(x), tmp(x);
    auto deriv = [&](const std::vector<double>& s, std::vector<double>& ds) {
        double top = 1.0;
        for (int i = 0; i < n; ++i) top -= a[static_cast<size_t>(i) + 1] * s[static_cast<size_t>(i)];
        ds[0] = top;
        for (int i = 1; i < n; ++i) ds[static_cast<size_t>(i)] = s[static_cast<size_t>(i) - 1];
    };
    auto output = [&](const std::vector<double>& s) {
        double y = d;
        for (int i = 0; i < n; ++i) y += c[static_cast<size_t>(i)] * s[static_cast<size_t>(i)];
        return y;
    };

    for (long k = 0; k <= steps; ++k) {
        double y = output(x);
        if (!std::isfinite(y) || std::abs(y) > 1e100) {
            out.diverged = true;
            break;
        }
        out.t.push_back(static_cast<double>(k) * h);
        out.y.push_back(y);
        if (k == steps || n == 0) continue;
        deriv(x, k1);
        for (int i = 0; i < n; ++i) tmp[static_cast<size_t>(i)] = x[static_cast<size_t>(i)] + 0.5 * h * k1[static_cast<size_t>(i)];
        deriv(tmp, k2);
        for (int i = 0; i < n; ++i) tmp[static_cast<size_t>(i)] = x[static_cast<size_t>(i)] + 0.5 * h * k2[static_cast<size_t>(i)];
        deriv(tmp, k3);
        for (int i = 0; i < n; ++i) tmp[static_cast<size_t>(i)] = x[static_cast<size_t>(i)] + h * k3[static_cast<size_t>(i)];
        deriv(tmp, k4);
        for (int i = 0; i < n; ++i) {
            auto u = static_cast<size_t>(i);
            x[u] += h / 6.0 * (k1[u] + 2.0 * k2[u] + 2.0 * k3[u] + k4[u]);
        }
    }
    return out;
}

namespace {

double crossing_time(const std::vector<double>& t, const std::vector<double>& z, double level) {
    if (z[0] >= level) return t[0];
    for (size_t i = 1; i < z.size(); ++i) {
        if (z[i] >= level) {
            double f = (level - z[i - 1]) / (z[i] - z[i - 1]);
            return t[i - 1] + f * (t[i] - t[i - 1]);
        }
    }
    throw Error(ErrorKind::not_settled, "step response never reaches the rise-time level");
}

}  // namespace

StepMetrics step_metrics(const TimeSeries& trace) {
    const auto& t = trace.t;
    const auto& y = trace.y;
    if (trace.diverged) throw Error(ErrorKind::not_settled, "trace diverges");
    if (y.size() < 2 || t.size() != y.size()) throw Error(ErrorKind::invalid_input, "trace needs at least two samples");

    const double yf = y.back();
    if (!(std::abs(yf) > 0.0)) throw Error(ErrorKind::not_settled, "final value is zero");

    size_t tail = std::max<size_t>(2, y.size() / 20);
    for (size_t i = y.size() - tail; i < y.size(); ++i)
        if (std::abs(y[i] - yf) >= 0.01 * std::abs(yf))
            throw Error(ErrorKind::not_settled, "trace has not settled over its last 5% of samples");

    std::vector<double> z(y.size());
    for (size_t i = 0; i < y.size(); ++i) z[i] = y[i] / yf;

    StepMetrics m;
    m.steady_state_value = yf;
    m.rise_time_s = crossing_time(t, z, 0.9) - crossing_time(t, z, 0.1);

    size_t last_out = z.size();
    for (size_t i = z.size(); i-- > 0;) {
        if (std::abs(z[i] - 1.0) > 0.02) {
            last_out = i;
            break;
        }
    }
    if (last_out == z.size()) {
        m.settling_time_s = 0.0;
    } else {
        double edge = z[last_out] > 1.0 ? 1.02 : 0.98;
        double f = (edge - z[last_out]) / (z[last_out + 1] - z[last_out]);
        m.settling_time_s = t[last_out] + f * (t[last_out + 1] - t[last_out]) - t[0];
    }

    auto peak_it = std::max_element(z.begin(), z.end());
    size_t ip = static_cast<size_t>(peak_it - z.begin());
    m.peak = y[ip];
    m.peak_time_s = t[ip] - t[0];
    m.overshoot_pct = std::max(0.0, (*peak_it - 1.0) * 100.0);
    return m;
}

}  // namespace solarpump::lti
