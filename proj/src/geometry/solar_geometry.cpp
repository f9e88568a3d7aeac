#include "solarpump/geometry/solar_geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "solarpump/error.hpp"

namespace solarpump::geometry {

namespace {

constexpr double kPi = std::numbers::pi;
double rad(double deg) { return deg * kPi / 180.0; }
double deg(double r) { return r * 180.0 / kPi; }

double wrap180(double a) {
    double w = std::remainder(a, 360.0);
    return w == -180.0 ? 180.0 : w;
}

double clamped_acos_deg(double x) {
    if (std::abs(x) > 1.0 + 1e-12) throw Error(ErrorKind::invalid_input, "acos argument outside [-1, 1]");
    return deg(std::acos(std::clamp(x, -1.0, 1.0)));
}

}  // namespace

double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

Vec3 cross(const Vec3& a, const Vec3& b) {
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }

double TrackerOrientation::theta_tilt() const { return std::abs(90.0 - theta_TE); }

double declination(int n) {
    if (n < 1 || n > 366) throw Error(ErrorKind::invalid_input, "day of year must be in [1, 366]");
    return -23.45 * std::cos(rad(360.0 / 365.0 * (n + 10)));
}

ZenithElevation zenith_and_elevation(double L_st, double delta, double ST) {
    double x = std::sin(rad(L_st)) * std::sin(rad(delta)) + std::cos(rad(L_st)) * std::cos(rad(delta)) * std::cos(rad(ST));
    double z = clamped_acos_deg(x);
    return {z, 90.0 - z};
}

Vec3 sun_vector(const SunPosition& sp) {
    double se = rad(sp.theta_SE), sa = rad(sp.theta_SA);
    return {std::sin(sa) * std::cos(se), std::cos(sa) * std::cos(se), std::sin(se)};
}

// The face normal is the bearing-TA, elevation-TE direction; x is the
// horizontal axis to its right and z completes the frame upward.
TrackerBasis tracker_basis(const TrackerOrientation& to) {
    double te = rad(to.theta_TE), ta = rad(to.theta_TA);
    TrackerBasis b;
    b.x = {std::cos(ta), -std::sin(ta), 0.0};
    b.y = {std::sin(ta) * std::cos(te), std::cos(ta) * std::cos(te), std::sin(te)};
    b.z = {-std::sin(te) * std::sin(ta), -std::sin(te) * std::cos(ta), std::cos(te)};
    return b;
}

double angle_of_incidence(const SunPosition& sp, const TrackerOrientation& to) {
    double se = rad(sp.theta_SE), te = rad(to.theta_TE);
    double x = std::sin(se) * std::sin(te) + std::cos(se) * std::cos(te) * std::cos(rad(sp.theta_SA - to.theta_TA));
    return clamped_acos_deg(x);
}

double sun_dot_x(const SunPosition& sp, const TrackerOrientation& to) {
    double se = rad(sp.theta_SE), sa = rad(sp.theta_SA), ta = rad(to.theta_TA);
    return std::cos(se) * std::cos(ta) * std::sin(sa) - std::cos(se) * std::cos(sa) * std::sin(ta);
}

double sun_dot_z(const SunPosition& sp, const TrackerOrientation& to) {
    double se = rad(sp.theta_SE), te = rad(to.theta_TE);
    return std::cos(te) * std::sin(se) - std::sin(te) * std::cos(se) * std::cos(rad(sp.theta_SA - to.theta_TA));
}

double incidence_direction(const SunPosition& sp, const TrackerOrientation& to) {
    double sx = sun_dot_x(sp, to), sz = sun_dot_z(sp, to);
    if (std::abs(sx) < 1e-12 && std::abs(sz) < 1e-12)
        throw Error(ErrorKind::undefined_direction, "sun lies along the face normal; incidence direction undefined");
    double b = deg(std::atan2(sx, sz));
    return b == -180.0 ? 180.0 : b;
}

QuarticCoeffs quartic_coeffs(double theta_SE, double alpha, double beta) {
    QuarticCoeffs q;
    q.C = std::cos(rad(theta_SE));
    q.N = std::sin(rad(theta_SE));
    q.D = std::tan(rad(beta));
    q.A = std::cos(rad(alpha));
    double A2 = q.A * q.A, D2 = q.D * q.D, N2 = q.N * q.N;
    q.a = (D2 * A2 + 1.0) * (D2 * A2 + 1.0);
    q.b = -2.0 * (D2 + 1.0) * (A2 * A2 * D2 - A2 * D2 * N2 - 2.0 * A2 * N2 + A2 + N2);
    q.c = (D2 + 1.0) * (D2 + 1.0) * (A2 - N2) * (A2 - N2);
    return q;
}

std::vector<double> quartic_even_roots(const QuarticCoeffs& qc) {
    const double a = qc.a, b = qc.b, c = qc.c;
    std::vector<double> us;
    if (a == 0.0) {
        if (b != 0.0) us.push_back(-c / b);
    } else {
        double disc = b * b - 4.0 * a * c;
        // a double root in u rounds to a slightly negative discriminant
        if (disc < 0.0 && disc > -1e-12 * b * b) disc = 0.0;
        if (disc >= 0.0) {
            double sq = std::sqrt(disc);
            // cancellation-free pair
            double qv = -0.5 * (b + (b >= 0.0 ? sq : -sq));
            if (qv != 0.0) {
                us.push_back(qv / a);
                us.push_back(c / qv);
            } else {
                us.push_back(0.0);
            }
        }
    }
    std::vector<double> ws;
    const double scale = std::abs(a) + std::abs(b) + std::abs(c);
    for (double u : us) {
        if (u < -1e-12) continue;
        u = std::max(u, 0.0);
        double w = std::sqrt(u);
        for (double cand : {-w, w}) {
            double w2 = cand * cand;
            if (std::abs(a * w2 * w2 + b * w2 + c) < 1e-8 * scale) ws.push_back(cand);
        }
    }
    std::sort(ws.begin(), ws.end());
    ws.erase(std::unique(ws.begin(), ws.end(), [](double x, double y) { return std::abs(x - y) <= 1e-12; }), ws.end());
    return ws;
}

double orientation_error(double alpha_target, double beta_target, double alpha, double beta) {
    double e = std::abs(alpha - alpha_target);
    if (alpha_target < 1e-9) return e;
    if (!std::isfinite(beta)) return std::numeric_limits<double>::infinity();
    return std::max(e, std::abs(wrap180(beta - beta_target)));
}

namespace {

OrientationSolution evaluate(const SunPosition& sp, TrackerOrientation to, double at, double bt) {
    OrientationSolution s;
    s.orientation = to;
    s.achieved_alpha = angle_of_incidence(sp, to);
    try {
        s.achieved_beta = incidence_direction(sp, to);
    } catch (const Error&) {
        s.achieved_beta = std::numeric_limits<double>::quiet_NaN();
    }
    s.error_deg = orientation_error(at, bt, s.achieved_alpha, s.achieved_beta);
    return s;
}

}  // namespace

OrientationSolution grid_orientation(const SunPosition& sp, double at, double bt, double step) {
    const int n_te = static_cast<int>(std::lround(270.0 / step)) + 1;
    const int n_ta = static_cast<int>(std::lround(360.0 / step));
    std::vector<double> ste(static_cast<size_t>(n_te)), cte(static_cast<size_t>(n_te));
    std::vector<double> sd(static_cast<size_t>(n_ta)), cd(static_cast<size_t>(n_ta));
    for (int i = 0; i < n_te; ++i) {
        double te = rad(-90.0 + i * step);
        ste[static_cast<size_t>(i)] = std::sin(te);
        cte[static_cast<size_t>(i)] = std::cos(te);
    }
    for (int j = 0; j < n_ta; ++j) {
        double d = rad(sp.theta_SA - j * step);
        sd[static_cast<size_t>(j)] = std::sin(d);
        cd[static_cast<size_t>(j)] = std::cos(d);
    }
    const double sse = std::sin(rad(sp.theta_SE)), cse = std::cos(rad(sp.theta_SE));
    const bool use_beta = at >= 1e-9;

    double best = std::numeric_limits<double>::infinity();
    int bi = 0, bj = 0;
    // alpha band that can still beat the incumbent
    double lo = -1.0, hi = 1.0;
    for (int i = 0; i < n_te; ++i) {
        for (int j = 0; j < n_ta; ++j) {
            double cosa = sse * ste[static_cast<size_t>(i)] + cse * cte[static_cast<size_t>(i)] * cd[static_cast<size_t>(j)];
            if (cosa < lo || cosa > hi) continue;
            double a = deg(std::acos(std::clamp(cosa, -1.0, 1.0)));
            double e = std::abs(a - at);
            if (use_beta) {
                double sx = cse * sd[static_cast<size_t>(j)];
                double sz = cte[static_cast<size_t>(i)] * sse - ste[static_cast<size_t>(i)] * cse * cd[static_cast<size_t>(j)];
                if (std::abs(sx) < 1e-12 && std::abs(sz) < 1e-12) continue;
                e = std::max(e, std::abs(wrap180(deg(std::atan2(sx, sz)) - bt)));
            }
            if (e < best) {
                best = e;
                bi = i;
                bj = j;
                lo = std::cos(rad(std::min(180.0, at + best)));
                hi = std::cos(rad(std::max(0.0, at - best)));
            }
        }
    }
    return evaluate(sp, {-90.0 + bi * step, bj * step}, at, bt);
}

OrientationSolution optimal_orientation(const SunPosition& sp, double alpha_target, double beta_target) {
    if (!(alpha_target >= 0.0 && alpha_target < 90.0) || !std::isfinite(beta_target))
        throw Error(ErrorKind::invalid_input, "target alpha must lie in [0, 90) and beta must be finite");

    // zero incidence fixes only the face normal; point it straight at the sun
    if (alpha_target == 0.0) return evaluate(sp, {sp.theta_SE, sp.theta_SA}, alpha_target, beta_target);

    OrientationSolution best;
    best.error_deg = std::numeric_limits<double>::infinity();
    bool singular = std::abs(std::cos(rad(beta_target))) < 1e-9;
    if (!singular) {
        QuarticCoeffs q = quartic_coeffs(sp.theta_SE, alpha_target, beta_target);
        const double A = q.A, N = q.N, C = q.C, D = q.D;
        const double A2 = A * A, D2 = D * D, N2 = N * N;
        for (double R : quartic_even_roots(q)) {
            if (std::abs(R) < 1e-12 || A == 0.0 || N == 0.0 || C == 0.0) continue;
            double R2 = R * R;
            double F = (D2 * A2 + D2 * N2 + A2 + N2 - R2 * (D2 * A2 + 1.0)) / (2.0 * A * N * (D2 + 1.0));
            double G = (D2 * D * N2 - D2 * D * A2 - D * A2 + D * N2 + R2 * (D2 * D * A2 + D)) / ((D2 + 1.0) * C * N * R);
            double H = (A2 + D2 * A2 - N2 - D2 * N2 + R2 * (D2 * A2 + 1.0)) / ((D2 + 1.0) * C * A * R);
            TrackerOrientation to{deg(std::atan2(F, R)), sp.theta_SA - deg(std::atan2(G, H))};
            to.theta_TA = std::fmod(to.theta_TA + 720.0, 360.0);
            OrientationSolution s = evaluate(sp, to, alpha_target, beta_target);
            // equal-quality candidates: prefer a face that is not tipped over backwards
            bool upright = to.theta_TE >= 0.0 && to.theta_TE <= 90.0;
            bool best_upright = best.orientation.theta_TE >= 0.0 && best.orientation.theta_TE <= 90.0;
            if (s.error_deg < best.error_deg - 1e-6 || (s.error_deg < best.error_deg + 1e-6 && upright && !best_upright)) best = s;
        }
    }
    if (!(best.error_deg < 0.5)) {
        best = grid_orientation(sp, alpha_target, beta_target, 0.1);
        best.analytic_miss = true;
    }
    return best;
}

}  // namespace solarpump::geometry
