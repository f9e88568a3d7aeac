#include "solarpump/tracking/tracking.hpp"

#include <algorithm>
#include <cmath>

#include "solarpump/error.hpp"

namespace solarpump::tracking {

using geometry::Vec3;

const char* to_string(AzimuthMove m) {
    switch (m) {
        case AzimuthMove::hold: return "hold";
        case AzimuthMove::left: return "left";
        case AzimuthMove::right: return "right";
    }
    return "unknown";
}

const char* to_string(ElevationMove m) {
    switch (m) {
        case ElevationMove::hold: return "hold";
        case ElevationMove::up: return "up";
        case ElevationMove::down: return "down";
    }
    return "unknown";
}

LdrReadings ldr_model(const SunPosition& sp, const TrackerOrientation& to, double irradiance) {
    if (!(irradiance >= 0.0)) throw Error(ErrorKind::invalid_input, "irradiance must be >= 0");
    const auto b = geometry::tracker_basis(to);
    const Vec3 s = geometry::sun_vector(sp);
    const double c45 = std::sqrt(0.5);
    auto reading = [&](double h, double v) {
        Vec3 n{};
        for (int k = 0; k < 3; ++k) n[k] = c45 * b.y[k] + c45 * (h * b.x[k] + v * b.z[k]) * c45;
        double c = std::max(0.0, geometry::dot(s, n));
        double counts = std::round(1023.0 * irradiance / 1000.0 * c);
        return static_cast<int>(std::clamp(counts, 0.0, 1023.0));
    };
    LdrReadings r;
    r.top_left = reading(-1.0, 1.0);
    r.top_right = reading(1.0, 1.0);
    r.bottom_left = reading(-1.0, -1.0);
    r.bottom_right = reading(1.0, -1.0);
    return r;
}

TrackerCommand tracking_step(const LdrReadings& r, const TrackingThresholds& th) {
    double avg_top = (r.top_left + r.top_right) / 2.0;
    double avg_bottom = (r.bottom_left + r.bottom_right) / 2.0;
    double avg_left = (r.top_left + r.bottom_left) / 2.0;
    double avg_right = (r.top_right + r.bottom_right) / 2.0;
    double avgsum = (r.top_left + r.top_right + r.bottom_left + r.bottom_right) / 4.0;
    double diff_azi = avg_left - avg_right;
    double diff_elev = avg_top - avg_bottom;

    TrackerCommand cmd;
    if (avgsum < th.avgsum_min) {
        cmd.park = true;
        return cmd;
    }
    if (std::abs(diff_azi) > th.diff_deadband) cmd.azimuth_move = diff_azi > 0 ? AzimuthMove::right : AzimuthMove::left;
    if (std::abs(diff_elev) > th.diff_deadband) cmd.elevation_move = diff_elev > 0 ? ElevationMove::up : ElevationMove::down;
    return cmd;
}

namespace {

double toward(double from, double to, double step) {
    if (std::abs(to - from) <= step) return to;
    return from + (to > from ? step : -step);
}

}  // namespace

TrackerOrientation apply_command(const TrackerOrientation& to, const TrackerCommand& cmd, double step,
                                 const TrackerOrientation& home) {
    TrackerOrientation next = to;
    if (cmd.park) {
        next.theta_TA = toward(to.theta_TA, home.theta_TA, step);
        next.theta_TE = toward(to.theta_TE, home.theta_TE, step);
    } else {
        if (cmd.azimuth_move == AzimuthMove::right) next.theta_TA -= step;
        if (cmd.azimuth_move == AzimuthMove::left) next.theta_TA += step;
        if (cmd.elevation_move == ElevationMove::up) next.theta_TE += step;
        if (cmd.elevation_move == ElevationMove::down) next.theta_TE -= step;
    }
    next.theta_TE = std::clamp(next.theta_TE, 0.0, 180.0);
    return next;
}

std::vector<TrackStep> tracking_sim(const std::vector<TrackSample>& path, const TrackingThresholds& th,
                                    double motor_step_deg, const TrackerOrientation& initial) {
    if (!(motor_step_deg > 0.0)) throw Error(ErrorKind::invalid_input, "motor step must be > 0");
    if (path.empty()) throw Error(ErrorKind::invalid_input, "sun path is empty");
    std::vector<TrackStep> out;
    TrackerOrientation cur = initial;
    for (const auto& sample : path) {
        LdrReadings r = ldr_model(sample.sun, cur, sample.irradiance);
        TrackerCommand cmd = tracking_step(r, th);
        cur = apply_command(cur, cmd, motor_step_deg, initial);
        out.push_back({cur, geometry::angle_of_incidence(sample.sun, cur), r, cmd});
    }
    return out;
}

}  // namespace solarpump::tracking
