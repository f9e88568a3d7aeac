#pragma once

#include <vector>

#include "solarpump/geometry/solar_geometry.hpp"

namespace solarpump::tracking {

using geometry::SunPosition;
using geometry::TrackerOrientation;

struct LdrReadings {
    int top_left = 0;
    int top_right = 0;
    int bottom_left = 0;
    int bottom_right = 0;
};

struct TrackingThresholds {
    double avgsum_min = 8.0;      // counts
    double diff_deadband = 10.0;  // counts
};

enum class AzimuthMove { hold, left, right };
enum class ElevationMove { hold, up, down };
const char* to_string(AzimuthMove m);
const char* to_string(ElevationMove m);

struct TrackerCommand {
    AzimuthMove azimuth_move = AzimuthMove::hold;
    ElevationMove elevation_move = ElevationMove::hold;
    bool park = false;
};

// 10-bit reading per quadrant: full scale at 1000 W/m^2 on the sensor axis.
// Each sensor axis leans 45 degrees off the face normal toward its corner.
LdrReadings ldr_model(const SunPosition& sp, const TrackerOrientation& to, double irradiance);

TrackerCommand tracking_step(const LdrReadings& r, const TrackingThresholds& th);

// Applies one command. "right" lowers the azimuth (the face turns toward
// the brighter left-hand sensors), "up" raises the elevation, and park
// steps back toward `home`. Elevation stays within [0, 180].
TrackerOrientation apply_command(const TrackerOrientation& to, const TrackerCommand& cmd, double motor_step_deg,
                                 const TrackerOrientation& home);

struct TrackSample {
    SunPosition sun;
    double irradiance = 1000.0;
};

struct TrackStep {
    TrackerOrientation orientation;  // after the command was applied
    double alpha;                    // angle of incidence after the move
    LdrReadings readings;
    TrackerCommand command;
};

std::vector<TrackStep> tracking_sim(const std::vector<TrackSample>& path, const TrackingThresholds& th,
                                    double motor_step_deg, const TrackerOrientation& initial);

}  // namespace solarpump::tracking
