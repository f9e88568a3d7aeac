#pragma once

#include <array>
#include <vector>

namespace solarpump::geometry {

using Vec3 = std::array<double, 3>;

double dot(const Vec3& a, const Vec3& b);
Vec3 cross(const Vec3& a, const Vec3& b);
double norm(const Vec3& a);

// Angles in degrees. Azimuth is a bearing clockwise from north.
struct SunPosition {
    double theta_SE = 0.0;
    double theta_SA = 0.0;

    double theta_SZ() const { return 90.0 - theta_SE; }
};

struct TrackerOrientation {
    double theta_TE = 0.0;
    double theta_TA = 0.0;

    double theta_tilt() const;
};

struct TrackerBasis {
    Vec3 x;  // horizontal axis across the face
    Vec3 y;  // face normal
    Vec3 z;  // up along the face
};

struct IncidenceResult {
    double alpha = 0.0;
    double beta = 0.0;
};

double declination(int n);

struct ZenithElevation {
    double theta_z;
    double theta_e;
};
ZenithElevation zenith_and_elevation(double L_st, double delta, double ST);

Vec3 sun_vector(const SunPosition& sp);
TrackerBasis tracker_basis(const TrackerOrientation& to);

double angle_of_incidence(const SunPosition& sp, const TrackerOrientation& to);

// Closed-form projections of the sun vector on the face axes.
double sun_dot_x(const SunPosition& sp, const TrackerOrientation& to);
double sun_dot_z(const SunPosition& sp, const TrackerOrientation& to);
// atan2(s.x, s.z) in (-180, 180]
double incidence_direction(const SunPosition& sp, const TrackerOrientation& to);

struct QuarticCoeffs {
    double a = 0.0, b = 0.0, c = 0.0;
    double C = 0.0, N = 0.0, D = 0.0, A = 0.0;
};

// Coefficients of a w^4 + b w^2 + c for the given sun elevation and targets.
QuarticCoeffs quartic_coeffs(double theta_SE, double alpha, double beta);

// Real roots of a w^4 + b w^2 + c, ascending, repeated roots listed once.
std::vector<double> quartic_even_roots(const QuarticCoeffs& qc);

struct OrientationSolution {
    TrackerOrientation orientation;
    double achieved_alpha = 0.0;
    double achieved_beta = 0.0;
    double error_deg = 0.0;  // max-norm over (alpha, beta)
    bool analytic_miss = false;
};

// Tracker angles that present the sun at the target (alpha, beta). Every
// real root of the quartic is tried; the closest achieved pair wins. A
// 0.1 degree grid search is used when no root lands within 0.5 degrees.
OrientationSolution optimal_orientation(const SunPosition& sp, double alpha_target, double beta_target);

// Exhaustive search over elevation [-90, 180] and azimuth [0, 360).
OrientationSolution grid_orientation(const SunPosition& sp, double alpha_target, double beta_target,
                                     double step_deg = 0.1);

// max(|da|, |db|) with db wrapped; beta is ignored when alpha_target is 0
double orientation_error(double alpha_target, double beta_target, double alpha, double beta);

}  // namespace solarpump::geometry
