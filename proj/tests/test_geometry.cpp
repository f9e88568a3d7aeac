#include <doctest.h>

#include <cmath>
#include <numbers>

#include "solarpump/error.hpp"
#include "solarpump/geometry/solar_geometry.hpp"

using namespace solarpump;
using namespace solarpump::geometry;

namespace {

constexpr double kDeg = std::numbers::pi / 180.0;

double det3(const Vec3& a, const Vec3& b, const Vec3& c) { return dot(a, cross(b, c)); }

double quartic_value(const QuarticCoeffs& q, double w) { return q.a * w * w * w * w + q.b * w * w + q.c; }

// Sign changes of the quartic scanned with a fixed step; midpoints returned.
std::vector<double> scan_quartic(const QuarticCoeffs& q, double lo, double hi, double step) {
    std::vector<double> out;
    double prev = quartic_value(q, lo);
    const long n = std::lround((hi - lo) / step);
    for (long k = 1; k <= n; ++k) {
        double w = lo + static_cast<double>(k) * step;
        double cur = quartic_value(q, w);
        if ((prev < 0.0) != (cur < 0.0)) out.push_back(w - step / 2);
        prev = cur;
    }
    return out;
}

double wrap180(double a) {
    a = std::fmod(a, 360.0);
    if (a > 180.0) a -= 360.0;
    if (a <= -180.0) a += 360.0;
    return a;
}

}  // namespace

TEST_CASE("declination examples") {
    CHECK(declination(355) == doctest::Approx(-23.45).epsilon(1e-12));
    CHECK(declination(172) == doctest::Approx(23.43).epsilon(0.05 / 23.43));
    CHECK(std::abs(declination(81)) < 0.5);
}

TEST_CASE("zenith and elevation") {
    auto r = zenith_and_elevation(23.45, 23.45, 0.0);
    CHECK(r.theta_z == doctest::Approx(0.0).epsilon(1e-6));
    CHECK(r.theta_e == doctest::Approx(90.0).epsilon(1e-9));

    r = zenith_and_elevation(0.0, 0.0, 60.0);
    CHECK(r.theta_z == doctest::Approx(60.0).epsilon(1e-12));

    const double L = 45.0, d = 23.45, st = 30.0;
    const double oracle =
        std::acos(std::sin(L * kDeg) * std::sin(d * kDeg) + std::cos(L * kDeg) * std::cos(d * kDeg) * std::cos(st * kDeg)) /
        kDeg;
    r = zenith_and_elevation(L, d, st);
    CHECK(r.theta_z == doctest::Approx(oracle).epsilon(1e-12));
    CHECK(r.theta_e + r.theta_z == doctest::Approx(90.0).epsilon(1e-15));
}

TEST_CASE("sun vector") {
    Vec3 v = sun_vector({90.0, 0.0});
    CHECK(v[0] == doctest::Approx(0.0));
    CHECK(v[1] == doctest::Approx(0.0));
    CHECK(v[2] == doctest::Approx(1.0));

    v = sun_vector({0.0, 90.0});
    CHECK(v[0] == doctest::Approx(1.0));
    CHECK(std::abs(v[1]) < 1e-15);
    CHECK(std::abs(v[2]) < 1e-15);

    v = sun_vector({30.0, 135.0});
    CHECK(v[0] == doctest::Approx(std::sin(135 * kDeg) * std::cos(30 * kDeg)));
    CHECK(v[1] == doctest::Approx(std::cos(135 * kDeg) * std::cos(30 * kDeg)));
    CHECK(v[2] == doctest::Approx(0.5));

    for (double se = -90; se <= 90; se += 10)
        for (double sa = 0; sa < 360; sa += 10) CHECK(std::abs(norm(sun_vector({se, sa})) - 1.0) < 1e-12);

    SunPosition sp{37.5, 10.0};
    CHECK(sp.theta_SZ() + sp.theta_SE == 90.0);
}

TEST_CASE("tracker basis examples") {
    TrackerBasis b = tracker_basis({90.0, 0.0});
    CHECK(b.x[0] == doctest::Approx(1.0));
    CHECK(b.y[2] == doctest::Approx(1.0));

    b = tracker_basis({0.0, 0.0});
    CHECK(b.x[0] == doctest::Approx(1.0));
    CHECK(b.z[2] == doctest::Approx(1.0));
    // face normal lies on the horizon toward the tracker azimuth
    CHECK(std::abs(b.y[0]) < 1e-15);
    CHECK(std::abs(b.y[1]) == doctest::Approx(1.0));
}

TEST_CASE("tracker basis orthonormal on a 10 degree grid") {
    for (double te = -90; te <= 180; te += 10) {
        for (double ta = 0; ta < 360; ta += 10) {
            TrackerBasis b = tracker_basis({te, ta});
            CHECK(std::abs(norm(b.x) - 1.0) < 1e-10);
            CHECK(std::abs(norm(b.y) - 1.0) < 1e-10);
            CHECK(std::abs(norm(b.z) - 1.0) < 1e-10);
            CHECK(std::abs(dot(b.x, b.y)) < 1e-10);
            CHECK(std::abs(dot(b.x, b.z)) < 1e-10);
            CHECK(std::abs(dot(b.y, b.z)) < 1e-10);
            CHECK(std::abs(std::abs(det3(b.x, b.y, b.z)) - 1.0) < 1e-9);
        }
    }
}

TEST_CASE("closed-form projections agree with explicit dot products") {
    for (double se = -80; se <= 80; se += 20) {
        for (double sa = 0; sa < 360; sa += 30) {
            SunPosition sp{se, sa};
            Vec3 s = sun_vector(sp);
            for (double te = -90; te <= 180; te += 10) {
                for (double ta = 0; ta < 360; ta += 10) {
                    TrackerOrientation to{te, ta};
                    TrackerBasis b = tracker_basis(to);
                    CHECK(std::abs(sun_dot_x(sp, to) - dot(s, b.x)) < 1e-9);
                    CHECK(std::abs(sun_dot_z(sp, to) - dot(s, b.z)) < 1e-9);
                    // the face normal carries the incidence angle
                    double ca = std::clamp(dot(s, b.y), -1.0, 1.0);
                    CHECK(std::abs(angle_of_incidence(sp, to) - std::acos(ca) / kDeg) < 1e-6);
                }
            }
        }
    }
}

TEST_CASE("angle of incidence examples") {
    CHECK(angle_of_incidence({40.0, 120.0}, {40.0, 120.0}) == doctest::Approx(0.0).epsilon(1e-6));
    CHECK(angle_of_incidence({30.0, 200.0}, {90.0, 200.0}) == doctest::Approx(60.0).epsilon(1e-12));
    CHECK(angle_of_incidence({0.0, 180.0}, {0.0, 90.0}) == doctest::Approx(90.0).epsilon(1e-12));
    CHECK(angle_of_incidence({0.0, 10.0}, {0.0, 280.0}) == doctest::Approx(90.0).epsilon(1e-12));
}

TEST_CASE("zero incidence only when pointing at the sun") {
    for (double se = 5; se < 90; se += 10) {
        for (double sa = 0; sa < 360; sa += 45) {
            SunPosition sp{se, sa};
            CHECK(angle_of_incidence(sp, {se, sa}) < 1e-5);
            CHECK(angle_of_incidence(sp, {se + 1.0, sa}) > 0.5);
            CHECK(angle_of_incidence(sp, {se, sa + 2.0}) > 0.1);
        }
    }
}

TEST_CASE("incidence direction") {
    // sun in the tracker's plane of symmetry
    double b = incidence_direction({45.0, 80.0}, {30.0, 80.0});
    CHECK((std::abs(b) < 1e-9 || std::abs(std::abs(b) - 180.0) < 1e-9));
    b = incidence_direction({10.0, 80.0}, {30.0, 80.0});
    CHECK((std::abs(b) < 1e-9 || std::abs(std::abs(b) - 180.0) < 1e-9));

    SunPosition sp{45.0, 100.0};
    TrackerOrientation to{30.0, 80.0};
    Vec3 s = sun_vector(sp);
    TrackerBasis tb = tracker_basis(to);
    double oracle = std::atan2(dot(s, tb.x), dot(s, tb.z)) / kDeg;
    CHECK(incidence_direction(sp, to) == doctest::Approx(oracle).epsilon(1e-9));

    try {
        incidence_direction({50.0, 210.0}, {50.0, 210.0});
        FAIL("aligned tracker must not give a direction");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::undefined_direction);
    }
}

TEST_CASE("even quartic roots") {
    QuarticCoeffs q;
    q.a = 1;
    q.b = -5;
    q.c = 4;
    auto r = quartic_even_roots(q);
    REQUIRE(r.size() == 4);
    CHECK(r[0] == doctest::Approx(-2.0));
    CHECK(r[1] == doctest::Approx(-1.0));
    CHECK(r[2] == doctest::Approx(1.0));
    CHECK(r[3] == doctest::Approx(2.0));

    q.b = 2;
    q.c = 1;
    CHECK(quartic_even_roots(q).empty());

    QuarticCoeffs qc = quartic_coeffs(40.0, 20.0, 10.0);
    CHECK(qc.a >= 0.0);
    auto roots = quartic_even_roots(qc);
    auto scanned = scan_quartic(qc, -3.0, 3.0, 1e-6);
    REQUIRE(!roots.empty());
    REQUIRE(roots.size() == scanned.size());
    for (std::size_t i = 0; i < roots.size(); ++i) CHECK(std::abs(roots[i] - scanned[i]) < 2e-6);
    const double scale = std::abs(qc.a) + std::abs(qc.b) + std::abs(qc.c);
    for (double w : roots) CHECK(std::abs(quartic_value(qc, w)) < 1e-8 * scale);
}

TEST_CASE("quartic intermediates follow the targets") {
    QuarticCoeffs qc = quartic_coeffs(35.0, 15.0, 20.0);
    CHECK(qc.C == doctest::Approx(std::cos(35 * kDeg)));
    CHECK(qc.N == doctest::Approx(std::sin(35 * kDeg)));
    CHECK(qc.D == doctest::Approx(std::tan(20 * kDeg)));
    CHECK(qc.A == doctest::Approx(std::cos(15 * kDeg)));
}

TEST_CASE("optimal orientation pointing at the sun") {
    for (double se : {10.0, 35.0, 70.0}) {
        for (double sa : {60.0, 180.0, 290.0}) {
            for (double beta : {0.0, 45.0, -120.0}) {
                auto sol = optimal_orientation({se, sa}, 0.0, beta);
                CHECK(std::abs(sol.orientation.theta_TE - se) < 0.5);
                CHECK(std::abs(wrap180(sol.orientation.theta_TA - sa)) < 0.5);
                CHECK(sol.achieved_alpha < 0.5);
            }
        }
    }
}

TEST_CASE("optimal orientation against the grid oracle") {
    SunPosition sp{35.0, 150.0};
    auto sol = optimal_orientation(sp, 15.0, 20.0);
    CHECK(sol.error_deg < 0.5);
    CHECK(std::abs(angle_of_incidence(sp, sol.orientation) - 15.0) < 0.5);
    CHECK(std::abs(wrap180(incidence_direction(sp, sol.orientation) - 20.0)) < 0.5);
    auto grid = grid_orientation(sp, 15.0, 20.0);
    CHECK(grid.error_deg < 0.5);
    // the closed form should be at least as good as the grid
    CHECK(sol.error_deg <= grid.error_deg + 1e-9);
}

TEST_CASE("singular direction target uses the fallback") {
    SunPosition sp{40.0, 200.0};
    auto sol = optimal_orientation(sp, 20.0, 90.0);
    CHECK(sol.error_deg < 0.5);
    CHECK(std::abs(angle_of_incidence(sp, sol.orientation) - 20.0) < 0.5);
}

TEST_CASE("orientation error metric") {
    CHECK(orientation_error(10.0, 170.0, 10.0, -170.0) == doctest::Approx(20.0));
    CHECK(orientation_error(0.0, 50.0, 0.2, -100.0) == doctest::Approx(0.2));
    CHECK(orientation_error(20.0, 0.0, 21.0, 0.5) == doctest::Approx(1.0));
}

TEST_CASE("tilt from elevation") {
    CHECK(TrackerOrientation{90.0, 0.0}.theta_tilt() == 0.0);
    CHECK(TrackerOrientation{0.0, 0.0}.theta_tilt() == 90.0);
    for (double te = 0; te <= 180; te += 5) {
        double t = TrackerOrientation{te, 0.0}.theta_tilt();
        CHECK(t >= 0.0);
        CHECK(t <= 90.0);
    }
}
