#include <doctest.h>

#include <cmath>

#include "solarpump/error.hpp"
#include "solarpump/mppt/mppt.hpp"

using namespace solarpump;
using namespace solarpump::mppt;

namespace {

// P(V) = 100 - (V - 17)^2 expressed as a current source.
double synthetic_current(double v) {
    if (v <= 0.0) return 0.0;
    return (100.0 - (v - 17.0) * (v - 17.0)) / v;
}

MpptState state_with_history(double V_prev, double I_prev, double V_ref) {
    MpptState st = initial_state(V_ref, 0.5);
    st.V_prev = V_prev;
    st.I_prev = I_prev;
    st.P_prev = V_prev * I_prev;
    return st;
}

}  // namespace

TEST_CASE("boost ratio") {
    CHECK(boost_ratio({0.0}) == 1.0);
    CHECK(boost_ratio({0.5}) == 2.0);
    CHECK(boost_ratio({0.9}) == doctest::Approx(10.0).epsilon(1e-12));
    CHECK_THROWS_AS(boost_ratio({1.0}), Error);
    try {
        boost_ratio({1.2});
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::invalid_duty);
    }
}

TEST_CASE("duty cycle for a reference voltage") {
    CHECK(duty_for_reference(12.0, 24.0).duty_D == doctest::Approx(0.5));
    CHECK(duty_for_reference(12.0, 10.0).duty_D == 0.0);
    CHECK(duty_for_reference(12.0, 1000.0).duty_D == 0.95);
    CHECK(duty_for_reference(12.0, 0.0).duty_D == 0.0);
}

TEST_CASE("perturb and observe directions") {
    // power rose while voltage rose: keep climbing
    MpptState st = state_with_history(10.0, 2.0, 10.5);
    MpptState n = po_step(st, 10.5, 2.0);
    CHECK(n.V_ref == doctest::Approx(11.0));
    CHECK(n.last_action == Action::increase);

    // power rose while voltage fell: keep going down
    st = state_with_history(10.0, 2.0, 9.5);
    n = po_step(st, 9.5, 2.2);
    CHECK(n.V_ref == doctest::Approx(9.0));

    // power fell while voltage rose: reverse
    st = state_with_history(10.0, 2.0, 10.5);
    n = po_step(st, 10.5, 1.8);
    CHECK(n.V_ref == doctest::Approx(10.0));

    // no change at all: hold
    st = state_with_history(10.0, 2.0, 10.0);
    n = po_step(st, 10.0, 2.0);
    CHECK(n.V_ref == 10.0);
    CHECK(n.last_action == Action::hold);

    // history stores the present measurement
    CHECK(n.V_prev == 10.0);
    CHECK(n.I_prev == 2.0);
    CHECK(n.P_prev == 20.0);
    CHECK(n.iteration == st.iteration + 1);
}

TEST_CASE("printed perturb and observe variant moves the other way") {
    MpptState st = state_with_history(10.0, 2.0, 10.5);
    CHECK(po_step(st, 10.5, 2.0, PoVariant::printed).V_ref == doctest::Approx(10.0));
    CHECK(po_step(st, 10.5, 1.8, PoVariant::printed).V_ref == doctest::Approx(11.0));
}

TEST_CASE("incremental conductance branches") {
    MpptState st = state_with_history(10.0, 2.0, 10.0);
    CHECK(ic_step(st, 10.0, 2.0).V_ref == 10.0);
    CHECK(ic_step(st, 10.0, 2.1).V_ref == doctest::Approx(10.5));
    CHECK(ic_step(st, 10.0, 1.9).V_ref == doctest::Approx(9.5));

    // dI/dV = -I/V exactly: at the maximum
    st = state_with_history(10.0, 2.0, 11.0);
    // -I/V = -2/11 at (11, 2); dI/dV = (2 - I_prev)/(11 - 10)
    st.I_prev = 2.0 + 2.0 / 11.0;
    CHECK(ic_step(st, 11.0, 2.0).last_action == Action::hold);
    // dI/dV above -I/V: left of the maximum
    st.I_prev = 2.0;
    CHECK(ic_step(st, 11.0, 2.0).V_ref == doctest::Approx(11.5));
    // well below: right of the maximum
    st.I_prev = 3.0;
    CHECK(ic_step(st, 11.0, 2.0).V_ref == doctest::Approx(10.5));

    // zero voltage with a voltage change: conductance undefined
    st = state_with_history(1.0, 2.0, 0.0);
    MpptState n = ic_step(st, 0.0, 2.5);
    CHECK(n.conductance_undefined);
    CHECK(n.last_action == Action::hold);
}

TEST_CASE("step size bound") {
    for (double vp : {5.0, 10.0, 17.0, 20.0}) {
        for (double v : {4.5, 10.0, 16.5, 17.0, 21.0}) {
            for (double ip : {0.5, 3.0, 6.0}) {
                MpptState st = state_with_history(vp, ip, v);
                double i = synthetic_current(v);
                CHECK(std::abs(po_step(st, v, i).V_ref - v) <= st.dV_step + 1e-12);
                CHECK(std::abs(ic_step(st, v, i).V_ref - v) <= st.dV_step + 1e-12);
            }
        }
    }
}

TEST_CASE("hill climb on a concave curve") {
    for (Algorithm algo : {Algorithm::po, Algorithm::ic}) {
        MpptRun run = mppt_run(synthetic_current, algo, initial_state(10.0, 0.5), 100);
        CHECK(!run.error);
        CHECK(std::abs(run.final_state.V_ref - 17.0) <= 0.5);
        // once inside one step of the maximum the reference stays within two
        bool inside = false;
        for (const auto& p : run.points) {
            if (inside) CHECK(std::abs(p.v_ref - 17.0) <= 1.0 + 1e-12);
            if (std::abs(p.v_ref - 17.0) <= 0.5) inside = true;
        }
        CHECK(inside);
    }
}

TEST_CASE("tracking on the default array") {
    pv::PvArrayParams ap;
    pv::MppResult oracle = pv::find_mpp(ap);
    for (Algorithm algo : {Algorithm::po, Algorithm::ic}) {
        MpptRun run = mppt_run(ap, algo, initial_state(0.6 * oracle.V_mpp, 0.5), 200);
        REQUIRE(!run.points.empty());
        CHECK(run.points.back().power >= 0.98 * oracle.P_mpp);
    }
}

TEST_CASE("runs are deterministic") {
    pv::PvArrayParams ap;
    auto a = mppt_run(ap, Algorithm::po, initial_state(10.0), 60);
    auto b = mppt_run(ap, Algorithm::po, initial_state(10.0), 60);
    REQUIRE(a.points.size() == b.points.size());
    for (std::size_t k = 0; k < a.points.size(); ++k) {
        CHECK(a.points[k].v_ref == b.points[k].v_ref);
        CHECK(a.points[k].power == b.points[k].power);
    }
}

TEST_CASE("failing source stops the run with a partial trajectory") {
    auto source = [](double v) {
        if (v > 12.0) throw Error(ErrorKind::solver_failure, "no convergence");
        return 1.0;
    };
    MpptRun run = mppt_run(source, Algorithm::po, initial_state(10.0, 0.5), 50);
    CHECK(run.error.has_value());
    CHECK(!run.points.empty());
    CHECK(run.points.size() < 50);
}

TEST_CASE("argument checks") {
    CHECK_THROWS_AS(initial_state(10.0, 0.0), Error);
    CHECK_THROWS_AS(mppt_run(synthetic_current, Algorithm::po, initial_state(10.0), 0), Error);
    CHECK(parse_algorithm("ic") == Algorithm::ic);
    CHECK_THROWS_AS(parse_algorithm("fuzzy"), Error);
}
