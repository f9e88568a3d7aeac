#include <doctest.h>

#include <cmath>
#include <set>
#include <sstream>

#include "solarpump/cli/commands.hpp"
#include "solarpump/cli/config.hpp"
#include "solarpump/cli/csv.hpp"
#include "solarpump/cli/validation.hpp"
#include "solarpump/error.hpp"

using namespace solarpump;
using namespace solarpump::cli;

namespace {

std::string config_error_message(const std::string& text) {
    try {
        parse_config_text(text, "t.ini");
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::config_error) return e.what();
        return std::string("wrong kind: ") + e.what();
    }
    return "";
}

bool contains(const std::string& hay, const std::string& needle) { return hay.find(needle) != std::string::npos; }

}  // namespace

TEST_CASE("config defaults and overrides") {
    AppConfig cfg = parse_config_text("");
    CHECK(cfg.scenario.tank_low_pct == 20.0);
    CHECK(cfg.scenario.tank_full_pct == 90.0);
    CHECK(cfg.scenario.pump_flow_Lpm == 5.0);
    CHECK(!cfg.analysis);

    cfg = parse_config_text(
        "# comment\n"
        "[scenario]\n"
        "duration_s = 120   ; trailing\n"
        "[tanks]\n"
        "tank2_init_pct = 40\n"
        "[profile]\n"
        "irradiance = 0:100, 60:500\n"
        "sun_path = 0:10:90, 120:30:150\n"
        "[mppt]\n"
        "algorithm = ic\n"
        "[pv]\n"
        "io_temperature_scaling = off\n"
        "[analysis]\n"
        "num = 1\n"
        "den = 1 1\n"
        "gain = 4\n");
    CHECK(cfg.scenario.duration_s == 120.0);
    CHECK(cfg.scenario.tank2_init_pct == 40.0);
    REQUIRE(cfg.scenario.irradiance_profile.size() == 2);
    CHECK(cfg.scenario.irradiance_profile[1].w_m2 == 500.0);
    REQUIRE(cfg.scenario.sun_path.size() == 2);
    CHECK(cfg.scenario.sun_path[1].theta_SA == 150.0);
    CHECK(cfg.scenario.mppt_algorithm == mppt::Algorithm::ic);
    CHECK(!cfg.scenario.pv.io_temperature_scaling);
    REQUIRE(cfg.analysis);
    REQUIRE(cfg.analysis->tf);
    CHECK(cfg.analysis->gain == 4.0);
    CHECK(resolve_system(*cfg.analysis).dc_gain() == doctest::Approx(4.0));
}

TEST_CASE("config errors carry source and line") {
    std::string m = config_error_message("[scenario]\nduration_s = 10\nbogus = 1\n");
    CHECK(contains(m, "t.ini:3"));
    CHECK(contains(m, "bogus"));

    m = config_error_message("[nowhere]\n");
    CHECK(contains(m, "t.ini:1"));
    CHECK(contains(m, "nowhere"));

    m = config_error_message("[scenario]\ndt_s = 0.1\n\ndt_s = 0.2\n");
    CHECK(contains(m, "line 2"));
    CHECK(contains(m, "line 4"));

    m = config_error_message("[scenario]\nduration_s = 1x0\n");
    CHECK(contains(m, "t.ini:2:"));

    m = config_error_message("[tanks]\ntank_low_pct = 95\ntank_full_pct = 90\n");
    CHECK(!m.empty());
    CHECK(!contains(m, "wrong kind"));

    m = config_error_message("[analysis]\nnum = 1 2\n");
    CHECK(contains(m, "den"));
    CHECK(contains(m, "t.ini:2"));

    m = config_error_message("[analysis]\npreset = cascade\nnum = 1\nden = 1 1\n");
    CHECK(contains(m, "preset"));

    m = config_error_message("[profile]\nsun_path = 0:10\n");
    CHECK(contains(m, "t.ini:2"));

    CHECK_THROWS_AS(parse_config("/nonexistent/dir/x.ini"), Error);
}

TEST_CASE("gain ranges") {
    GainRange g = parse_gain_range("0.1:1000:5");
    auto v = expand(g);
    REQUIRE(v.size() == 5);
    CHECK(v[0] == doctest::Approx(0.1));
    CHECK(v[2] == doctest::Approx(10.0));
    CHECK(v[4] == doctest::Approx(1000.0));
    CHECK_THROWS_AS(parse_gain_range("1:2"), Error);
    CHECK_THROWS_AS(parse_gain_range("-1:2:3"), Error);
    CHECK_THROWS_AS(parse_gain_range("a:b:c"), Error);
}

TEST_CASE("csv rendering and round trip") {
    CsvTable t({"name", "x", "n"});
    t.add_row({std::string("plain"), 1.5, 3LL});
    t.add_row({std::string("a,b \"q\""), std::nan(""), -2LL});
    t.add_row({std::string("line\nbreak"), 1.0 / 3.0, 0LL});
    CHECK_THROWS_AS(t.add_row({1.0}), Error);
    std::string text = t.render();
    auto rows = parse_csv(text);
    REQUIRE(rows.size() == 4);
    CHECK(rows[0] == std::vector<std::string>{"name", "x", "n"});
    CHECK(rows[1][0] == "plain");
    CHECK(rows[1][1] == "1.5");
    CHECK(rows[2][0] == "a,b \"q\"");
    CHECK(rows[2][1].empty());
    CHECK(rows[3][0] == "line\nbreak");
    CHECK(std::stod(rows[3][1]) == doctest::Approx(1.0 / 3.0).epsilon(1e-8));

    CsvTable empty({"a", "b"});
    CHECK(empty.render() == "a,b\n");
    CHECK(csv_escape("x\"y") == "\"x\"\"y\"");
    CHECK(format_real(0.1) == "0.1");
}

TEST_CASE("validation report invariants") {
    auto rows = run_validation_report();
    CHECK(rows.size() == validation_registry().size());
    std::set<std::string> ids;
    int match = 0, deviates = 0;
    for (const auto& r : rows) {
        CHECK(ids.insert(r.id).second);
        if (r.status == ClaimStatus::match) ++match;
        if (r.status == ClaimStatus::deviates) ++deviates;
        if (r.tolerance_kind == ToleranceKind::none) continue;
        REQUIRE(r.tolerance);
        if (!r.claimed || !r.computed) continue;
        double dev = r.tolerance_kind == ToleranceKind::absolute ? *r.abs_dev : *r.rel_dev;
        CHECK((r.status == ClaimStatus::match) == (dev <= *r.tolerance));
        CHECK(*r.abs_dev == doctest::Approx(std::abs(*r.computed - *r.claimed)));
    }
    CHECK(match > 0);
    CHECK(deviates > 0);

    CsvTable t = validation_table(rows);
    auto parsed = parse_csv(t.render());
    CHECK(parsed.size() == rows.size() + 1);
    CHECK(parsed[0].front() == "id");
    std::string txt = validation_text(rows);
    CHECK(contains(txt, "MATCH"));
}

TEST_CASE("claim status follows the registered tolerance") {
    auto c = numeric_claim("x", "d", 100.0, "", 110.0, 0.15, ToleranceKind::relative, "");
    CHECK(c.status == ClaimStatus::match);
    c = numeric_claim("x", "d", 100.0, "", 120.0, 0.15, ToleranceKind::relative, "");
    CHECK(c.status == ClaimStatus::deviates);
    c = numeric_claim("x", "d", -0.0112, "", -0.0115, 1e-3, ToleranceKind::absolute, "");
    CHECK(c.status == ClaimStatus::match);
    c = numeric_claim("x", "d", -0.0112, "", -0.0132, 1e-3, ToleranceKind::absolute, "");
    CHECK(c.status == ClaimStatus::deviates);
    CHECK(std::string(to_string(ClaimStatus::qualitative)) == "QUALITATIVE");
}

TEST_CASE("transfer function commands") {
    AnalysisRequest req;
    req.preset = "tank_001";
    for (auto action : {TfAction::analyze, TfAction::step, TfAction::bode, TfAction::rlocus, TfAction::routh, TfAction::errors}) {
        CommandResult r = cmd_tf(action, req);
        REQUIRE(!r.files.empty());
        auto rows = parse_csv(r.files.front().content);
        CHECK(rows.size() >= 2);
        for (const auto& row : rows) CHECK(row.size() == rows.front().size());
    }
    CHECK_THROWS_AS(parse_tf_action("nyquist"), Error);

    req.preset = "nope";
    CHECK_THROWS_AS(resolve_system(req), Error);

    AnalysisRequest cl;
    cl.preset = "tank_001";
    cl.gain = 100.0;
    cl.closed_loop = true;
    CHECK(resolve_system(cl).dc_gain() == doctest::Approx(1.0));
    // K G / (1 + K G) with K G = 1/(s+1) settles at one half
    auto step = parse_csv(cmd_tf(TfAction::step, cl).files.front().content);
    CHECK(std::stod(step.back()[1]) == doctest::Approx(0.5).epsilon(1e-3));
}

TEST_CASE("module commands produce consistent tables") {
    AppConfig cfg;
    cfg.pv_curve_points = 50;
    cfg.mppt_steps = 40;
    cfg.scenario.duration_s = 60.0;
    for (auto fn : {cmd_pv_curve, cmd_solar_angles, cmd_track_sim, cmd_mppt_run, cmd_scenario_run}) {
        CommandResult r = fn(cfg);
        REQUIRE(!r.files.empty());
        auto rows = parse_csv(r.files.front().content);
        REQUIRE(rows.size() >= 2);
        for (const auto& row : rows) CHECK(row.size() == rows.front().size());
        CHECK(!r.summary.empty());
    }
    auto pv = parse_csv(cmd_pv_curve(cfg).files.front().content);
    CHECK(pv[0] == std::vector<std::string>{"v", "i", "p"});
    CHECK(pv.size() == 51);
    auto mp = parse_csv(cmd_mppt_run(cfg).files.front().content);
    CHECK(mp[0] == std::vector<std::string>{"iter", "v_ref", "i", "p"});
}

TEST_CASE("delivery without an output directory") {
    CommandResult r{{{"a.csv", "x\n1\n"}, {"b.txt", "ignored"}}, "summary line\n"};
    std::ostringstream out, err;
    deliver(r, std::nullopt, out, err);
    CHECK(out.str() == "x\n1\n");
    CHECK(err.str() == "summary line\n");
    // a regular file where the directory should be
    write_text_file("test_cli_blocker", "x");
    CHECK_THROWS_AS(deliver(r, std::string("test_cli_blocker/sub"), out, err), Error);
}
