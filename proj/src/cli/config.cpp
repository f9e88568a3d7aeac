#include "solarpump/cli/config.hpp"

#include <fmt/format.h>

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "solarpump/error.hpp"

namespace solarpump::cli {

namespace {

struct Value {
    std::string text;
    int line;
    int col;  // 1-based column of the first value character
};

class Parser {
public:
    explicit Parser(std::string source) : source_(std::move(source)) {}

    [[noreturn]] void fail(int line, int col, const std::string& msg) const {
        if (col > 0) throw Error(ErrorKind::config_error, fmt::format("{}:{}:{}: {}", source_, line, col, msg));
        throw Error(ErrorKind::config_error, fmt::format("{}:{}: {}", source_, line, msg));
    }

    double number(const Value& v, std::string_view s, int offset) const {
        double out = 0.0;
        auto b = s.data(), e = s.data() + s.size();
        auto [p, ec] = std::from_chars(b, e, out);
        if (ec != std::errc() || p != e || s.empty() || !std::isfinite(out))
            fail(v.line, v.col + offset, fmt::format("cannot parse number '{}'", s));
        return out;
    }

    double number(const Value& v) const { return number(v, v.text, 0); }

    int integer(const Value& v) const {
        double d = number(v);
        if (d != std::floor(d) || std::abs(d) > 1e9) fail(v.line, v.col, fmt::format("expected an integer, got '{}'", v.text));
        return static_cast<int>(d);
    }

    bool boolean(const Value& v) const {
        if (v.text == "true" || v.text == "yes" || v.text == "1" || v.text == "on") return true;
        if (v.text == "false" || v.text == "no" || v.text == "0" || v.text == "off") return false;
        fail(v.line, v.col, fmt::format("expected a boolean, got '{}'", v.text));
    }

    // Splits on commas; each piece keeps its column offset.
    std::vector<std::pair<std::string_view, int>> split(std::string_view s, char sep) const {
        std::vector<std::pair<std::string_view, int>> out;
        size_t start = 0;
        while (true) {
            size_t end = s.find(sep, start);
            std::string_view piece = s.substr(start, end == std::string_view::npos ? std::string_view::npos : end - start);
            size_t l = piece.find_first_not_of(" \t");
            size_t r = piece.find_last_not_of(" \t");
            if (l == std::string_view::npos)
                out.emplace_back(std::string_view{}, static_cast<int>(start));
            else
                out.emplace_back(piece.substr(l, r - l + 1), static_cast<int>(start + l));
            if (end == std::string_view::npos) break;
            start = end + 1;
        }
        return out;
    }

    std::vector<double> numbers(const Value& v, char sep) const {
        std::vector<double> out;
        for (auto [piece, off] : split(v.text, sep)) {
            if (sep == ' ' && piece.empty()) continue;
            out.push_back(number(v, piece, off));
        }
        return out;
    }

private:
    std::string source_;
};

std::string_view trim(std::string_view s) {
    size_t l = s.find_first_not_of(" \t\r");
    if (l == std::string_view::npos) return {};
    size_t r = s.find_last_not_of(" \t\r");
    return s.substr(l, r - l + 1);
}

using Setter = std::function<void(const Value&)>;
using SectionTable = std::map<std::string, Setter>;

}  // namespace

GainRange parse_gain_range(std::string_view text) {
    GainRange g;
    std::vector<double> parts;
    size_t start = 0;
    while (true) {
        size_t end = text.find(':', start);
        std::string_view p = trim(text.substr(start, end == std::string_view::npos ? std::string_view::npos : end - start));
        double v = 0.0;
        auto [ptr, ec] = std::from_chars(p.data(), p.data() + p.size(), v);
        if (p.empty() || ec != std::errc() || ptr != p.data() + p.size())
            throw Error(ErrorKind::invalid_input, fmt::format("gain range '{}' is not of the form a:b:n", text));
        parts.push_back(v);
        if (end == std::string_view::npos) break;
        start = end + 1;
    }
    if (parts.size() != 3) throw Error(ErrorKind::invalid_input, fmt::format("gain range '{}' is not of the form a:b:n", text));
    g.lo = parts[0];
    g.hi = parts[1];
    if (!(g.lo > 0.0 && g.hi > g.lo)) throw Error(ErrorKind::invalid_input, "gain range needs 0 < a < b");
    if (parts[2] != std::floor(parts[2]) || parts[2] < 2 || parts[2] > 1e6)
        throw Error(ErrorKind::invalid_input, "gain range count must be an integer in [2, 1e6]");
    g.count = static_cast<int>(parts[2]);
    return g;
}

std::vector<double> expand(const GainRange& g) {
    std::vector<double> out(static_cast<size_t>(g.count));
    const double a = std::log10(g.lo), b = std::log10(g.hi);
    for (int i = 0; i < g.count; ++i) out[static_cast<size_t>(i)] = std::pow(10.0, a + (b - a) * i / (g.count - 1));
    out.back() = g.hi;
    out.front() = g.lo;
    return out;
}

AppConfig parse_config_text(std::string_view text, const std::string& source) {
    Parser ps(source);
    AppConfig app;
    auto& sc = app.scenario;

    std::optional<Value> num_v, den_v;
    AnalysisRequest req;
    bool any_analysis = false;

    auto real = [&ps](double& dst) { return [&ps, &dst](const Value& v) { dst = ps.number(v); }; };

    std::map<std::string, SectionTable> sections;
    sections["scenario"] = {{"duration_s", real(sc.duration_s)}, {"dt_s", real(sc.dt_s)}};
    sections["battery"] = {{"capacity_Wh", real(sc.battery_capacity_Wh)},
                           {"soc_init_pct", real(sc.soc_init_pct)},
                           {"cutoff_pct", real(sc.battery_cutoff_pct)},
                           {"reconnect_pct", real(sc.battery_reconnect_pct)}};
    sections["tanks"] = {{"tank1_volume_L", real(sc.tank1_volume_L)}, {"tank2_volume_L", real(sc.tank2_volume_L)},
                         {"tank1_init_pct", real(sc.tank1_init_pct)}, {"tank2_init_pct", real(sc.tank2_init_pct)},
                         {"tank_low_pct", real(sc.tank_low_pct)},     {"tank_full_pct", real(sc.tank_full_pct)}};
    sections["pumps"] = {{"flow_Lpm", real(sc.pump_flow_Lpm)}, {"power_W", real(sc.pump_power_W)}, {"tau_s", real(sc.pump_tau_s)}};
    sections["soil"] = {{"init_pct", real(sc.soil_init_pct)},
                        {"dry_pct", real(sc.soil_dry_pct)},
                        {"wet_pct", real(sc.soil_wet_pct)},
                        {"gain_pct_per_L", real(sc.soil_gain_pct_per_L)},
                        {"decay_pct_per_h", real(sc.soil_decay_pct_per_h)}};
    auto& cell = sc.pv.cell;
    sections["pv"] = {{"I_ph", real(cell.I_ph)},
                      {"I_o1", real(cell.I_o1)},
                      {"I_o2", real(cell.I_o2)},
                      {"R_s", real(cell.R_s)},
                      {"R_p", real(cell.R_p)},
                      {"a1", real(cell.a1)},
                      {"a2", real(cell.a2)},
                      {"T_c", real(cell.T_c)},
                      {"T_ref", real(sc.pv.T_ref)},
                      {"N_s", [&](const Value& v) { sc.pv.N_s = ps.integer(v); }},
                      {"N_p", [&](const Value& v) { sc.pv.N_p = ps.integer(v); }},
                      {"area_m2", real(sc.pv.area_A)},
                      {"irradiance_W_m2", real(sc.pv.irradiance_G_T)},
                      {"io_temperature_scaling", [&](const Value& v) { sc.pv.io_temperature_scaling = ps.boolean(v); }},
                      {"curve_points", [&](const Value& v) { app.pv_curve_points = ps.integer(v); }}};
    sections["tracker"] = {{"avgsum_min", real(sc.thresholds.avgsum_min)},
                           {"diff_deadband", real(sc.thresholds.diff_deadband)},
                           {"motor_step_deg", real(sc.motor_step_deg)},
                           {"period_s", real(sc.tracker_period_s)},
                           {"initial_TE", real(sc.tracker_initial.theta_TE)},
                           {"initial_TA", real(sc.tracker_initial.theta_TA)}};
    sections["mppt"] = {{"algorithm",
                         [&](const Value& v) {
                             try {
                                 sc.mppt_algorithm = mppt::parse_algorithm(v.text);
                             } catch (const Error& e) {
                                 ps.fail(v.line, v.col, e.what());
                             }
                         }},
                        {"dV_step", real(sc.mppt_dV_step)},
                        {"v_init", real(sc.mppt_v_init)},
                        {"steps", [&](const Value& v) { app.mppt_steps = ps.integer(v); }}};
    sections["profile"] = {{"irradiance",
                            [&](const Value& v) {
                                sc.irradiance_profile.clear();
                                for (auto [piece, off] : ps.split(v.text, ',')) {
                                    Value sub{std::string(piece), v.line, v.col + off};
                                    auto xs = ps.numbers(sub, ':');
                                    if (xs.size() != 2) ps.fail(v.line, v.col + off, "irradiance entries are t:W");
                                    sc.irradiance_profile.push_back({xs[0], xs[1]});
                                }
                            }},
                           {"sun_path", [&](const Value& v) {
                                sc.sun_path.clear();
                                for (auto [piece, off] : ps.split(v.text, ',')) {
                                    Value sub{std::string(piece), v.line, v.col + off};
                                    auto xs = ps.numbers(sub, ':');
                                    if (xs.size() != 3) ps.fail(v.line, v.col + off, "sun_path entries are t:elevation:azimuth");
                                    sc.sun_path.push_back({xs[0], xs[1], xs[2]});
                                }
                            }}};
    auto& so = app.solar;
    sections["solar"] = {{"latitude_deg", real(so.latitude_deg)},
                         {"day_of_year", [&](const Value& v) { so.day_of_year = ps.integer(v); }},
                         {"st_start", real(so.st_start)},
                         {"st_end", real(so.st_end)},
                         {"st_step", real(so.st_step)},
                         {"target_alpha", real(so.target_alpha)},
                         {"target_beta", real(so.target_beta)}};
    auto mark = [&any_analysis](auto f) {
        return [&any_analysis, f](const Value& v) {
            any_analysis = true;
            f(v);
        };
    };
    sections["analysis"] = {{"preset", mark([&](const Value& v) { req.preset = v.text; })},
                            {"num", mark([&](const Value& v) { num_v = v; })},
                            {"den", mark([&](const Value& v) { den_v = v; })},
                            {"gain", mark([&](const Value& v) { req.gain = ps.number(v); })},
                            {"closed_loop", mark([&](const Value& v) { req.closed_loop = ps.boolean(v); })},
                            {"t_end", mark([&](const Value& v) { req.t_end = ps.number(v); })},
                            {"dt", mark([&](const Value& v) { req.dt = ps.number(v); })},
                            {"gains", mark([&](const Value& v) {
                                 try {
                                     req.gains = parse_gain_range(v.text);
                                 } catch (const Error& e) {
                                     ps.fail(v.line, v.col, e.what());
                                 }
                             })}};

    std::map<std::string, int> seen;  // "section.key" -> line
    std::string section;
    int line_no = 0;
    size_t pos = 0;
    while (pos <= text.size()) {
        size_t eol = text.find('\n', pos);
        std::string_view raw = text.substr(pos, eol == std::string_view::npos ? std::string_view::npos : eol - pos);
        pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
        ++line_no;

        size_t cut = raw.find_first_of("#;");
        std::string_view body = trim(cut == std::string_view::npos ? raw : raw.substr(0, cut));
        if (body.empty()) continue;

        if (body.front() == '[') {
            if (body.back() != ']') ps.fail(line_no, 0, "unterminated section header");
            section = std::string(trim(body.substr(1, body.size() - 2)));
            if (!sections.count(section)) ps.fail(line_no, 0, fmt::format("unknown section [{}]", section));
            continue;
        }
        size_t eq = body.find('=');
        if (eq == std::string_view::npos) ps.fail(line_no, 0, "expected 'key = value'");
        if (section.empty()) ps.fail(line_no, 0, "key outside of any section");
        std::string key(trim(body.substr(0, eq)));
        std::string_view val = trim(body.substr(eq + 1));
        auto& table = sections[section];
        auto it = table.find(key);
        if (it == table.end()) ps.fail(line_no, 0, fmt::format("unknown key '{}' in [{}]", key, section));
        std::string full = section + "." + key;
        if (auto prev = seen.find(full); prev != seen.end())
            ps.fail(line_no, 0, fmt::format("duplicate key '{}' in [{}] (first set on line {}, again on line {})", key,
                                            section, prev->second, line_no));
        seen[full] = line_no;
        if (val.empty()) ps.fail(line_no, 0, fmt::format("key '{}' has no value", key));
        int col = static_cast<int>(val.data() - raw.data()) + 1;
        it->second(Value{std::string(val), line_no, col});
    }

    if (num_v && !den_v) ps.fail(num_v->line, 0, "missing required key 'den' in [analysis] (num was given)");
    if (den_v && !num_v) ps.fail(den_v->line, 0, "missing required key 'num' in [analysis] (den was given)");
    if (num_v) {
        if (req.preset) ps.fail(num_v->line, 0, "[analysis] takes either preset or num/den, not both");
        auto n = ps.numbers(*num_v, ' ');
        auto d = ps.numbers(*den_v, ' ');
        try {
            req.tf = lti::TransferFunction(lti::Polynomial(n), lti::Polynomial(d));
        } catch (const Error& e) {
            ps.fail(den_v->line, 0, e.what());
        }
    }
    if (any_analysis) app.analysis = req;

    if (app.pv_curve_points < 2) throw Error(ErrorKind::config_error, source + ": pv curve_points must be >= 2");
    if (app.mppt_steps < 1) throw Error(ErrorKind::config_error, source + ": mppt steps must be >= 1");
    if (so.day_of_year < 1 || so.day_of_year > 366) throw Error(ErrorKind::config_error, source + ": solar day_of_year must lie in [1, 366]");
    if (!(so.st_step > 0.0) || so.st_end < so.st_start) throw Error(ErrorKind::config_error, source + ": solar st_step must be > 0 and st_end >= st_start");
    if (!(so.target_alpha >= 0.0 && so.target_alpha < 90.0)) throw Error(ErrorKind::config_error, source + ": solar target_alpha must lie in [0, 90)");
    try {
        sc.validate();
    } catch (const Error& e) {
        throw Error(ErrorKind::config_error, fmt::format("{}: {}", source, e.what()));
    }
    return app;
}

AppConfig parse_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::config_error, fmt::format("cannot read config file '{}'", path));
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str(), path);
}

}  // namespace solarpump::cli
