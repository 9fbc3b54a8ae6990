// config.cpp — strict INI-style configuration handling
#include "cavsei/config.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

namespace cavsei::config {

namespace {

std::string trim(const std::string& s) {
    size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

// strip a trailing comment introduced by whitespace + '#'
std::string strip_trailing_comment(const std::string& s) {
    for (size_t i = 1; i < s.size(); ++i)
        if (s[i] == '#' && (s[i - 1] == ' ' || s[i - 1] == '\t')) return s.substr(0, i);
    return s;
}

[[noreturn]] void fail(int line, const std::string& msg) {
    if (line > 0) throw ConfigError("config line " + std::to_string(line) + ": " + msg);
    throw ConfigError("config override: " + msg);
}

double parse_number(const std::string& v, int line, const std::string& key, bool physical,
                    bool frequency) {
    const char* s = v.c_str();
    char* end = nullptr;
    const double x = std::strtod(s, &end);
    if (end == s) fail(line, "key '" + key + "': cannot parse number from '" + v + "'");
    std::string suffix = trim(std::string(end));
    if (suffix.empty()) return x;
    if (!physical || !frequency)
        fail(line, "key '" + key + "': unexpected suffix '" + suffix + "'");
    if (suffix == "kHz" || suffix == "khz") return x;
    if (suffix == "MHz" || suffix == "mhz") return x * 1e3;
    fail(line, "key '" + key + "': unknown unit '" + suffix + "' (use kHz or MHz)");
}

double parse_phi(const std::string& v, int line, const std::string& key) {
    std::string s = trim(v);
    if (s == "pi") return kPi;
    const size_t pos = s.find("pi");
    if (pos != std::string::npos && pos + 2 == s.size()) {
        std::string head = trim(s.substr(0, pos));
        if (!head.empty() && head.back() == '*') head = trim(head.substr(0, head.size() - 1));
        if (head.empty()) return kPi;
        char* end = nullptr;
        const double m = std::strtod(head.c_str(), &end);
        if (end == head.c_str() || *end != '\0')
            fail(line, "key '" + key + "': cannot parse '" + v + "'");
        return m * kPi;
    }
    char* end = nullptr;
    const double x = std::strtod(s.c_str(), &end);
    if (end == s.c_str() || trim(std::string(end)) != "")
        fail(line, "key '" + key + "': cannot parse '" + v + "'");
    return x;
}

int parse_int(const std::string& v, int line, const std::string& key) {
    char* end = nullptr;
    const long x = std::strtol(v.c_str(), &end, 10);
    if (end == v.c_str() || trim(std::string(end)) != "")
        fail(line, "key '" + key + "': cannot parse integer from '" + v + "'");
    return int(x);
}

bool parse_bool(const std::string& v, int line, const std::string& key) {
    if (v == "true" || v == "yes" || v == "1") return true;
    if (v == "false" || v == "no" || v == "0") return false;
    fail(line, "key '" + key + "': cannot parse boolean from '" + v + "'");
}

std::vector<std::string> split_ws(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream iss(s);
    std::string tok;
    while (iss >> tok) out.push_back(tok);
    return out;
}

std::string fmt17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

RunConfig::AxisSpec parse_axis(const std::string& v, int line, const std::string& key,
                               bool physical) {
    const auto tok = split_ws(v);
    if (tok.size() != 4) fail(line, "key '" + key + "': expected '<param> <lo> <hi> <points>'");
    const auto param = sweep::axis_param_from_name(tok[0]);
    if (!param) fail(line, "key '" + key + "': unknown axis parameter '" + tok[0] + "'");
    RunConfig::AxisSpec ax;
    ax.param = *param;
    if (*param == sweep::AxisParam::phi) { // phase bounds use the phi grammar, e.g. 0.5pi
        ax.lo = parse_phi(tok[1], line, key);
        ax.hi = parse_phi(tok[2], line, key);
    } else {
        ax.lo = parse_number(tok[1], line, key, physical, true);
        ax.hi = parse_number(tok[2], line, key, physical, true);
    }
    ax.points = parse_int(tok[3], line, key);
    return ax;
}

// shared key dispatch for the file parser and --set overrides
void set_key(RunConfig& c, const std::string& section, const std::string& key,
             const std::string& val, int line) {
    const bool physical = c.units == model::UnitSystem::physical_kHz;
    auto num = [&](bool freq = true) { return parse_number(val, line, key, physical, freq); };

    if (section == "model") {
        if (key == "g_a") c.g_a = num();
        else if (key == "kappa_a") c.kappa_a = num();
        else if (key == "gamma") c.gamma = num();
        else if (key == "gamma_e") c.gamma_e = num();
        else if (key == "Omega") c.Omega = num();
        else if (key == "Delta_a") c.Delta_a = num();
        else if (key == "delta") c.delta = num(); // ratio or frequency per delta_mode
        else if (key == "phi") c.phi = parse_phi(val, line, key);
        else if (key == "V") c.V = num();
        else if (key == "delta_mode") {
            if (val == "fixed") c.delta_mode = model::DeltaMode::fixed;
            else if (val == "ratio_of_Delta_a") c.delta_mode = model::DeltaMode::ratio_of_Delta_a;
            else if (val == "ratio_of_V") c.delta_mode = model::DeltaMode::ratio_of_V;
            else fail(line, "key 'delta_mode': unknown mode '" + val + "'");
        } else if (key == "gamma_e_mode") {
            if (val == "from_sei") c.gamma_e_mode = sweep::GammaEMode::from_sei;
            else if (val == "fixed") c.gamma_e_mode = sweep::GammaEMode::fixed;
            else fail(line, "key 'gamma_e_mode': unknown mode '" + val + "'");
        } else fail(line, "unknown key '" + key + "' in [model]");
    } else if (section == "sweep") {
        if (key == "axis1") c.axis1 = parse_axis(val, line, key, physical);
        else if (key == "axis2") c.axis2 = parse_axis(val, line, key, physical);
        else if (key == "trajectory") {
            const auto t = sweep::trajectory_from_name(val);
            if (!t) fail(line, "key 'trajectory': unknown trajectory '" + val + "'");
            c.trajectory = *t;
        } else if (key == "observables") {
            c.observables.clear();
            for (const auto& name : split_ws(val)) {
                const auto o = sweep::observable_from_name(name);
                if (!o) fail(line, "key 'observables': unknown observable '" + name + "'");
                c.observables.push_back(*o);
            }
        } else if (key == "cutoff") c.cutoff = parse_int(val, line, key);
        else if (key == "convergence_check") c.convergence_check = parse_bool(val, line, key);
        else fail(line, "unknown key '" + key + "' in [sweep]");
    } else if (section == "output") {
        if (key == "path") c.out_path = val;
        else if (key == "format") {
            if (val == "csv") c.format = OutputFormat::csv;
            else if (val == "json") c.format = OutputFormat::json;
            else fail(line, "key 'format': unknown format '" + val + "'");
        } else if (key == "threads") c.threads = parse_int(val, line, key);
        else fail(line, "unknown key '" + key + "' in [output]");
    } else {
        fail(line, "unknown section [" + section + "]");
    }
}

} // namespace

RunConfig parse_string(const std::string& text) {
    RunConfig c;
    c.observables.clear();
    bool units_seen = false;
    // pre-pass: units must be known before frequency suffixes are judged
    {
        std::istringstream pre(text);
        std::string l;
        int ln = 0;
        std::string sec;
        while (std::getline(pre, l)) {
            ++ln;
            l = trim(strip_trailing_comment(l));
            if (l.empty() || l[0] == '#' || l[0] == ';') continue;
            if (l.front() == '[') {
                sec = l;
                continue;
            }
            const size_t eq = l.find('=');
            if (eq == std::string::npos) continue;
            if (trim(l.substr(0, eq)) == "units" && sec == "[model]") {
                const std::string v = trim(l.substr(eq + 1));
                if (v == "dimensionless") c.units = model::UnitSystem::dimensionless_ga;
                else if (v == "physical") c.units = model::UnitSystem::physical_kHz;
                else fail(ln, "units must be 'dimensionless' or 'physical', got '" + v + "'");
                if (units_seen) fail(ln, "duplicate key 'units' in [model]");
                units_seen = true;
                if (c.units == model::UnitSystem::physical_kHz) c.g_a = 120.0;
            }
        }
    }
    if (!units_seen) throw ConfigError("config: missing required key 'units' in [model]");

    std::istringstream in(text);
    std::string raw;
    std::string section;
    std::set<std::string> seen;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        std::string l = trim(strip_trailing_comment(raw));
        if (l.empty() || l[0] == '#' || l[0] == ';') continue;
        if (l.front() == '[') {
            if (l.back() != ']') fail(line, "malformed section header '" + l + "'");
            section = l.substr(1, l.size() - 2);
            if (section != "model" && section != "sweep" && section != "output")
                fail(line, "unknown section [" + section + "]");
            continue;
        }
        const size_t eq = l.find('=');
        if (eq == std::string::npos) fail(line, "expected 'key = value', got '" + l + "'");
        const std::string key = trim(l.substr(0, eq));
        const std::string val = trim(l.substr(eq + 1));
        if (section.empty()) fail(line, "key '" + key + "' outside any section");
        if (!seen.insert(section + "." + key).second)
            fail(line, "duplicate key '" + key + "' in [" + section + "]");
        if (section == "model" && key == "units") continue; // handled in the pre-pass
        set_key(c, section, key, val, line);
    }
    return c;
}

RunConfig parse_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ConfigError("config: cannot open '" + path + "'");
    std::stringstream ss;
    ss << f.rdbuf();
    return parse_string(ss.str());
}

void apply_override(RunConfig& c, const std::string& assignment) {
    const size_t eq = assignment.find('=');
    if (eq == std::string::npos)
        throw ConfigError("config override: expected key=value, got '" + assignment + "'");
    std::string key = trim(assignment.substr(0, eq));
    const std::string val = trim(assignment.substr(eq + 1));
    std::string section = "model";
    const size_t dot = key.find('.');
    if (dot != std::string::npos) {
        section = key.substr(0, dot);
        key = key.substr(dot + 1);
    }
    if (key == "units")
        throw ConfigError("config override: 'units' must be set in the config file");
    set_key(c, section, key, val, 0);
}

std::string serialize(const RunConfig& c) {
    std::ostringstream o;
    o << "[model]\n";
    o << "units = "
      << (c.units == model::UnitSystem::physical_kHz ? "physical" : "dimensionless") << "\n";
    o << "g_a = " << fmt17(c.g_a) << "\n";
    o << "kappa_a = " << fmt17(c.kappa_a) << "\n";
    o << "gamma = " << fmt17(c.gamma) << "\n";
    o << "gamma_e = " << fmt17(c.gamma_e) << "\n";
    o << "Omega = " << fmt17(c.Omega) << "\n";
    o << "Delta_a = " << fmt17(c.Delta_a) << "\n";
    o << "delta = " << fmt17(c.delta) << "\n";
    o << "phi = " << fmt17(c.phi) << "\n";
    o << "V = " << fmt17(c.V) << "\n";
    switch (c.delta_mode) {
    case model::DeltaMode::fixed: o << "delta_mode = fixed\n"; break;
    case model::DeltaMode::ratio_of_Delta_a: o << "delta_mode = ratio_of_Delta_a\n"; break;
    case model::DeltaMode::ratio_of_V: o << "delta_mode = ratio_of_V\n"; break;
    }
    o << "gamma_e_mode = "
      << (c.gamma_e_mode == sweep::GammaEMode::from_sei ? "from_sei" : "fixed") << "\n";
    o << "\n[sweep]\n";
    auto put_axis = [&](const char* key, const RunConfig::AxisSpec& ax) {
        o << key << " = " << sweep::axis_param_name(ax.param) << " " << fmt17(ax.lo) << " "
          << fmt17(ax.hi) << " " << ax.points << "\n";
    };
    if (c.axis1) put_axis("axis1", *c.axis1);
    if (c.axis2) put_axis("axis2", *c.axis2);
    o << "trajectory = " << sweep::trajectory_name(c.trajectory) << "\n";
    if (!c.observables.empty()) {
        o << "observables =";
        for (auto ob : c.observables) o << " " << sweep::observable_name(ob);
        o << "\n";
    }
    o << "cutoff = " << c.cutoff << "\n";
    o << "convergence_check = " << (c.convergence_check ? "true" : "false") << "\n";
    o << "\n[output]\n";
    if (!c.out_path.empty()) o << "path = " << c.out_path << "\n";
    o << "format = " << (c.format == OutputFormat::json ? "json" : "csv") << "\n";
    o << "threads = " << c.threads << "\n";
    return o.str();
}

std::optional<model::PhysicalScale> physical_scale(const RunConfig& c) {
    if (c.units != model::UnitSystem::physical_kHz) return std::nullopt;
    model::PhysicalScale s;
    s.ga_kHz = c.g_a;
    return s;
}

sweep::SweepSpec to_sweep_spec(const RunConfig& c) {
    const bool physical = c.units == model::UnitSystem::physical_kHz;
    if (physical && c.g_a <= 0.0) throw ConfigError("config: physical units need g_a > 0");
    const double s = physical ? c.g_a : 1.0;

    sweep::SweepSpec spec;
    spec.base.g_a = physical ? 1.0 : c.g_a;
    spec.base.kappa_a = c.kappa_a / s;
    spec.base.gamma = c.gamma / s;
    spec.base.gamma_e = c.gamma_e / s;
    spec.base.Omega = c.Omega / s;
    spec.base.Delta_a = c.Delta_a / s;
    spec.base.phi = c.phi;
    spec.base.V = c.V / s;
    spec.base.units = model::UnitSystem::dimensionless_ga;

    spec.delta_mode = c.delta_mode;
    spec.delta_value = (c.delta_mode == model::DeltaMode::fixed) ? c.delta / s : c.delta;

    auto convert_axis = [&](const RunConfig::AxisSpec& ax) {
        sweep::Axis out;
        out.param = ax.param;
        const double f = (ax.param == sweep::AxisParam::phi) ? 1.0 : s;
        out.lo = ax.lo / f;
        out.hi = ax.hi / f;
        out.points = ax.points;
        return out;
    };
    if (c.axis1) {
        spec.axis1 = convert_axis(*c.axis1);
    } else {
        spec.axis1 = sweep::Axis{sweep::AxisParam::Delta_a, spec.base.Delta_a, spec.base.Delta_a, 1};
    }
    if (c.axis2) spec.axis2 = convert_axis(*c.axis2);
    spec.trajectory = c.trajectory;
    spec.gamma_e_mode = c.gamma_e_mode;
    spec.observables = c.observables;
    if (spec.observables.empty())
        spec.observables = {sweep::Observable::n_s, sweep::Observable::g2_1,
                            sweep::Observable::g3_1, sweep::Observable::g2_2,
                            sweep::Observable::p_tilde, sweep::Observable::Cxx,
                            sweep::Observable::Czz};
    spec.photon_cutoff = c.cutoff;
    spec.convergence_check = c.convergence_check;
    spec.validate();
    return spec;
}

} // namespace cavsei::config
