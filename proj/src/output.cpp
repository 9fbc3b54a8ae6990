// output.cpp — table construction and serialization
#include "cavsei/output.hpp"

#include <cmath>
#include <cstdio>
#include <ctime>
#include <limits>

#include <json.hpp>

namespace cavsei::output {

void Metadata::add(const std::string& k, double v) { add(k, format_g9(v)); }

std::string format_g9(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.9g", x);
    return buf;
}

Table to_table(const sweep::SweepResult& r) {
    const auto& spec = r.spec;
    Table t;
    t.columns.push_back(sweep::axis_param_name(spec.axis1.param));
    if (spec.axis2) t.columns.push_back(sweep::axis_param_name(spec.axis2->param));

    bool wants_ptilde = false;
    for (auto o : spec.observables) {
        if (o == sweep::Observable::p_tilde) {
            wants_ptilde = true;
            continue;
        }
        t.columns.push_back(sweep::observable_name(o));
        if (sweep::is_g_observable(o)) t.columns.push_back("log10_" + sweep::observable_name(o));
    }
    if (wants_ptilde)
        for (int q = 0; q <= spec.photon_cutoff; ++q)
            t.columns.push_back("ptilde_" + std::to_string(q));
    t.columns.push_back("cutoff");
    t.columns.push_back("converged");
    t.columns.push_back("residual");

    for (const auto& row : r.rows) {
        std::vector<double> out;
        out.insert(out.end(), row.axes.begin(), row.axes.end());
        for (size_t i = 0; i < spec.observables.size(); ++i) {
            const auto o = spec.observables[i];
            if (o == sweep::Observable::p_tilde) continue;
            const double v = i < row.values.size() ? row.values[i]
                                                   : std::numeric_limits<double>::quiet_NaN();
            out.push_back(v);
            if (sweep::is_g_observable(o))
                out.push_back(v > 0.0 ? std::log10(v)
                                      : -std::numeric_limits<double>::infinity());
        }
        if (wants_ptilde) {
            for (int q = 0; q <= spec.photon_cutoff; ++q)
                out.push_back(size_t(q) < row.p_tilde.size()
                                  ? row.p_tilde[size_t(q)]
                                  : std::numeric_limits<double>::quiet_NaN());
        }
        out.push_back(double(row.cutoff_used));
        out.push_back(row.converged ? 1.0 : 0.0);
        out.push_back(row.residual);
        t.data.push_back(std::move(out));
        t.errors.push_back(row.error);
    }
    return t;
}

Metadata sweep_metadata(const sweep::SweepResult& r, const std::string& command) {
    const auto& spec = r.spec;
    Metadata m;
    m.add("command", command);
    m.add("units", "g_a");
    m.add("g_a", spec.base.g_a);
    m.add("kappa_a", spec.base.kappa_a);
    m.add("gamma", spec.base.gamma);
    m.add("Omega", spec.base.Omega);
    m.add("phi", spec.base.phi);
    m.add("V", spec.base.V);
    m.add("Delta_a", spec.base.Delta_a);
    switch (spec.delta_mode) {
    case model::DeltaMode::fixed: m.add("delta_mode", "fixed"); break;
    case model::DeltaMode::ratio_of_Delta_a: m.add("delta_mode", "ratio_of_Delta_a"); break;
    case model::DeltaMode::ratio_of_V: m.add("delta_mode", "ratio_of_V"); break;
    }
    m.add("delta_value", spec.delta_value);
    m.add("gamma_e_mode",
          spec.gamma_e_mode == sweep::GammaEMode::from_sei ? "from_sei" : "fixed");
    m.add("trajectory", sweep::trajectory_name(spec.trajectory));
    m.add("cutoff", double(spec.photon_cutoff));
    m.add("convergence_check", spec.convergence_check ? "true" : "false");
    m.add("threads", double(r.threads));
    m.add("wall_seconds", r.wall_seconds);
    return m;
}

namespace {

std::string sanitize_error(std::string e) {
    for (auto& ch : e)
        if (ch == ',' || ch == '\n' || ch == '\r') ch = ';';
    return e;
}

} // namespace

void write_csv(std::ostream& os, const Table& t, const Metadata& m) {
    for (const auto& [k, v] : m.items) os << "# " << k << " = " << v << "\n";
    for (size_t i = 0; i < t.columns.size(); ++i)
        os << t.columns[i] << (i + 1 < t.columns.size() ? "," : "");
    os << ",error\n";
    for (size_t r = 0; r < t.data.size(); ++r) {
        const auto& row = t.data[r];
        for (size_t i = 0; i < row.size(); ++i)
            os << format_g9(row[i]) << (i + 1 < row.size() ? "," : "");
        os << "," << (r < t.errors.size() ? sanitize_error(t.errors[r]) : "") << "\n";
    }
}

void write_json(std::ostream& os, const Table& t, const Metadata& m) {
    nlohmann::json j;
    for (const auto& [k, v] : m.items) j["metadata"][k] = v;
    j["columns"] = t.columns;
    j["rows"] = nlohmann::json::array();
    for (const auto& row : t.data) {
        nlohmann::json jr = nlohmann::json::array();
        for (double v : row) {
            if (std::isfinite(v)) jr.push_back(v);
            else jr.push_back(nullptr);
        }
        j["rows"].push_back(std::move(jr));
    }
    j["errors"] = t.errors;
    os << j.dump(2) << "\n";
}

std::string timestamped_filename(const std::string& command, bool json) {
    const std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%s_%04d%02d%02d_%02d%02d%02d.%s", command.c_str(),
                  tm.tm_year + 1900, tm.tm_mon + 1, tm.tm_mday, tm.tm_hour, tm.tm_min,
                  tm.tm_sec, json ? "json" : "csv");
    return buf;
}

} // namespace cavsei::output
