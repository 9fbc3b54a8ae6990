// cavsei_cli.cpp — command-line front end: steady, sweep, spectrum, g2tau, reproduce
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cavsei/config.hpp"
#include "cavsei/figures.hpp"
#include "cavsei/hilbert.hpp"
#include "cavsei/liouville.hpp"
#include "cavsei/model.hpp"
#include "cavsei/observables.hpp"
#include "cavsei/output.hpp"
#include "cavsei/spectrum.hpp"
#include "cavsei/sweep.hpp"

namespace {

using namespace cavsei;

// exit codes: 0 clean, 1 usage/config, 2 solver failure, 3 finished with flagged rows
struct ExitError : std::runtime_error {
    int code;
    ExitError(int c, const std::string& m) : std::runtime_error(m), code(c) {}
};

struct Common {
    std::string config_path;
    std::string out;
    int cutoff = 0;  // 0 → config value
    int threads = 0; // 0 → config value
    std::string format;
    std::vector<std::string> sets;
};

void add_common(CLI::App* sub, Common& cm) {
    sub->add_option("--config", cm.config_path, "configuration file (INI-style)")
        ->check(CLI::ExistingFile);
    sub->add_option("--out", cm.out, "output path; '-' writes to stdout")
        ->envname("CAVSEI_OUT");
    sub->add_option("--cutoff", cm.cutoff, "photon cutoff override")
        ->check(CLI::PositiveNumber)
        ->envname("CAVSEI_CUTOFF");
    sub->add_option("--threads", cm.threads, "worker threads")
        ->check(CLI::PositiveNumber)
        ->envname("CAVSEI_THREADS");
    sub->add_option("--format", cm.format, "output format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->envname("CAVSEI_FORMAT");
    sub->add_option("--set", cm.sets,
                    "config override, key=value or section.key=value (repeatable)")
        ->type_size(1)
        ->allow_extra_args(false);
}

config::RunConfig load_config(const Common& cm) {
    config::RunConfig c;
    if (!cm.config_path.empty()) c = config::parse_file(cm.config_path);
    for (const auto& s : cm.sets) config::apply_override(c, s);
    if (cm.cutoff > 0) c.cutoff = cm.cutoff;
    if (cm.threads > 0) c.threads = cm.threads;
    if (cm.format == "csv") c.format = config::OutputFormat::csv;
    if (cm.format == "json") c.format = config::OutputFormat::json;
    if (!cm.out.empty()) c.out_path = cm.out;
    if (c.threads < 1) throw ExitError(1, "threads must be >= 1");
    return c;
}

void emit(const output::Table& t, const output::Metadata& m, const std::string& path,
          bool json) {
    if (path == "-") {
        if (json) output::write_json(std::cout, t, m);
        else output::write_csv(std::cout, t, m);
        return;
    }
    std::ofstream f(path);
    if (!f) throw ExitError(1, "cannot open output path '" + path + "'");
    if (json) output::write_json(f, t, m);
    else output::write_csv(f, t, m);
    if (!f) throw ExitError(2, "write failed on '" + path + "'");
    std::cerr << "wrote " << path << "\n";
}

std::string resolve_out(const config::RunConfig& c, const std::string& command) {
    if (!c.out_path.empty()) return c.out_path;
    return output::timestamped_filename(command, c.format == config::OutputFormat::json);
}

void add_units_metadata(output::Metadata& m, const config::RunConfig& c) {
    const auto scale = config::physical_scale(c);
    if (!scale) {
        m.add("units", "dimensionless (energies and rates in g_a, time in 1/g_a)");
        return;
    }
    m.add("units", "physical, g_a/2pi = " + output::format_g9(scale->ga_kHz) +
                       " kHz; table values stay dimensionless in g_a");
    const double kappa_dimless = c.kappa_a / c.g_a;
    if (kappa_dimless > 0.0)
        m.add("timescale", "1/kappa_a = " +
                               output::format_g9(scale->time_us(1.0 / kappa_dimless)) + " us");
}

bool flagged(const sweep::SweepResult& r) {
    return std::any_of(r.rows.begin(), r.rows.end(),
                       [](const sweep::Row& row) { return !row.error.empty(); });
}

// ---------------------------------------------------------------- steady ----

std::map<std::string, double> value_map(const sweep::SweepSpec& spec, const sweep::Row& row) {
    std::map<std::string, double> out;
    for (size_t i = 0; i < spec.observables.size(); ++i)
        out[sweep::observable_name(spec.observables[i])] = row.values[i];
    return out;
}

int run_steady(const Common& cm) {
    config::RunConfig c = load_config(cm);
    c.axis1.reset();
    c.axis2.reset();
    c.trajectory = sweep::Trajectory::none;
    c.observables.clear(); // full observable set for the report
    const sweep::SweepSpec spec = config::to_sweep_spec(c);
    const sweep::Row row = sweep::evaluate_single(spec, spec.axis1.value(0));
    const bool total_failure =
        !row.error.empty() && std::all_of(row.values.begin(), row.values.end(),
                                          [](double x) { return std::isnan(x); });
    if (total_failure) throw ExitError(2, "steady-state evaluation failed: " + row.error);

    const model::ModelParams& p = row.params;
    std::printf("steady state  (cutoff %d%s, residual %.3g)\n", row.cutoff_used,
                row.converged ? "" : ", NOT converged", row.residual);
    std::printf("  Delta_a = %- .6g   delta   = %- .6g   phi = %.6g\n", p.Delta_a, p.delta,
                p.phi);
    std::printf("  V       = %- .6g   gamma_e = %- .6g   Omega = %.6g\n", p.V, p.gamma_e,
                p.Omega);
    std::printf("  kappa_a = %- .6g   gamma   = %- .6g\n", p.kappa_a, p.gamma);
    const auto v = value_map(spec, row);
    auto line = [&](const char* key) {
        const double x = v.at(key);
        if (std::isnan(x)) std::printf("  %-5s = nan\n", key);
        else if (x > 0 && std::string(key).rfind("g", 0) == 0)
            std::printf("  %-5s = %-12.6g (log10 %+.3f)\n", key, x, std::log10(x));
        else std::printf("  %-5s = %-12.6g\n", key, x);
    };
    line("n_s");
    line("g2_1");
    line("g3_1");
    line("g2_2");
    line("Cxx");
    line("Czz");
    if (!row.p_tilde.empty()) {
        std::printf("  p~(q) =");
        for (double pq : row.p_tilde) std::printf(" %.4g", pq);
        std::printf("\n");
    }
    if (!row.error.empty()) std::printf("  flagged: %s\n", row.error.c_str());

    if (!c.out_path.empty()) {
        sweep::SweepResult r;
        r.spec = spec;
        r.rows = {row};
        r.threads = 1;
        output::Metadata m = output::sweep_metadata(r, "steady");
        add_units_metadata(m, c);
        emit(output::to_table(r), m, c.out_path, c.format == config::OutputFormat::json);
    }
    return row.error.empty() ? 0 : 3;
}

// ----------------------------------------------------------------- sweep ----

int run_sweep_cmd(const Common& cm) {
    const config::RunConfig c = load_config(cm);
    const sweep::SweepSpec spec = config::to_sweep_spec(c);
    const sweep::SweepResult r = sweep::run_sweep(spec, c.threads);
    output::Metadata m = output::sweep_metadata(r, "sweep");
    add_units_metadata(m, c);
    emit(output::to_table(r), m, resolve_out(c, "sweep"),
         c.format == config::OutputFormat::json);
    if (flagged(r)) {
        std::cerr << "some rows are flagged; see the error column\n";
        return 3;
    }
    return 0;
}

// -------------------------------------------------------------- spectrum ----

int run_spectrum(const Common& cm, int n_max, double dmin, double dmax, int points,
                 const std::string& basis_name) {
    config::RunConfig c = load_config(cm);
    c.axis1 = config::RunConfig::AxisSpec{sweep::AxisParam::Delta_a, dmin, dmax, points};
    c.axis2.reset();
    c.trajectory = sweep::Trajectory::none;
    const sweep::SweepSpec spec = config::to_sweep_spec(c);
    const auto basis = basis_name == "bare" ? spectrum::ManifoldBasis::bare
                                            : spectrum::ManifoldBasis::collective;

    output::Table t;
    t.columns = {"n", "branch", "Delta_a", "energy", "dark"};
    for (int i = 0; i < spec.axis1.points; ++i) {
        const model::ModelParams p = sweep::resolve_point(spec, spec.axis1.value(i), {});
        for (int n = 1; n <= n_max; ++n) {
            const auto levels = spectrum::dressed_levels(n, p, basis);
            for (size_t b = 0; b < levels.size(); ++b)
                t.data.push_back({double(n), double(b), p.Delta_a, levels[b].energy,
                                  levels[b].dark ? 1.0 : 0.0});
        }
    }

    const model::ModelParams p0 = sweep::resolve_point(spec, spec.axis1.value(0), {});
    output::Metadata m;
    m.add("command", "spectrum");
    add_units_metadata(m, c);
    m.add("basis", basis_name);
    m.add("n_max", double(n_max));
    m.add("phi", p0.phi);
    m.add("V", p0.V);
    m.add("delta_mode", c.delta_mode == model::DeltaMode::fixed ? "fixed"
                        : c.delta_mode == model::DeltaMode::ratio_of_V
                            ? "ratio_of_V"
                            : "ratio_of_Delta_a");
    m.add("delta_value", c.delta);
    emit(t, m, resolve_out(c, "spectrum"), c.format == config::OutputFormat::json);
    return 0;
}

// ----------------------------------------------------------------- g2tau ----

int run_g2tau(const Common& cm, int order, double tau_max_kappa, int points) {
    config::RunConfig c = load_config(cm);
    c.axis1.reset();
    c.axis2.reset();
    c.trajectory = sweep::Trajectory::none;
    c.observables = {sweep::Observable::n_s,
                     order == 1 ? sweep::Observable::g2_1 : sweep::Observable::g2_2};
    const sweep::SweepSpec spec = config::to_sweep_spec(c);
    const sweep::Row row = sweep::evaluate_single(spec, spec.axis1.value(0));
    if (!row.error.empty())
        throw ExitError(2, "steady-state evaluation failed: " + row.error);

    // rebuild at the certified cutoff; channel layout matches the sweep engine
    const model::ModelParams& p = row.params;
    const auto ops = hilbert::build_operators(hilbert::build_space(row.cutoff_used));
    const Mat H = model::build_hamiltonian(p, ops);
    const double atom_rate = p.gamma + p.gamma_e;
    const Mat L = liouville::build_liouvillian(
        H, {{ops.a, p.kappa_a}, {ops.sm[0], atom_rate}, {ops.sm[1], atom_rate}});
    const Mat rho = liouville::steady_state(L, spec.steady);
    const auto taus = figures::tau_grid(p.kappa_a, tau_max_kappa, points);
    std::vector<double> g;
    try {
        g = liouville::regression_g2(L, rho, ops.a, order, taus);
    } catch (const liouville::NoEmissionError& e) {
        throw ExitError(2, std::string("no emission at this point: ") + e.what());
    }

    output::Table t;
    t.columns = {"tau", "tau_kappa", order == 1 ? "g2_1" : "g2_2"};
    for (size_t i = 0; i < taus.size(); ++i)
        t.data.push_back({taus[i], taus[i] * p.kappa_a, g[i]});
    output::Metadata m;
    m.add("command", "g2tau");
    add_units_metadata(m, c);
    m.add("order", double(order));
    m.add("cutoff", double(row.cutoff_used));
    m.add("Delta_a", p.Delta_a);
    m.add("delta", p.delta);
    m.add("phi", p.phi);
    m.add("V", p.V);
    m.add("gamma_e", p.gamma_e);
    m.add("g_tau0", g.empty() ? 0.0 : g.front());
    emit(t, m, resolve_out(c, "g2tau"), c.format == config::OutputFormat::json);
    return 0;
}

// ------------------------------------------------------------- reproduce ----

std::string with_suffix(const std::string& path, const std::string& suffix) {
    const size_t dot = path.find_last_of('.');
    const size_t slash = path.find_last_of('/');
    if (dot == std::string::npos || (slash != std::string::npos && dot < slash))
        return path + "_" + suffix;
    return path.substr(0, dot) + "_" + suffix + path.substr(dot);
}

int run_reproduce(const Common& cm, const std::string& tag, int points, int slices,
                  bool list) {
    if (list) {
        for (const auto& t : figures::figure_tags()) std::cout << t << "\n";
        return 0;
    }
    const auto tags = figures::figure_tags();
    if (std::find(tags.begin(), tags.end(), tag) == tags.end())
        throw ExitError(1, "unknown figure tag '" + tag + "' (see `reproduce --list`)");
    config::RunConfig c = load_config(cm); // only output/threads/cutoff matter here
    figures::FigureOptions opt;
    opt.points = points;
    opt.slices = slices;
    opt.cutoff = cm.cutoff;
    opt.threads = c.threads;
    const figures::FigureRun run = figures::run_figure(tag, opt);

    const bool json = c.format == config::OutputFormat::json;
    const std::string main_path = resolve_out(c, tag);
    output::Metadata m = run.metadata;
    add_units_metadata(m, c);
    for (const auto& [name, table] : run.tables) {
        const std::string path =
            name.empty() ? main_path
                         : (main_path == "-" ? "-" : with_suffix(main_path, name));
        emit(table, m, path, json);
    }
    if (!run.summary.empty()) std::cout << run.summary << "\n";
    if (!run.clean) {
        std::cerr << "some rows are flagged; see the error column\n";
        return 3;
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"two-atom cavity array simulator: photon statistics, correlations, "
                 "and dressed-state spectra with tunable drive phase and spin exchange"};
    app.require_subcommand(1);

    Common cm_steady, cm_sweep, cm_spectrum, cm_g2tau, cm_repro;

    auto* steady = app.add_subcommand("steady", "solve one steady state and report observables");
    add_common(steady, cm_steady);

    auto* sweep_cmd = app.add_subcommand("sweep", "run the parameter sweep from the config");
    add_common(sweep_cmd, cm_sweep);

    auto* spectrum_cmd =
        app.add_subcommand("spectrum", "dressed-level energies vs cavity detuning");
    add_common(spectrum_cmd, cm_spectrum);
    int n_max = 2, spec_points = 121;
    double dmin = -3.0, dmax = 3.0;
    std::string basis = "collective";
    spectrum_cmd->add_option("--n-max", n_max, "highest excitation manifold")
        ->check(CLI::PositiveNumber);
    spectrum_cmd->add_option("--delta-min", dmin, "detuning grid start");
    spectrum_cmd->add_option("--delta-max", dmax, "detuning grid end");
    spectrum_cmd->add_option("--points", spec_points, "detuning grid points")
        ->check(CLI::PositiveNumber);
    spectrum_cmd->add_option("--basis", basis, "level coordinates")
        ->check(CLI::IsMember({"bare", "collective"}));

    auto* g2tau_cmd =
        app.add_subcommand("g2tau", "delayed photon correlation g_n^(2)(tau) at one point");
    add_common(g2tau_cmd, cm_g2tau);
    int order = 1, tau_points = 81;
    double tau_max = 20.0;
    g2tau_cmd->add_option("--n", order, "correlation order (1 or 2)")
        ->check(CLI::Range(1, 2));
    g2tau_cmd->add_option("--tau-max", tau_max, "grid end in units of 1/kappa_a")
        ->check(CLI::PositiveNumber);
    g2tau_cmd->add_option("--points", tau_points, "tau grid points")
        ->check(CLI::Range(2, 100000));

    auto* repro = app.add_subcommand("reproduce", "generate a preset figure data set");
    add_common(repro, cm_repro);
    std::string tag;
    int fig_points = 0, fig_slices = 0;
    bool list_tags = false;
    repro->add_option("tag", tag, "figure tag (see --list)");
    repro->add_option("--points", fig_points, "grid points per axis (0 = preset default)");
    repro->add_option("--slices", fig_slices, "detuning slices where applicable");
    repro->add_flag("--list", list_tags, "list available figure tags");

    CLI11_PARSE(app, argc, argv);

    try {
        if (steady->parsed()) return run_steady(cm_steady);
        if (sweep_cmd->parsed()) return run_sweep_cmd(cm_sweep);
        if (spectrum_cmd->parsed())
            return run_spectrum(cm_spectrum, n_max, dmin, dmax, spec_points, basis);
        if (g2tau_cmd->parsed()) return run_g2tau(cm_g2tau, order, tau_max, tau_points);
        if (repro->parsed()) {
            if (tag.empty() && !list_tags)
                throw ExitError(1, "reproduce needs a figure tag (see `reproduce --list`)");
            return run_reproduce(cm_repro, tag, fig_points, fig_slices, list_tags);
        }
    } catch (const ExitError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.code;
    } catch (const config::ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
