// figures.cpp — preset construction and drivers for the reproduce command
#include "cavsei/figures.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "cavsei/hilbert.hpp"
#include "cavsei/liouville.hpp"
#include "cavsei/model.hpp"
#include "cavsei/observables.hpp"
#include "cavsei/spectrum.hpp"

namespace cavsei::figures {

namespace O = sweep;
using sweep::Observable;

std::vector<std::string> figure_tags() {
    return {"fig2a", "fig2b", "fig2c", "fig2d", "fig2e", "fig2f", "fig3",
            "fig4abc", "fig4d", "fig4e", "fig4f", "fig4g", "fig4h"};
}

namespace {

// drive amplitude behind every reference data set (0.4 κ_a); the library-wide
// default of 0.2 κ_a does not reproduce the recorded curves
constexpr double kPresetDrive = 0.05;

sweep::SweepSpec base_spec() {
    sweep::SweepSpec s;
    s.base = model::ModelParams{}; // defaults: kappa 0.125, gamma 0.0625
    s.base.Omega = kPresetDrive;
    s.gamma_e_mode = sweep::GammaEMode::from_sei;
    s.photon_cutoff = 7;
    s.convergence_check = true;
    return s;
}

int or_default(int v, int dflt) { return v > 0 ? v : dflt; }

std::string g9(double x) { return output::format_g9(x); }

bool table_clean(const output::Table& t, const sweep::SweepResult& r) {
    (void)t;
    for (const auto& row : r.rows)
        if (!row.error.empty() || !row.converged) return false;
    return true;
}

// steady state recomputed at the certified cutoff of a point row; same code
// path as the sweep evaluation, so values reproduce exactly
struct PointContext {
    hilbert::Operators ops;
    Mat L;
    Mat rho;
};

PointContext point_context(const model::ModelParams& p, int cutoff) {
    PointContext c{hilbert::build_operators(hilbert::build_space(cutoff)), {}, {}};
    const Mat H = model::build_hamiltonian(p, c.ops);
    std::vector<liouville::CollapseChannel> channels{
        {c.ops.a, p.kappa_a},
        {c.ops.sm[0], p.gamma + p.gamma_e},
        {c.ops.sm[1], p.gamma + p.gamma_e}};
    c.L = liouville::build_liouvillian(H, channels);
    c.rho = liouville::steady_state(c.L);
    return c;
}

output::Table tau_table(const PointContext& ctx, const std::vector<double>& taus,
                        const std::vector<int>& orders) {
    output::Table t;
    t.columns.push_back("tau");
    std::vector<std::vector<double>> series;
    for (int n : orders) {
        t.columns.push_back("g2_" + std::to_string(n));
        series.push_back(
            liouville::regression_g2(ctx.L, ctx.rho, ctx.ops.a, n, taus));
    }
    for (size_t j = 0; j < taus.size(); ++j) {
        std::vector<double> row{taus[j]};
        for (const auto& s : series) row.push_back(s[j]);
        t.data.push_back(std::move(row));
        t.errors.emplace_back();
    }
    return t;
}

output::Table ptilde_table(const PointContext& ctx) {
    const auto dist = obs::photon_distribution(ctx.rho, ctx.ops.space);
    output::Table t;
    t.columns = {"q", "p", "p_tilde"};
    for (size_t q = 0; q < dist.p.size(); ++q) {
        const double pt = dist.p_tilde.empty() ? 0.0 : dist.p_tilde[q];
        t.data.push_back({double(q), dist.p[q], pt});
        t.errors.emplace_back();
    }
    return t;
}

FigureRun sweep_figure(const std::string& tag, const sweep::SweepSpec& spec,
                       const FigureOptions& opt, const std::string& summary_obs) {
    sweep::SweepSpec s = spec;
    if (opt.cutoff > 0) s.photon_cutoff = opt.cutoff;
    const auto result = sweep::run_sweep(s, opt.threads);
    FigureRun run;
    run.tag = tag;
    run.tables.emplace_back("", output::to_table(result));
    run.metadata = output::sweep_metadata(result, "reproduce " + tag);
    run.clean = table_clean(run.tables[0].second, result);
    if (!summary_obs.empty()) {
        const auto obs = sweep::observable_from_name(summary_obs);
        const auto opts = sweep::extract_optimum(result, *obs,
                                                 s.axis1.param, true);
        if (!opts.empty()) {
            std::ostringstream ss;
            ss << tag << ": min " << summary_obs << " = " << g9(opts[0].value_interp)
               << " at " << sweep::axis_param_name(s.axis1.param) << " = "
               << g9(opts[0].axis_interp);
            run.summary = ss.str();
        }
    }
    return run;
}

} // namespace

sweep::SweepSpec fig2e_spec(int points) {
    auto s = base_spec();
    s.axis1 = {O::AxisParam::V, -2.0, 2.0, points};
    s.trajectory = O::Trajectory::blue_sideband_rabi;
    s.delta_mode = model::DeltaMode::ratio_of_Delta_a;
    s.delta_value = 0.5;
    s.base.phi = 0.0;
    s.observables = {Observable::n_s, Observable::g2_1};
    return s;
}

sweep::SweepSpec fig4d_spec(int points) {
    auto s = base_spec();
    s.axis1 = {O::AxisParam::V, 0.1, 2.0, points};
    s.trajectory = O::Trajectory::blue_two_photon;
    s.delta_mode = model::DeltaMode::ratio_of_V;
    s.delta_value = -1.0;
    s.base.phi = kPi;
    s.observables = {Observable::n_s, Observable::g2_1, Observable::g3_1};
    return s;
}

sweep::SweepSpec fig4e_spec(int points) {
    auto s = base_spec();
    s.axis1 = {O::AxisParam::V, 0.05, 2.0, points};
    s.trajectory = O::Trajectory::red_two_photon;
    s.delta_mode = model::DeltaMode::ratio_of_V;
    s.delta_value = -1.0;
    s.base.phi = kPi;
    s.observables = {Observable::n_s, Observable::g2_1, Observable::g3_1};
    return s;
}

model::ModelParams fig2f_point() {
    model::ModelParams p;
    p.Omega = kPresetDrive;
    p.V = 2.0;
    p.phi = 0.0;
    p.Delta_a = spectrum::blue_sideband_rabi_detuning(p.V, p.g_a);
    p.delta = 0.5 * p.Delta_a;
    p.gamma_e = model::gamma_e_for_V(p.V);
    return p;
}

model::ModelParams fig4h_point() {
    model::ModelParams p;
    p.Omega = kPresetDrive;
    p.V = 0.4;
    p.phi = kPi;
    p.Delta_a = 0.8;
    p.delta = -p.V;
    p.gamma_e = model::gamma_e_for_V(p.V);
    return p;
}

sweep::SweepSpec point_spec(const model::ModelParams& p,
                            std::vector<sweep::Observable> observables, int cutoff) {
    sweep::SweepSpec s;
    s.base = p;
    s.axis1 = {O::AxisParam::Delta_a, p.Delta_a, p.Delta_a, 1};
    s.delta_mode = model::DeltaMode::fixed;
    s.delta_value = p.delta;
    s.gamma_e_mode = sweep::GammaEMode::fixed;
    s.observables = std::move(observables);
    s.photon_cutoff = cutoff;
    return s;
}

std::vector<double> tau_grid(double kappa, double max_over_kappa, int points) {
    if (kappa <= 0.0 || points < 2) throw std::invalid_argument("tau_grid: bad arguments");
    std::vector<double> taus(size_t(points), 0.0);
    const double tmax = max_over_kappa / kappa;
    for (int j = 0; j < points; ++j) taus[size_t(j)] = tmax * double(j) / double(points - 1);
    return taus;
}

namespace {

FigureRun point_figure(const std::string& tag, const model::ModelParams& p,
                       const std::vector<int>& tau_orders, const FigureOptions& opt) {
    const int cutoff = or_default(opt.cutoff, 7);
    auto all = std::vector<Observable>{Observable::n_s, Observable::g2_1, Observable::g3_1,
                                       Observable::g2_2, Observable::p_tilde,
                                       Observable::Cxx, Observable::Czz};
    const auto spec = point_spec(p, all, cutoff);
    sweep::SweepResult result;
    result.spec = spec;
    result.rows.push_back(sweep::evaluate_single(spec, p.Delta_a));
    result.threads = opt.threads;
    const auto& row = result.rows[0];

    FigureRun run;
    run.tag = tag;
    run.tables.emplace_back("", output::to_table(result));
    run.metadata = output::sweep_metadata(result, "reproduce " + tag);
    run.clean = row.error.empty() && row.converged;
    if (!run.clean) {
        run.summary = tag + ": point evaluation failed: " + row.error;
        return run;
    }

    const auto ctx = point_context(row.params, row.cutoff_used);
    const int tau_points = or_default(opt.points, 81);
    const auto taus = tau_grid(p.kappa_a, 20.0, tau_points);
    run.tables.emplace_back("tau", tau_table(ctx, taus, tau_orders));
    run.tables.emplace_back("ptilde", ptilde_table(ctx));

    const auto dist = obs::photon_distribution(ctx.rho, ctx.ops.space);
    std::ostringstream ss;
    ss << tag << ": n_s = " << g9(row.values[0]) << ", g2_1(0) = " << g9(row.values[1]);
    if (!dist.p_tilde.empty()) {
        ss << ", p_tilde(1) = " << g9(dist.p_tilde[1]);
        double tail = 0.0;
        for (size_t q = 3; q < dist.p_tilde.size(); ++q) tail += dist.p_tilde[q];
        ss << ", sum_{q>2} p_tilde = " << g9(tail);
    }
    run.summary = ss.str();
    return run;
}

FigureRun fig3_figure(const FigureOptions& opt) {
    const int n_slices = or_default(opt.slices, 7);
    const int pts = or_default(opt.points, 41);
    FigureRun run;
    run.tag = "fig3";
    output::Table t;
    t.columns = {"delta", "Delta_a", "n_s", "g2_1", "log10_g2_1", "Cxx", "Czz",
                 "cutoff", "converged", "residual"};
    run.metadata.add("command", "reproduce fig3");
    run.metadata.add("V", 2.0);
    run.metadata.add("phi", 0.0);
    run.metadata.add("delta_range", "[-2.2, -1.0]");

    double best_g2 = std::numeric_limits<double>::infinity();
    double best_delta = 0.0, best_Delta = 0.0, best_ns = 0.0;
    for (int si = 0; si < n_slices; ++si) {
        const double delta =
            n_slices == 1 ? -2.2 : -2.2 + 1.2 * double(si) / double(n_slices - 1);
        auto s = base_spec();
        s.base.phi = 0.0;
        s.base.V = 2.0;
        s.delta_mode = model::DeltaMode::fixed;
        s.delta_value = delta;
        s.observables = {Observable::n_s, Observable::g2_1, Observable::Cxx, Observable::Czz};
        if (opt.cutoff > 0) s.photon_cutoff = opt.cutoff;
        double center = 0.0;
        try {
            center = spectrum::single_photon_detuning_fixed_delta(delta, s.base.V,
                                                                  s.base.g_a, s.base.phi);
        } catch (const std::domain_error&) {
            t.data.push_back({delta, std::numeric_limits<double>::quiet_NaN(),
                              std::numeric_limits<double>::quiet_NaN(),
                              std::numeric_limits<double>::quiet_NaN(),
                              std::numeric_limits<double>::quiet_NaN(),
                              std::numeric_limits<double>::quiet_NaN(),
                              std::numeric_limits<double>::quiet_NaN(), 0.0, 0.0, 0.0});
            t.errors.push_back("single-photon resonance at infinity (delta = -V)");
            run.clean = false;
            continue;
        }
        s.axis1 = {O::AxisParam::Delta_a, center - 2.0, center + 2.0, pts};
        const auto res = sweep::run_sweep(s, opt.threads);
        for (const auto& row : res.rows) {
            const double g2 = row.values[1];
            t.data.push_back({delta, row.axes[0], row.values[0], g2,
                              g2 > 0.0 ? std::log10(g2)
                                       : -std::numeric_limits<double>::infinity(),
                              row.values[2], row.values[3], double(row.cutoff_used),
                              row.converged ? 1.0 : 0.0, row.residual});
            t.errors.push_back(row.error);
            if (!row.error.empty() || !row.converged) run.clean = false;
            if (row.error.empty() && std::isfinite(g2) && g2 < best_g2) {
                best_g2 = g2;
                best_delta = delta;
                best_Delta = row.axes[0];
                best_ns = row.values[0];
            }
        }
    }
    run.tables.emplace_back("", std::move(t));
    std::ostringstream ss;
    ss << "fig3: min g2_1 = " << g9(best_g2) << " at delta = " << g9(best_delta)
       << ", Delta_a = " << g9(best_Delta) << " (n_s = " << g9(best_ns) << ")";
    run.summary = ss.str();
    return run;
}

} // namespace

FigureRun run_figure(const std::string& tag, const FigureOptions& opt) {
    const int p1 = or_default(opt.points, 61);

    if (tag == "fig2a" || tag == "fig2b") {
        auto s = base_spec();
        s.axis1 = {O::AxisParam::Delta_a, -3.0, 3.0, p1};
        s.axis2 = sweep::Axis{O::AxisParam::phi, 0.0, kPi, p1};
        s.base.V = 0.0;
        s.delta_mode = model::DeltaMode::ratio_of_Delta_a;
        s.delta_value = 0.5;
        s.observables = tag == "fig2a" ? std::vector<Observable>{Observable::n_s}
                                       : std::vector<Observable>{Observable::g2_1};
        return sweep_figure(tag, s, opt, "");
    }
    if (tag == "fig2c" || tag == "fig2d") {
        auto s = base_spec();
        s.axis1 = {O::AxisParam::Delta_a, -3.0, 3.0, p1};
        s.axis2 = sweep::Axis{O::AxisParam::V, -2.0, 2.0, p1};
        s.base.phi = 0.0;
        s.delta_mode = model::DeltaMode::ratio_of_Delta_a;
        s.delta_value = 0.5;
        s.observables = tag == "fig2c" ? std::vector<Observable>{Observable::n_s}
                                       : std::vector<Observable>{Observable::g2_1};
        return sweep_figure(tag, s, opt, "");
    }
    if (tag == "fig2e") return sweep_figure(tag, fig2e_spec(or_default(opt.points, 121)), opt, "g2_1");
    if (tag == "fig2f") return point_figure(tag, fig2f_point(), {1}, opt);
    if (tag == "fig3") return fig3_figure(opt);
    if (tag == "fig4abc") {
        auto s = base_spec();
        s.axis1 = {O::AxisParam::Delta_a, -3.0, 3.0, p1};
        s.axis2 = sweep::Axis{O::AxisParam::V, 0.0, 2.0, p1};
        s.base.phi = kPi;
        s.delta_mode = model::DeltaMode::ratio_of_V;
        s.delta_value = -1.0;
        s.observables = {Observable::n_s, Observable::g2_1, Observable::g3_1};
        return sweep_figure(tag, s, opt, "");
    }
    if (tag == "fig4d") return sweep_figure(tag, fig4d_spec(p1), opt, "g3_1");
    if (tag == "fig4e") return sweep_figure(tag, fig4e_spec(p1), opt, "g3_1");
    if (tag == "fig4f" || tag == "fig4g") {
        auto s = base_spec();
        s.axis1 = {O::AxisParam::Delta_a, -3.5, 1.5, or_default(opt.points, 121)};
        s.base.phi = kPi;
        s.base.V = 0.4;
        s.delta_mode = model::DeltaMode::ratio_of_V;
        s.delta_value = -1.0;
        s.observables = tag == "fig4f"
                            ? std::vector<Observable>{Observable::n_s, Observable::g2_1,
                                                      Observable::g3_1}
                            : std::vector<Observable>{Observable::Cxx, Observable::Czz};
        return sweep_figure(tag, s, opt, tag == "fig4f" ? "g2_1" : "");
    }
    if (tag == "fig4h") return point_figure(tag, fig4h_point(), {1, 2}, opt);
    throw std::invalid_argument("run_figure: unknown tag '" + tag + "' (see figure_tags())");
}

} // namespace cavsei::figures
