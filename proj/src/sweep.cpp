// sweep.cpp — grid resolution, escalating point evaluation, deterministic parallel driver
#include "cavsei/sweep.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <thread>

#include "cavsei/hilbert.hpp"
#include "cavsei/observables.hpp"
#include "cavsei/spectrum.hpp"

namespace cavsei::sweep {

namespace {
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
}

std::string observable_name(Observable o) {
    switch (o) {
    case Observable::n_s: return "n_s";
    case Observable::g2_1: return "g2_1";
    case Observable::g3_1: return "g3_1";
    case Observable::g2_2: return "g2_2";
    case Observable::p_tilde: return "p_tilde";
    case Observable::Cxx: return "Cxx";
    case Observable::Czz: return "Czz";
    }
    return "?";
}

std::optional<Observable> observable_from_name(const std::string& name) {
    for (Observable o : {Observable::n_s, Observable::g2_1, Observable::g3_1, Observable::g2_2,
                         Observable::p_tilde, Observable::Cxx, Observable::Czz})
        if (observable_name(o) == name) return o;
    return std::nullopt;
}

bool is_g_observable(Observable o) {
    return o == Observable::g2_1 || o == Observable::g3_1 || o == Observable::g2_2;
}

std::string axis_param_name(AxisParam a) {
    switch (a) {
    case AxisParam::Delta_a: return "Delta_a";
    case AxisParam::phi: return "phi";
    case AxisParam::V: return "V";
    case AxisParam::delta: return "delta";
    }
    return "?";
}

std::optional<AxisParam> axis_param_from_name(const std::string& name) {
    for (AxisParam a : {AxisParam::Delta_a, AxisParam::phi, AxisParam::V, AxisParam::delta})
        if (axis_param_name(a) == name) return a;
    return std::nullopt;
}

double Axis::value(int i) const {
    if (i < 0 || i >= points) throw std::invalid_argument("Axis::value: index out of range");
    if (points == 1) return lo;
    return lo + (hi - lo) * (double(i) / double(points - 1));
}

std::string trajectory_name(Trajectory t) {
    switch (t) {
    case Trajectory::none: return "none";
    case Trajectory::blue_sideband_rabi: return "blue_sideband_rabi";
    case Trajectory::red_two_photon: return "red_two_photon";
    case Trajectory::blue_two_photon: return "blue_two_photon";
    }
    return "?";
}

std::optional<Trajectory> trajectory_from_name(const std::string& name) {
    for (Trajectory t : {Trajectory::none, Trajectory::blue_sideband_rabi,
                         Trajectory::red_two_photon, Trajectory::blue_two_photon})
        if (trajectory_name(t) == name) return t;
    return std::nullopt;
}

void SweepSpec::validate() const {
    base.validate();
    auto check_axis = [](const Axis& ax) {
        if (ax.points < 1) throw std::invalid_argument("SweepSpec: axis needs >= 1 points");
        if (!(ax.lo <= ax.hi)) throw std::invalid_argument("SweepSpec: axis range inverted");
        if (ax.points == 1 && ax.lo != ax.hi)
            throw std::invalid_argument("SweepSpec: 1-point axis must have lo == hi");
    };
    check_axis(axis1);
    if (axis2) {
        check_axis(*axis2);
        if (axis2->param == axis1.param)
            throw std::invalid_argument("SweepSpec: both axes target the same parameter");
    }
    if (observables.empty()) throw std::invalid_argument("SweepSpec: no observables requested");
    if (photon_cutoff < 1) throw std::invalid_argument("SweepSpec: photon_cutoff must be >= 1");
    if (max_extra_cutoff < 0 || max_extra_cutoff % 2 != 0)
        throw std::invalid_argument("SweepSpec: max_extra_cutoff must be a non-negative even number");
    auto targets = [&](AxisParam p) {
        return axis1.param == p || (axis2 && axis2->param == p);
    };
    if (trajectory != Trajectory::none) {
        if (!targets(AxisParam::V))
            throw std::invalid_argument("SweepSpec: trajectory requires an axis over V");
        if (targets(AxisParam::Delta_a))
            throw std::invalid_argument("SweepSpec: trajectory conflicts with a Delta_a axis");
    }
    if (targets(AxisParam::delta) && delta_mode != model::DeltaMode::fixed)
        throw std::invalid_argument("SweepSpec: a delta axis requires delta_mode = fixed");
}

model::ModelParams resolve_point(const SweepSpec& spec, double a1, std::optional<double> a2) {
    model::ModelParams p = spec.base;
    bool delta_from_axis = false;
    auto apply = [&](const Axis& ax, double v) {
        switch (ax.param) {
        case AxisParam::Delta_a: p.Delta_a = v; break;
        case AxisParam::phi: p.phi = v; break;
        case AxisParam::V: p.V = v; break;
        case AxisParam::delta:
            p.delta = v;
            delta_from_axis = true;
            break;
        }
    };
    apply(spec.axis1, a1);
    if (spec.axis2) {
        if (!a2) throw std::invalid_argument("resolve_point: missing second axis value");
        apply(*spec.axis2, *a2);
    }
    switch (spec.trajectory) {
    case Trajectory::none: break;
    case Trajectory::blue_sideband_rabi:
        p.Delta_a = spectrum::blue_sideband_rabi_detuning(p.V, p.g_a);
        break;
    case Trajectory::red_two_photon:
        p.Delta_a = spectrum::red_two_photon_detuning(p.V);
        break;
    case Trajectory::blue_two_photon:
        p.Delta_a = spectrum::blue_two_photon_detuning(p.V, p.g_a);
        break;
    }
    if (!delta_from_axis)
        p.delta = model::resolve_delta(spec.delta_mode, spec.delta_value, p.Delta_a, p.V);
    if (spec.gamma_e_mode == GammaEMode::from_sei) p.gamma_e = model::gamma_e_for_V(p.V);
    p = p.normalized();
    p.validate();
    return p;
}

namespace {

struct PointValues {
    double n_s = kNaN, g2_1 = kNaN, g3_1 = kNaN, g2_2 = kNaN, Cxx = kNaN, Czz = kNaN;
    std::vector<double> p_tilde;
    double residual = 0.0;
    std::string notes;
};

struct EvalContext {
    std::map<int, hilbert::Operators> ops_cache;

    const hilbert::Operators& operators(int cutoff) {
        auto it = ops_cache.find(cutoff);
        if (it == ops_cache.end())
            it = ops_cache.emplace(cutoff, hilbert::build_operators(hilbert::build_space(cutoff))).first;
        return it->second;
    }
};

bool wants(const SweepSpec& spec, Observable o) {
    for (Observable x : spec.observables)
        if (x == o) return true;
    return false;
}

PointValues compute_point(const SweepSpec& spec, const model::ModelParams& p, int cutoff,
                          EvalContext& ctx) {
    const auto& ops = ctx.operators(cutoff);
    const Mat H = model::build_hamiltonian(p, ops);
    std::vector<liouville::CollapseChannel> channels;
    channels.push_back({ops.a, p.kappa_a});
    const double atom_rate = p.gamma + p.gamma_e;
    channels.push_back({ops.sm[0], atom_rate});
    channels.push_back({ops.sm[1], atom_rate});
    const Mat L = liouville::build_liouvillian(H, channels);
    liouville::SteadyStateInfo info;
    const Mat rho = liouville::steady_state(L, spec.steady, &info);

    PointValues v;
    v.residual = info.residual;
    v.n_s = obs::photon_number(rho, ops.a);
    auto try_g = [&](int n, int k, double& slot) {
        try {
            slot = obs::equal_time_g(rho, ops.a, n, k);
        } catch (const liouville::NoEmissionError& e) {
            if (!v.notes.empty()) v.notes += "; ";
            v.notes += e.what();
        }
    };
    if (wants(spec, Observable::g2_1)) try_g(1, 2, v.g2_1);
    if (wants(spec, Observable::g3_1)) try_g(1, 3, v.g3_1);
    if (wants(spec, Observable::g2_2)) try_g(2, 2, v.g2_2);
    if (wants(spec, Observable::Cxx)) v.Cxx = obs::spin_correlation(rho, ops, obs::SpinAxis::x);
    if (wants(spec, Observable::Czz)) v.Czz = obs::spin_correlation(rho, ops, obs::SpinAxis::z);
    if (wants(spec, Observable::p_tilde)) {
        const auto dist = obs::photon_distribution(rho, ops.space);
        if (dist.p_tilde.empty()) {
            if (!v.notes.empty()) v.notes += "; ";
            v.notes += "p_tilde undefined at n_s ~ 0";
        } else {
            v.p_tilde = dist.p_tilde;
        }
    }
    return v;
}

// relative agreement on n_s and every requested g; both-tiny pairs and
// matching failures (both NaN) count as agreement
bool values_agree(const SweepSpec& spec, const PointValues& a, const PointValues& b) {
    auto close = [&](double x, double y) {
        if (std::isnan(x) && std::isnan(y)) return true;
        if (std::isnan(x) || std::isnan(y)) return false;
        const double m = std::max(std::abs(x), std::abs(y));
        if (m < 1e-12) return true;
        return std::abs(x - y) <= spec.convergence_rel_tol * m;
    };
    if (!close(a.n_s, b.n_s)) return false;
    if (wants(spec, Observable::g2_1) && !close(a.g2_1, b.g2_1)) return false;
    if (wants(spec, Observable::g3_1) && !close(a.g3_1, b.g3_1)) return false;
    if (wants(spec, Observable::g2_2) && !close(a.g2_2, b.g2_2)) return false;
    return true;
}

void fill_row_values(const SweepSpec& spec, const PointValues& v, Row& row) {
    row.values.clear();
    for (Observable o : spec.observables) {
        switch (o) {
        case Observable::n_s: row.values.push_back(v.n_s); break;
        case Observable::g2_1: row.values.push_back(v.g2_1); break;
        case Observable::g3_1: row.values.push_back(v.g3_1); break;
        case Observable::g2_2: row.values.push_back(v.g2_2); break;
        case Observable::p_tilde: row.values.push_back(kNaN); break;
        case Observable::Cxx: row.values.push_back(v.Cxx); break;
        case Observable::Czz: row.values.push_back(v.Czz); break;
        }
    }
    row.p_tilde.assign(size_t(spec.photon_cutoff) + 1, 0.0);
    if (!v.p_tilde.empty()) {
        for (size_t q = 0; q < row.p_tilde.size() && q < v.p_tilde.size(); ++q)
            row.p_tilde[q] = v.p_tilde[q];
    } else if (wants(spec, Observable::p_tilde)) {
        row.p_tilde.assign(size_t(spec.photon_cutoff) + 1, kNaN);
    }
    row.residual = v.residual;
    row.error = v.notes;
}

Row evaluate_with_context(const SweepSpec& spec, EvalContext& ctx, double a1,
                          std::optional<double> a2) {
    Row row;
    row.axes.push_back(a1);
    if (spec.axis2) row.axes.push_back(a2.value());
    try {
        const model::ModelParams p = resolve_point(spec, a1, a2);
        row.params = p;
        PointValues prev = compute_point(spec, p, spec.photon_cutoff, ctx);
        if (!spec.convergence_check) {
            row.cutoff_used = spec.photon_cutoff;
            row.converged = true;
            fill_row_values(spec, prev, row);
            return row;
        }
        for (int extra = 2; extra <= spec.max_extra_cutoff; extra += 2) {
            const int c = spec.photon_cutoff + extra;
            PointValues cur;
            try {
                cur = compute_point(spec, p, c, ctx);
            } catch (const std::exception& e) {
                row.cutoff_used = c - 2;
                row.converged = false;
                fill_row_values(spec, prev, row);
                row.error = std::string("convergence check failed: ") + e.what();
                return row;
            }
            if (values_agree(spec, prev, cur)) {
                row.cutoff_used = c;
                row.converged = true;
                fill_row_values(spec, cur, row);
                return row;
            }
            prev = cur;
        }
        row.cutoff_used = spec.photon_cutoff + spec.max_extra_cutoff;
        row.converged = false;
        fill_row_values(spec, prev, row);
        if (!row.error.empty()) row.error += "; ";
        row.error += "not converged in photon cutoff";
        return row;
    } catch (const std::exception& e) {
        row.converged = false;
        row.cutoff_used = spec.photon_cutoff;
        row.values.assign(spec.observables.size(), kNaN);
        row.error = e.what();
        return row;
    }
}

} // namespace

Row evaluate_single(const SweepSpec& spec, double a1, std::optional<double> a2) {
    spec.validate();
    EvalContext ctx;
    return evaluate_with_context(spec, ctx, a1, a2);
}

SweepResult run_sweep(const SweepSpec& spec, int threads) {
    spec.validate();
    if (threads < 1) throw std::invalid_argument("run_sweep: threads must be >= 1");
    const auto t0 = std::chrono::steady_clock::now();
    const int n1 = spec.axis1.points;
    const int n2 = spec.axis2 ? spec.axis2->points : 1;
    const int total = n1 * n2;
    std::vector<Row> rows(size_t(total), Row{});

    auto worker = [&](int w, int stride) {
        EvalContext ctx;
        for (int r = w; r < total; r += stride) {
            const int i1 = r / n2;
            const int i2 = r % n2;
            const double a1 = spec.axis1.value(i1);
            std::optional<double> a2;
            if (spec.axis2) a2 = spec.axis2->value(i2);
            rows[size_t(r)] = evaluate_with_context(spec, ctx, a1, a2);
        }
    };

    const int T = std::min(threads, total > 0 ? total : 1);
    if (T <= 1) {
        worker(0, 1);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(size_t(T));
        for (int w = 0; w < T; ++w) pool.emplace_back(worker, w, T);
        for (auto& th : pool) th.join();
    }

    SweepResult res;
    res.spec = spec;
    res.rows = std::move(rows);
    res.threads = threads;
    res.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return res;
}

std::vector<OptimumPoint> extract_optimum(const SweepResult& result, Observable target,
                                          AxisParam along, bool minimize) {
    const SweepSpec& spec = result.spec;
    int slot = -1;
    for (size_t i = 0; i < spec.observables.size(); ++i)
        if (spec.observables[i] == target) slot = int(i);
    if (slot < 0) throw std::invalid_argument("extract_optimum: observable not in sweep");
    const bool along_is_axis1 = spec.axis1.param == along;
    if (!along_is_axis1 && !(spec.axis2 && spec.axis2->param == along))
        throw std::invalid_argument("extract_optimum: no axis over the requested parameter");

    const int n1 = spec.axis1.points;
    const int n2 = spec.axis2 ? spec.axis2->points : 1;
    const Axis& scan = along_is_axis1 ? spec.axis1 : *spec.axis2;
    const int n_scan = along_is_axis1 ? n1 : n2;
    const int n_ortho = along_is_axis1 ? n2 : n1;

    auto row_at = [&](int s, int o) -> const Row& {
        const int i1 = along_is_axis1 ? s : o;
        const int i2 = along_is_axis1 ? o : s;
        return result.rows[size_t(i1) * size_t(n2) + size_t(i2)];
    };

    std::vector<OptimumPoint> out;
    for (int o = 0; o < n_ortho; ++o) {
        int best = -1;
        double best_val = 0.0;
        for (int s = 0; s < n_scan; ++s) {
            const Row& r = row_at(s, o);
            if (!r.error.empty()) continue;
            const double val = r.values[size_t(slot)];
            if (!std::isfinite(val)) continue;
            const double cmp = minimize ? val : -val;
            const double best_cmp = minimize ? best_val : -best_val;
            if (best < 0 || cmp < best_cmp ||
                (cmp == best_cmp && std::abs(scan.value(s)) < std::abs(scan.value(best)))) {
                best = s;
                best_val = val;
            }
        }
        if (best < 0) continue;
        OptimumPoint pt;
        pt.ortho_value = spec.axis2
                             ? (along_is_axis1 ? spec.axis2->value(o) : spec.axis1.value(o))
                             : kNaN;
        pt.axis_value = scan.value(best);
        pt.value = best_val;
        pt.axis_interp = pt.axis_value;
        pt.value_interp = pt.value;
        pt.row = row_at(best, o);
        if (best > 0 && best + 1 < n_scan) {
            const Row& rl = row_at(best - 1, o);
            const Row& rr = row_at(best + 1, o);
            const double fl = rl.error.empty() ? rl.values[size_t(slot)] : kNaN;
            const double fr = rr.error.empty() ? rr.values[size_t(slot)] : kNaN;
            if (std::isfinite(fl) && std::isfinite(fr)) {
                // parabola vertex through (x0,fl),(x1,best_val),(x2,fr)
                const double x0 = scan.value(best - 1), x1 = scan.value(best),
                             x2 = scan.value(best + 1);
                const double a =
                    ((fr - best_val) / (x2 - x1) - (best_val - fl) / (x1 - x0)) / (x2 - x0);
                const double b = (fr - best_val) / (x2 - x1) - a * (x2 + x1);
                if ((minimize && a > 0.0) || (!minimize && a < 0.0)) {
                    const double xv = std::clamp(-b / (2.0 * a), x0, x2);
                    pt.axis_interp = xv;
                    pt.value_interp =
                        a * xv * xv + b * xv + (best_val - a * x1 * x1 - b * x1);
                }
            }
        }
        out.push_back(std::move(pt));
    }
    return out;
}

double golden_section_min(const std::function<double(double)>& f, double a, double b,
                          int iters, double* fmin) {
    if (!(a < b)) throw std::invalid_argument("golden_section_min: need a < b");
    const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = b - invphi * (b - a);
    double x2 = a + invphi * (b - a);
    double f1 = f(x1), f2 = f(x2);
    for (int i = 0; i < iters; ++i) {
        if (f1 <= f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - invphi * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + invphi * (b - a);
            f2 = f(x2);
        }
    }
    const double xm = (f1 <= f2) ? x1 : x2;
    if (fmin) *fmin = std::min(f1, f2);
    return xm;
}

} // namespace cavsei::sweep
