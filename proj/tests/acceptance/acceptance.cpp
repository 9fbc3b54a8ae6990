// acceptance.cpp — end-to-end checks of the quantitative operating points and the
// property suite; prints one PASS/FAIL line per criterion and exits with the
// number of failures. All tolerances are pinned here, in code.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <limits>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "cavsei/figures.hpp"
#include "cavsei/hilbert.hpp"
#include "cavsei/liouville.hpp"
#include "cavsei/model.hpp"
#include "cavsei/observables.hpp"
#include "cavsei/spectrum.hpp"
#include "cavsei/sweep.hpp"

using namespace cavsei;
using Clock = std::chrono::steady_clock;

namespace {

// drive amplitude of the reference data sets (0.4 κ_a); matches the presets
constexpr double kReferenceDrive = 0.05;

int hw_threads() {
    const unsigned n = std::thread::hardware_concurrency();
    return n ? int(n) : 4;
}

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

// single fully-resolved operating point, certified photon cutoff
sweep::Row eval_point(const model::ModelParams& p, std::vector<sweep::Observable> obs,
                      int cutoff = 7, bool convergence_check = true) {
    auto spec = figures::point_spec(p, std::move(obs), cutoff);
    spec.convergence_check = convergence_check;
    return sweep::evaluate_single(spec, p.Delta_a);
}

struct System {
    hilbert::Operators ops;
    Mat L;
    Mat rho;
};

System rebuild(const model::ModelParams& p, int cutoff) {
    auto ops = hilbert::build_operators(hilbert::build_space(cutoff));
    const Mat H = model::build_hamiltonian(p, ops);
    const double atom_rate = p.gamma + p.gamma_e;
    const Mat L = liouville::build_liouvillian(
        H, {{ops.a, p.kappa_a}, {ops.sm[0], atom_rate}, {ops.sm[1], atom_rate}});
    const Mat rho = liouville::steady_state(L);
    return {std::move(ops), L, rho};
}

std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.3g", x);
    return buf;
}

// shared state between the quantitative criteria
struct Shared {
    std::optional<model::ModelParams> deep_point; // criterion-5 optimum
    double deep_cxx = 0.0, deep_czz = 0.0;
    bool spins_ready = false;
};

Shared shared;
int failures = 0;
double property_suite_seconds = 0.0;

void run(int id, const std::string& what, double budget_s, bool property_group,
         const std::function<bool(std::string&)>& body) {
    const auto t0 = Clock::now();
    bool ok = false;
    std::string detail;
    try {
        ok = body(detail);
    } catch (const std::exception& e) {
        ok = false;
        detail = std::string("exception: ") + e.what();
    }
    const double dt = seconds_since(t0);
    if (property_group) property_suite_seconds += dt;
    if (dt > budget_s) {
        ok = false;
        detail += (detail.empty() ? "" : "; ") + std::string("over budget ") +
                  fmt(budget_s) + " s";
    }
    if (!ok) ++failures;
    std::printf("[%02d] %s  %s (%.1f s)%s%s\n", id, ok ? "PASS" : "FAIL", what.c_str(), dt,
                detail.empty() ? "" : " — ", detail.c_str());
    std::fflush(stdout);
}

double value_at(const sweep::Row& row, const std::vector<sweep::Observable>& obs,
                sweep::Observable o) {
    for (size_t i = 0; i < obs.size(); ++i)
        if (obs[i] == o) return row.values[i];
    return std::numeric_limits<double>::quiet_NaN();
}

} // namespace

// ---------------------------------------------------------------------------

int main() {
    using sweep::Observable;
    const int threads = hw_threads();
    std::printf("acceptance checks, %d worker threads\n", threads);

    // [01] in-phase single-photon sideband: deep antibunching at Delta_a = 2 g_a
    run(1, "in-phase sideband antibunching", 5.0, false, [](std::string& d) {
        model::ModelParams p;
        p.Omega = kReferenceDrive;
        p.phi = 0.0;
        p.V = 0.0;
        p.Delta_a = 2.0;
        p.delta = 1.0; // half the cavity detuning
        const std::vector<Observable> obs{Observable::g2_1};
        const auto row = eval_point(p, obs);
        const double g2 = value_at(row, obs, Observable::g2_1);
        d = "g2(0) = " + fmt(g2);
        return row.error.empty() && g2 >= 1.9e-2 && g2 <= 3.5e-2;
    });

    // [02] out-of-phase resonance: strong bunching near zero cavity detuning
    run(2, "out-of-phase central bunching", 5.0, false, [](std::string& d) {
        model::ModelParams p;
        p.Omega = kReferenceDrive;
        p.phi = kPi;
        p.V = 0.0;
        p.Delta_a = 0.0;
        p.delta = 0.0;
        const std::vector<Observable> obs{Observable::g2_1};
        const auto row = eval_point(p, obs);
        const double g2 = value_at(row, obs, Observable::g2_1);
        d = "g2(0) = " + fmt(g2);
        return row.error.empty() && g2 >= 5.0 && g2 <= 20.0;
    });

    // [03] exchange-tracked sideband trajectory: endpoint value and global antibunching
    run(3, "exchange-trajectory antibunching curve", 120.0, false, [&](std::string& d) {
        const auto spec = figures::fig2e_spec(121);
        const auto result = sweep::run_sweep(spec, threads);
        double end_value = std::numeric_limits<double>::quiet_NaN();
        bool all_sub_poisson = true;
        int flagged = 0;
        for (const auto& row : result.rows) {
            if (!row.error.empty()) {
                ++flagged;
                continue;
            }
            const double v = row.axes[0];
            const double g2 = value_at(row, spec.observables, Observable::g2_1);
            if (std::abs(v - 2.0) < 1e-9) end_value = g2;
            if (std::abs(v) >= 0.1 && !(g2 < 1.0)) all_sub_poisson = false;
        }
        d = "g2(0) at V = 2 is " + fmt(end_value) + ", " + std::to_string(flagged) +
            " flagged rows";
        return flagged == 0 && all_sub_poisson && end_value >= 4e-4 && end_value <= 1.6e-3;
    });

    // [04] strong-exchange operating point: single-photon purity and delay recovery
    run(4, "single-photon purity and delayed recovery", 60.0, false, [](std::string& d) {
        const auto p = figures::fig2f_point();
        const std::vector<Observable> obs{Observable::n_s, Observable::g2_1,
                                          Observable::p_tilde};
        const auto row = eval_point(p, obs);
        if (!row.error.empty()) {
            d = "flagged: " + row.error;
            return false;
        }
        const auto sys = rebuild(row.params, row.cutoff_used);
        const auto dist = obs::photon_distribution(sys.rho, sys.ops.space);
        if (dist.p_tilde.size() < 2) {
            d = "no emission";
            return false;
        }
        const double pt1 = dist.p_tilde[1];
        const auto taus = figures::tau_grid(p.kappa_a, 20.0, 161);
        const auto g = liouville::regression_g2(sys.L, sys.rho, sys.ops.a, 1, taus);
        bool rising = true;
        for (size_t i = 1; i < taus.size(); ++i) {
            if (taus[i] > 1.0 / p.kappa_a + 1e-9) break;
            if (!(g[i] > g[0])) rising = false;
        }
        const double tail = g.back(); // τ = 20/κ_a
        d = "ptilde(1) = " + fmt(pt1) + ", g2(0) = " + fmt(g[0]) +
            ", g2(20/kappa) = " + fmt(tail);
        return pt1 >= 0.9999 && rising && std::abs(tail - 1.0) < 0.02;
    });

    // [05] fixed-detuning slices at strong exchange: a deep-antibunching slice exists
    run(5, "deep antibunching across detuning slices", 300.0, false, [](std::string& d) {
        const double V = 2.0, g = 1.0;
        const double gamma_e = model::gamma_e_for_V(V);
        double best_g2 = std::numeric_limits<double>::infinity();
        double best_ns = 0.0;
        std::optional<model::ModelParams> best_point;

        for (int s = 0; s < 13; ++s) {
            const double delta = -2.2 + 0.1 * s;
            double center = 0.0;
            try {
                center = spectrum::single_photon_detuning_fixed_delta(delta, V, g, 0.0);
            } catch (const std::domain_error&) {
                continue; // resonance at infinity on this slice
            }
            if (std::abs(center) > 12.0) continue; // far outside the sweep window

            auto probe = [&](double Delta) {
                model::ModelParams p;
                p.Omega = kReferenceDrive;
                p.phi = 0.0;
                p.V = V;
                p.gamma_e = gamma_e;
                p.Delta_a = Delta;
                p.delta = delta;
                const std::vector<Observable> obs{Observable::n_s, Observable::g2_1};
                const auto row = eval_point(p, obs, 7, false);
                const double v = value_at(row, obs, Observable::g2_1);
                return std::isfinite(v) ? v : 1e9;
            };
            // coarse bracket, then golden refinement inside the best cell
            const double lo = center - 1.0, hi = center + 1.0;
            int arg = 0;
            double vmin = std::numeric_limits<double>::infinity();
            const int coarse = 15;
            for (int i = 0; i < coarse; ++i) {
                const double x = lo + (hi - lo) * i / (coarse - 1);
                const double v = probe(x);
                if (v < vmin) {
                    vmin = v;
                    arg = i;
                }
            }
            const double cell = (hi - lo) / (coarse - 1);
            const double a = lo + cell * std::max(0, arg - 1);
            const double b = lo + cell * std::min(coarse - 1, arg + 1);
            const double opt = sweep::golden_section_min(probe, a, b, 22);

            model::ModelParams p;
            p.Omega = kReferenceDrive;
            p.phi = 0.0;
            p.V = V;
            p.gamma_e = gamma_e;
            p.Delta_a = opt;
            p.delta = delta;
            const std::vector<Observable> obs{Observable::n_s, Observable::g2_1,
                                              Observable::Cxx, Observable::Czz};
            const auto row = eval_point(p, obs); // certified cutoff
            if (!row.error.empty()) continue;
            const double ns = value_at(row, obs, Observable::n_s);
            const double g2 = value_at(row, obs, Observable::g2_1);
            if (ns >= 0.04 && ns <= 0.16 && g2 < best_g2) {
                best_g2 = g2;
                best_ns = ns;
                best_point = row.params;
                shared.deep_cxx = value_at(row, obs, Observable::Cxx);
                shared.deep_czz = value_at(row, obs, Observable::Czz);
            }
        }
        if (!best_point) {
            d = "no slice with the required emission rate";
            return false;
        }
        shared.deep_point = best_point;
        shared.spins_ready = true;
        d = "best g2(0) = " + fmt(best_g2) + " at delta = " + fmt(best_point->delta) +
            ", n_s = " + fmt(best_ns);
        return best_g2 <= 3e-5;
    });

    // [06] two-photon blockade of triples on the blue pair resonance
    run(6, "pair emission without triples at weak exchange", 120.0, false,
        [](std::string& d) {
            model::ModelParams p;
            p.Omega = kReferenceDrive;
            p.phi = kPi;
            p.V = 0.3;
            p.Delta_a = spectrum::blue_two_photon_detuning(p.V, p.g_a);
            p.delta = -p.V;
            p.gamma_e = model::gamma_e_for_V(p.V);
            const std::vector<Observable> obs{Observable::g2_1, Observable::g3_1};
            const auto row = eval_point(p, obs);
            const double g2 = value_at(row, obs, Observable::g2_1);
            const double g3 = value_at(row, obs, Observable::g3_1);
            d = "g2(0) = " + fmt(g2) + ", g3(0) = " + fmt(g3);
            return row.error.empty() && g2 > 1.0 && g3 <= 1e-3;
        });

    // [07] red pair resonance: minimum triple correlation and its emission rate
    run(7, "triple suppression minimum on the red pair branch", 120.0, false,
        [&](std::string& d) {
            const auto spec = figures::fig4e_spec(61);
            const auto result = sweep::run_sweep(spec, threads);
            const auto optima =
                sweep::extract_optimum(result, Observable::g3_1, sweep::AxisParam::V, true);
            if (optima.empty()) {
                d = "no optimum found";
                return false;
            }
            const auto& o = optima.front();
            const double ns = value_at(o.row, spec.observables, Observable::n_s);
            d = "min g3(0) = " + fmt(o.value) + " at V = " + fmt(o.axis_value) +
                ", n_s = " + fmt(ns);
            return o.value >= 1e-2 / 3.0 && o.value <= 3e-2 && ns >= 0.02 && ns <= 0.08;
        });

    // [08] bundle signature at the red two-photon point
    run(8, "two-photon bundle statistics", 120.0, false, [](std::string& d) {
        const auto p = figures::fig4h_point();
        const std::vector<Observable> obs{Observable::n_s, Observable::p_tilde};
        const auto row = eval_point(p, obs);
        if (!row.error.empty()) {
            d = "flagged: " + row.error;
            return false;
        }
        const auto sys = rebuild(row.params, row.cutoff_used);
        const auto dist = obs::photon_distribution(sys.rho, sys.ops.space);
        double beyond_pairs = 0.0;
        for (size_t q = 3; q < dist.p_tilde.size(); ++q) beyond_pairs += dist.p_tilde[q];
        // dense grid resolves the pair-Rabi oscillation; the shipped fig4h tau
        // table samples every 0.25/kappa, i.e. every 4th dense point
        const auto taus = figures::tau_grid(p.kappa_a, 1.0, 17);
        const auto g1 = liouville::regression_g2(sys.L, sys.rho, sys.ops.a, 1, taus);
        const auto g2 = liouville::regression_g2(sys.L, sys.rho, sys.ops.a, 2, taus);
        bool g1_peak_at_zero = true;
        for (size_t i = 1; i < taus.size(); ++i)
            if (!(g1[0] > g1[i])) g1_peak_at_zero = false;
        // above g2_2(0) at every table sample and rising between them
        bool g2_recovers = true;
        for (size_t i = 4; i < taus.size(); i += 4)
            if (!(g2[0] < g2[i])) g2_recovers = false;
        for (size_t i = 5; i < taus.size(); ++i)
            if (!(g2[i] > g2[i - 1])) g2_recovers = false;
        double early_min = g2[0];
        for (size_t i = 1; i < 4; ++i) early_min = std::min(early_min, g2[i]);
        d = "g2_1(0) = " + fmt(g1[0]) + ", g2_2(0) = " + fmt(g2[0]) +
            ", g2_2(1/kappa) = " + fmt(g2.back()) +
            ", sum ptilde(q>2) = " + fmt(beyond_pairs);
        if (early_min < g2[0])
            d += "; coherent pair-Rabi dip to " + fmt(early_min) +
                 " inside tau < 0.2/kappa, finer than the fig4h table resolves";
        return g1_peak_at_zero && g2_recovers && beyond_pairs < 1e-4;
    });

    // [09] spin-correlation sign alternation between the two regimes
    run(9, "spin-correlation alternation", 60.0, false, [](std::string& d) {
        if (!shared.spins_ready || !shared.deep_point) {
            d = "missing the deep-antibunching optimum";
            return false;
        }
        const auto p = figures::fig4h_point();
        const std::vector<Observable> obs{Observable::Cxx, Observable::Czz};
        const auto row = eval_point(p, obs);
        if (!row.error.empty()) {
            d = "flagged: " + row.error;
            return false;
        }
        const double cxx_pair = value_at(row, obs, Observable::Cxx);
        const double czz_pair = value_at(row, obs, Observable::Czz);
        const bool single_ok = shared.deep_cxx > 0.0 && shared.deep_czz < 0.0;
        const bool reduced = std::abs(cxx_pair) <= 0.5 * std::abs(shared.deep_cxx);
        const bool less_negative = czz_pair > shared.deep_czz;
        d = "single-photon point: Cxx = " + fmt(shared.deep_cxx) +
            ", Czz = " + fmt(shared.deep_czz) + "; pair point: Cxx = " + fmt(cxx_pair) +
            " (require |Cxx| <= " + fmt(0.5 * std::abs(shared.deep_cxx)) +
            "), Czz = " + fmt(czz_pair) + " (require > " + fmt(shared.deep_czz) + ")";
        if (!(reduced && less_negative)) {
            // diagnostic flank point on the same scan line, off the pair resonance:
            // the resonance does suppress Cxx and lift Czz against its own scan, but
            // the resonantly saturated cavity-dark spin state floors both values
            // above the single-photon reference at any drive strength
            auto flank = p;
            flank.Delta_a = 0.6;
            const auto frow = eval_point(flank, obs, 7, false);
            d += "; off-resonance flank Delta_a = 0.6: Cxx = " +
                 fmt(value_at(frow, obs, Observable::Cxx)) +
                 ", Czz = " + fmt(value_at(frow, obs, Observable::Czz)) +
                 " (suppression and lift hold within the scan, not against the reference)";
        }
        return single_ok && reduced && less_negative;
    });

    // [10] superoperator structure on random parameter sets
    run(10, "trace annihilation and damped spectrum on random sets", 60.0, true,
        [](std::string& d) {
            std::mt19937 gen(20260822u);
            auto uni = [&](double a, double b) {
                return std::uniform_real_distribution<double>(a, b)(gen);
            };
            double worst_trace = 0.0, worst_abscissa = -1e30;
            for (int trial = 0; trial < 20; ++trial) {
                model::ModelParams p;
                p.Delta_a = uni(-3.0, 3.0);
                p.delta = uni(-3.0, 3.0);
                p.V = uni(-2.0, 2.0);
                p.phi = uni(0.0, 2.0 * kPi);
                p.Omega = uni(0.0, 0.2);
                p.kappa_a = uni(0.05, 0.3);
                p.gamma = uni(0.02, 0.2);
                p.gamma_e = uni(0.0, 0.05);
                const int cutoff = 1 + trial % 2;
                const auto ops = hilbert::build_operators(hilbert::build_space(cutoff));
                const Mat H = model::build_hamiltonian(p, ops);
                const double ar = p.gamma + p.gamma_e;
                const Mat L = liouville::build_liouvillian(
                    H, {{ops.a, p.kappa_a}, {ops.sm[0], ar}, {ops.sm[1], ar}});
                // random density matrix
                const int dim = ops.space.dim();
                Mat g(dim, dim);
                std::normal_distribution<double> nrm;
                for (int i = 0; i < dim; ++i)
                    for (int j = 0; j < dim; ++j) g(i, j) = cd{nrm(gen), nrm(gen)};
                Mat rho = g * g.adjoint();
                rho /= rho.trace();
                const double tr =
                    std::abs(liouville::unvec(L * liouville::vec(rho), dim).trace());
                worst_trace = std::max(worst_trace, tr);
                worst_abscissa = std::max(worst_abscissa, liouville::spectral_abscissa(L));
            }
            d = "max |Tr L(rho)| = " + fmt(worst_trace) +
                ", max Re eig = " + fmt(worst_abscissa);
            return worst_trace <= 1e-10 && worst_abscissa <= 1e-10;
        });

    // [11] steady-state solver against long-time integration
    run(11, "steady state vs long-time integration", 60.0, true, [](std::string& d) {
        std::mt19937 gen(77u);
        auto uni = [&](double a, double b) {
            return std::uniform_real_distribution<double>(a, b)(gen);
        };
        double worst = 0.0;
        for (int trial = 0; trial < 10; ++trial) {
            model::ModelParams p;
            const double sgn = (trial % 2 == 0) ? 1.0 : -1.0;
            p.Delta_a = sgn * uni(0.5, 2.0);
            p.delta = -sgn * uni(0.5, 2.0);
            p.V = uni(-1.0, 1.0);
            p.phi = uni(0.0, 2.0 * kPi);
            p.Omega = uni(0.02, 0.05);
            p.kappa_a = uni(0.15, 0.25);
            p.gamma = uni(0.1, 0.2);
            p.gamma_e = uni(0.0, 0.02);
            const int cutoff = 1 + trial % 2;
            const auto ops = hilbert::build_operators(hilbert::build_space(cutoff));
            const Mat H = model::build_hamiltonian(p, ops);
            const double ar = p.gamma + p.gamma_e;
            const Mat L = liouville::build_liouvillian(
                H, {{ops.a, p.kappa_a}, {ops.sm[0], ar}, {ops.sm[1], ar}});
            const Mat rho_ss = liouville::steady_state(L);
            Mat rho0 = Mat::Zero(ops.space.dim(), ops.space.dim());
            rho0(0, 0) = 1.0; // vacuum start
            const Mat rho_t = liouville::evolve(L, rho0, 50.0 / p.kappa_a);
            Eigen::SelfAdjointEigenSolver<Mat> es(rho_ss - rho_t);
            worst = std::max(worst, 0.5 * es.eigenvalues().cwiseAbs().sum());
        }
        d = "max trace distance = " + fmt(worst);
        return worst < 1e-6;
    });

    // [12] closed-form spectrum audit, including the misprinted pair state
    run(12, "closed-form spectrum audit", 60.0, true, [](std::string& d) {
        model::ModelParams p;
        p.Delta_a = 0.9;
        p.delta = -0.4;
        p.V = 0.7;
        p.phi = 0.0;
        double worst = 0.0;
        // sideband branches against direct diagonalization
        const auto sb = spectrum::sideband_energies(p);
        const auto levels = spectrum::dressed_levels(1, p, spectrum::ManifoldBasis::bare);
        std::vector<double> bright;
        for (const auto& l : levels)
            if (!l.dark) bright.push_back(l.energy);
        if (bright.size() != 2) {
            d = "unexpected bright-level count";
            return false;
        }
        worst = std::max(worst, std::abs(bright[0] - sb.lower));
        worst = std::max(worst, std::abs(bright[1] - sb.upper));
        // resonance detunings zero the manifold determinants
        {
            model::ModelParams q = p;
            q.Delta_a = spectrum::single_photon_detuning_fixed_delta(q.delta, q.V, q.g_a, q.phi);
            worst = std::max(worst, std::abs(spectrum::manifold_det(1, q)));
            q.V = 1.3;
            q.phi = kPi;
            q.delta = -q.V;
            q.Delta_a = spectrum::red_two_photon_detuning(q.V);
            worst = std::max(worst, std::abs(spectrum::manifold_det(2, q)));
            q.Delta_a = spectrum::blue_two_photon_detuning(q.V, q.g_a);
            worst = std::max(worst, std::abs(spectrum::manifold_det(2, q)));
        }
        // dark-state families as exact eigenvectors
        auto residual = [](const RMat& m, const RVec& v) {
            const double e = v.dot(m * v);
            return (m * v - e * v).norm();
        };
        for (int n : {1, 2}) {
            const auto m = spectrum::manifold_matrix(n, p, spectrum::ManifoldBasis::bare);
            worst = std::max(worst, residual(m.entries, spectrum::exchange_dark_state(n, -1)));
        }
        {
            model::ModelParams q = p;
            q.delta = q.Delta_a; // pathway state needs matched detunings
            const auto m = spectrum::manifold_matrix(2, q, spectrum::ManifoldBasis::bare);
            worst = std::max(worst, residual(m.entries, spectrum::pathway_dark_state(2, -1)));
        }
        // quoted pair states: one clean, one misnormalized, one misdirected
        const auto reports = spectrum::verify_bundle_eigenstates(1.3, 1.0);
        bool clean_ok = false, norm_flagged = false, direction_flagged = false;
        double corrected_residual = 1.0;
        for (const auto& r : reports) {
            if (r.name == "blue_pair_n1")
                clean_ok = !r.norm_mismatch && !r.direction_mismatch && r.eigen_residual < 1e-9;
            if (r.name == "blue_pair_n2" && r.norm_mismatch && !r.direction_mismatch &&
                r.eigen_residual < 1e-9) {
                norm_flagged = true;
                std::printf("     [12] note: quoted pair state '%s' normalization "
                            "inconsistent (claimed %.6g, coefficients give %.6g)\n",
                            r.name.c_str(), r.quoted_norm_sq, r.coeff_norm_sq);
            }
            if (r.name == "red_pair_n2" && r.direction_mismatch) {
                direction_flagged = true;
                corrected_residual = r.corrected_residual;
                std::printf("     [12] note: quoted pair state '%s' is not an eigenvector "
                            "(residual %.3g); nearest eigenvector reported instead\n",
                            r.name.c_str(), r.eigen_residual);
            }
        }
        d = "max closed-form residual = " + fmt(worst);
        return worst < 1e-9 && clean_ok && norm_flagged && direction_flagged &&
               corrected_residual < 1e-9;
    });

    // [13] coherent-state calibration of the correlation estimators
    run(13, "coherent-state calibration", 60.0, true, [](std::string& d) {
        const auto s = hilbert::build_space(12);
        const auto ops = hilbert::build_operators(s);
        const double alpha = std::sqrt(0.5);
        Vec psi = Vec::Zero(s.dim());
        double amp = std::exp(-0.5 * alpha * alpha);
        for (int q = 0; q <= 12; ++q) {
            psi(s.index(q, 0, 0)) = amp;
            amp *= alpha / std::sqrt(q + 1.0);
        }
        const Mat rho = psi * psi.adjoint() / psi.squaredNorm();
        const double g2 = obs::equal_time_g(rho, ops.a, 1, 2);
        const double g3 = obs::equal_time_g(rho, ops.a, 1, 3);
        d = "|g2 - 1| = " + fmt(std::abs(g2 - 1.0)) + ", |g3 - 1| = " +
            fmt(std::abs(g3 - 1.0));
        return std::abs(g2 - 1.0) < 1e-6 && std::abs(g3 - 1.0) < 1e-6;
    });

    // [14] thread-count determinism of the command-line data emitter
    run(14, "thread-count determinism of emitted tables", 60.0, true, [](std::string& d) {
        const std::string bin = CLI_BINARY_PATH;
        auto body_of = [](const std::string& path) {
            std::ifstream f(path);
            std::ostringstream body;
            std::string line;
            while (std::getline(f, line))
                if (line.rfind("#", 0) != 0) body << line << "\n";
            return body.str();
        };
        const std::string out1 = "acceptance_t1.csv", out8 = "acceptance_t8.csv";
        const std::string base = "\"" + bin + "\" reproduce fig2e --points 21 ";
        if (std::system((base + "--threads 1 --out " + out1 + " > /dev/null 2>&1").c_str()) !=
            0) {
            d = "single-thread run failed";
            return false;
        }
        if (std::system((base + "--threads 8 --out " + out8 + " > /dev/null 2>&1").c_str()) !=
            0) {
            d = "eight-thread run failed";
            return false;
        }
        const std::string b1 = body_of(out1), b8 = body_of(out8);
        std::remove(out1.c_str());
        std::remove(out8.c_str());
        if (b1.empty()) {
            d = "empty output";
            return false;
        }
        d = std::to_string(b1.size()) + " bytes compared";
        return b1 == b8;
    });

    const bool property_budget_ok = property_suite_seconds < 60.0;
    if (!property_budget_ok) ++failures;
    std::printf("[--] %s  property suite total %.1f s (budget 60 s)\n",
                property_budget_ok ? "PASS" : "FAIL", property_suite_seconds);
    std::printf("%d %s failed\n", failures, failures == 1 ? "criterion" : "criteria");
    return failures;
}
