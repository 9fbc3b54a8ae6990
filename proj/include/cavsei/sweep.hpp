// sweep.hpp — parameter grids, per-point steady-state evaluation, deterministic parallel driver
#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cavsei/liouville.hpp"
#include "cavsei/model.hpp"
#include "cavsei/types.hpp"

namespace cavsei::sweep {

enum class Observable { n_s, g2_1, g3_1, g2_2, p_tilde, Cxx, Czz };

std::string observable_name(Observable o);
std::optional<Observable> observable_from_name(const std::string& name);
bool is_g_observable(Observable o);

enum class AxisParam { Delta_a, phi, V, delta };

std::string axis_param_name(AxisParam a);
std::optional<AxisParam> axis_param_from_name(const std::string& name);

struct Axis {
    AxisParam param = AxisParam::Delta_a;
    double lo = 0.0, hi = 0.0;
    int points = 1;
    double value(int i) const; // uniform grid; endpoints hit exactly
};

// Δ_a locked to a resonance curve Δ_a(V); requires an axis over V and none over Δ_a
enum class Trajectory { none, blue_sideband_rabi, red_two_photon, blue_two_photon };

std::string trajectory_name(Trajectory t);
std::optional<Trajectory> trajectory_from_name(const std::string& name);

enum class GammaEMode { from_sei, fixed };

struct SweepSpec {
    model::ModelParams base; // template; axis/trajectory/δ/γ_e fields overwritten per point
    Axis axis1;
    std::optional<Axis> axis2;
    Trajectory trajectory = Trajectory::none;
    model::DeltaMode delta_mode = model::DeltaMode::fixed;
    double delta_value = 0.0;
    GammaEMode gamma_e_mode = GammaEMode::from_sei;
    std::vector<Observable> observables;
    int photon_cutoff = 7;
    bool convergence_check = true;
    int max_extra_cutoff = 6;          // escalation headroom in steps of 2
    double convergence_rel_tol = 1e-3; // on n_s and every requested g
    liouville::SteadyStateOptions steady;

    void validate() const; // throws invalid_argument; point counts >= 1
};

struct Row {
    std::vector<double> axes;    // axis1 [, axis2] value
    model::ModelParams params;   // fully resolved point
    std::vector<double> values;  // aligned with SweepSpec::observables (NaN for p_tilde slot)
    std::vector<double> p_tilde; // filled when requested; length photon_cutoff+1
    int cutoff_used = 0;
    bool converged = false;
    double residual = 0.0;
    std::string error; // non-empty marks the row failed or partially failed
};

struct SweepResult {
    SweepSpec spec;
    std::vector<Row> rows; // axis1-major ordering
    double wall_seconds = 0.0;
    int threads = 1;
};

// resolution order: axes → trajectory Δ_a(V) → δ(mode) → γ_e(mode) → validate.
// An axis over delta requires delta_mode == fixed and takes precedence.
model::ModelParams resolve_point(const SweepSpec& spec, double a1, std::optional<double> a2);

// one grid point, convergence escalation included; never throws, errors land in Row::error
Row evaluate_single(const SweepSpec& spec, double a1, std::optional<double> a2 = std::nullopt);

// static stride partition over `threads` workers; results are identical for any
// thread count, byte for byte
SweepResult run_sweep(const SweepSpec& spec, int threads = 1);

struct OptimumPoint {
    double ortho_value = 0.0; // second-axis value; NaN for 1D sweeps
    double axis_value = 0.0;  // grid argopt along the scan axis
    double value = 0.0;
    double axis_interp = 0.0; // parabolic vertex through the argopt and neighbors
    double value_interp = 0.0;
    Row row;
};

// per-slice optimum of one observable along `along`; grid ties break toward
// smaller |axis value|; rows with errors or non-finite values are skipped
std::vector<OptimumPoint> extract_optimum(const SweepResult& result, Observable target,
                                          AxisParam along, bool minimize);

// deterministic golden-section minimizer on [a, b]
double golden_section_min(const std::function<double(double)>& f, double a, double b,
                          int iters, double* fmin = nullptr);

} // namespace cavsei::sweep
