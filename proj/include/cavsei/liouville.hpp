// liouville.hpp — Lindblad superoperator, steady state, time propagation, two-time correlations
#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "cavsei/types.hpp"

namespace cavsei::liouville {

// column-major flattening; vec(AρB) = (Bᵀ⊗A)·vec(ρ)
Vec vec(const Mat& rho);
Mat unvec(const Vec& x, int dim);

struct CollapseChannel {
    Mat op;
    double rate = 0.0; // >= 0
};

// L = −i(I⊗H − Hᵀ⊗I) + Σ_k rate_k [conj(o)⊗o − ½ I⊗o†o − ½ (o†o)ᵀ⊗I]
Mat build_liouvillian(const Mat& H, const std::vector<CollapseChannel>& channels);

enum class UniquenessCheck {
    none,            // trust the solve
    probe,           // re-solve with a different constraint row, compare (sweep default)
    eigenvalues,     // full spectrum; second-smallest |λ| vs threshold (small dims)
    singular_values, // kernel dimension via SVD (mid-size single points)
};

struct SteadyStateOptions {
    double residual_tol = 1e-10;     // on ‖L·vec(ρ)‖₂/‖L‖_F
    UniquenessCheck check = UniquenessCheck::probe;
    double degeneracy_rel_tol = 1e-8; // threshold relative to ‖L‖_F
    int refine_steps = 2;             // iterative refinement passes on the linear solve
};

struct SteadyStateInfo {
    double residual = 0.0;
    double kernel_gap = -1.0; // second-smallest |λ| or singular value when computed
    bool uniqueness_checked = false;
};

struct SteadyStateError : std::runtime_error {
    explicit SteadyStateError(const std::string& what) : std::runtime_error(what) {}
};

// Unique solution of L·vec(ρ) = 0 with Tr ρ = 1, Hermitian by construction.
// Throws SteadyStateError on residual failure or detected degeneracy
// ("non-unique steady state").
Mat steady_state(const Mat& L, const SteadyStateOptions& opt = {},
                 SteadyStateInfo* info = nullptr);

struct EvolveOptions {
    double tol = 1e-9;        // local error control, mixed abs/rel
    long max_steps = 4000000;
};

struct EvolveError : std::runtime_error {
    EvolveError(const std::string& what, double err) : std::runtime_error(what), achieved_error(err) {}
    double achieved_error;
};

// x(t) = e^{Lt} x0 via adaptive Dormand–Prince 5(4); throws EvolveError with the
// achieved error estimate if the step size underflows or max_steps is exceeded
Vec evolve_vec(const Mat& L, Vec x, double t, const EvolveOptions& opt = {});
Mat evolve(const Mat& L, const Mat& rho0, double t, const EvolveOptions& opt = {});

// dense e^{L·dt} for uniform-grid propagation
struct Propagator {
    Mat P;
    double dt = 0.0;
    Vec apply(const Vec& x) const { return P * x; }
};
Propagator make_propagator(const Mat& L, double dt);

enum class CorrelationRoute { automatic, exponential, runge_kutta };

struct CorrelationOptions {
    CorrelationRoute route = CorrelationRoute::automatic;
    double imag_tol = 1e-8; // on |Im g| vs max(1, |Re g|)
    EvolveOptions evolve;
};

struct NoEmissionError : std::runtime_error {
    explicit NoEmissionError(const std::string& what) : std::runtime_error(what) {}
};

// g_n^(2)(τ_j) = Tr[a†ⁿaⁿ e^{Lτ_j}(aⁿ ρ_ss a†ⁿ)] / ⟨a†ⁿaⁿ⟩_ss² via the quantum
// regression theorem. taus must be ascending and >= 0. Uniform grids use one
// e^{L·Δτ}; otherwise adaptive RK. Throws NoEmissionError when ⟨a†ⁿaⁿ⟩ <= 1e-14.
std::vector<double> regression_g2(const Mat& L, const Mat& rho_ss, const Mat& a,
                                  int n, const std::vector<double>& taus,
                                  const CorrelationOptions& opt = {});

// test/diagnostic helpers; full eigendecomposition, small dims only
double spectral_abscissa(const Mat& L);     // max Re λ
double second_smallest_abs_eig(const Mat& L);

} // namespace cavsei::liouville
