// spectrum.hpp — excitation-manifold matrices, dressed levels, dark states, resonances
#pragma once

#include <string>
#include <vector>

#include "cavsei/model.hpp"
#include "cavsei/types.hpp"

namespace cavsei::spectrum {

enum class ManifoldBasis { bare, collective };

// Drive-free Hamiltonian restricted to the n-excitation manifold, shifted by
// +δ·I so the ground reference sits at zero; det = 0 is the n-photon resonance
// condition. Bare basis (n >= 2): [|n−1,g,e⟩, |n−1,e,g⟩, |n−2,e,e⟩, |n,g,g⟩];
// n = 1 drops the |n−2,e,e⟩ entry (3×3). Collective basis replaces the first
// two by |n−1,±⟩ with |±⟩ = (|g,e⟩ ± |e,g⟩)/√2.
struct ManifoldMatrix {
    int n = 1;
    ManifoldBasis basis = ManifoldBasis::bare;
    RMat entries;
    std::vector<std::string> labels;
    int size() const { return int(entries.rows()); }
};

ManifoldMatrix manifold_matrix(int n, const model::ModelParams& p, ManifoldBasis basis);

// g_a-proportional block of the manifold matrix (the cavity-exchange coupling);
// a state v is dark iff ‖coupling·v‖ < tol
RMat coupling_part(const ManifoldMatrix& m, const model::ModelParams& p);

double manifold_det(int n, const model::ModelParams& p);

struct DressedLevel {
    int n = 1;
    double energy = 0.0; // relative to the ground reference (+δ shift included)
    RVec state;          // coordinates in the requested manifold basis
    bool dark = false;
};

struct LevelOptions {
    double dark_tol_per_ga = 1e-10;  // on ‖coupling·v‖ / g_a
    double degeneracy_tol = 1e-9;    // eigenvalue grouping, relative to max(1, ‖M‖)
};

// All manifold levels sorted by energy. Degenerate groups are rotated (SVD of
// the coupling restricted to the group) so dark combinations are resolved even
// when mixed with bright ones by the eigensolver.
std::vector<DressedLevel> dressed_levels(int n, const model::ModelParams& p,
                                         ManifoldBasis basis, const LevelOptions& opt = {});

std::vector<DressedLevel> dark_states(int n, const model::ModelParams& p,
                                      ManifoldBasis basis = ManifoldBasis::bare,
                                      const LevelOptions& opt = {});

// closed-form dark-state families, bare-basis coordinates.
// exchange type: (|n−1,g,e⟩ + sign·|n−1,e,g⟩)/√2, sign −1 ↔ φ=0, +1 ↔ φ=π;
// an eigenstate at cosφ = −sign for every (Δ_a, δ, V).
RVec exchange_dark_state(int n, int sign);
// pathway type (n >= 2): √((n−1)/(2n−1))|n,g,g⟩ + sign·√(n/(2n−1))|n−2,e,e⟩,
// sign −1 ↔ φ=0, +1 ↔ φ=π; an eigenstate only when δ = Δ_a.
RVec pathway_dark_state(int n, int sign);

// photon-sideband energies at φ=0:
// E_{1,±} = (Δ_a+δ+V)/2 ± ½√((δ+V−Δ_a)² + 8 g_a²)
struct SidebandEnergies {
    double upper = 0.0, lower = 0.0;
};
SidebandEnergies sideband_energies(const model::ModelParams& p);

// named resonance detunings used by sweep trajectories
double blue_sideband_rabi_detuning(double V, double g_a);   // −V − √(V² + 4g_a²)
double red_two_photon_detuning(double V);                   // 2V   (φ=π, δ=−V)
double blue_two_photon_detuning(double V, double g_a);      // −g_a²/V, V ≠ 0

// single-photon resonance at fixed δ: Δ_a = g_a²[δ(1+cos²φ) − 2V cosφ]/(δ²−V²)
double single_photon_detuning_fixed_delta(double delta, double V, double g_a, double phi);

// sign-change bisection roots of det M_n(Δ_a) over [lo, hi]; δ re-resolved per
// Δ_a through (mode, value). Oracle for the closed forms above.
std::vector<double> scan_det_roots(int n, const model::ModelParams& base,
                                   model::DeltaMode mode, double delta_value,
                                   double lo, double hi, int samples);

// verification of the closed-form dressed states quoted at the two-photon
// resonances (φ=π, δ=−V sector). Candidates whose printed coefficients fail
// the eigenproblem are flagged and reported with the corrected kernel vector;
// nothing is repaired silently.
struct CandidateReport {
    std::string name;
    int n = 1;
    double Delta_a = 0.0;
    RVec quoted;               // normalized printed direction, collective basis
    double quoted_norm_sq = 0.0;    // printed normalization constant, squared
    double coeff_norm_sq = 0.0;     // actual sum of squared printed coefficients
    bool norm_mismatch = false;
    double eigen_residual = 0.0;    // ‖Mv − (vᵀMv)v‖ of the printed direction
    bool direction_mismatch = false;
    RVec corrected;            // nearest eigenvector when direction_mismatch
    double corrected_residual = 0.0;
};

std::vector<CandidateReport> verify_bundle_eigenstates(double V, double g_a = 1.0);

} // namespace cavsei::spectrum
