// observables.hpp — steady-state expectation values: photon statistics and spin correlations
#pragma once

#include <vector>

#include "cavsei/hilbert.hpp"
#include "cavsei/types.hpp"

namespace cavsei::obs {

// ⟨a†a⟩; throws if the result has an imaginary residue above 1e-10
double photon_number(const Mat& rho, const Mat& a);

// generalized equal-time correlation g_n^(k)(0) = ⟨(a†)^{nk} a^{nk}⟩ / ⟨(a†)ⁿ aⁿ⟩^k;
// throws liouville::NoEmissionError when the denominator moment <= 1e-14
double equal_time_g(const Mat& rho, const Mat& a, int n, int k);

// falling-factorial photon moment ⟨(a†)^m a^m⟩ = Σ_q q(q−1)…(q−m+1) p(q);
// diagonal route, independent of the operator route above
double factorial_moment_diagonal(const Mat& rho, const hilbert::SpaceDescriptor& s, int m);

// p(q) = Σ_{s1,s2} ⟨q,s1,s2|ρ|q,s1,s2⟩. Entries within −1e-10 of zero are
// clamped to 0; more negative entries throw (cutoff or solver failure).
std::vector<double> photon_populations(const Mat& rho, const hilbert::SpaceDescriptor& s);

struct Distribution {
    std::vector<double> p;       // length cutoff+1
    std::vector<double> p_tilde; // q·p(q)/n_s; empty when n_s ~ 0
    double n_s = 0.0;            // Σ q p(q)
};

Distribution photon_distribution(const Mat& rho, const hilbert::SpaceDescriptor& s);

enum class SpinAxis { x, z };

// C^{μμ} = ⟨σ_1^μ σ_2^μ⟩ − ⟨σ_1^μ⟩⟨σ_2^μ⟩, μ ∈ {x,z}; result in [−1, 1]
double spin_correlation(const Mat& rho, const hilbert::Operators& ops, SpinAxis axis);

} // namespace cavsei::obs
