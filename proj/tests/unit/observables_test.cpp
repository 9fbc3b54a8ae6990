// observables_test.cpp — photon statistics and spin correlations against closed forms
#include <doctest.h>

#include <cmath>

#include "cavsei/hilbert.hpp"
#include "cavsei/liouville.hpp"
#include "cavsei/observables.hpp"

using namespace cavsei;

namespace {

// |α⟩ ⊗ |g,g⟩ as a density matrix, truncated at the space cutoff
Mat coherent_density(const hilbert::SpaceDescriptor& s, double alpha) {
    Vec psi = Vec::Zero(s.dim());
    double amp = std::exp(-0.5 * alpha * alpha);
    for (int q = 0; q <= s.photon_cutoff; ++q) {
        psi(s.index(q, 0, 0)) = amp;
        amp *= alpha / std::sqrt(q + 1.0);
    }
    psi.normalize(); // remove the O(e^{-α²·…}) truncation deficit
    return psi * psi.adjoint();
}

Mat fock_density(const hilbert::SpaceDescriptor& s, int q) {
    Mat rho = Mat::Zero(s.dim(), s.dim());
    rho(s.index(q, 0, 0), s.index(q, 0, 0)) = 1.0;
    return rho;
}

// pure two-atom state (zero photons) from the four basis amplitudes (gg, ge, eg, ee)
Mat atom_density(const hilbert::SpaceDescriptor& s, cd gg, cd ge, cd eg, cd ee) {
    Vec psi = Vec::Zero(s.dim());
    psi(s.index(0, 0, 0)) = gg;
    psi(s.index(0, 0, 1)) = ge;
    psi(s.index(0, 1, 0)) = eg;
    psi(s.index(0, 1, 1)) = ee;
    psi.normalize();
    return psi * psi.adjoint();
}

} // namespace

TEST_CASE("coherent light calibrates the moment machinery") {
    const auto s = hilbert::build_space(14);
    const auto ops = hilbert::build_operators(s);
    const double alpha = 0.8;
    const Mat rho = coherent_density(s, alpha);
    CHECK(obs::photon_number(rho, ops.a) == doctest::Approx(alpha * alpha).epsilon(1e-10));
    CHECK(obs::equal_time_g(rho, ops.a, 1, 2) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(obs::equal_time_g(rho, ops.a, 1, 3) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(obs::equal_time_g(rho, ops.a, 2, 2) == doctest::Approx(1.0).epsilon(1e-8));
    // Poissonian number distribution
    const auto dist = obs::photon_distribution(rho, s);
    CHECK(dist.n_s == doctest::Approx(alpha * alpha).epsilon(1e-10));
    double pq = std::exp(-alpha * alpha);
    for (int q = 0; q <= 6; ++q) {
        CHECK(dist.p[size_t(q)] == doctest::Approx(pq).epsilon(1e-8));
        pq *= alpha * alpha / (q + 1.0);
    }
}

TEST_CASE("number states pin the intensity correlations") {
    const auto s = hilbert::build_space(4);
    const auto ops = hilbert::build_operators(s);
    const Mat one = fock_density(s, 1);
    CHECK(obs::equal_time_g(one, ops.a, 1, 2) == doctest::Approx(0.0));
    const Mat two = fock_density(s, 2);
    // ⟨a†²a²⟩/⟨a†a⟩² = 2/4
    CHECK(obs::equal_time_g(two, ops.a, 1, 2) == doctest::Approx(0.5));
    // two-photon bundle correlation of |2⟩ vanishes: no four-photon component
    CHECK(obs::equal_time_g(two, ops.a, 2, 2) == doctest::Approx(0.0));
    CHECK_THROWS_AS(obs::equal_time_g(two, ops.a, 0, 2), std::invalid_argument);
    CHECK_THROWS_AS(obs::equal_time_g(two, ops.a, 1, 1), std::invalid_argument);
}

TEST_CASE("operator and diagonal factorial-moment routes coincide") {
    const auto s = hilbert::build_space(6);
    const auto ops = hilbert::build_operators(s);
    // mixed thermal-like diagonal state plus a coherent block
    Mat rho = 0.5 * coherent_density(s, 1.1);
    double w = 0.5, z = 0.6;
    double norm = 0.0;
    for (int q = 0; q <= 6; ++q) norm += std::pow(z, q);
    for (int q = 0; q <= 6; ++q)
        rho(s.index(q, 0, 0), s.index(q, 0, 0)) += w * std::pow(z, q) / norm;
    for (int m = 1; m <= 3; ++m) {
        Mat am = Mat::Identity(s.dim(), s.dim());
        for (int i = 0; i < m; ++i) am = ops.a * am;
        const double via_ops = std::real((rho * (am.adjoint() * am)).trace());
        CHECK(obs::factorial_moment_diagonal(rho, s, m) ==
              doctest::Approx(via_ops).epsilon(1e-12));
    }
}

TEST_CASE("emitted-bundle distribution weights photons by their Fock level") {
    const auto s = hilbert::build_space(10);
    const Mat rho = coherent_density(s, 0.9);
    const auto dist = obs::photon_distribution(rho, s);
    double sum_p = 0.0, sum_pt = 0.0;
    for (double x : dist.p) sum_p += x;
    for (double x : dist.p_tilde) sum_pt += x;
    CHECK(sum_p == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(sum_pt == doctest::Approx(1.0).epsilon(1e-12));
    for (size_t q = 0; q < dist.p_tilde.size(); ++q)
        CHECK(dist.p_tilde[q] == doctest::Approx(q * dist.p[q] / dist.n_s).epsilon(1e-12));
    // vacuum has no emitted-bundle distribution
    const auto vac = obs::photon_distribution(fock_density(s, 0), s);
    CHECK(vac.p_tilde.empty());
    CHECK(vac.n_s == doctest::Approx(0.0));
}

TEST_CASE("tiny negative populations are clamped, real negatives rejected") {
    const auto s = hilbert::build_space(2);
    Mat rho = fock_density(s, 1);
    rho(0, 0) = -1e-11; // numerical noise level
    const auto p = obs::photon_populations(rho, s);
    CHECK(p[0] == 0.0);
    rho(0, 0) = -1e-8; // beyond noise: must be surfaced
    CHECK_THROWS_AS(obs::photon_populations(rho, s), std::runtime_error);
}

TEST_CASE("imaginary residues in expectation values are surfaced") {
    const auto s = hilbert::build_space(2);
    const auto ops = hilbert::build_operators(s);
    Mat rho = fock_density(s, 1);
    rho(s.index(1, 0, 0), s.index(1, 0, 0)) = cd{1.0, 0.4}; // non-Hermitian corruption
    CHECK_THROWS_AS(obs::photon_number(rho, ops.a), std::runtime_error);
}

TEST_CASE("spin correlations of maximally entangled and product states") {
    const auto s = hilbert::build_space(1);
    const auto ops = hilbert::build_operators(s);
    const double r2 = 1.0 / std::sqrt(2.0);

    const Mat phi_plus = atom_density(s, r2, 0, 0, r2); // (|gg⟩+|ee⟩)/√2
    CHECK(obs::spin_correlation(phi_plus, ops, obs::SpinAxis::x) == doctest::Approx(1.0));
    CHECK(obs::spin_correlation(phi_plus, ops, obs::SpinAxis::z) == doctest::Approx(1.0));

    const Mat psi_plus = atom_density(s, 0, r2, r2, 0); // (|ge⟩+|eg⟩)/√2
    CHECK(obs::spin_correlation(psi_plus, ops, obs::SpinAxis::x) == doctest::Approx(1.0));
    CHECK(obs::spin_correlation(psi_plus, ops, obs::SpinAxis::z) == doctest::Approx(-1.0));

    const Mat psi_minus = atom_density(s, 0, r2, -r2, 0); // (|ge⟩−|eg⟩)/√2
    CHECK(obs::spin_correlation(psi_minus, ops, obs::SpinAxis::x) == doctest::Approx(-1.0));
    CHECK(obs::spin_correlation(psi_minus, ops, obs::SpinAxis::z) == doctest::Approx(-1.0));

    // product state: joint moment factorizes, correlation vanishes
    const Mat eg = atom_density(s, 0, 0, 1, 0);
    CHECK(obs::spin_correlation(eg, ops, obs::SpinAxis::x) == doctest::Approx(0.0));
    CHECK(obs::spin_correlation(eg, ops, obs::SpinAxis::z) == doctest::Approx(0.0));

    // classically correlated mixture still shows up on the z axis
    const Mat gg = atom_density(s, 1, 0, 0, 0);
    const Mat ee = atom_density(s, 0, 0, 0, 1);
    const Mat mix = 0.5 * gg + 0.5 * ee;
    CHECK(obs::spin_correlation(mix, ops, obs::SpinAxis::z) == doctest::Approx(1.0));
    CHECK(obs::spin_correlation(mix, ops, obs::SpinAxis::x) == doctest::Approx(0.0));
}
