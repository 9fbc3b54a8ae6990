// model_test.cpp — parameter handling, mediated-exchange relations, Hamiltonian assembly
#include <doctest.h>

#include <cmath>

#include "cavsei/hilbert.hpp"
#include "cavsei/model.hpp"

using namespace cavsei;

namespace {
double max_abs(const Mat& m) { return m.cwiseAbs().maxCoeff(); }

// direct dense assembly from the basis rules; shares nothing with the library path
Mat assemble_reference(const model::ModelParams& p, const hilbert::SpaceDescriptor& s) {
    const int cutoff = s.photon_cutoff;
    const double c = std::cos(p.phi);
    Mat h = Mat::Zero(s.dim(), s.dim());
    for (int i = 0; i < s.dim(); ++i) {
        const auto [q, s1, s2] = s.state(i);
        h(i, i) = p.Delta_a * q +
                  0.5 * p.delta * ((s1 ? 1.0 : -1.0) + (s2 ? 1.0 : -1.0));
        h(s.index(q, 1 - s1, s2), i) += 0.5 * p.Omega;
        h(s.index(q, s1, 1 - s2), i) += 0.5 * p.Omega;
        if (s1 == 1 && s2 == 0) h(s.index(q, 0, 1), i) += p.V;
        if (s1 == 0 && s2 == 1) h(s.index(q, 1, 0), i) += p.V;
        if (s1 == 1 && q < cutoff) h(s.index(q + 1, 0, s2), i) += p.g_a * std::sqrt(q + 1.0);
        if (s2 == 1 && q < cutoff)
            h(s.index(q + 1, s1, 0), i) += p.g_a * c * std::sqrt(q + 1.0);
        if (s1 == 0 && q > 0) h(s.index(q - 1, 1, s2), i) += p.g_a * std::sqrt(double(q));
        if (s2 == 0 && q > 0) h(s.index(q - 1, s1, 1), i) += p.g_a * c * std::sqrt(double(q));
    }
    return h;
}
} // namespace

TEST_CASE("parameter validation rejects broken inputs and accepts signed detunings") {
    model::ModelParams p;
    CHECK_NOTHROW(p.validate());
    p.Delta_a = -2.5;
    p.V = -1.0;
    p.Omega = -0.1;
    CHECK_NOTHROW(p.validate());
    auto bad = p;
    bad.g_a = 0.0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = p;
    bad.kappa_a = -0.1;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = p;
    bad.gamma_e = -1e-9;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = p;
    bad.delta = std::nan("");
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("phase normalization wraps into [0, 2pi)") {
    model::ModelParams p;
    p.phi = -kPi / 2;
    CHECK(p.normalized().phi == doctest::Approx(1.5 * kPi));
    p.phi = 2 * kPi;
    CHECK(p.normalized().phi == doctest::Approx(0.0));
    p.phi = 5 * kPi;
    CHECK(p.normalized().phi == doctest::Approx(kPi));
}

TEST_CASE("mediated exchange and induced decay follow the adiabatic formulas") {
    model::AuxCavityParams aux;
    aux.g_b = 2.0;
    aux.Delta_b = -3.0;
    aux.kappa_b = 0.5;
    const auto r = model::derive_sei(aux);
    CHECK(r.V == doctest::Approx(12.0 / 9.25));
    CHECK(r.gamma_e == doctest::Approx(2.0 / 9.25));
    // γ_e = −V κ_b / Δ_b ties the two outputs together
    CHECK(r.gamma_e == doctest::Approx(-r.V * aux.kappa_b / aux.Delta_b));
    CHECK_FALSE(r.dispersive_ok); // |Δ_b| < 10 g_b here
}

TEST_CASE("default auxiliary mode reproduces the quoted operating point") {
    // g_b = (2π)5 MHz, κ_b = (2π)0.5 MHz, Δ_b = −(2π)100 MHz against
    // g_a = (2π)120 kHz gives V ≈ 2.083 g_a and γ_e ≈ (2π)1.25 kHz
    auto aux = model::default_aux();
    CHECK(aux.g_b == doctest::Approx(5000.0 / 120.0));
    CHECK(aux.kappa_b == doctest::Approx(500.0 / 120.0));
    aux.Delta_b = -100000.0 / 120.0;
    const auto r = model::derive_sei(aux);
    CHECK(r.V == doctest::Approx(2.0833).epsilon(1e-3));
    CHECK(r.gamma_e * 120.0 == doctest::Approx(1.25).epsilon(1e-3));
    CHECK(r.dispersive_ok);
}

TEST_CASE("exchange-strength inversion round-trips through the forward map") {
    const auto aux0 = model::default_aux();
    for (double target : {-2.0, -0.5, 0.3, 1.0, 2.0}) {
        const auto inv = model::invert_sei(target, aux0.g_b, aux0.kappa_b);
        model::AuxCavityParams aux = aux0;
        aux.Delta_b = inv.Delta_b;
        const auto fwd = model::derive_sei(aux);
        CHECK(fwd.V == doctest::Approx(target).epsilon(1e-12));
        CHECK(fwd.gamma_e == doctest::Approx(inv.gamma_e).epsilon(1e-12));
        // dispersive branch: opposite signs, far-detuned root
        CHECK(inv.Delta_b * target < 0.0);
        CHECK(std::abs(inv.Delta_b) > aux0.kappa_b);
    }
}

TEST_CASE("induced decay at the strong-exchange operating point") {
    CHECK(model::gamma_e_for_V(2.0) == doctest::Approx(0.0096).epsilon(2e-3));
    CHECK(model::gamma_e_for_V(0.0) == 0.0);
    CHECK(model::gamma_e_for_V(-2.0) == doctest::Approx(model::gamma_e_for_V(2.0)));
    // weak exchange: γ_e ≈ κ_b V² / g_b² → vanishes quadratically
    const auto aux = model::default_aux();
    const double v = 1e-4;
    CHECK(model::gamma_e_for_V(v) ==
          doctest::Approx(aux.kappa_b * v * v / (aux.g_b * aux.g_b)).epsilon(1e-6));
}

TEST_CASE("exchange-strength inversion rejects unreachable targets") {
    const auto aux = model::default_aux();
    const double bound = aux.g_b * aux.g_b / (2.0 * aux.kappa_b);
    CHECK_THROWS_AS(model::invert_sei(0.0, aux.g_b, aux.kappa_b), std::domain_error);
    CHECK_THROWS_AS(model::invert_sei(bound * 1.0001, aux.g_b, aux.kappa_b),
                    std::domain_error);
    // at the bound both quadratic roots coincide at ∓κ_b; the vanishing
    // discriminant is cancellation-limited, so only √ε accuracy survives
    const auto edge = model::invert_sei(bound, aux.g_b, aux.kappa_b);
    CHECK(edge.Delta_b == doctest::Approx(-aux.kappa_b).epsilon(1e-6));
}

TEST_CASE("two-photon detuning resolution modes") {
    CHECK(model::resolve_delta(model::DeltaMode::fixed, -0.7, 2.0, 1.0) == -0.7);
    CHECK(model::resolve_delta(model::DeltaMode::ratio_of_Delta_a, 0.5, 2.0, 1.0) == 1.0);
    CHECK(model::resolve_delta(model::DeltaMode::ratio_of_V, -1.0, 2.0, 1.5) == -1.5);
}

TEST_CASE("assembled Hamiltonian matches a direct basis-rule construction") {
    model::ModelParams p;
    p.Delta_a = -1.3;
    p.delta = 0.45;
    p.Omega = 0.025;
    p.V = 1.7;
    p.phi = 0.8;
    p.gamma_e = 0.01;
    const auto s = hilbert::build_space(2);
    const Mat h = model::build_hamiltonian(p, s);
    CHECK(max_abs(h - assemble_reference(p, s)) < 1e-13);
    CHECK(hilbert::hermiticity_defect(h) < 1e-13);
    // descriptor and cached-operator overloads agree
    CHECK(max_abs(h - model::build_hamiltonian(p, hilbert::build_operators(s))) < 1e-14);
}

TEST_CASE("drive-free Hamiltonian conserves the total excitation number") {
    model::ModelParams p;
    p.Omega = 0.0;
    p.Delta_a = 0.9;
    p.delta = -0.3;
    p.V = 1.2;
    p.phi = 2.1;
    const auto s = hilbert::build_space(3);
    const Mat N = hilbert::excitation_number(s);
    const Mat h0 = model::build_hamiltonian(p, s);
    CHECK(max_abs(h0 * N - N * h0) < 1e-13);
    p.Omega = 0.025;
    const Mat h1 = model::build_hamiltonian(p, s);
    CHECK(max_abs(h1 * N - N * h1) > 1e-3);
}

TEST_CASE("phase enters only through its cosine") {
    model::ModelParams a, b;
    a.phi = 0.7;
    b.phi = 2 * kPi - 0.7;
    a.V = b.V = 0.5;
    a.Delta_a = b.Delta_a = 1.0;
    const auto s = hilbert::build_space(2);
    CHECK(max_abs(model::build_hamiltonian(a, s) - model::build_hamiltonian(b, s)) < 1e-13);
}

TEST_CASE("quarter-wave phase decouples the second atom from the cavity") {
    model::ModelParams p;
    p.phi = kPi / 2;
    p.V = 1.0;
    const auto s = hilbert::build_space(1);
    const Mat h = model::build_hamiltonian(p, s);
    const int one_gg = s.index(1, 0, 0);
    CHECK(std::abs(h(one_gg, s.index(0, 0, 1))) < 1e-15); // |0,g,e> stays dark
    CHECK(std::abs(h(one_gg, s.index(0, 1, 0)) - cd{p.g_a, 0.0}) < 1e-15);
}

TEST_CASE("physical scale converts between rates and laboratory time") {
    model::PhysicalScale sc;
    CHECK(sc.to_dimensionless(120.0) == doctest::Approx(1.0));
    CHECK(sc.to_kHz(0.125) == doctest::Approx(15.0));
    CHECK(sc.to_dimensionless(sc.to_kHz(0.33)) == doctest::Approx(0.33));
    // t = 1/g_a with g_a = 2π·120 kHz is 1/(2π·120k) s ≈ 1.326 µs
    CHECK(sc.time_us(1.0) == doctest::Approx(1.3263).epsilon(1e-4));
    // one cavity lifetime at κ_a = g_a/8 is 8× that
    CHECK(sc.time_us(8.0) == doctest::Approx(10.6103).epsilon(1e-4));
}
