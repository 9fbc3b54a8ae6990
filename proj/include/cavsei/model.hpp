// model.hpp — system parameters, mediated spin-exchange relations, Hamiltonian assembly
#pragma once

#include "cavsei/hilbert.hpp"
#include "cavsei/types.hpp"

namespace cavsei::model {

enum class UnitSystem { dimensionless_ga, physical_kHz };

// All frequencies in units of g_a unless units says otherwise; physical values
// carry the conventional (2π) prefactor, i.e. "15 kHz" means 2π·15 kHz.
struct ModelParams {
    double g_a = 1.0;
    double kappa_a = 0.125;
    double gamma = 0.0625;
    double gamma_e = 0.0;
    double Omega = 0.025;
    double Delta_a = 0.0;
    double delta = 0.0; // resolved two-photon detuning δ = δ_c + V/2
    double phi = 0.0;   // programmed phase, canonical range [0, 2π)
    double V = 0.0;     // mediated exchange strength
    UnitSystem units = UnitSystem::dimensionless_ga;

    // throws invalid_argument on g_a <= 0, negative rates, non-finite entries
    void validate() const;

    // same params with phi wrapped into [0, 2π)
    ModelParams normalized() const;
};

// auxiliary-mode parameters generating (V, γ_e); same units as the main params
struct AuxCavityParams {
    double g_b = 0.0;
    double Delta_b = 0.0;
    double kappa_b = 0.0;
};

// default auxiliary mode in g_a units: g_b = (2π)5 MHz, κ_b = (2π)0.5 MHz
// against g_a = (2π)120 kHz; Delta_b is left free for invert_sei
AuxCavityParams default_aux();

struct SeiResult {
    double V = 0.0;
    double gamma_e = 0.0;
    bool dispersive_ok = true; // |Delta_b| >= 10 g_b
};

// V = −g_b²Δ_b/(Δ_b²+κ_b²), γ_e = κ_b g_b²/(Δ_b²+κ_b²)
SeiResult derive_sei(const AuxCavityParams& aux);

struct SeiInversion {
    double Delta_b = 0.0;
    double gamma_e = 0.0;
};

// Larger-|Δ_b| root of V·Δ_b² + g_b²·Δ_b + V·κ_b² = 0; requires
// 0 < |V| <= g_b²/(2κ_b), throws std::domain_error otherwise.
SeiInversion invert_sei(double V_target, double g_b, double kappa_b);

// γ_e induced by the default auxiliary mode at exchange strength V; V = 0 → 0
double gamma_e_for_V(double V, const AuxCavityParams& aux = default_aux());

enum class DeltaMode { fixed, ratio_of_Delta_a, ratio_of_V };

// fixed: δ = value; ratio_of_Delta_a: δ = value·Δ_a; ratio_of_V: δ = value·V
double resolve_delta(DeltaMode mode, double value, double Delta_a, double V);

// H = Δ_a a†a + ½Σ_j(δσ_j^z + Ωσ_j^x) + V(σ_1⁺σ_2⁻ + σ_2⁺σ_1⁻)
//     + g_a[a†(σ_1⁻ + cosφ·σ_2⁻) + h.c.]
Mat build_hamiltonian(const ModelParams& p, const hilbert::Operators& ops);
Mat build_hamiltonian(const ModelParams& p, const hilbert::SpaceDescriptor& s);

// conversion between g_a-units and (2π)·kHz for physical configs
struct PhysicalScale {
    double ga_kHz = 120.0;
    double to_dimensionless(double f_kHz) const { return f_kHz / ga_kHz; }
    double to_kHz(double x) const { return x * ga_kHz; }
    // t in 1/g_a units → microseconds; g_a = 2π·ga_kHz rad/s
    double time_us(double t) const { return t * 1e3 / (2.0 * kPi * ga_kHz); }
};

} // namespace cavsei::model
