// model.cpp — parameter validation, SEI algebra, Hamiltonian assembly
#include "cavsei/model.hpp"

#include <cmath>
#include <stdexcept>

namespace cavsei::model {

void ModelParams::validate() const {
    auto finite = [](double x) { return std::isfinite(x); };
    if (!(finite(g_a) && finite(kappa_a) && finite(gamma) && finite(gamma_e) &&
          finite(Omega) && finite(Delta_a) && finite(delta) && finite(phi) && finite(V)))
        throw std::invalid_argument("ModelParams: non-finite entry");
    if (g_a <= 0.0) throw std::invalid_argument("ModelParams: g_a must be > 0");
    if (kappa_a < 0.0 || gamma < 0.0 || gamma_e < 0.0)
        throw std::invalid_argument("ModelParams: decay rates must be >= 0");
}

ModelParams ModelParams::normalized() const {
    ModelParams p = *this;
    p.phi = std::fmod(p.phi, 2.0 * kPi);
    if (p.phi < 0.0) p.phi += 2.0 * kPi;
    return p;
}

AuxCavityParams default_aux() {
    // g_b = 5000/120 g_a, κ_b = 500/120 g_a
    return AuxCavityParams{5000.0 / 120.0, 0.0, 500.0 / 120.0};
}

SeiResult derive_sei(const AuxCavityParams& aux) {
    if (aux.g_b <= 0.0 || aux.kappa_b <= 0.0)
        throw std::invalid_argument("derive_sei: g_b and kappa_b must be > 0");
    const double denom = aux.Delta_b * aux.Delta_b + aux.kappa_b * aux.kappa_b;
    if (denom == 0.0) throw std::invalid_argument("derive_sei: Delta_b = kappa_b = 0");
    SeiResult r;
    r.V = -aux.g_b * aux.g_b * aux.Delta_b / denom;
    r.gamma_e = aux.kappa_b * aux.g_b * aux.g_b / denom;
    r.dispersive_ok = std::abs(aux.Delta_b) >= 10.0 * aux.g_b;
    return r;
}

SeiInversion invert_sei(double V_target, double g_b, double kappa_b) {
    if (g_b <= 0.0 || kappa_b <= 0.0)
        throw std::invalid_argument("invert_sei: g_b and kappa_b must be > 0");
    if (V_target == 0.0)
        throw std::domain_error("invert_sei: V_target = 0 has no finite Delta_b");
    const double bound = g_b * g_b / (2.0 * kappa_b);
    if (std::abs(V_target) > bound)
        throw std::domain_error("invert_sei: |V_target| exceeds g_b^2/(2 kappa_b), unsolvable");
    // V Δ_b² + g_b² Δ_b + V κ_b² = 0; take the larger-|Δ_b| (dispersive) root
    const double disc = std::pow(g_b, 4) - 4.0 * V_target * V_target * kappa_b * kappa_b;
    SeiInversion out;
    out.Delta_b = (-g_b * g_b - std::sqrt(std::max(disc, 0.0))) / (2.0 * V_target);
    // γ_e = −V κ_b / Δ_b, an identity of the two expressions above
    out.gamma_e = -V_target * kappa_b / out.Delta_b;
    return out;
}

double gamma_e_for_V(double V, const AuxCavityParams& aux) {
    if (V == 0.0) return 0.0; // |Δ_b| → ∞ limit
    return invert_sei(V, aux.g_b, aux.kappa_b).gamma_e;
}

double resolve_delta(DeltaMode mode, double value, double Delta_a, double V) {
    switch (mode) {
    case DeltaMode::fixed: return value;
    case DeltaMode::ratio_of_Delta_a: return value * Delta_a;
    case DeltaMode::ratio_of_V: return value * V;
    }
    throw std::logic_error("resolve_delta: unknown mode");
}

Mat build_hamiltonian(const ModelParams& p, const hilbert::Operators& ops) {
    p.validate();
    const double c = std::cos(p.phi);
    Mat H = p.Delta_a * (ops.ad * ops.a);
    H += 0.5 * p.delta * (ops.sz[0] + ops.sz[1]);
    H += 0.5 * p.Omega * (ops.sx[0] + ops.sx[1]);
    H += p.V * (ops.sp[0] * ops.sm[1] + ops.sp[1] * ops.sm[0]);
    Mat coupling = p.g_a * (ops.ad * (ops.sm[0] + c * ops.sm[1]));
    H += coupling + coupling.adjoint();
    return H;
}

Mat build_hamiltonian(const ModelParams& p, const hilbert::SpaceDescriptor& s) {
    return build_hamiltonian(p, hilbert::build_operators(s));
}

} // namespace cavsei::model
