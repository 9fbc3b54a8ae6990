// spectrum.cpp — manifold spectra, dark-state classification, resonance algebra
#include "cavsei/spectrum.hpp"

#include <cmath>
#include <stdexcept>

namespace cavsei::spectrum {

namespace {

// entries with the cavity coupling passed explicitly so the coupling block can
// be isolated by differencing against g = 0
RMat manifold_entries(int n, double Delta, double delta, double V, double phi, double g,
                      ManifoldBasis basis) {
    const double c = std::cos(phi);
    const double xi = (n - 1) * Delta + delta;
    if (n == 1) {
        RMat m = RMat::Zero(3, 3);
        if (basis == ManifoldBasis::bare) {
            m(0, 0) = m(1, 1) = xi;
            m(2, 2) = Delta;
            m(0, 1) = m(1, 0) = V;
            m(0, 2) = m(2, 0) = g * c;
            m(1, 2) = m(2, 1) = g;
        } else {
            const double gp = g * (1.0 + c) / std::sqrt(2.0);
            const double gm = g * (1.0 - c) / std::sqrt(2.0);
            m(0, 0) = xi + V;
            m(1, 1) = xi - V;
            m(2, 2) = Delta;
            m(0, 2) = m(2, 0) = gp;
            m(1, 2) = m(2, 1) = -gm;
        }
        return m;
    }
    RMat m = RMat::Zero(4, 4);
    const double rn = std::sqrt(double(n));
    const double rn1 = std::sqrt(double(n - 1));
    if (basis == ManifoldBasis::bare) {
        m(0, 0) = m(1, 1) = xi;
        m(2, 2) = (n - 2) * Delta + 2.0 * delta;
        m(3, 3) = n * Delta;
        m(0, 1) = m(1, 0) = V;
        m(0, 2) = m(2, 0) = rn1 * g;
        m(1, 2) = m(2, 1) = rn1 * g * c;
        m(0, 3) = m(3, 0) = rn * g * c;
        m(1, 3) = m(3, 1) = rn * g;
    } else {
        const double gp = g * (1.0 + c) / std::sqrt(2.0);
        const double gm = g * (1.0 - c) / std::sqrt(2.0);
        m(0, 0) = xi + V;
        m(1, 1) = xi - V;
        m(2, 2) = (n - 2) * Delta + 2.0 * delta;
        m(3, 3) = n * Delta;
        m(0, 2) = m(2, 0) = rn1 * gp;
        m(1, 2) = m(2, 1) = rn1 * gm;
        m(0, 3) = m(3, 0) = rn * gp;
        m(1, 3) = m(3, 1) = -rn * gm;
    }
    return m;
}

std::vector<std::string> manifold_labels(int n, ManifoldBasis basis) {
    const std::string nm1 = std::to_string(n - 1);
    const std::string nn = std::to_string(n);
    std::vector<std::string> lab;
    if (basis == ManifoldBasis::bare) {
        lab = {"|" + nm1 + ",g,e>", "|" + nm1 + ",e,g>"};
    } else {
        lab = {"|" + nm1 + ",+>", "|" + nm1 + ",->"};
    }
    if (n >= 2) lab.push_back("|" + std::to_string(n - 2) + ",e,e>");
    lab.push_back("|" + nn + ",g,g>");
    return lab;
}

void fix_sign(RVec& v) {
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        if (std::abs(v(i)) > 1e-8) {
            if (v(i) < 0.0) v = -v;
            return;
        }
    }
}

} // namespace

ManifoldMatrix manifold_matrix(int n, const model::ModelParams& p, ManifoldBasis basis) {
    if (n < 1) throw std::invalid_argument("manifold_matrix: n must be >= 1");
    p.validate();
    ManifoldMatrix m;
    m.n = n;
    m.basis = basis;
    m.entries = manifold_entries(n, p.Delta_a, p.delta, p.V, p.phi, p.g_a, basis);
    m.labels = manifold_labels(n, basis);
    return m;
}

RMat coupling_part(const ManifoldMatrix& m, const model::ModelParams& p) {
    return m.entries - manifold_entries(m.n, p.Delta_a, p.delta, p.V, p.phi, 0.0, m.basis);
}

double manifold_det(int n, const model::ModelParams& p) {
    return manifold_matrix(n, p, ManifoldBasis::bare).entries.determinant();
}

std::vector<DressedLevel> dressed_levels(int n, const model::ModelParams& p,
                                         ManifoldBasis basis, const LevelOptions& opt) {
    const ManifoldMatrix m = manifold_matrix(n, p, basis);
    const RMat C = coupling_part(m, p);
    Eigen::SelfAdjointEigenSolver<RMat> es(m.entries);
    const RVec evals = es.eigenvalues();
    const RMat evecs = es.eigenvectors();
    const double group_tol = opt.degeneracy_tol * std::max(1.0, m.entries.cwiseAbs().maxCoeff());
    const double dark_tol = opt.dark_tol_per_ga * p.g_a;

    std::vector<DressedLevel> out;
    int i = 0;
    const int sz = m.size();
    while (i < sz) {
        int j = i + 1;
        while (j < sz && evals(j) - evals(i) <= group_tol) ++j;
        const int gsize = j - i;
        const RMat Vg = evecs.middleCols(i, gsize);
        // rotate the degenerate subspace so coupling norms are extremal
        Eigen::JacobiSVD<RMat> svd(C * Vg, Eigen::ComputeFullV);
        const RMat rotated = Vg * svd.matrixV();
        for (int kcol = 0; kcol < gsize; ++kcol) {
            DressedLevel lvl;
            lvl.n = n;
            lvl.energy = evals(i);
            lvl.state = rotated.col(kcol);
            fix_sign(lvl.state);
            const double sigma =
                (kcol < svd.singularValues().size()) ? svd.singularValues()(kcol) : 0.0;
            lvl.dark = sigma < dark_tol;
            out.push_back(std::move(lvl));
        }
        i = j;
    }
    return out;
}

std::vector<DressedLevel> dark_states(int n, const model::ModelParams& p,
                                      ManifoldBasis basis, const LevelOptions& opt) {
    std::vector<DressedLevel> out;
    for (auto& lvl : dressed_levels(n, p, basis, opt))
        if (lvl.dark) out.push_back(std::move(lvl));
    return out;
}

RVec exchange_dark_state(int n, int sign) {
    if (n < 1) throw std::invalid_argument("exchange_dark_state: n must be >= 1");
    if (sign != 1 && sign != -1) throw std::invalid_argument("exchange_dark_state: sign must be ±1");
    RVec v = RVec::Zero(n == 1 ? 3 : 4);
    v(0) = 1.0 / std::sqrt(2.0);
    v(1) = sign / std::sqrt(2.0);
    return v;
}

RVec pathway_dark_state(int n, int sign) {
    if (n < 2) throw std::invalid_argument("pathway_dark_state: n must be >= 2");
    if (sign != 1 && sign != -1) throw std::invalid_argument("pathway_dark_state: sign must be ±1");
    RVec v = RVec::Zero(4);
    v(3) = std::sqrt(double(n - 1) / double(2 * n - 1));
    v(2) = sign * std::sqrt(double(n) / double(2 * n - 1));
    return v;
}

SidebandEnergies sideband_energies(const model::ModelParams& p) {
    const double s = p.delta + p.V - p.Delta_a;
    const double root = 0.5 * std::sqrt(s * s + 8.0 * p.g_a * p.g_a);
    const double mid = 0.5 * (p.Delta_a + p.delta + p.V);
    return {mid + root, mid - root};
}

double blue_sideband_rabi_detuning(double V, double g_a) {
    return -V - std::sqrt(V * V + 4.0 * g_a * g_a);
}

double red_two_photon_detuning(double V) { return 2.0 * V; }

double blue_two_photon_detuning(double V, double g_a) {
    if (V == 0.0) throw std::domain_error("blue_two_photon_detuning: V = 0 puts the resonance at infinity");
    return -g_a * g_a / V;
}

double single_photon_detuning_fixed_delta(double delta, double V, double g_a, double phi) {
    const double c = std::cos(phi);
    // factored form: exact zero at delta = ±V even with fused multiply-adds
    const double denom = (delta - V) * (delta + V);
    if (denom == 0.0)
        throw std::domain_error("single_photon_detuning_fixed_delta: delta² = V², resonance at infinity");
    return g_a * g_a * (delta * (1.0 + c * c) - 2.0 * V * c) / denom;
}

std::vector<double> scan_det_roots(int n, const model::ModelParams& base,
                                   model::DeltaMode mode, double delta_value,
                                   double lo, double hi, int samples) {
    if (samples < 2) throw std::invalid_argument("scan_det_roots: samples must be >= 2");
    auto det_at = [&](double Delta) {
        model::ModelParams p = base;
        p.Delta_a = Delta;
        p.delta = model::resolve_delta(mode, delta_value, Delta, p.V);
        return manifold_det(n, p);
    };
    std::vector<double> roots;
    double x0 = lo, d0 = det_at(lo);
    for (int s = 1; s <= samples; ++s) {
        const double x1 = lo + (hi - lo) * double(s) / samples;
        const double d1 = det_at(x1);
        if (d0 == 0.0) roots.push_back(x0);
        else if (d0 * d1 < 0.0) {
            double a = x0, b = x1, da = d0;
            for (int it = 0; it < 80; ++it) {
                const double mid = 0.5 * (a + b);
                const double dm = det_at(mid);
                if (da * dm <= 0.0) b = mid;
                else { a = mid; da = dm; }
            }
            roots.push_back(0.5 * (a + b));
        }
        x0 = x1;
        d0 = d1;
    }
    if (d0 == 0.0) roots.push_back(x0);
    return roots;
}

std::vector<CandidateReport> verify_bundle_eigenstates(double V, double g_a) {
    if (V == 0.0) throw std::domain_error("verify_bundle_eigenstates: requires V != 0");
    if (g_a <= 0.0) throw std::invalid_argument("verify_bundle_eigenstates: g_a must be > 0");
    const double g = g_a;

    struct Candidate {
        std::string name;
        int n;
        double Delta_a;
        RVec coeffs; // collective-basis pattern as printed
        double printed_norm_sq;
    };
    std::vector<Candidate> cands;
    {
        const double Db = blue_two_photon_detuning(V, g);
        RVec v1(3);
        v1 << 0.0, g, -std::sqrt(2.0) * V;
        cands.push_back({"blue_pair_n1", 1, Db, v1, g * g + 2.0 * V * V});
        RVec v2(4);
        v2 << 0.0, std::sqrt(2.0) * g * V, g * g, -std::sqrt(2.0) * V * V;
        cands.push_back({"blue_pair_n2", 2, Db, v2,
                         std::pow(g, 4) + 2.0 * g * g * V * V + 4.0 * std::pow(V, 4)});
        RVec v3(4);
        v3 << 0.0, std::sqrt(2.0) * V, g, std::sqrt(2.0) * g;
        cands.push_back({"red_pair_n2", 2, red_two_photon_detuning(V), v3,
                         3.0 * g * g + V * V});
    }

    std::vector<CandidateReport> out;
    for (const auto& c : cands) {
        model::ModelParams p;
        p.g_a = g;
        p.V = V;
        p.phi = kPi;
        p.Delta_a = c.Delta_a;
        p.delta = -V;
        const ManifoldMatrix m = manifold_matrix(c.n, p, ManifoldBasis::collective);

        CandidateReport r;
        r.name = c.name;
        r.n = c.n;
        r.Delta_a = c.Delta_a;
        r.coeff_norm_sq = c.coeffs.squaredNorm();
        r.quoted_norm_sq = c.printed_norm_sq;
        r.quoted = c.coeffs / c.coeffs.norm();
        r.norm_mismatch =
            std::abs(r.quoted_norm_sq - r.coeff_norm_sq) > 1e-9 * std::max(1.0, r.coeff_norm_sq);

        const double scale = std::max(1.0, m.entries.cwiseAbs().maxCoeff());
        const double rayleigh = r.quoted.dot(m.entries * r.quoted);
        r.eigen_residual = (m.entries * r.quoted - rayleigh * r.quoted).norm();
        r.direction_mismatch = r.eigen_residual > 1e-9 * scale;
        if (r.direction_mismatch) {
            Eigen::SelfAdjointEigenSolver<RMat> es(m.entries);
            int best = 0;
            double best_ov = -1.0;
            for (int i = 0; i < es.eigenvalues().size(); ++i) {
                const double ov = std::abs(es.eigenvectors().col(i).dot(r.quoted));
                if (ov > best_ov) {
                    best_ov = ov;
                    best = i;
                }
            }
            r.corrected = es.eigenvectors().col(best);
            fix_sign(r.corrected);
            const double lam = es.eigenvalues()(best);
            r.corrected_residual = (m.entries * r.corrected - lam * r.corrected).norm();
        }
        out.push_back(std::move(r));
    }
    return out;
}

} // namespace cavsei::spectrum
