// hilbert.hpp — truncated cavity ⊗ two-qubit Hilbert space and elementary operators
#pragma once

#include <array>
#include <string>

#include "cavsei/types.hpp"

namespace cavsei::hilbert {

// Basis ordering is photon-major: index = q*4 + 2*s1 + s2 with q the Fock level
// and s_j ∈ {0 (ground), 1 (excited)}. dim = (photon_cutoff+1)*4.
struct SpaceDescriptor {
    int photon_cutoff = 0;

    int dim() const { return (photon_cutoff + 1) * 4; }

    int index(int q, int s1, int s2) const;

    struct BasisState {
        int q, s1, s2;
    };
    BasisState state(int index) const;

    // "|q,s1,s2>" with s rendered as g/e, e.g. "|3,g,e>"
    std::string label(int index) const;
};

// photon_cutoff must be >= 1 so that at least one photon is representable
SpaceDescriptor build_space(int photon_cutoff);

enum class AtomOp { lower, raise, x, y, z };

Mat identity(const SpaceDescriptor& s);

// a: ⟨q-1|a|q⟩ = √q on the photon factor, identity on the atoms
Mat annihilation(const SpaceDescriptor& s);

// single-atom Pauli / ladder operator, atom ∈ {1,2}, identity elsewhere
Mat atom_operator(const SpaceDescriptor& s, int atom, AtomOp kind);

// a†a
Mat number_operator(const SpaceDescriptor& s);

// N = a†a + Σ_j σ_j⁺σ_j⁻; commutes with the drive-free Hamiltonian
Mat excitation_number(const SpaceDescriptor& s);

// cached elementary operators for one space; sweeps reuse these per cutoff
struct Operators {
    SpaceDescriptor space;
    Mat a, ad, n_photon;
    std::array<Mat, 2> sm, sp, sx, sz; // [0] ↔ atom 1, [1] ↔ atom 2
};

Operators build_operators(const SpaceDescriptor& s);

double hermiticity_defect(const Mat& m); // max |m - m†|

} // namespace cavsei::hilbert
