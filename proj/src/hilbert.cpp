// hilbert.cpp — basis bookkeeping and elementary operator construction
#include "cavsei/hilbert.hpp"

#include <cmath>
#include <stdexcept>

namespace cavsei::hilbert {

int SpaceDescriptor::index(int q, int s1, int s2) const {
    if (q < 0 || q > photon_cutoff || s1 < 0 || s1 > 1 || s2 < 0 || s2 > 1)
        throw std::invalid_argument("SpaceDescriptor::index: state outside the space");
    return q * 4 + 2 * s1 + s2;
}

SpaceDescriptor::BasisState SpaceDescriptor::state(int index) const {
    if (index < 0 || index >= dim())
        throw std::invalid_argument("SpaceDescriptor::state: index out of range");
    return {index / 4, (index / 2) % 2, index % 2};
}

std::string SpaceDescriptor::label(int index) const {
    const auto b = state(index);
    std::string out = "|" + std::to_string(b.q) + ",";
    out += (b.s1 ? "e" : "g");
    out += ",";
    out += (b.s2 ? "e" : "g");
    out += ">";
    return out;
}

SpaceDescriptor build_space(int photon_cutoff) {
    if (photon_cutoff < 1)
        throw std::invalid_argument("build_space: photon_cutoff must be >= 1");
    return SpaceDescriptor{photon_cutoff};
}

Mat identity(const SpaceDescriptor& s) { return Mat::Identity(s.dim(), s.dim()); }

Mat annihilation(const SpaceDescriptor& s) {
    Mat a = Mat::Zero(s.dim(), s.dim());
    for (int q = 1; q <= s.photon_cutoff; ++q)
        for (int s1 = 0; s1 < 2; ++s1)
            for (int s2 = 0; s2 < 2; ++s2)
                a(s.index(q - 1, s1, s2), s.index(q, s1, s2)) = std::sqrt(double(q));
    return a;
}

Mat atom_operator(const SpaceDescriptor& s, int atom, AtomOp kind) {
    if (atom != 1 && atom != 2)
        throw std::invalid_argument("atom_operator: atom must be 1 or 2");
    Mat m = Mat::Zero(s.dim(), s.dim());
    for (int q = 0; q <= s.photon_cutoff; ++q)
        for (int s1 = 0; s1 < 2; ++s1)
            for (int s2 = 0; s2 < 2; ++s2) {
                const int col = s.index(q, s1, s2);
                const int own = (atom == 1) ? s1 : s2;
                auto flipped = [&](int v) {
                    return (atom == 1) ? s.index(q, v, s2) : s.index(q, s1, v);
                };
                switch (kind) {
                case AtomOp::lower:
                    if (own == 1) m(flipped(0), col) += 1.0;
                    break;
                case AtomOp::raise:
                    if (own == 0) m(flipped(1), col) += 1.0;
                    break;
                case AtomOp::x:
                    m(flipped(1 - own), col) += 1.0;
                    break;
                case AtomOp::y:
                    m(flipped(1 - own), col) += own ? cd{0.0, 1.0} : cd{0.0, -1.0};
                    break;
                case AtomOp::z:
                    m(col, col) += own ? 1.0 : -1.0;
                    break;
                }
            }
    return m;
}

Mat number_operator(const SpaceDescriptor& s) {
    Mat n = Mat::Zero(s.dim(), s.dim());
    for (int i = 0; i < s.dim(); ++i) n(i, i) = double(s.state(i).q);
    return n;
}

Mat excitation_number(const SpaceDescriptor& s) {
    Mat n = Mat::Zero(s.dim(), s.dim());
    for (int i = 0; i < s.dim(); ++i) {
        const auto b = s.state(i);
        n(i, i) = double(b.q + b.s1 + b.s2);
    }
    return n;
}

Operators build_operators(const SpaceDescriptor& s) {
    Operators ops;
    ops.space = s;
    ops.a = annihilation(s);
    ops.ad = ops.a.adjoint();
    ops.n_photon = number_operator(s);
    for (int atom = 1; atom <= 2; ++atom) {
        ops.sm[atom - 1] = atom_operator(s, atom, AtomOp::lower);
        ops.sp[atom - 1] = atom_operator(s, atom, AtomOp::raise);
        ops.sx[atom - 1] = atom_operator(s, atom, AtomOp::x);
        ops.sz[atom - 1] = atom_operator(s, atom, AtomOp::z);
    }
    return ops;
}

double hermiticity_defect(const Mat& m) {
    return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

} // namespace cavsei::hilbert
