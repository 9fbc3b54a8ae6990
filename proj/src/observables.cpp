// observables.cpp — expectation values on density matrices
#include "cavsei/observables.hpp"

#include <cmath>
#include <stdexcept>

#include "cavsei/liouville.hpp"

namespace cavsei::obs {

namespace {

double real_trace(const cd value, const char* what) {
    if (std::abs(value.imag()) > 1e-10 * std::max(1.0, std::abs(value.real())))
        throw std::runtime_error(std::string(what) + ": imaginary residue above tolerance");
    return value.real();
}

} // namespace

double photon_number(const Mat& rho, const Mat& a) {
    return real_trace((rho * a.adjoint() * a).trace(), "photon_number");
}

double equal_time_g(const Mat& rho, const Mat& a, int n, int k) {
    if (n < 1 || k < 2) throw std::invalid_argument("equal_time_g: need n >= 1, k >= 2");
    Mat An = a;
    for (int i = 1; i < n; ++i) An = (An * a).eval();
    Mat Ank = An;
    for (int i = 1; i < k; ++i) Ank = (Ank * An).eval();
    const double denom = real_trace((rho * An.adjoint() * An).trace(), "equal_time_g");
    if (denom <= 1e-14)
        throw liouville::NoEmissionError("equal_time_g: no " + std::to_string(n) +
                                         "-photon component at these parameters");
    const double num = real_trace((rho * Ank.adjoint() * Ank).trace(), "equal_time_g");
    return num / std::pow(denom, k);
}

double factorial_moment_diagonal(const Mat& rho, const hilbert::SpaceDescriptor& s, int m) {
    double acc = 0.0;
    for (int q = m; q <= s.photon_cutoff; ++q) {
        double w = 1.0;
        for (int j = 0; j < m; ++j) w *= double(q - j);
        for (int s1 = 0; s1 < 2; ++s1)
            for (int s2 = 0; s2 < 2; ++s2) {
                const int i = s.index(q, s1, s2);
                acc += w * rho(i, i).real();
            }
    }
    return acc;
}

std::vector<double> photon_populations(const Mat& rho, const hilbert::SpaceDescriptor& s) {
    std::vector<double> p(size_t(s.photon_cutoff) + 1, 0.0);
    for (int q = 0; q <= s.photon_cutoff; ++q) {
        double pop = 0.0;
        for (int s1 = 0; s1 < 2; ++s1)
            for (int s2 = 0; s2 < 2; ++s2) pop += rho(s.index(q, s1, s2), s.index(q, s1, s2)).real();
        if (pop < -1e-10)
            throw std::runtime_error("photon_populations: negative population " +
                                     std::to_string(pop) + " at q=" + std::to_string(q));
        p[size_t(q)] = std::max(pop, 0.0);
    }
    return p;
}

Distribution photon_distribution(const Mat& rho, const hilbert::SpaceDescriptor& s) {
    Distribution d;
    d.p = photon_populations(rho, s);
    for (size_t q = 0; q < d.p.size(); ++q) d.n_s += double(q) * d.p[q];
    if (d.n_s > 1e-14) {
        d.p_tilde.resize(d.p.size());
        for (size_t q = 0; q < d.p.size(); ++q) d.p_tilde[q] = double(q) * d.p[q] / d.n_s;
    }
    return d;
}

double spin_correlation(const Mat& rho, const hilbert::Operators& ops, SpinAxis axis) {
    const auto& s1 = (axis == SpinAxis::x) ? ops.sx[0] : ops.sz[0];
    const auto& s2 = (axis == SpinAxis::x) ? ops.sx[1] : ops.sz[1];
    const double joint = real_trace((rho * s1 * s2).trace(), "spin_correlation");
    const double m1 = real_trace((rho * s1).trace(), "spin_correlation");
    const double m2 = real_trace((rho * s2).trace(), "spin_correlation");
    return joint - m1 * m2;
}

} // namespace cavsei::obs
