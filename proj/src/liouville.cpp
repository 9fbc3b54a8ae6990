// liouville.cpp — superoperator assembly and solvers
#include "cavsei/liouville.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/SparseCore>
#include <Eigen/SparseLU>
#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>

namespace cavsei::liouville {

Vec vec(const Mat& rho) {
    return Eigen::Map<const Vec>(rho.data(), rho.size());
}

Mat unvec(const Vec& x, int dim) {
    if (x.size() != Eigen::Index(dim) * dim)
        throw std::invalid_argument("unvec: size mismatch");
    return Eigen::Map<const Mat>(x.data(), dim, dim);
}

Mat build_liouvillian(const Mat& H, const std::vector<CollapseChannel>& channels) {
    const Eigen::Index d = H.rows();
    if (H.cols() != d) throw std::invalid_argument("build_liouvillian: H not square");
    const Mat id = Mat::Identity(d, d);
    Mat L = -kI * (kroneckerProduct(id, H).eval() - kroneckerProduct(H.transpose(), id).eval());
    for (const auto& ch : channels) {
        if (ch.rate < 0.0) throw std::invalid_argument("build_liouvillian: negative rate");
        if (ch.rate == 0.0) continue;
        if (ch.op.rows() != d || ch.op.cols() != d)
            throw std::invalid_argument("build_liouvillian: channel dimension mismatch");
        const Mat odo = ch.op.adjoint() * ch.op;
        L += ch.rate * (kroneckerProduct(ch.op.conjugate(), ch.op).eval()
                        - 0.5 * kroneckerProduct(id, odo).eval()
                        - 0.5 * kroneckerProduct(odo.transpose(), id).eval());
    }
    return L;
}

namespace {

// superoperators are a few percent dense; above this order a sparse
// factorization beats dense LU by a wide margin
constexpr Eigen::Index kSparseSolveThreshold = 300;

Mat finalize_density(const Vec& x, int dim) {
    Mat rho = unvec(x, dim);
    rho = 0.5 * (rho + rho.adjoint()).eval();
    const double tr = rho.trace().real();
    if (!std::isfinite(tr) || std::abs(tr) < 1e-12)
        throw SteadyStateError("steady_state: singular constrained system (non-unique steady state?)");
    rho /= tr;
    return rho;
}

// solve L x = 0, Tr = 1 with the constraint written into row `row`; returns the
// hermitized, trace-normalized density matrix
Mat constrained_solve(const Mat& L, int dim, int row, double scale, int refine_steps) {
    const Eigen::Index n = L.rows();
    Vec b = Vec::Zero(n);
    b(row) = scale;

    if (n >= kSparseSolveThreshold) {
        std::vector<Eigen::Triplet<cd>> trip;
        trip.reserve(size_t(n) * 24);
        for (Eigen::Index j = 0; j < n; ++j)
            for (Eigen::Index i = 0; i < n; ++i)
                if (i != row && L(i, j) != cd{0.0, 0.0}) trip.emplace_back(int(i), int(j), L(i, j));
        for (int j = 0; j < dim; ++j) trip.emplace_back(row, j * (dim + 1), cd{scale, 0.0});
        Eigen::SparseMatrix<cd> A(n, n);
        A.setFromTriplets(trip.begin(), trip.end());
        A.makeCompressed();
        Eigen::SparseLU<Eigen::SparseMatrix<cd>, Eigen::COLAMDOrdering<int>> lu;
        lu.compute(A);
        if (lu.info() != Eigen::Success)
            throw SteadyStateError(
                "steady_state: singular constrained system (non-unique steady state?)");
        Vec x = lu.solve(b);
        for (int it = 0; it < refine_steps; ++it) x += lu.solve(b - A * x);
        return finalize_density(x, dim);
    }

    Mat A = L;
    A.row(row).setZero();
    for (int j = 0; j < dim; ++j) A(row, j * (dim + 1)) = scale;
    Eigen::PartialPivLU<Mat> lu(A);
    Vec x = lu.solve(b);
    for (int it = 0; it < refine_steps; ++it) x += lu.solve(b - A * x);
    return finalize_density(x, dim);
}

} // namespace

Mat steady_state(const Mat& L, const SteadyStateOptions& opt, SteadyStateInfo* info) {
    const Eigen::Index n = L.rows();
    if (L.cols() != n) throw std::invalid_argument("steady_state: L not square");
    const int dim = int(std::lround(std::sqrt(double(n))));
    if (Eigen::Index(dim) * dim != n)
        throw std::invalid_argument("steady_state: L size is not a perfect square");
    const double Lnorm = L.norm();
    if (Lnorm == 0.0) throw SteadyStateError("steady_state: L = 0, every state is stationary");

    const double scale = L.cwiseAbs().maxCoeff();
    Mat rho = constrained_solve(L, dim, 0, scale, opt.refine_steps);
    if (!rho.allFinite())
        throw SteadyStateError("steady_state: non-finite solution (non-unique steady state?)");

    const double residual = (L * vec(rho)).norm() / Lnorm;
    SteadyStateInfo local;
    local.residual = residual;
    if (residual > opt.residual_tol) {
        if (info) *info = local;
        throw SteadyStateError("steady_state: residual " + std::to_string(residual) +
                               " above tolerance (non-unique or ill-conditioned)");
    }

    switch (opt.check) {
    case UniquenessCheck::none:
        break;
    case UniquenessCheck::probe: {
        const Mat rho2 = constrained_solve(L, dim, int(n) - 1, scale, opt.refine_steps);
        const double diff = rho2.allFinite() ? (rho - rho2).cwiseAbs().maxCoeff()
                                             : std::numeric_limits<double>::infinity();
        local.uniqueness_checked = true;
        if (!(diff < 1e-6)) {
            if (info) *info = local;
            throw SteadyStateError("steady_state: non-unique steady state (probe solves disagree)");
        }
        break;
    }
    case UniquenessCheck::eigenvalues: {
        local.kernel_gap = second_smallest_abs_eig(L);
        local.uniqueness_checked = true;
        if (local.kernel_gap < opt.degeneracy_rel_tol * Lnorm) {
            if (info) *info = local;
            throw SteadyStateError("steady_state: non-unique steady state (degenerate kernel)");
        }
        break;
    }
    case UniquenessCheck::singular_values: {
        Eigen::BDCSVD<Mat> svd(L);
        const auto& sv = svd.singularValues();
        local.kernel_gap = sv(sv.size() - 2);
        local.uniqueness_checked = true;
        if (local.kernel_gap < opt.degeneracy_rel_tol * Lnorm) {
            if (info) *info = local;
            throw SteadyStateError("steady_state: non-unique steady state (kernel dimension > 1)");
        }
        break;
    }
    }
    if (info) *info = local;
    return rho;
}

namespace {

// Dormand–Prince 5(4) tableau
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                 b5 = -2187.0 / 6784, b6 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                 e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

} // namespace

Vec evolve_vec(const Mat& L, Vec x, double t, const EvolveOptions& opt) {
    if (t < 0.0) throw std::invalid_argument("evolve_vec: negative time");
    if (t == 0.0) return x;
    const double Linf = L.cwiseAbs().rowwise().sum().maxCoeff();
    double h = std::min(t, (Linf > 0.0) ? 0.5 / Linf : t);
    double time = 0.0;
    Vec k1 = L * x;
    long steps = 0;
    double last_err = 0.0;
    while (time < t) {
        if (++steps > opt.max_steps)
            throw EvolveError("evolve_vec: max step count exceeded", last_err);
        if (h < 1e-14 * std::max(t, 1.0))
            throw EvolveError("evolve_vec: step size underflow, achieved local error " +
                                  std::to_string(last_err),
                              last_err);
        const bool final_step = time + h >= t;
        if (final_step) h = t - time;
        const Vec k2 = L * (x + h * a21 * k1);
        const Vec k3 = L * (x + h * (a31 * k1 + a32 * k2));
        const Vec k4 = L * (x + h * (a41 * k1 + a42 * k2 + a43 * k3));
        const Vec k5 = L * (x + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
        const Vec k6 = L * (x + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
        const Vec x5 = x + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
        const Vec k7 = L * x5;
        const Vec err_v =
            h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
        const double sc = opt.tol * std::max(1.0, x.cwiseAbs().maxCoeff());
        const double err = err_v.cwiseAbs().maxCoeff() / sc;
        last_err = err * opt.tol;
        if (err <= 1.0) {
            time = final_step ? t : time + h;
            x = x5;
            k1 = k7; // FSAL
        }
        const double factor = (err > 0.0) ? 0.9 * std::pow(err, -0.2) : 5.0;
        h *= std::clamp(factor, 0.2, 5.0);
    }
    return x;
}

Mat evolve(const Mat& L, const Mat& rho0, double t, const EvolveOptions& opt) {
    return unvec(evolve_vec(L, vec(rho0), t, opt), int(rho0.rows()));
}

Propagator make_propagator(const Mat& L, double dt) {
    if (dt <= 0.0) throw std::invalid_argument("make_propagator: dt must be > 0");
    Propagator p;
    p.dt = dt;
    p.P = (L * dt).exp();
    return p;
}

std::vector<double> regression_g2(const Mat& L, const Mat& rho_ss, const Mat& a,
                                  int n, const std::vector<double>& taus,
                                  const CorrelationOptions& opt) {
    if (n < 1) throw std::invalid_argument("regression_g2: n must be >= 1");
    if (taus.empty()) return {};
    for (size_t i = 0; i < taus.size(); ++i) {
        if (taus[i] < 0.0 || (i > 0 && taus[i] < taus[i - 1]))
            throw std::invalid_argument("regression_g2: taus must be ascending and >= 0");
    }
    Mat An = a;
    for (int k = 1; k < n; ++k) An = (An * a).eval();
    const Mat M = An.adjoint() * An;
    const double denom = (rho_ss * M).trace().real();
    if (denom <= 1e-14)
        throw NoEmissionError("regression_g2: no " + std::to_string(n) +
                              "-photon emission at these parameters");
    // trace-one initial condition keeps the adaptive step control well-scaled
    const Mat B0 = (An * rho_ss * An.adjoint()) / denom;
    // Tr[M X] = vec(Mᵀ)·vec(X), no conjugation
    const Vec w = vec(Mat(M.transpose()));

    bool uniform = taus.size() >= 2;
    const double dt0 = taus.size() >= 2 ? taus[1] - taus[0] : 0.0;
    for (size_t i = 1; i + 1 < taus.size() && uniform; ++i)
        if (std::abs((taus[i + 1] - taus[i]) - dt0) > 1e-9 * std::max(dt0, 1e-30))
            uniform = false;
    if (dt0 <= 0.0) uniform = false;

    bool use_exp = false;
    switch (opt.route) {
    case CorrelationRoute::automatic: use_exp = uniform; break;
    case CorrelationRoute::exponential:
        if (!uniform)
            throw std::invalid_argument("regression_g2: exponential route needs a uniform grid");
        use_exp = true;
        break;
    case CorrelationRoute::runge_kutta: use_exp = false; break;
    }

    std::vector<double> out;
    out.reserve(taus.size());
    Vec x = vec(B0);
    auto record = [&](const Vec& xv) {
        const cd num = w.transpose() * xv;
        const double g = num.real() / denom;
        if (std::abs(num.imag()) / denom > opt.imag_tol * std::max(1.0, std::abs(g)))
            throw std::runtime_error("regression_g2: non-real correlation value");
        out.push_back(g);
    };

    if (use_exp) {
        if (taus[0] > 0.0) x = evolve_vec(L, x, taus[0], opt.evolve);
        record(x);
        const Propagator P = make_propagator(L, dt0);
        for (size_t i = 1; i < taus.size(); ++i) {
            x = P.apply(x);
            record(x);
        }
    } else {
        double t = 0.0;
        for (const double tau : taus) {
            if (tau > t) x = evolve_vec(L, x, tau - t, opt.evolve);
            t = tau;
            record(x);
        }
    }
    return out;
}

double spectral_abscissa(const Mat& L) {
    Eigen::ComplexEigenSolver<Mat> es(L, false);
    return es.eigenvalues().real().maxCoeff();
}

double second_smallest_abs_eig(const Mat& L) {
    Eigen::ComplexEigenSolver<Mat> es(L, false);
    Eigen::VectorXd mags = es.eigenvalues().cwiseAbs();
    std::sort(mags.data(), mags.data() + mags.size());
    return mags(1);
}

} // namespace cavsei::liouville
