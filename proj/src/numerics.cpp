// numerics.cpp: Eigen-backed kernels.
#include "dpt/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "dpt/errors.hpp"

namespace dpt::numerics {

namespace {

void check_square(Eigen::Index rows, Eigen::Index cols, const char* what) {
    if (rows != cols || rows == 0) {
        std::ostringstream os;
        os << what << ": expected a non-empty square matrix, got " << rows << "x" << cols;
        throw DimensionError(os.str());
    }
}

// Insertion sort keeps the ordering well defined with a tolerance on ties.
void sort_eigensystem(EigenSystem& es, double scale) {
    const double tie = 1e-10 * std::max(1.0, scale);
    const auto n = es.values.size();
    auto before = [tie](cplx a, cplx b) {
        if (std::abs(a.real() - b.real()) > tie) return a.real() > b.real();
        return a.imag() > b.imag() + tie;
    };
    for (Eigen::Index i = 1; i < n; ++i) {
        Eigen::Index j = i;
        while (j > 0 && before(es.values(j), es.values(j - 1))) {
            std::swap(es.values(j), es.values(j - 1));
            es.vectors.col(j).swap(es.vectors.col(j - 1));
            --j;
        }
    }
}

}  // namespace

EigenSystem eig(const ComplexMatrix& a) {
    check_square(a.rows(), a.cols(), "eig");
    if (!a.allFinite()) throw ValidationError("eig: non-finite entries");
    Eigen::ComplexEigenSolver<ComplexMatrix> solver(a, true);
    if (solver.info() != Eigen::Success) {
        std::ostringstream os;
        os << "eig: QR iteration did not converge for " << a.rows() << "x" << a.cols()
           << " matrix with norm " << a.norm();
        throw ConvergenceError(os.str());
    }
    EigenSystem es{solver.eigenvalues(), solver.eigenvectors()};
    for (Eigen::Index k = 0; k < es.vectors.cols(); ++k) es.vectors.col(k).normalize();
    sort_eigensystem(es, a.norm());
    return es;
}

EigenSystem eig(const RealMatrix& a) { return eig(ComplexMatrix(a.cast<cplx>())); }

double spectral_abscissa(const ComplexMatrix& a) {
    check_square(a.rows(), a.cols(), "spectral_abscissa");
    Eigen::ComplexEigenSolver<ComplexMatrix> solver(a, false);
    if (solver.info() != Eigen::Success) throw ConvergenceError("spectral_abscissa: no convergence");
    return solver.eigenvalues().real().maxCoeff();
}

double spectral_abscissa(const RealMatrix& a) {
    return spectral_abscissa(ComplexMatrix(a.cast<cplx>()));
}

ComplexMatrix solve_lyapunov(const ComplexMatrix& m, const ComplexMatrix& d) {
    check_square(m.rows(), m.cols(), "solve_lyapunov");
    if (d.rows() != m.rows() || d.cols() != m.cols())
        throw DimensionError("solve_lyapunov: D must match M");
    const double abscissa = spectral_abscissa(m);
    if (!(abscissa < 0.0)) {
        std::ostringstream os;
        os << "solve_lyapunov: M is not Hurwitz (max Re eigenvalue " << abscissa << ")";
        throw StabilityError(os.str());
    }
    const auto n = m.rows();
    const ComplexMatrix id = ComplexMatrix::Identity(n, n);
    ComplexMatrix kron(n * n, n * n);
    // vec(M K) = (I (x) M) vec K, vec(K M^T) = (M (x) I) vec K
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
            kron.block(i * n, j * n, n, n) = id(i, j) * m + m(i, j) * id;
    const ComplexVector rhs = -Eigen::Map<const ComplexVector>(ComplexMatrix(d).data(), n * n);
    const ComplexVector x = kron.fullPivLu().solve(rhs);
    ComplexMatrix k = Eigen::Map<const ComplexMatrix>(x.data(), n, n);
    return 0.5 * (k + k.transpose()).eval();
}

RealMatrix solve_lyapunov(const RealMatrix& m, const RealMatrix& d) {
    return solve_lyapunov(ComplexMatrix(m.cast<cplx>()), ComplexMatrix(d.cast<cplx>())).real();
}

cplx polyval(const std::vector<cplx>& coeffs, cplx x) {
    cplx acc = 0.0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + *it;
    return acc;
}

std::vector<cplx> roots_polynomial(std::vector<cplx> coeffs) {
    while (!coeffs.empty() && coeffs.back() == cplx(0.0)) coeffs.pop_back();
    if (coeffs.empty()) throw DegenerateInputError("roots_polynomial: zero polynomial");
    for (const auto& c : coeffs)
        if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
            throw ValidationError("roots_polynomial: non-finite coefficient");
    const auto degree = static_cast<Eigen::Index>(coeffs.size()) - 1;
    if (degree > 8) throw ValidationError("roots_polynomial: degree above 8");
    if (degree == 0) return {};

    ComplexMatrix companion = ComplexMatrix::Zero(degree, degree);
    for (Eigen::Index i = 1; i < degree; ++i) companion(i, i - 1) = 1.0;
    for (Eigen::Index i = 0; i < degree; ++i)
        companion(i, degree - 1) = -coeffs[static_cast<size_t>(i)] / coeffs.back();
    Eigen::ComplexEigenSolver<ComplexMatrix> solver(companion, false);
    if (solver.info() != Eigen::Success) throw ConvergenceError("roots_polynomial: no convergence");

    std::vector<cplx> deriv(coeffs.size() - 1);
    for (size_t k = 1; k < coeffs.size(); ++k) deriv[k - 1] = static_cast<double>(k) * coeffs[k];

    std::vector<cplx> roots;
    for (Eigen::Index i = 0; i < degree; ++i) {
        cplx r = solver.eigenvalues()(i);
        for (int it = 0; it < 3; ++it) {
            const cplx p = polyval(coeffs, r);
            const cplx dp = polyval(deriv, r);
            if (std::abs(dp) == 0.0) break;
            const cplx next = r - p / dp;
            if (!(std::abs(polyval(coeffs, next)) < std::abs(p))) break;
            r = next;
        }
        roots.push_back(r);
    }
    std::sort(roots.begin(), roots.end(), [](cplx a, cplx b) {
        return a.real() != b.real() ? a.real() > b.real() : a.imag() > b.imag();
    });
    return roots;
}

std::vector<cplx> roots_polynomial(const std::vector<double>& coeffs) {
    return roots_polynomial(std::vector<cplx>(coeffs.begin(), coeffs.end()));
}

MultistartResult newton_multistart(const ResidualFn& residual, const JacobianFn& jacobian,
                                   const std::vector<RealVector>& seeds, double tol) {
    if (!(tol > 0.0)) throw ValidationError("newton_multistart: tol must be positive");
    constexpr int max_steps = 200;
    MultistartResult out;
    int failed = 0;
    double best_failed = std::numeric_limits<double>::infinity();

    for (const auto& seed : seeds) {
        RealVector x = seed;
        RealVector r = residual(x);
        double rn = r.norm();
        int polish = 0;
        for (int step = 0; step < max_steps && std::isfinite(rn); ++step) {
            if (rn <= tol && ++polish > 3) break;
            const RealMatrix jac = jacobian(x);
            const RealVector dx = jac.completeOrthogonalDecomposition().solve(-r);
            if (!dx.allFinite()) break;
            double t = 1.0;
            RealVector trial = x + dx;
            RealVector rt = residual(trial);
            while (!(rt.norm() < (1.0 - 1e-4 * t) * rn) && t > 1e-8) {
                t *= 0.5;
                trial = x + t * dx;
                rt = residual(trial);
            }
            if (!(rt.norm() < rn)) break;
            x = trial;
            r = rt;
            rn = rt.norm();
        }
        // Re-evaluate from scratch before accepting.
        const double final_norm = residual(x).norm();
        if (!(final_norm <= tol)) {
            ++failed;
            if (std::isfinite(final_norm)) best_failed = std::min(best_failed, final_norm);
            continue;
        }
        const bool duplicate = std::any_of(out.states.begin(), out.states.end(), [&](const RealVector& s) {
            return (s - x).norm() <= 10.0 * tol;
        });
        if (!duplicate) out.states.push_back(x);
    }

    std::ostringstream os;
    os << seeds.size() << " seeds, " << out.states.size() << " distinct roots, " << failed
       << " unconverged";
    if (failed > 0 && std::isfinite(best_failed)) os << " (best residual " << best_failed << ")";
    out.diagnostic = os.str();
    return out;
}

std::vector<RealVector> ring_seeds(const std::vector<double>& radii, int angles, bool with_origin) {
    std::vector<RealVector> seeds;
    if (with_origin) seeds.push_back(RealVector::Zero(2));
    for (double r : radii) {
        for (int k = 0; k < angles; ++k) {
            // Half-step offset avoids seeding exactly on symmetry axes.
            const double phi = 2.0 * std::numbers::pi * (k + 0.5) / angles;
            RealVector s(2);
            s << r * std::cos(phi), r * std::sin(phi);
            seeds.push_back(s);
        }
    }
    return seeds;
}

}  // namespace dpt::numerics
