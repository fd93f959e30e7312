// numerics.hpp: Dense linear algebra and root-finding kernels.
#pragma once

#include <complex>
#include <functional>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace dpt {

using cplx = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

}  // namespace dpt

namespace dpt::numerics {

// Eigenpairs, column-aligned. Sorted by descending real part, ties by
// descending imaginary part. Columns of `vectors` have unit 2-norm.
struct EigenSystem {
    ComplexVector values;
    ComplexMatrix vectors;
};

EigenSystem eig(const ComplexMatrix& a);
EigenSystem eig(const RealMatrix& a);

// Largest real part of the spectrum.
double spectral_abscissa(const ComplexMatrix& a);
double spectral_abscissa(const RealMatrix& a);

// Solves M K + K M^T + D = 0. Throws StabilityError unless M is Hurwitz.
ComplexMatrix solve_lyapunov(const ComplexMatrix& m, const ComplexMatrix& d);
RealMatrix solve_lyapunov(const RealMatrix& m, const RealMatrix& d);

// Roots of c[0] + c[1] x + ... + c[n] x^n. Trailing zero coefficients are dropped.
std::vector<cplx> roots_polynomial(std::vector<cplx> coeffs);
std::vector<cplx> roots_polynomial(const std::vector<double>& coeffs);

cplx polyval(const std::vector<cplx>& coeffs, cplx x);

using ResidualFn = std::function<RealVector(const RealVector&)>;
using JacobianFn = std::function<RealMatrix(const RealVector&)>;

struct MultistartResult {
    std::vector<RealVector> states;
    std::string diagnostic;
};

// Damped Gauss-Newton from every seed. Residuals may outnumber unknowns.
// States with ||r|| <= tol are kept once (pairwise distance > 10 tol).
MultistartResult newton_multistart(const ResidualFn& residual,
                                   const JacobianFn& jacobian,
                                   const std::vector<RealVector>& seeds,
                                   double tol);

// 2-D seeds on concentric rings, optionally with the origin first.
std::vector<RealVector> ring_seeds(const std::vector<double>& radii, int angles,
                                   bool with_origin = true);

}  // namespace dpt::numerics
