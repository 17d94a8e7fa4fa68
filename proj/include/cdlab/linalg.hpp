#pragma once

#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Dense>

namespace cdlab {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using Rng = std::mt19937_64;

inline constexpr Complex kI{0.0, 1.0};

/// Frobenius norm; the residual norm used throughout.
inline double fro(const Matrix& m) { return m.norm(); }

/// Largest singular value.
double operator_norm(const Matrix& m);

/// 2-norm condition number from the singular values; +inf when singular.
double condition_number(const Matrix& m);

bool all_finite(const Matrix& m);

/// f(H) for Hermitian H via its eigendecomposition; f applied to real eigenvalues.
template <typename F>
Matrix hermitian_function(const Matrix& h, F&& f) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(h);
  RealVector values = es.eigenvalues().unaryExpr(f);
  return es.eigenvectors() * values.asDiagonal() * es.eigenvectors().adjoint();
}

Matrix hermitian_sqrt(const Matrix& h);
Matrix hermitian_inv_sqrt(const Matrix& h);

Matrix identity(Eigen::Index n);

/// [[a, b], [c, d]] for equally sized square blocks.
Matrix block2x2(const Matrix& a, const Matrix& b, const Matrix& c, const Matrix& d);
Matrix direct_sum(const Matrix& a, const Matrix& b);

/// Frobenius inner product tr(a^* b).
Complex fro_inner(const Matrix& a, const Matrix& b);

// Seeded random synthesis. All draws come from complex Gaussians with
// independent N(0, 1/2) real and imaginary parts.
Matrix random_gaussian(Eigen::Index rows, Eigen::Index cols, Rng& rng);
/// Gaussian matrix rescaled so that its operator norm equals `norm`.
Matrix random_scaled(Eigen::Index n, double norm, Rng& rng);
/// Haar-distributed unitary (QR of a Gaussian with the R-diagonal phases removed).
Matrix random_unitary(Eigen::Index n, Rng& rng);
/// V diag(d) V^* with Gaussian d and Haar V.
Matrix random_normal(Eigen::Index n, Rng& rng);

}  // namespace cdlab
