#include "cdlab/linalg.hpp"

#include <cmath>
#include <limits>

#include "cdlab/error.hpp"

namespace cdlab {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kInvalidArgument: return "invalid-argument";
    case ErrorKind::kDomain: return "domain-error";
    case ErrorKind::kPrecision: return "precision-error";
    case ErrorKind::kSingularity: return "singularity-error";
    case ErrorKind::kPrecondition: return "precondition-error";
    case ErrorKind::kDegeneracy: return "degeneracy-error";
    case ErrorKind::kDegenerateInput: return "degenerate-input";
    case ErrorKind::kNumeric: return "numeric-error";
    case ErrorKind::kSchema: return "schema-error";
  }
  return "error";
}

double operator_norm(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::BDCSVD<Matrix> svd(m);
  return svd.singularValues()(0);
}

double condition_number(const Matrix& m) {
  Eigen::BDCSVD<Matrix> svd(m);
  const RealVector& s = svd.singularValues();
  const double smallest = s(s.size() - 1);
  if (smallest == 0.0) return std::numeric_limits<double>::infinity();
  return s(0) / smallest;
}

bool all_finite(const Matrix& m) { return m.allFinite(); }

Matrix hermitian_sqrt(const Matrix& h) {
  return hermitian_function(h, [](double x) { return std::sqrt(x); });
}

Matrix hermitian_inv_sqrt(const Matrix& h) {
  return hermitian_function(h, [](double x) { return 1.0 / std::sqrt(x); });
}

Matrix identity(Eigen::Index n) { return Matrix::Identity(n, n); }

Matrix block2x2(const Matrix& a, const Matrix& b, const Matrix& c, const Matrix& d) {
  const Eigen::Index n0 = a.rows();
  const Eigen::Index n1 = d.rows();
  if (a.cols() != n0 || d.cols() != n1 || b.rows() != n0 || b.cols() != n1 || c.rows() != n1 ||
      c.cols() != n0) {
    fail(ErrorKind::kInvalidArgument, "block sizes do not tile a square matrix");
  }
  Matrix out(n0 + n1, n0 + n1);
  out.topLeftCorner(n0, n0) = a;
  out.topRightCorner(n0, n1) = b;
  out.bottomLeftCorner(n1, n0) = c;
  out.bottomRightCorner(n1, n1) = d;
  return out;
}

Matrix direct_sum(const Matrix& a, const Matrix& b) {
  return block2x2(a, Matrix::Zero(a.rows(), b.cols()), Matrix::Zero(b.rows(), a.cols()), b);
}

Complex fro_inner(const Matrix& a, const Matrix& b) { return (a.adjoint() * b).trace(); }

Matrix random_gaussian(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  Matrix m(rows, cols);
  // Fill row-major so the draw order does not depend on Eigen's storage order.
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) {
      const double re = normal(rng);
      const double im = normal(rng);
      m(i, j) = Complex(re, im);
    }
  }
  return m;
}

Matrix random_scaled(Eigen::Index n, double norm, Rng& rng) {
  Matrix g = random_gaussian(n, n, rng);
  return g * (norm / operator_norm(g));
}

Matrix random_unitary(Eigen::Index n, Rng& rng) {
  Eigen::HouseholderQR<Matrix> qr(random_gaussian(n, n, rng));
  Matrix q = qr.householderQ();
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index k = 0; k < n; ++k) {
    const Complex d = r(k, k);
    if (std::abs(d) > 0.0) q.col(k) *= d / std::abs(d);
  }
  return q;
}

Matrix random_normal(Eigen::Index n, Rng& rng) {
  const Matrix v = random_unitary(n, rng);
  const Matrix d = random_gaussian(n, 1, rng);
  return v * d.col(0).asDiagonal() * v.adjoint();
}

}  // namespace cdlab
