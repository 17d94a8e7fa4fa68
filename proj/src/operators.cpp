#include "cdlab/operators.hpp"

#include <cmath>
#include <sstream>

#include "cdlab/error.hpp"

namespace cdlab {
namespace {

void require_square(const Matrix& m, const char* name) {
  if (m.rows() != m.cols()) {
    fail(ErrorKind::kInvalidArgument, std::string(name) + " must be square");
  }
}

void require_same_size(const Matrix& a, const Matrix& b, const char* what) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    std::ostringstream msg;
    msg << what << ": size mismatch " << a.rows() << "x" << a.cols() << " vs " << b.rows() << "x"
        << b.cols();
    fail(ErrorKind::kInvalidArgument, msg.str());
  }
}

}  // namespace

ModelOperator model_from_matrix(Matrix m) {
  require_square(m, "model operator");
  return {std::move(m), std::nullopt};
}

ModelOperator shift_from_kernel(const DiagonalKernel& kernel) {
  const int n = kernel.truncation();
  if (n < 2) fail(ErrorKind::kInvalidArgument, "shift needs kernel truncation N >= 2");
  Matrix m = Matrix::Zero(n, n);
  for (int k = 0; k + 1 < n; ++k) m(k, k + 1) = std::sqrt(kernel[k] / kernel[k + 1]);
  return {std::move(m), kernel};
}

UpperTriangularModel assemble_model(const ModelOperator& t0, const ModelOperator& t1,
                                    const Matrix& coupling) {
  require_square(t0.matrix, "T0");
  require_square(t1.matrix, "T1");
  require_same_size(t0.matrix, t1.matrix, "assemble_model T0/T1");
  require_same_size(t0.matrix, coupling, "assemble_model X");
  const Matrix off = coupling * t1.matrix - t0.matrix * coupling;
  Matrix t = block2x2(t0.matrix, off, Matrix::Zero(t0.size(), t0.size()), t1.matrix);
  return {t0, t1, coupling, std::move(t)};
}

Fb2Membership fb2_membership(const ModelOperator& t0, const ModelOperator& t1,
                             const Matrix& coupling, double tol) {
  require_same_size(t0.matrix, t1.matrix, "fb2_membership T0/T1");
  require_same_size(t0.matrix, coupling, "fb2_membership X");
  if (!(tol > 0.0)) fail(ErrorKind::kInvalidArgument, "tolerance must be positive");
  const Matrix& a = t0.matrix;
  const Matrix& b = t1.matrix;
  const Matrix& x = coupling;
  const double residual = fro(x * b * b - 2.0 * a * x * b + a * a * x);
  const double nx = fro(x);
  const double threshold = tol * (1.0 + nx * fro(b) * fro(b) + fro(a) * fro(a) * nx);
  return {residual <= threshold, residual, threshold};
}

IntertwinerSpace sylvester_kernel(const Matrix& a, const Matrix& c, double tol) {
  require_square(a, "A");
  require_square(c, "B");
  const Eigen::Index m = a.rows();
  const Eigen::Index n = c.rows();
  // Column-major vec: vec(A X - X C) = (I_n (x) A - C^T (x) I_m) vec(X).
  Matrix op = Matrix::Zero(m * n, m * n);
  for (Eigen::Index j = 0; j < n; ++j) {
    op.block(j * m, j * m, m, m) += a;
    for (Eigen::Index k = 0; k < n; ++k) {
      if (c(k, j) != 0.0) op.block(j * m, k * m, m, m) -= c(k, j) * Matrix::Identity(m, m);
    }
  }
  IntertwinerSpace space;
  if (m * n == 0) return space;
  Eigen::BDCSVD<Matrix> svd(op, Eigen::ComputeFullV);
  const RealVector& s = svd.singularValues();
  const double cutoff = tol * s(0);
  for (Eigen::Index k = 0; k < s.size(); ++k) {
    if (s(k) > cutoff) continue;
    Matrix b = svd.matrixV().col(k).reshaped(m, n);
    space.residual = std::max(space.residual, fro(a * b - b * c));
    space.basis.push_back(std::move(b));
  }
  space.dimension = static_cast<int>(space.basis.size());
  return space;
}

SimilaritySplit similarity_split(const UpperTriangularModel& model) {
  const Eigen::Index n = model.block_size();
  const Matrix id = identity(n);
  const Matrix zero = Matrix::Zero(n, n);
  Matrix w = block2x2(id, -model.coupling, zero, id);
  Matrix w_inv = block2x2(id, model.coupling, zero, id);
  Matrix d = direct_sum(model.t0.matrix, model.t1.matrix);
  const double residual = fro(w * model.t - d * w);
  return {std::move(w), std::move(w_inv), std::move(d), residual};
}

Matrix apply_mobius(const Matrix& a_op, Complex a, double phase, double condition_cap) {
  require_square(a_op, "A");
  if (!(std::abs(a) < 1.0)) fail(ErrorKind::kDomain, "Mobius parameter must satisfy |a| < 1");
  const Eigen::Index n = a_op.rows();
  const Matrix resolvent = identity(n) - std::conj(a) * a_op;
  const double cond = condition_number(resolvent);
  if (!(cond <= condition_cap)) {
    std::ostringstream msg;
    msg << "I - conj(a) A is near singular (condition estimate " << cond << ", cap "
        << condition_cap << ")";
    fail(ErrorKind::kSingularity, msg.str());
  }
  const Matrix numerator = a * identity(n) - a_op;
  // (aI - A) and (I - conj(a) A)^{-1} commute; solve R^T Y^T = N^T to avoid an explicit inverse.
  Matrix out = resolvent.transpose().partialPivLu().solve(numerator.transpose()).transpose();
  out *= std::polar(1.0, phase);
  if (!all_finite(out)) fail(ErrorKind::kNumeric, "non-finite Mobius image");
  return out;
}

}  // namespace cdlab
