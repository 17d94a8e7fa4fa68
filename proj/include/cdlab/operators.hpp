#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cdlab/kernels.hpp"
#include "cdlab/linalg.hpp"

namespace cdlab {

/// Finite truncation of an operator in B_1(D). When built from a kernel the
/// matrix is the adjoint of multiplication by z, a weighted backward shift,
/// and the kernel is retained so eigenvectors (sections) are available.
struct ModelOperator {
  Matrix matrix;
  std::optional<DiagonalKernel> kernel;

  Eigen::Index size() const { return matrix.rows(); }
  std::string label() const { return kernel ? kernel->label() : std::string("matrix"); }
};

ModelOperator model_from_matrix(Matrix m);

/// T = [[T0, X T1 - T0 X], [0, T1]].
struct UpperTriangularModel {
  ModelOperator t0;
  ModelOperator t1;
  Matrix coupling;  // X
  Matrix t;         // assembled 2N x 2N

  Eigen::Index block_size() const { return t0.size(); }
  Matrix off_diagonal() const { return t.topRightCorner(block_size(), block_size()); }
};

/// Orthonormal basis of {B : A B = B C} under the Frobenius inner product.
struct IntertwinerSpace {
  std::vector<Matrix> basis;
  int dimension = 0;
  double residual = 0.0;  // max_i ||A B_i - B_i C||_F
};

struct Fb2Membership {
  bool member;
  double residual;   // ||X T1^2 - 2 T0 X T1 + T0^2 X||_F
  double threshold;  // tol * (1 + ||X|| ||T1||^2 + ||T0||^2 ||X||)
};

struct SimilaritySplit {
  Matrix w;      // [[I, -X], [0, I]]
  Matrix w_inv;  // [[I, X], [0, I]]
  Matrix d;      // T0 (+) T1
  double residual;
};

ModelOperator shift_from_kernel(const DiagonalKernel& kernel);

UpperTriangularModel assemble_model(const ModelOperator& t0, const ModelOperator& t1,
                                    const Matrix& coupling);

Fb2Membership fb2_membership(const ModelOperator& t0, const ModelOperator& t1,
                             const Matrix& coupling, double tol);

/// Numerical null space of B -> A B - B C via singular-value thresholding at
/// tol * sigma_max of the vectorized map.
IntertwinerSpace sylvester_kernel(const Matrix& a, const Matrix& c, double tol = 1e-10);

SimilaritySplit similarity_split(const UpperTriangularModel& model);

inline constexpr double kDefaultResolventConditionCap = 1e12;

/// e^{i phase} (a I - A)(I - conj(a) A)^{-1}.
Matrix apply_mobius(const Matrix& a_op, Complex a, double phase,
                    double condition_cap = kDefaultResolventConditionCap);

}  // namespace cdlab
