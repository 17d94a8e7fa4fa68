#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "cdlab/geometry.hpp"
#include "cdlab/kernels.hpp"
#include "cdlab/linalg.hpp"
#include "cdlab/operators.hpp"
#include "cdlab/report.hpp"

namespace cdlab {

/// U = [[U00, U01], [U10, U11]] acting on H0 (+) H1.
class BlockUnitary {
 public:
  /// Verifies ||U U^* - I|| and ||U^* U - I|| <= tol; throws numeric-error otherwise.
  static BlockUnitary from_blocks(Matrix u00, Matrix u01, Matrix u10, Matrix u11,
                                  double tol = 1e-10);
  /// Same layout without the unitarity check, for sensitivity sweeps.
  static BlockUnitary unchecked(Matrix u00, Matrix u01, Matrix u10, Matrix u11);

  const Matrix& u00() const noexcept { return u00_; }
  const Matrix& u01() const noexcept { return u01_; }
  const Matrix& u10() const noexcept { return u10_; }
  const Matrix& u11() const noexcept { return u11_; }
  const Matrix& matrix() const noexcept { return u_; }

  double unitarity_residual() const;

 private:
  BlockUnitary(Matrix u00, Matrix u01, Matrix u10, Matrix u11);

  Matrix u00_, u01_, u10_, u11_, u_;
};

struct UnitaryConstruction {
  BlockUnitary u;
  UpperTriangularModel t_tilde;  // coupling Y = X^*
};

/// For normal X: U = [[X^* P, P], [P, -P X]] with P = (I + X^*X)^{-1/2}, and
/// T~0 = (I + X^*X)^{1/2} T1 P, T~1 = (I + XX^*)^{-1/2} T0 (I + X^*X)^{1/2}.
/// Then U T U^* = T~.
UnitaryConstruction build_unitary_from_X(const ModelOperator& t0, const ModelOperator& t1,
                                         const Matrix& x);

inline constexpr double kSingularCondition = 1e12;

/// The three conditions characterising a unitary U with U T = T~ U, plus the
/// block identities U00 = U01 X^*, U11 = -U10 X, unitarity and the end-to-end
/// intertwining.
ConditionReport verify_mainlemma(const BlockUnitary& u, const UpperTriangularModel& t,
                                 const UpperTriangularModel& t_tilde, double tol);

struct Fb2Pair {
  Matrix f;        // [[T~0, S0], [0, T0]]
  Matrix f_tilde;  // [[T1, S1], [0, T~1]]
  Matrix s0;       // Y U10 - U01 X^*
  Matrix s1;       // U01^* Y - X^* U10^*
  Matrix z;        // U01^* (+) U10, Z F = F~ Z
  ConditionReport residuals;
};

/// Refuses with precondition-error when verify_mainlemma fails at 1e-8.
Fb2Pair construct_fb2_pair(const BlockUnitary& u, const UpperTriangularModel& t,
                           const UpperTriangularModel& t_tilde, double tol = 1e-9);

struct ThetaCheck {
  double theta = 0.0;  // in [0, 2 pi)
  double relation_residual = 0.0;  // ||Y T0 - T1 Y - e^{i theta}(T0 - T1)||
  bool accepted = false;
  std::optional<BlockUnitary> u;
  double intertwining_residual = 0.0;  // ||U T - T~ U|| when accepted
  UpperTriangularModel t;        // [[T0, T1 - T0], [0, T1]]
  UpperTriangularModel t_tilde;  // [[T1, Y T0 - T1 Y], [0, T0]]
};

/// Recovers theta from the Frobenius projection of Y T0 - T1 Y on T0 - T1 and
/// accepts iff the relation holds within tol. On acceptance U has blocks
/// (sqrt2/2) e^{i theta1} I, (sqrt2/2) e^{i theta1} I, (sqrt2/2) e^{i theta2} I,
/// -(sqrt2/2) e^{i theta2} I with theta1 = theta, theta2 = 0.
ThetaCheck theta_intertwiner_check(const ModelOperator& t0, const ModelOperator& t1,
                                   const Matrix& y, double tol);

/// Phi = [[0, phi], [psi, 0]] with polynomial phi, psi (coefficients in w).
struct AntidiagonalWeight {
  std::vector<Complex> phi{1.0};
  std::vector<Complex> psi{1.0};

  Matrix at(Complex w) const;
};

/// K_gamma(z, w) = (<gamma_j(conj w), gamma_i(conj z)>)_{ij}.
Matrix frame_kernel(const PolynomialFrame& frame, Complex z, Complex w);

/// max over pairs of ||Phi(z) K_A(z, w) Phi(w)^* - K_B(z, w)||_F.
double kernel_transform_check(const FrameField& a, const FrameField& b,
                              const AntidiagonalWeight& weight,
                              const std::vector<std::pair<Complex, Complex>>& pairs);

struct Main3Options {
  std::vector<Complex> psi{1.0};
  int sample_points = 8;              // pairs = sample_points^2
  int kernel_dimension_truncation = 12;  // 0 disables the Sylvester kernel report
};

/// Pointwise hypotheses X^* t0 = 2 Y t1 and ||t0||^2 = 2(||Y t1||^2 + ||t1||^2)
/// on the grid, then the kernel transform between the frames of
/// T = [[T0, X Ts - T0 X], [0, Ts]] and T~ = [[Ts, Y T1 - Ts Y], [0, T1]].
ConditionReport main3_verifier(const DiagonalKernel& k0, const DiagonalKernel& k1,
                               const DiagonalKernel& ks, const Matrix& x, const Matrix& y,
                               const DiskGrid& grid, double tol, const Main3Options& options = {});

}  // namespace cdlab
