#pragma once

#include <functional>
#include <iosfwd>
#include <map>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "cdlab/jet.hpp"
#include "cdlab/kernels.hpp"
#include "cdlab/linalg.hpp"
#include "cdlab/operators.hpp"

namespace cdlab {

/// Sample points in the disk plus the step used by finite-difference stencils.
class DiskGrid {
 public:
  DiskGrid(std::vector<Complex> points, double fd_step = 1e-3);

  /// radii x `angles` equally spaced angles starting at 0.
  static DiskGrid polar(const std::vector<double>& radii, int angles, double fd_step = 1e-3);
  /// radii {0.1, ..., 0.6} x 16 angles.
  static DiskGrid default_polar(double fd_step = 1e-3);

  const std::vector<Complex>& points() const noexcept { return points_; }
  std::size_t size() const noexcept { return points_.size(); }
  double fd_step() const noexcept { return fd_step_; }
  double r_max() const noexcept { return r_max_; }
  /// True when |p| lies within the disk of radius r_max the grid samples.
  bool covers(Complex p) const;

 private:
  std::vector<Complex> points_;
  double fd_step_;
  double r_max_ = 0.0;
};

/// Holomorphic frame whose vectors are polynomials in w:
/// gamma_j(w) = coefficients[j] * (1, w, w^2, ...)^T.
class PolynomialFrame {
 public:
  explicit PolynomialFrame(std::vector<Matrix> coefficients);

  /// Rank-1 frame t(w) with t_k = sqrt(a_k) w^k.
  static PolynomialFrame section(const DiagonalKernel& kernel);

  int rank() const noexcept { return static_cast<int>(coefficients_.size()); }
  Eigen::Index dim() const noexcept { return coefficients_.front().rows(); }
  int degree() const noexcept { return static_cast<int>(coefficients_.front().cols()) - 1; }
  const Matrix& coefficients(int j) const { return coefficients_.at(static_cast<std::size_t>(j)); }

  /// dim x rank matrix whose column j is d^p gamma_j (w).
  Matrix evaluate(Complex w, int derivative = 0) const;

  /// gamma'_j = sum_i gamma_i g(i, j) for a constant rank x rank matrix g.
  PolynomialFrame recombined(const Matrix& g) const;
  /// Every frame vector multiplied by the polynomial sum_k poly[k] w^k.
  PolynomialFrame times_polynomial(const std::vector<Complex>& poly) const;

 private:
  std::vector<Matrix> coefficients_;
};

struct FrameField {
  DiskGrid grid;
  std::shared_ptr<const PolynomialFrame> frame;
  std::vector<Matrix> vectors;  // per point, dim x rank
  /// Per point and frame vector, ||(T - w) gamma_i(w)||; empty when no operator is attached.
  std::vector<RealVector> residuals;
  std::vector<double> tail_bounds;

  int rank() const { return frame->rank(); }
  double max_residual() const;
};

/// gamma_0 = (t_0, 0), gamma_1 = (X t_1, t_1) as a polynomial frame, for a model
/// whose diagonal blocks come from diagonal kernels of equal truncation.
PolynomialFrame model_frame(const UpperTriangularModel& model);

/// Frame field without an operator (no eigen-residuals).
FrameField frame_field(PolynomialFrame frame, const DiskGrid& grid);

/// gamma_0 = (t_0, 0), gamma_1 = (X t_1, t_1) for a model whose diagonal blocks
/// come from diagonal kernels. Throws precision-error when the truncation tail
/// bound (1 + ||X||) max(sqrt a_{N-1}) |w|^N exceeds `tail_tol` somewhere.
FrameField eigenframe(const UpperTriangularModel& model, const DiskGrid& grid,
                      double tail_tol = 1e-8);
/// Rank-1 variant: gamma_0 = t_0.
FrameField eigenframe(const ModelOperator& op, const DiskGrid& grid, double tail_tol = 1e-8);

struct MetricField {
  DiskGrid grid;
  std::vector<Matrix> values;
  /// Present when the metric comes from a polynomial frame ("series" method).
  std::shared_ptr<const PolynomialFrame> source;
  /// Pointwise evaluator used by finite differences.
  std::function<Matrix(Complex)> evaluator;

  int rank() const { return static_cast<int>(values.front().rows()); }
  static MetricField from_function(const DiskGrid& grid, std::function<Matrix(Complex)> fn);
};

MetricField gram_metric(const FrameField& frame);

enum class CurvatureMethod { kSeries, kFiniteDifference };

using DerivativeOrder = std::pair<int, int>;  // (i, j): i steps in w, j in conj w

struct CurvatureField {
  DiskGrid grid;
  CurvatureMethod method;
  std::vector<Matrix> values;   // K(w)
  std::vector<Matrix> metric;   // h(w), kept for orthonormalization
  std::map<DerivativeOrder, std::vector<Matrix>> derivatives;

  int rank() const { return static_cast<int>(values.front().rows()); }
};

inline constexpr int kDefaultMaxCovariantOrder = 2;
/// Highest metric derivative order the finite-difference stencils resolve.
inline constexpr int kFiniteDifferenceMaxMetricOrder = 3;

/// K = -dbar(h^{-1} dh) at every grid point, plus requested covariant derivatives.
CurvatureField curvature(const MetricField& metric, CurvatureMethod method,
                         const std::vector<DerivativeOrder>& derivatives = {},
                         int max_order = kDefaultMaxCovariantOrder);

/// K_{w^i wbar^j} per grid point. (0, 0) returns the curvature itself.
std::vector<Matrix> covariant_derivative(const CurvatureField& field, const MetricField& metric,
                                         int i, int j,
                                         int max_order = kDefaultMaxCovariantOrder);

/// Metric jet d^p dbar^q h for p + q <= order at w, via the chosen method.
MatrixJet metric_jet(const MetricField& metric, Complex w, int order, CurvatureMethod method);

struct IsometryPoint {
  bool found = false;
  std::optional<Matrix> v;  // unitary in h-orthonormal coordinates
  double residual = 0.0;
  /// True when not-found is certified by a spectrum mismatch.
  bool spectrum_mismatch = false;
};

struct IsometryCheck {
  std::vector<IsometryPoint> points;
  int found_count = 0;
  double max_residual = 0.0;  // over points where found
};

/// Searches, at every grid point, for a unitary V (in h-orthonormal frames)
/// with V K_A = K_B V for K, K_w and K_wbar (and K_{w wbar} when requested).
IsometryCheck curvature_isometry_check(const CurvatureField& a, const CurvatureField& b,
                                       double tol, bool include_mixed = false);

/// re(w), im(w), then row-major re/im of K and of each stored derivative.
void write_curvature_csv(const CurvatureField& field, std::ostream& out);

}  // namespace cdlab
