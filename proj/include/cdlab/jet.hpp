#pragma once

#include <vector>

#include "cdlab/linalg.hpp"

namespace cdlab {

/// Truncated Taylor jet of a smooth matrix-valued function of (w, conj w) at a
/// point: the Wirtinger derivatives d^p dbar^q F for p + q <= order.
class MatrixJet {
 public:
  MatrixJet(int order, Eigen::Index rows, Eigen::Index cols);

  int order() const noexcept { return order_; }
  Eigen::Index rows() const noexcept { return rows_; }
  Eigen::Index cols() const noexcept { return cols_; }

  Matrix& at(int p, int q) { return terms_[index(p, q)]; }
  const Matrix& at(int p, int q) const { return terms_[index(p, q)]; }
  const Matrix& value() const { return terms_[0]; }

  /// Jet of dF (order drops by one).
  MatrixJet d() const;
  /// Jet of dbar F (order drops by one).
  MatrixJet dbar() const;
  MatrixJet truncated(int order) const;
  MatrixJet inverse() const;

  friend MatrixJet operator*(const MatrixJet& f, const MatrixJet& g);
  friend MatrixJet operator+(const MatrixJet& f, const MatrixJet& g);
  friend MatrixJet operator-(const MatrixJet& f, const MatrixJet& g);
  friend MatrixJet operator*(Complex c, const MatrixJet& f);

 private:
  static std::size_t index(int p, int q) {
    const int s = p + q;
    return static_cast<std::size_t>(s * (s + 1) / 2 + q);
  }

  int order_;
  Eigen::Index rows_;
  Eigen::Index cols_;
  std::vector<Matrix> terms_;
};

MatrixJet commutator(const MatrixJet& f, const MatrixJet& g);

/// Jet of the curvature -dbar(h^{-1} dh) from a metric jet of order >= 2.
MatrixJet curvature_jet(const MatrixJet& metric);

/// Covariant derivative K_{w^i wbar^j}: i holomorphic steps
/// K -> dK + [h^{-1} dh, K] followed by j steps K -> dbar K.
/// Requires metric.order() >= 2 + i + j.
Matrix covariant_from_metric_jet(const MatrixJet& metric, int i, int j);

}  // namespace cdlab
