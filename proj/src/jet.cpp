#include "cdlab/jet.hpp"

#include <algorithm>

#include "cdlab/error.hpp"

namespace cdlab {
namespace {

double binomial(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

MatrixJet::MatrixJet(int order, Eigen::Index rows, Eigen::Index cols)
    : order_(order), rows_(rows), cols_(cols) {
  if (order < 0) fail(ErrorKind::kInvalidArgument, "jet order must be >= 0");
  terms_.assign(index(0, order + 1), Matrix::Zero(rows, cols));
}

MatrixJet MatrixJet::d() const {
  if (order_ < 1) fail(ErrorKind::kPrecision, "jet order exhausted");
  MatrixJet out(order_ - 1, rows_, cols_);
  for (int s = 0; s <= order_ - 1; ++s)
    for (int q = 0; q <= s; ++q) out.at(s - q, q) = at(s - q + 1, q);
  return out;
}

MatrixJet MatrixJet::dbar() const {
  if (order_ < 1) fail(ErrorKind::kPrecision, "jet order exhausted");
  MatrixJet out(order_ - 1, rows_, cols_);
  for (int s = 0; s <= order_ - 1; ++s)
    for (int q = 0; q <= s; ++q) out.at(s - q, q) = at(s - q, q + 1);
  return out;
}

MatrixJet MatrixJet::truncated(int order) const {
  MatrixJet out(std::min(order, order_), rows_, cols_);
  for (int s = 0; s <= out.order_; ++s)
    for (int q = 0; q <= s; ++q) out.at(s - q, q) = at(s - q, q);
  return out;
}

MatrixJet operator*(const MatrixJet& f, const MatrixJet& g) {
  if (f.cols() != g.rows()) fail(ErrorKind::kInvalidArgument, "jet product size mismatch");
  MatrixJet out(std::min(f.order(), g.order()), f.rows(), g.cols());
  for (int s = 0; s <= out.order(); ++s) {
    for (int q = 0; q <= s; ++q) {
      const int p = s - q;
      Matrix& acc = out.at(p, q);
      for (int a = 0; a <= p; ++a)
        for (int b = 0; b <= q; ++b)
          acc.noalias() += (binomial(p, a) * binomial(q, b)) * (f.at(a, b) * g.at(p - a, q - b));
    }
  }
  return out;
}

MatrixJet operator+(const MatrixJet& f, const MatrixJet& g) {
  MatrixJet out = f.truncated(std::min(f.order(), g.order()));
  for (std::size_t k = 0; k < out.terms_.size(); ++k) out.terms_[k] += g.terms_[k];
  return out;
}

MatrixJet operator-(const MatrixJet& f, const MatrixJet& g) { return f + Complex(-1.0) * g; }

MatrixJet operator*(Complex c, const MatrixJet& f) {
  MatrixJet out = f;
  for (Matrix& m : out.terms_) m *= c;
  return out;
}

MatrixJet MatrixJet::inverse() const {
  if (rows_ != cols_) fail(ErrorKind::kInvalidArgument, "jet inverse of a non-square jet");
  MatrixJet g(order_, rows_, cols_);
  const Eigen::PartialPivLU<Matrix> lu(at(0, 0));
  g.at(0, 0) = lu.inverse();
  // From (F G)_{p,q} = 0 for (p, q) != (0, 0), in increasing total order.
  for (int s = 1; s <= order_; ++s) {
    for (int q = 0; q <= s; ++q) {
      const int p = s - q;
      Matrix acc = Matrix::Zero(rows_, cols_);
      for (int a = 0; a <= p; ++a)
        for (int b = 0; b <= q; ++b) {
          if (a == 0 && b == 0) continue;
          acc.noalias() += (binomial(p, a) * binomial(q, b)) * (at(a, b) * g.at(p - a, q - b));
        }
      g.at(p, q) = -(g.at(0, 0) * acc);
    }
  }
  return g;
}

MatrixJet commutator(const MatrixJet& f, const MatrixJet& g) { return f * g - g * f; }

MatrixJet curvature_jet(const MatrixJet& metric) {
  if (metric.order() < 2) fail(ErrorKind::kPrecision, "curvature needs a metric jet of order >= 2");
  const MatrixJet connection = metric.inverse().truncated(metric.order() - 1) * metric.d();
  return Complex(-1.0) * connection.dbar();
}

Matrix covariant_from_metric_jet(const MatrixJet& metric, int i, int j) {
  if (i < 0 || j < 0) fail(ErrorKind::kInvalidArgument, "derivative orders must be >= 0");
  if (metric.order() < 2 + i + j) {
    fail(ErrorKind::kPrecision, "metric jet order too low for the requested covariant derivative");
  }
  const MatrixJet connection = metric.inverse().truncated(metric.order() - 1) * metric.d();
  MatrixJet k = Complex(-1.0) * connection.dbar();
  for (int step = 0; step < i; ++step) k = k.d() + commutator(connection, k).truncated(k.order() - 1);
  for (int step = 0; step < j; ++step) k = k.dbar();
  return k.value();
}

}  // namespace cdlab
