#include "cdlab/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <ostream>
#include <sstream>

#include "cdlab/error.hpp"
#include "cdlab/parallel.hpp"

namespace cdlab {
namespace {

std::string point_string(Complex w) {
  std::ostringstream s;
  s.precision(6);
  s << "w = " << w.real() << (w.imag() < 0 ? "-" : "+") << std::abs(w.imag()) << "i";
  return s.str();
}

double binomial(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

/// Coefficient vector (falling(k, p) w^{k-p})_k for k = 0..degree.
Vector power_column(Complex w, int degree, int derivative) {
  Vector v = Vector::Zero(degree + 1);
  Complex power = 1.0;
  for (int k = derivative; k <= degree; ++k) {
    double falling = 1.0;
    for (int m = 0; m < derivative; ++m) falling *= k - m;
    v(k) = falling * power;
    power *= w;
  }
  return v;
}

// Five-point first-derivative weights on offsets -2..2 (unit step).
constexpr double kFirstDerivative[5] = {1.0 / 12.0, -8.0 / 12.0, 0.0, 8.0 / 12.0, -1.0 / 12.0};

/// a-fold convolution power of the first-derivative stencil, offsets -2a..2a.
std::vector<double> stencil_power(int a) {
  std::vector<double> s{1.0};
  for (int step = 0; step < a; ++step) {
    std::vector<double> next(s.size() + 4, 0.0);
    for (std::size_t i = 0; i < s.size(); ++i)
      for (int j = 0; j < 5; ++j) next[i + j] += s[i] * kFirstDerivative[j];
    s = std::move(next);
  }
  return s;
}

MatrixJet series_metric_jet(const PolynomialFrame& frame, Complex w, int order) {
  const int r = frame.rank();
  std::vector<Matrix> derivs;
  derivs.reserve(order + 1);
  for (int p = 0; p <= order; ++p) derivs.push_back(frame.evaluate(w, p));
  MatrixJet jet(order, r, r);
  // h_{ij} = <gamma_j, gamma_i>; d only reaches gamma_j and dbar only conj(gamma_i).
  for (int s = 0; s <= order; ++s)
    for (int q = 0; q <= s; ++q) jet.at(s - q, q) = derivs[q].adjoint() * derivs[s - q];
  return jet;
}

MatrixJet fd_metric_jet(const MetricField& metric, Complex w, int order) {
  if (order > kFiniteDifferenceMaxMetricOrder) {
    std::ostringstream msg;
    msg << "finite-difference stencils resolve metric derivatives up to order "
        << kFiniteDifferenceMaxMetricOrder << ", requested " << order;
    fail(ErrorKind::kPrecision, msg.str());
  }
  if (!metric.evaluator) fail(ErrorKind::kInvalidArgument, "metric has no pointwise evaluator");
  const double h = metric.grid.fd_step();
  const int reach = 2 * order;
  if (!(std::abs(w) + reach * h * std::numbers::sqrt2 < 1.0)) {
    fail(ErrorKind::kDomain, "finite-difference stencil leaves the disk at " + point_string(w));
  }
  const int side = 2 * reach + 1;
  std::vector<Matrix> lattice(static_cast<std::size_t>(side * side));
  for (int m = -reach; m <= reach; ++m)
    for (int n = -reach; n <= reach; ++n)
      lattice[static_cast<std::size_t>((m + reach) * side + (n + reach))] =
          metric.evaluator(w + h * Complex(m, n));

  std::vector<std::vector<double>> powers;
  for (int a = 0; a <= order; ++a) powers.push_back(stencil_power(a));
  const Eigen::Index r = lattice.front().rows();
  // d^a_x d^b_y of h by the tensor-product stencil.
  auto partial = [&](int a, int b) {
    Matrix acc = Matrix::Zero(r, r);
    const std::vector<double>& sx = powers[a];
    const std::vector<double>& sy = powers[b];
    for (int m = -2 * a; m <= 2 * a; ++m) {
      const double wx = sx[m + 2 * a];
      if (wx == 0.0) continue;
      for (int n = -2 * b; n <= 2 * b; ++n) {
        const double wy = sy[n + 2 * b];
        if (wy == 0.0) continue;
        acc += (wx * wy) * lattice[static_cast<std::size_t>((m + reach) * side + (n + reach))];
      }
    }
    return Matrix(acc / std::pow(h, a + b));
  };

  MatrixJet jet(order, r, r);
  for (int s = 0; s <= order; ++s) {
    for (int q = 0; q <= s; ++q) {
      const int p = s - q;
      // d = (dx - i dy)/2, dbar = (dx + i dy)/2.
      Matrix acc = Matrix::Zero(r, r);
      for (int u = 0; u <= p; ++u)
        for (int v = 0; v <= q; ++v) {
          const Complex c = binomial(p, u) * binomial(q, v) * std::pow(-kI, u) * std::pow(kI, v);
          acc += c * partial(p - u + q - v, u + v);
        }
      jet.at(p, q) = acc / std::pow(2.0, s);
    }
  }
  return jet;
}

}  // namespace

// DiskGrid

DiskGrid::DiskGrid(std::vector<Complex> points, double fd_step)
    : points_(std::move(points)), fd_step_(fd_step) {
  if (!(fd_step_ > 0.0)) fail(ErrorKind::kInvalidArgument, "finite-difference step must be > 0");
  for (Complex w : points_) {
    if (!(std::abs(w) + fd_step_ * std::numbers::sqrt2 < 1.0)) {
      fail(ErrorKind::kDomain, "grid point and its stencil must stay inside the disk: " +
                                   point_string(w));
    }
    r_max_ = std::max(r_max_, std::abs(w));
  }
}

DiskGrid DiskGrid::polar(const std::vector<double>& radii, int angles, double fd_step) {
  if (angles < 1) fail(ErrorKind::kInvalidArgument, "polar grid needs at least one angle");
  std::vector<Complex> pts;
  for (double r : radii)
    for (int k = 0; k < angles; ++k)
      pts.push_back(std::polar(r, 2.0 * std::numbers::pi * k / angles));
  return {std::move(pts), fd_step};
}

DiskGrid DiskGrid::default_polar(double fd_step) {
  return polar({0.1, 0.2, 0.3, 0.4, 0.5, 0.6}, 16, fd_step);
}

bool DiskGrid::covers(Complex p) const { return std::abs(p) <= r_max_ + 1e-12; }

// PolynomialFrame

PolynomialFrame::PolynomialFrame(std::vector<Matrix> coefficients)
    : coefficients_(std::move(coefficients)) {
  if (coefficients_.empty()) fail(ErrorKind::kInvalidArgument, "frame needs at least one vector");
  for (const Matrix& c : coefficients_) {
    if (c.rows() != coefficients_.front().rows() || c.cols() != coefficients_.front().cols()) {
      fail(ErrorKind::kInvalidArgument, "frame vectors must share dimension and degree");
    }
  }
}

PolynomialFrame PolynomialFrame::section(const DiagonalKernel& kernel) {
  const int n = kernel.truncation();
  Matrix c = Matrix::Zero(n, n);
  for (int k = 0; k < n; ++k) c(k, k) = std::sqrt(kernel[k]);
  return PolynomialFrame({std::move(c)});
}

Matrix PolynomialFrame::evaluate(Complex w, int derivative) const {
  const Vector powers = power_column(w, degree(), derivative);
  Matrix out(dim(), rank());
  for (int j = 0; j < rank(); ++j) out.col(j) = coefficients_[j] * powers;
  return out;
}

PolynomialFrame PolynomialFrame::recombined(const Matrix& g) const {
  if (g.rows() != rank() || g.cols() != rank()) {
    fail(ErrorKind::kInvalidArgument, "frame change must be rank x rank");
  }
  std::vector<Matrix> out(rank(), Matrix::Zero(dim(), degree() + 1));
  for (int j = 0; j < rank(); ++j)
    for (int i = 0; i < rank(); ++i) out[j] += g(i, j) * coefficients_[i];
  return PolynomialFrame(std::move(out));
}

PolynomialFrame PolynomialFrame::times_polynomial(const std::vector<Complex>& poly) const {
  if (poly.empty()) fail(ErrorKind::kInvalidArgument, "empty polynomial");
  const int deg = degree() + static_cast<int>(poly.size()) - 1;
  std::vector<Matrix> out;
  for (const Matrix& c : coefficients_) {
    Matrix next = Matrix::Zero(dim(), deg + 1);
    for (int k = 0; k <= degree(); ++k)
      for (std::size_t m = 0; m < poly.size(); ++m) next.col(k + m) += poly[m] * c.col(k);
    out.push_back(std::move(next));
  }
  return PolynomialFrame(std::move(out));
}

// Frames

double FrameField::max_residual() const {
  double m = 0.0;
  for (const RealVector& r : residuals) m = std::max(m, r.maxCoeff());
  return m;
}

FrameField frame_field(PolynomialFrame frame, const DiskGrid& grid) {
  auto shared = std::make_shared<const PolynomialFrame>(std::move(frame));
  std::vector<Matrix> vectors(grid.size());
  parallel_for(grid.size(), [&](std::size_t i) { vectors[i] = shared->evaluate(grid.points()[i]); });
  return {grid, shared, std::move(vectors), {}, {}};
}

namespace {

FrameField attach_residuals(FrameField field, const Matrix& op, double sqrt_tail_coeff,
                            double coupling_norm, double tail_tol) {
  field.residuals.resize(field.grid.size());
  field.tail_bounds.resize(field.grid.size());
  for (std::size_t i = 0; i < field.grid.size(); ++i) {
    const Complex w = field.grid.points()[i];
    const double n = static_cast<double>(field.frame->degree() + 1);
    const double bound = (1.0 + coupling_norm) * sqrt_tail_coeff * std::pow(std::abs(w), n);
    field.tail_bounds[i] = bound;
    if (bound > tail_tol) {
      const double needed =
          std::log(tail_tol / ((1.0 + coupling_norm) * sqrt_tail_coeff)) / std::log(std::abs(w));
      std::ostringstream msg;
      msg << "truncation tail bound " << bound << " exceeds " << tail_tol << " at "
          << point_string(w) << "; need N >= " << static_cast<int>(std::ceil(needed));
      fail(ErrorKind::kPrecision, msg.str());
    }
  }
  parallel_for(field.grid.size(), [&](std::size_t i) {
    const Complex w = field.grid.points()[i];
    const Matrix r = op * field.vectors[i] - w * field.vectors[i];
    field.residuals[i] = r.colwise().norm().transpose();
  });
  return field;
}

}  // namespace

PolynomialFrame model_frame(const UpperTriangularModel& model) {
  if (!model.t0.kernel || !model.t1.kernel) {
    fail(ErrorKind::kInvalidArgument, "eigenframe needs diagonal blocks built from kernels");
  }
  const DiagonalKernel& k0 = *model.t0.kernel;
  const DiagonalKernel& k1 = *model.t1.kernel;
  const int n = k0.truncation();
  if (k1.truncation() != n) fail(ErrorKind::kInvalidArgument, "kernel truncations differ");
  Matrix sqrt0 = Matrix::Zero(n, n);
  Matrix sqrt1 = Matrix::Zero(n, n);
  for (int k = 0; k < n; ++k) {
    sqrt0(k, k) = std::sqrt(k0[k]);
    sqrt1(k, k) = std::sqrt(k1[k]);
  }
  Matrix g0 = Matrix::Zero(2 * n, n);
  g0.topRows(n) = sqrt0;
  Matrix g1(2 * n, n);
  g1.topRows(n) = model.coupling * sqrt1;
  g1.bottomRows(n) = sqrt1;
  return PolynomialFrame({std::move(g0), std::move(g1)});
}

FrameField eigenframe(const UpperTriangularModel& model, const DiskGrid& grid, double tail_tol) {
  FrameField field = frame_field(model_frame(model), grid);
  const DiagonalKernel& k0 = *model.t0.kernel;
  const DiagonalKernel& k1 = *model.t1.kernel;
  const int n = k0.truncation();
  const double tail_coeff = std::max(std::sqrt(k0[n - 1]), std::sqrt(k1[n - 1]));
  return attach_residuals(std::move(field), model.t, tail_coeff, operator_norm(model.coupling),
                          tail_tol);
}

FrameField eigenframe(const ModelOperator& op, const DiskGrid& grid, double tail_tol) {
  if (!op.kernel) fail(ErrorKind::kInvalidArgument, "eigenframe needs an operator built from a kernel");
  const DiagonalKernel& k = *op.kernel;
  FrameField field = frame_field(PolynomialFrame::section(k), grid);
  return attach_residuals(std::move(field), op.matrix, std::sqrt(k[k.truncation() - 1]), 0.0,
                          tail_tol);
}

// Metrics

MetricField MetricField::from_function(const DiskGrid& grid, std::function<Matrix(Complex)> fn) {
  std::vector<Matrix> values;
  values.reserve(grid.size());
  for (Complex w : grid.points()) values.push_back(fn(w));
  return {grid, std::move(values), nullptr, std::move(fn)};
}

MetricField gram_metric(const FrameField& frame) {
  std::vector<Matrix> values(frame.grid.size());
  for (std::size_t i = 0; i < frame.grid.size(); ++i) {
    const Matrix& g = frame.vectors[i];
    Matrix h = g.adjoint() * g;
    h = 0.5 * (h + h.adjoint()).eval();
    Eigen::SelfAdjointEigenSolver<Matrix> es(h, Eigen::EigenvaluesOnly);
    const double smallest = es.eigenvalues()(0);
    const double largest = es.eigenvalues()(h.rows() - 1);
    if (!(smallest > largest * 1e-14) || !(largest > 0.0)) {
      fail(ErrorKind::kDegeneracy,
           "frame is degenerate (Gram determinant <= 0) at " + point_string(frame.grid.points()[i]));
    }
    values[i] = std::move(h);
  }
  std::shared_ptr<const PolynomialFrame> source = frame.frame;
  auto evaluator = [source](Complex w) {
    const Matrix g = source->evaluate(w);
    return Matrix(g.adjoint() * g);
  };
  return {frame.grid, std::move(values), source, std::move(evaluator)};
}

MatrixJet metric_jet(const MetricField& metric, Complex w, int order, CurvatureMethod method) {
  if (method == CurvatureMethod::kSeries) {
    if (!metric.source) {
      fail(ErrorKind::kInvalidArgument,
           "series curvature needs a metric generated by a polynomial frame");
    }
    return series_metric_jet(*metric.source, w, order);
  }
  return fd_metric_jet(metric, w, order);
}

// Curvature

namespace {

void check_order(CurvatureMethod method, int i, int j, int max_order) {
  if (i < 0 || j < 0) fail(ErrorKind::kInvalidArgument, "derivative orders must be >= 0");
  if (i + j > max_order) {
    std::ostringstream msg;
    msg << "covariant derivative order " << i + j << " exceeds the configured maximum "
        << max_order;
    fail(ErrorKind::kPrecision, msg.str());
  }
  if (method == CurvatureMethod::kFiniteDifference && 2 + i + j > kFiniteDifferenceMaxMetricOrder) {
    std::ostringstream msg;
    msg << "covariant derivative (" << i << ", " << j
        << ") is beyond finite-difference stencil support";
    fail(ErrorKind::kPrecision, msg.str());
  }
}

}  // namespace

CurvatureField curvature(const MetricField& metric, CurvatureMethod method,
                         const std::vector<DerivativeOrder>& derivatives, int max_order) {
  int top = 0;
  for (const auto& [i, j] : derivatives) {
    check_order(method, i, j, max_order);
    top = std::max(top, i + j);
  }
  if (method == CurvatureMethod::kSeries && !metric.source) {
    fail(ErrorKind::kInvalidArgument,
         "series curvature needs a metric generated by a polynomial frame");
  }
  const std::size_t n = metric.grid.size();
  CurvatureField field{metric.grid, method, std::vector<Matrix>(n), metric.values, {}};
  for (const DerivativeOrder& d : derivatives) field.derivatives[d].resize(n);
  parallel_for(n, [&](std::size_t p) {
    const MatrixJet jet = metric_jet(metric, metric.grid.points()[p], 2 + top, method);
    field.values[p] = covariant_from_metric_jet(jet, 0, 0);
    for (const DerivativeOrder& d : derivatives) {
      field.derivatives[d][p] = covariant_from_metric_jet(jet, d.first, d.second);
    }
  });
  return field;
}

std::vector<Matrix> covariant_derivative(const CurvatureField& field, const MetricField& metric,
                                         int i, int j, int max_order) {
  check_order(field.method, i, j, max_order);
  if (i == 0 && j == 0) return field.values;
  if (auto it = field.derivatives.find({i, j}); it != field.derivatives.end()) return it->second;
  std::vector<Matrix> out(field.grid.size());
  parallel_for(field.grid.size(), [&](std::size_t p) {
    const MatrixJet jet = metric_jet(metric, field.grid.points()[p], 2 + i + j, field.method);
    out[p] = covariant_from_metric_jet(jet, i, j);
  });
  return out;
}

// Isometry search

namespace {

struct Hermitian2 {
  Matrix vectors;
  RealVector values;
};

Hermitian2 eigh(const Matrix& h) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(h);
  return {es.eigenvectors(), es.eigenvalues()};
}

double tuple_norm(const std::vector<Matrix>& t) {
  double s = 0.0;
  for (const Matrix& m : t) s += m.squaredNorm();
  return std::sqrt(s);
}

double joint_residual(const Matrix& v, const std::vector<Matrix>& a, const std::vector<Matrix>& b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) s += (v * a[k] - b[k] * v).squaredNorm();
  return std::sqrt(s) / std::max(1.0, tuple_norm(a));
}

IsometryPoint match_point(const std::vector<Matrix>& a, const std::vector<Matrix>& b, double tol) {
  IsometryPoint out;
  const double scale = std::max(1.0, tuple_norm(a));
  const Eigen::Index r = a.front().rows();
  // Any unitary intertwining the tuple also intertwines the Hermitian and
  // skew-Hermitian parts of each member. The first such part with a simple
  // spectrum pins V down to diagonal phases in its eigenbasis.
  for (std::size_t k = 0; k < a.size(); ++k) {
    for (int part = 0; part < 2; ++part) {
      const Complex c = part == 0 ? Complex(0.5) : Complex(0.0, -0.5);
      const Matrix ha = c * a[k] + std::conj(c) * a[k].adjoint();
      const Matrix hb = c * b[k] + std::conj(c) * b[k].adjoint();
      const Hermitian2 ea = eigh(ha);
      double gap = std::numeric_limits<double>::infinity();
      for (Eigen::Index m = 0; m + 1 < r; ++m)
        gap = std::min(gap, ea.values(m + 1) - ea.values(m));
      if (gap < 1e-8 * scale) continue;
      const Hermitian2 eb = eigh(hb);
      if ((ea.values - eb.values).cwiseAbs().maxCoeff() > tol * scale) {
        out.spectrum_mismatch = true;
        out.residual = (ea.values - eb.values).norm() / scale;
        return out;
      }
      // V = Q_B D Q_A^*; D fixed relative to its first entry by least squares
      // on the off-diagonal entries of every tuple member.
      Vector phases = Vector::Ones(r);
      for (Eigen::Index m = 1; m < r; ++m) {
        Complex s = 0.0;
        for (std::size_t t = 0; t < a.size(); ++t) {
          const Matrix ma = ea.vectors.adjoint() * a[t] * ea.vectors;
          const Matrix mb = eb.vectors.adjoint() * b[t] * eb.vectors;
          s += std::conj(ma(0, m)) * mb(0, m) + ma(m, 0) * std::conj(mb(m, 0));
        }
        // conj(c) ma01 = mb01 and c ma10 = mb10 with c = phases(m).
        phases(m) = std::abs(s) > 0.0 ? std::conj(s) / std::abs(s) : Complex(1.0);
      }
      const Matrix v = eb.vectors * phases.asDiagonal() * ea.vectors.adjoint();
      out.residual = joint_residual(v, a, b);
      out.found = out.residual <= tol;
      out.v = v;
      return out;
    }
  }
  // Every part has a repeated eigenvalue: all members are scalar, V = I works
  // exactly when the scalars agree.
  const Matrix v = Matrix::Identity(r, r);
  out.residual = joint_residual(v, a, b);
  out.found = out.residual <= tol;
  if (out.found) out.v = v;
  return out;
}

std::vector<Matrix> orthonormal_tuple(const CurvatureField& f, std::size_t p,
                                      const std::vector<DerivativeOrder>& orders) {
  const Matrix l = hermitian_sqrt(f.metric[p]);
  const Matrix l_inv = hermitian_inv_sqrt(f.metric[p]);
  std::vector<Matrix> out;
  out.push_back(l * f.values[p] * l_inv);
  for (const DerivativeOrder& d : orders) out.push_back(l * f.derivatives.at(d)[p] * l_inv);
  return out;
}

}  // namespace

IsometryCheck curvature_isometry_check(const CurvatureField& a, const CurvatureField& b,
                                       double tol, bool include_mixed) {
  if (a.grid.size() != b.grid.size()) fail(ErrorKind::kInvalidArgument, "fields on different grids");
  for (std::size_t p = 0; p < a.grid.size(); ++p) {
    if (std::abs(a.grid.points()[p] - b.grid.points()[p]) > 1e-15) {
      fail(ErrorKind::kInvalidArgument, "fields on different grids");
    }
  }
  if (a.rank() != b.rank()) fail(ErrorKind::kInvalidArgument, "fields of different rank");
  std::vector<DerivativeOrder> orders{{1, 0}, {0, 1}};
  if (include_mixed) orders.push_back({1, 1});
  for (const DerivativeOrder& d : orders) {
    if (!a.derivatives.count(d) || !b.derivatives.count(d)) {
      std::ostringstream msg;
      msg << "isometry check needs covariant derivative (" << d.first << ", " << d.second
          << ") on both fields";
      fail(ErrorKind::kInvalidArgument, msg.str());
    }
  }
  IsometryCheck out;
  out.points.resize(a.grid.size());
  parallel_for(a.grid.size(), [&](std::size_t p) {
    out.points[p] = match_point(orthonormal_tuple(a, p, orders), orthonormal_tuple(b, p, orders), tol);
  });
  for (const IsometryPoint& pt : out.points) {
    if (!pt.found) continue;
    ++out.found_count;
    out.max_residual = std::max(out.max_residual, pt.residual);
  }
  return out;
}

void write_curvature_csv(const CurvatureField& field, std::ostream& out) {
  const int r = field.rank();
  auto header = [&](const std::string& name) {
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j)
        out << ",re_" << name << "_" << i << j << ",im_" << name << "_" << i << j;
  };
  out << "re_w,im_w";
  header("K");
  for (const auto& [d, values] : field.derivatives) {
    header("K_w" + std::to_string(d.first) + "_wbar" + std::to_string(d.second));
  }
  out << "\n";
  out.precision(17);
  auto row = [&](const Matrix& m) {
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j) out << "," << m(i, j).real() << "," << m(i, j).imag();
  };
  for (std::size_t p = 0; p < field.grid.size(); ++p) {
    const Complex w = field.grid.points()[p];
    out << w.real() << "," << w.imag();
    row(field.values[p]);
    for (const auto& [d, values] : field.derivatives) row(values[p]);
    out << "\n";
  }
}

}  // namespace cdlab
