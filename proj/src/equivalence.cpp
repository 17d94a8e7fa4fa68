#include "cdlab/equivalence.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "cdlab/error.hpp"

namespace cdlab {
namespace {

void require_blocks(const Matrix& a, const Matrix& b, const char* what) {
  if (a.rows() != b.rows() || a.cols() != b.cols() || a.rows() != a.cols()) {
    fail(ErrorKind::kInvalidArgument, std::string(what) + ": blocks must be square and equal");
  }
}

std::string fmt(double v) {
  std::ostringstream s;
  s.precision(3);
  s << v;
  return s.str();
}

std::string fmt(Complex w) {
  std::ostringstream s;
  s.precision(4);
  s << "(" << w.real() << ", " << w.imag() << ")";
  return s.str();
}

Complex poly_value(const std::vector<Complex>& poly, Complex w) {
  Complex v = 0.0;
  for (auto it = poly.rbegin(); it != poly.rend(); ++it) v = v * w + *it;
  return v;
}

std::vector<Complex> conj_coefficients(const std::vector<Complex>& poly) {
  std::vector<Complex> out(poly.size());
  std::transform(poly.begin(), poly.end(), out.begin(), [](Complex c) { return std::conj(c); });
  return out;
}

}  // namespace

BlockUnitary::BlockUnitary(Matrix u00, Matrix u01, Matrix u10, Matrix u11)
    : u00_(std::move(u00)), u01_(std::move(u01)), u10_(std::move(u10)), u11_(std::move(u11)) {
  require_blocks(u00_, u01_, "BlockUnitary");
  require_blocks(u00_, u10_, "BlockUnitary");
  require_blocks(u00_, u11_, "BlockUnitary");
  u_ = block2x2(u00_, u01_, u10_, u11_);
}

BlockUnitary BlockUnitary::unchecked(Matrix u00, Matrix u01, Matrix u10, Matrix u11) {
  return BlockUnitary(std::move(u00), std::move(u01), std::move(u10), std::move(u11));
}

BlockUnitary BlockUnitary::from_blocks(Matrix u00, Matrix u01, Matrix u10, Matrix u11,
                                       double tol) {
  BlockUnitary u(std::move(u00), std::move(u01), std::move(u10), std::move(u11));
  const double r = u.unitarity_residual();
  if (!(r <= tol)) fail(ErrorKind::kNumeric, "U is not unitary: residual " + fmt(r));
  return u;
}

double BlockUnitary::unitarity_residual() const {
  const Matrix id = identity(u_.rows());
  return std::max(fro(u_ * u_.adjoint() - id), fro(u_.adjoint() * u_ - id));
}

UnitaryConstruction build_unitary_from_X(const ModelOperator& t0, const ModelOperator& t1,
                                         const Matrix& x) {
  require_blocks(t0.matrix, t1.matrix, "build_unitary_from_X");
  require_blocks(t0.matrix, x, "build_unitary_from_X");
  const double nx = operator_norm(x);
  if (fro(x * x.adjoint() - x.adjoint() * x) > 1e-10 * nx * nx) {
    fail(ErrorKind::kPrecondition, "X is not normal");
  }
  const Eigen::Index n = x.rows();
  const Matrix id = identity(n);
  const Matrix gram_right = id + x.adjoint() * x;
  const Matrix gram_left = id + x * x.adjoint();
  const double mismatch = fro(gram_right - gram_left);
  if (mismatch > 1e-10 * std::max(1.0, nx * nx)) {
    fail(ErrorKind::kNumeric, "I + X^*X and I + XX^* disagree by " + fmt(mismatch));
  }
  const Matrix p = hermitian_inv_sqrt(gram_right);
  const Matrix root = hermitian_sqrt(gram_right);
  const Matrix root_left_inv = hermitian_inv_sqrt(gram_left);
  if (!all_finite(p) || !all_finite(root)) fail(ErrorKind::kNumeric, "square root failed");

  BlockUnitary u = BlockUnitary::from_blocks(x.adjoint() * p, p, p, -p * x);
  ModelOperator tt0 = model_from_matrix(root * t1.matrix * p);
  ModelOperator tt1 = model_from_matrix(root_left_inv * t0.matrix * root);
  return {std::move(u), assemble_model(tt0, tt1, x.adjoint())};
}

ConditionReport verify_mainlemma(const BlockUnitary& u, const UpperTriangularModel& t,
                                 const UpperTriangularModel& t_tilde, double tol) {
  const Eigen::Index n = t.block_size();
  if (t_tilde.block_size() != n || u.u00().rows() != n) {
    fail(ErrorKind::kInvalidArgument, "verify_mainlemma: inconsistent sizes");
  }
  const Matrix& t0 = t.t0.matrix;
  const Matrix& t1 = t.t1.matrix;
  const Matrix& tt0 = t_tilde.t0.matrix;
  const Matrix& tt1 = t_tilde.t1.matrix;
  const Matrix& x = t.coupling;
  const Matrix& y = t_tilde.coupling;
  const Matrix id = identity(n);

  ConditionReport r("mainlemma");
  r.add("intertwine-10", fro(u.u10() * t0 - tt1 * u.u10()), tol, "U10 T0 = T~1 U10");
  r.add("intertwine-01", fro(t1 * u.u01().adjoint() - u.u01().adjoint() * tt0), tol,
        "T1 U01^* = U01^* T~0");
  r.add("gram-10", fro((id + x * x.adjoint()).inverse() - u.u10().adjoint() * u.u10()), tol,
        "(I + XX^*)^{-1} = U10^* U10");
  r.add("gram-01", fro((id + x.adjoint() * x).inverse() - u.u01().adjoint() * u.u01()), tol,
        "(I + X^*X)^{-1} = U01^* U01");

  const double cond = condition_number(u.u10());
  if (!(cond <= kSingularCondition)) {
    r.add_indeterminate("kernel-d", "U10 numerically singular, condition " + fmt(cond));
  } else {
    const Matrix d = y - u.u01() * x.adjoint() * u.u10().inverse();
    r.add("kernel-d", fro(tt0 * d - d * tt1), tol, "D = Y - U01 X^* U10^{-1} in Ker sigma(T~0, T~1)");
  }
  r.add("block-00", fro(u.u00() - u.u01() * x.adjoint()), tol, "U00 = U01 X^*");
  r.add("block-11", fro(u.u11() + u.u10() * x), tol, "U11 = -U10 X");
  r.add("unitarity", u.unitarity_residual(), tol);
  r.add("intertwine-full", fro(u.matrix() * t.t - t_tilde.t * u.matrix()), tol, "U T = T~ U");
  return r;
}

Fb2Pair construct_fb2_pair(const BlockUnitary& u, const UpperTriangularModel& t,
                           const UpperTriangularModel& t_tilde, double tol) {
  const ConditionReport pre = verify_mainlemma(u, t, t_tilde, 1e-8);
  for (const auto& c : pre.conditions()) {
    if (c.verdict != Verdict::kPass) {
      fail(ErrorKind::kPrecondition,
           "mainlemma condition '" + c.name + "' fails (residual " + fmt(c.residual) + ")");
    }
  }
  const Matrix& x = t.coupling;
  const Matrix& y = t_tilde.coupling;
  const Matrix& t0 = t.t0.matrix;
  const Matrix& t1 = t.t1.matrix;
  const Matrix& tt0 = t_tilde.t0.matrix;
  const Matrix& tt1 = t_tilde.t1.matrix;
  const Eigen::Index n = t.block_size();
  const Matrix zero = Matrix::Zero(n, n);

  Fb2Pair out;
  out.residuals = ConditionReport("main1");
  out.s0 = y * u.u10() - u.u01() * x.adjoint();
  out.s1 = u.u01().adjoint() * y - x.adjoint() * u.u10().adjoint();
  out.f = block2x2(tt0, out.s0, zero, t0);
  out.f_tilde = block2x2(t1, out.s1, zero, tt1);
  out.z = direct_sum(u.u01().adjoint(), u.u10());

  out.residuals.add("fb2-F", fro(tt0 * out.s0 - out.s0 * t0), tol, "T~0 S0 = S0 T0");
  out.residuals.add("fb2-Ftilde", fro(t1 * out.s1 - out.s1 * tt1), tol, "T1 S1 = S1 T~1");
  out.residuals.add("link", fro(u.u01().adjoint() * out.s0 - out.s1 * u.u10()), tol,
                    "U01^* S0 = S1 U10");
  out.residuals.add("similarity", fro(out.z * out.f - out.f_tilde * out.z), tol, "Z F = F~ Z");
  const double cond = condition_number(out.z);
  if (!(cond <= kSingularCondition)) {
    out.residuals.add_indeterminate("z-invertible", "Z condition " + fmt(cond));
  } else {
    out.residuals.add("z-invertible", fro(out.z.inverse() * out.z - identity(2 * n)), tol);
  }
  return out;
}

ThetaCheck theta_intertwiner_check(const ModelOperator& t0, const ModelOperator& t1,
                                   const Matrix& y, double tol) {
  require_blocks(t0.matrix, t1.matrix, "theta_intertwiner_check");
  require_blocks(t0.matrix, y, "theta_intertwiner_check");
  const Matrix diff = t0.matrix - t1.matrix;
  const double nd = fro(diff);
  if (nd == 0.0) fail(ErrorKind::kDegenerateInput, "T0 = T1: the phase is undefined");
  const Matrix rel = y * t0.matrix - t1.matrix * y;
  const Complex coeff = fro_inner(diff, rel) / (nd * nd);

  ThetaCheck out;
  const double two_pi = 2.0 * std::numbers::pi;
  out.theta = std::arg(coeff);
  if (out.theta < 0.0) out.theta += two_pi;
  if (out.theta >= two_pi) out.theta -= two_pi;
  const Complex e = std::polar(1.0, out.theta);
  out.relation_residual = fro(rel - e * diff);
  out.accepted = out.relation_residual <= tol;

  const Eigen::Index n = t0.size();
  out.t = assemble_model(t0, t1, identity(n));
  out.t_tilde = assemble_model(t1, t0, y);
  if (out.accepted) {
    const double s = std::numbers::sqrt2 / 2.0;
    const Matrix id = identity(n);
    out.u = BlockUnitary::from_blocks(s * e * id, s * e * id, s * id, -s * id);
    out.intertwining_residual = fro(out.u->matrix() * out.t.t - out.t_tilde.t * out.u->matrix());
  }
  return out;
}

Matrix AntidiagonalWeight::at(Complex w) const {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 1) = poly_value(phi, w);
  m(1, 0) = poly_value(psi, w);
  return m;
}

Matrix frame_kernel(const PolynomialFrame& frame, Complex z, Complex w) {
  const Matrix gz = frame.evaluate(std::conj(z));
  const Matrix gw = frame.evaluate(std::conj(w));
  return gz.adjoint() * gw;
}

double kernel_transform_check(const FrameField& a, const FrameField& b,
                              const AntidiagonalWeight& weight,
                              const std::vector<std::pair<Complex, Complex>>& pairs) {
  if (a.rank() != 2 || b.rank() != 2) {
    fail(ErrorKind::kInvalidArgument, "kernel_transform_check needs rank-2 frames");
  }
  double worst = 0.0;
  for (const auto& [z, w] : pairs) {
    for (Complex p : {z, w}) {
      if (!a.grid.covers(p) || !b.grid.covers(p)) {
        fail(ErrorKind::kDomain, "sample " + fmt(p) + " lies outside the frame grids");
      }
    }
    const Matrix ka = frame_kernel(*a.frame, z, w);
    const Matrix kb = frame_kernel(*b.frame, z, w);
    worst = std::max(worst, fro(weight.at(z) * ka * weight.at(w).adjoint() - kb));
  }
  return worst;
}

ConditionReport main3_verifier(const DiagonalKernel& k0, const DiagonalKernel& k1,
                               const DiagonalKernel& ks, const Matrix& x, const Matrix& y,
                               const DiskGrid& grid, double tol, const Main3Options& options) {
  const int n = k0.truncation();
  if (k1.truncation() != n || ks.truncation() != n || x.rows() != n || x.cols() != n ||
      y.rows() != n || y.cols() != n) {
    fail(ErrorKind::kInvalidArgument, "main3_verifier: kernels and X, Y must share the truncation");
  }
  const double iso = fro(x.adjoint() * x - identity(n));
  if (iso > 1e-10) {
    fail(ErrorKind::kPrecondition, "X is not an isometry: ||X^*X - I|| = " + fmt(iso));
  }
  if (options.psi.empty()) fail(ErrorKind::kInvalidArgument, "psi must be non-empty");
  if (options.sample_points < 1) fail(ErrorKind::kInvalidArgument, "sample_points must be >= 1");

  ConditionReport r("main3");
  double adj = 0.0, norm = 0.0;
  Complex adj_at = 0.0, norm_at = 0.0;
  for (Complex w : grid.points()) {
    const Vector t0 = section_vector(k0, w).coordinates;
    const Vector t1 = section_vector(k1, w).coordinates;
    const Vector yt1 = y * t1;
    const double a = (x.adjoint() * t0 - 2.0 * yt1).norm() / std::max(1.0, t0.norm());
    const double s0 = t0.squaredNorm();
    const double b = std::abs(s0 - 2.0 * (yt1.squaredNorm() + t1.squaredNorm())) / std::max(1.0, s0);
    if (a > adj) {
      adj = a;
      adj_at = w;
    }
    if (b > norm) {
      norm = b;
      norm_at = w;
    }
  }
  r.add("hyp-adjoint", adj, tol, "X^* t0 = 2 Y t1, worst at " + fmt(adj_at));
  r.add("hyp-norm", norm, tol, "||t0||^2 = 2(||Y t1||^2 + ||t1||^2), worst at " + fmt(norm_at));

  const ModelOperator op0 = shift_from_kernel(k0);
  const ModelOperator op1 = shift_from_kernel(k1);
  const ModelOperator ops = shift_from_kernel(ks);
  const UpperTriangularModel t = assemble_model(op0, ops, x);
  const UpperTriangularModel tt = assemble_model(ops, op1, y);

  FrameField fa = frame_field(model_frame(t), grid);
  FrameField fb = frame_field(model_frame(tt)
                                  .recombined(std::numbers::sqrt2 * identity(2))
                                  .times_polynomial(options.psi),
                              grid);
  const std::vector<Complex> phi = conj_coefficients(options.psi);
  const AntidiagonalWeight weight{phi, phi};

  std::vector<Complex> samples;
  const std::size_t m = std::min<std::size_t>(static_cast<std::size_t>(options.sample_points),
                                              grid.size());
  const std::size_t stride = std::max<std::size_t>(1, grid.size() / m);
  for (std::size_t i = 0; i < m; ++i) samples.push_back(grid.points()[(i * stride) % grid.size()]);
  std::vector<std::pair<Complex, Complex>> pairs;
  for (Complex z : samples)
    for (Complex w : samples) pairs.emplace_back(z, w);
  r.add("kernel-transform", kernel_transform_check(fa, fb, weight, pairs), tol,
        std::to_string(pairs.size()) + " sample pairs");

  const int kt = std::min(options.kernel_dimension_truncation, n);
  if (kt >= 2) {
    auto head = [&](const ModelOperator& op) -> Matrix { return op.matrix.topLeftCorner(kt, kt); };
    auto dim = [](const Matrix& a, const Matrix& c) {
      return std::to_string(sylvester_kernel(a, c).dimension);
    };
    const std::string suffix = " (truncation " + std::to_string(kt) + ")";
    r.add_info("dim Ker sigma(T0, Ts)", dim(head(op0), head(ops)) + suffix);
    r.add_info("dim Ker sigma(Ts, T0)", dim(head(ops), head(op0)) + suffix);
    r.add_info("dim Ker sigma(T1, Ts)", dim(head(op1), head(ops)) + suffix);
    r.add_info("dim Ker sigma(Ts, T1)", dim(head(ops), head(op1)) + suffix);
  }
  return r;
}

}  // namespace cdlab
