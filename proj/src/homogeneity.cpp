#include "cdlab/homogeneity.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "cdlab/error.hpp"

namespace cdlab {
namespace {

Matrix block_form(const Matrix& f0, const Matrix& f1, const Matrix& x) {
  return block2x2(f0, x * f1 - f0 * x, Matrix::Zero(f0.rows(), f0.cols()), f1);
}

std::string fmt(double v) {
  std::ostringstream s;
  s.precision(3);
  s << v;
  return s.str();
}

}  // namespace

MobiusMap::MobiusMap(Complex a, double phase) : a_(a), phase_(phase) {
  if (!(std::abs(a) < 1.0)) fail(ErrorKind::kInvalidArgument, "Mobius parameter needs |a| < 1");
  if (!std::isfinite(phase)) fail(ErrorKind::kInvalidArgument, "Mobius phase must be finite");
}

Complex MobiusMap::operator()(Complex z) const {
  return std::polar(1.0, phase_) * (a_ - z) / (1.0 - std::conj(a_) * z);
}

Matrix MobiusMap::operator()(const Matrix& op) const { return apply_mobius(op, a_, phase_); }

std::string MobiusMap::describe() const {
  std::ostringstream s;
  s << "a=(" << a_.real() << "," << a_.imag() << ") phase=" << phase_;
  return s.str();
}

std::vector<MobiusMap> default_mobius_sample() {
  std::vector<MobiusMap> out;
  for (double r : {0.2, 0.5, 0.7}) {
    for (int k = 0; k < 4; ++k) out.emplace_back(std::polar(r, k * std::numbers::pi / 2.0), 0.0);
  }
  return out;
}

ConditionReport mobius_block_identity_check(const UpperTriangularModel& model,
                                            const MobiusMap& phi, double tol) {
  const Matrix& x = model.coupling;
  const Matrix& t0 = model.t0.matrix;
  const Matrix& t1 = model.t1.matrix;
  ConditionReport r("mobius-block");
  r.add("block-identity", fro(phi(model.t) - block_form(phi(t0), phi(t1), x)), tol,
        phi.describe());
  Matrix p = model.t, p0 = t0, p1 = t1;
  int done = 1;
  for (int n : {2, 3, 5}) {
    for (; done < n; ++done) {
      p = p * model.t;
      p0 = p0 * t0;
      p1 = p1 * t1;
    }
    r.add("power-" + std::to_string(n), fro(p - block_form(p0, p1, x)), tol);
  }
  return r;
}

void HomogeneityWitness::add(WitnessEntry entry) {
  for (const Matrix* u : {&entry.u0, &entry.u1}) {
    if (u->rows() != u->cols()) fail(ErrorKind::kInvalidArgument, "witness unitary not square");
    const double res = fro(*u * u->adjoint() - identity(u->rows()));
    if (res > 1e-10) fail(ErrorKind::kNumeric, "witness matrix not unitary: " + fmt(res));
  }
  entries_.push_back(std::move(entry));
}

ConditionReport homogeneity_condition_check(const UpperTriangularModel& model,
                                            const HomogeneityWitness& witness, double tol) {
  const Matrix& x = model.coupling;
  const Matrix& t0 = model.t0.matrix;
  const Matrix& t1 = model.t1.matrix;
  ConditionReport r("homogeneity");
  for (std::size_t k = 0; k < witness.size(); ++k) {
    const WitnessEntry& e = witness.entries()[k];
    if (e.u0.rows() != t0.rows() || e.u1.rows() != t1.rows()) {
      fail(ErrorKind::kInvalidArgument, "witness size does not match the model");
    }
    const std::string pre = "phi" + std::to_string(k) + "/";
    const std::string note = e.phi.describe();
    r.add(pre + "conjugate-0", fro(e.u0 * t0 * e.u0.adjoint() - e.phi(t0)), tol, note);
    r.add(pre + "conjugate-1", fro(e.u1 * t1 * e.u1.adjoint() - e.phi(t1)), tol, note);
    r.add(pre + "commute", fro(e.u0 * x - x * e.u1), tol, "U0 X = X U1");
    const Matrix u = direct_sum(e.u0, e.u1);
    r.add(pre + "assembled", fro(u * model.t - e.phi(model.t) * u), tol, note);
  }
  return r;
}

ConditionReport thm45_condition_check(const BlockUnitary& u, const UpperTriangularModel& model,
                                      const MobiusMap& phi, double tol) {
  const Eigen::Index n = model.block_size();
  if (u.u00().rows() != n) fail(ErrorKind::kInvalidArgument, "thm45: inconsistent sizes");
  const Matrix& x = model.coupling;
  const Matrix f0 = phi(model.t0.matrix);
  const Matrix f1 = phi(model.t1.matrix);
  const Matrix id = identity(n);
  ConditionReport r("thm45");

  const double c10 = condition_number(u.u10());
  const double c01 = condition_number(u.u01());
  if (!(c10 <= kSingularCondition) || !(c01 <= kSingularCondition)) {
    const std::string note = "U10 condition " + fmt(c10) + ", U01 condition " + fmt(c01);
    r.add_indeterminate("similar-10", note);
    r.add_indeterminate("similar-01", note);
  } else {
    r.add("similar-10", fro(u.u10() * model.t0.matrix * u.u10().inverse() - f1), tol,
          "U10 T0 U10^{-1} = phi(T1)");
    const Matrix a = u.u01().adjoint();
    r.add("similar-01", fro(a.inverse() * model.t1.matrix * a - f0), tol,
          "(U01^*)^{-1} T1 U01^* = phi(T0)");
  }

  r.add("block-00", fro(u.u00() - x * u.u10()), tol, "U00 = X U10");
  r.add("block-x10", fro(x * u.u10() - u.u01() * x.adjoint()), tol, "X U10 = U01 X^*");
  r.add("block-11", fro(u.u11() + x.adjoint() * u.u01()), tol, "-U11 = X^* U01");
  r.add("block-x01", fro(x.adjoint() * u.u01() - u.u10() * x), tol, "X^* U01 = U10 X");

  const Matrix g = u.u10().adjoint() * u.u10();
  r.add("gram-xxs", fro((id + x * x.adjoint()).inverse() - g), tol, "(I + XX^*)^{-1} = U10^* U10");
  r.add("gram-xsx", fro((id + x.adjoint() * x).inverse() - g), tol, "(I + X^*X)^{-1} = U10^* U10");

  r.add("end-to-end", fro(u.matrix() * model.t - phi(model.t) * u.matrix()), tol,
        "U T = phi(T) U, " + phi.describe());
  return r;
}

}  // namespace cdlab
