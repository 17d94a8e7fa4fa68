#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <string>

#include "cdlab/equivalence.hpp"
#include "cdlab/error.hpp"
#include "cdlab/homogeneity.hpp"
#include "oracles.hpp"

using namespace cdlab;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

int failures = 0;

void criterion(const char* id, const char* title, const std::function<Outcome()>& body) {
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  if (!o.pass) ++failures;
  std::printf("%s %s  %s: %s\n", id, o.pass ? "PASS" : "FAIL", title, o.detail.c_str());
  std::fflush(stdout);
}

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

std::vector<double> radii_to(double rmax) {
  std::vector<double> r;
  for (int k = 1; k * 0.1 <= rmax + 1e-12; ++k) r.push_back(k * 0.1);
  return r;
}

Outcome ac1() {
  const auto start = std::chrono::steady_clock::now();
  const DiskGrid grid = DiskGrid::polar(radii_to(0.6), 16);
  double worst_closed = 0.0, worst_oracle = 0.0, worst_fd = 0.0;
  for (int n = 1; n <= 3; ++n) {
    const MetricField h = gram_metric(frame_field(PolynomialFrame::section(bergman_coefficients(n, 80)), grid));
    const CurvatureField ks = curvature(h, CurvatureMethod::kSeries);
    const CurvatureField kf = curvature(h, CurvatureMethod::kFiniteDifference);
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const double x = std::norm(grid.points()[i]);
      const Complex k = ks.values[i](0, 0);
      const double oracle = oracle::radial_curvature(oracle::bergman_log(n), x).k;
      worst_oracle = std::max(worst_oracle, std::abs(k - oracle) / std::abs(k));
      worst_closed = std::max(worst_closed, std::abs(k + n / ((1.0 - x) * (1.0 - x))) / std::abs(k));
      worst_fd = std::max(worst_fd, std::abs(kf.values[i](0, 0) - k) / std::abs(k));
    }
  }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const bool pass = worst_closed <= 1e-6 && worst_oracle <= 1e-6 && worst_fd <= 1e-4 && seconds <= 10.0;
  return {pass, "closed form " + sci(worst_closed) + ", oracle " + sci(worst_oracle) + " (<= 1e-6), fd " +
                    sci(worst_fd) + " (<= 1e-4), " + sci(seconds) + " s (<= 10)"};
}

Outcome ac2() {
  const DiskGrid grid = DiskGrid::polar(radii_to(0.8), 16);
  Rng rng(20260);
  bool pass = true;
  double worst_ratio_to_bound = 0.0, min_decrease = 1e300;
  for (int trial = 0; trial < 20; ++trial) {
    const int first = trial % 2 == 0 ? 1 : 2, second = 3 - first;
    const Matrix x = random_scaled(120, 0.5, rng);
    auto residual = [&](int n, double tail_tol) {
      const Matrix xn = x.topLeftCorner(n, n);
      const UpperTriangularModel m = assemble_model(shift_from_kernel(bergman_coefficients(first, n)),
                                                    shift_from_kernel(bergman_coefficients(second, n)), xn);
      return std::pair{eigenframe(m, grid, tail_tol).max_residual(), operator_norm(xn)};
    };
    const auto [r120, norm120] = residual(120, 1e-8);
    const auto [r60, norm60] = residual(60, 1.0);
    const double bound = (1.0 + norm120) * std::pow(0.8, 119) * 10.0;
    worst_ratio_to_bound = std::max(worst_ratio_to_bound, r120 / bound);
    min_decrease = std::min(min_decrease, r60 / r120);
    pass = pass && r120 <= bound && r60 / r120 >= 100.0;
  }
  return {pass, "max residual/bound " + sci(worst_ratio_to_bound) + " (<= 1), min decrease N 60->120 " +
                    sci(min_decrease) + " (>= 100)"};
}

struct NormalTrials {
  double unitarity = 0.0, conjugation = 0.0, lemma = 0.0;
  double fb2_f = 0.0, fb2_ft = 0.0, similarity = 0.0;
  bool lemma_verdicts = true;
};

const NormalTrials& normal_trials() {
  static const NormalTrials result = [] {
    NormalTrials r;
    const ModelOperator t0 = shift_from_kernel(bergman_coefficients(1, 20));
    const ModelOperator t1 = shift_from_kernel(bergman_coefficients(2, 20));
    Rng rng(31415);
    for (int trial = 0; trial < 50; ++trial) {
      const Matrix n = random_normal(20, rng);
      const Matrix x = n * (0.5 / operator_norm(n));
      const UnitaryConstruction c = build_unitary_from_X(t0, t1, x);
      const UpperTriangularModel t = assemble_model(t0, t1, x);
      r.unitarity = std::max(r.unitarity, fro(c.u.matrix() * c.u.matrix().adjoint() - identity(40)));
      r.conjugation = std::max(r.conjugation, fro(c.u.matrix() * t.t * c.u.matrix().adjoint() - c.t_tilde.t));
      const ConditionReport rep = verify_mainlemma(c.u, t, c.t_tilde, 1e-9);
      for (const char* name : {"intertwine-10", "intertwine-01", "gram-10", "gram-01", "kernel-d"}) {
        const Condition& cond = rep.at(name);
        r.lemma_verdicts = r.lemma_verdicts && cond.verdict == Verdict::kPass;
        r.lemma = std::max(r.lemma, cond.residual);
      }
      const Fb2Pair p = construct_fb2_pair(c.u, t, c.t_tilde);
      r.fb2_f = std::max(r.fb2_f, p.residuals.at("fb2-F").residual);
      r.fb2_ft = std::max(r.fb2_ft, p.residuals.at("fb2-Ftilde").residual);
      r.similarity = std::max(r.similarity, p.residuals.at("similarity").residual);
    }
    return r;
  }();
  return result;
}

Outcome ac3() {
  const NormalTrials& r = normal_trials();
  const bool pass = r.unitarity <= 1e-10 && r.conjugation <= 1e-9 && r.lemma <= 1e-9 && r.lemma_verdicts;
  return {pass, "||UU*-I|| " + sci(r.unitarity) + " (<= 1e-10), ||UTU*-T~|| " + sci(r.conjugation) +
                    " (<= 1e-9), conditions " + sci(r.lemma) + " (<= 1e-9)"};
}

Outcome ac4() {
  const NormalTrials& r = normal_trials();
  const bool pass = r.fb2_f <= 1e-9 && r.fb2_ft <= 1e-9 && r.similarity <= 1e-9;
  return {pass, "T~0 S0 = S0 T0 " + sci(r.fb2_f) + ", T1 S1 = S1 T~1 " + sci(r.fb2_ft) + ", ZF = F~Z " +
                    sci(r.similarity) + " (<= 1e-9)"};
}

Outcome ac5() {
  const ModelOperator t0 = shift_from_kernel(bergman_coefficients(1, 20));
  const ModelOperator t1 = shift_from_kernel(bergman_coefficients(2, 20));
  double worst_theta = 0.0, worst_intertwine = 0.0;
  bool accepted = true;
  for (int k = 0; k < 16; ++k) {
    const double theta0 = 2.0 * std::numbers::pi * (k + 0.25) / 16.0;
    const ThetaCheck r = theta_intertwiner_check(t0, t1, std::polar(1.0, theta0) * identity(20), 1e-10);
    accepted = accepted && r.accepted;
    double d = std::fmod(std::abs(r.theta - theta0), 2.0 * std::numbers::pi);
    d = std::min(d, 2.0 * std::numbers::pi - d);
    worst_theta = std::max(worst_theta, d);
    worst_intertwine = std::max(worst_intertwine, r.intertwining_residual);
  }
  const bool pass = accepted && worst_theta <= 1e-10 && worst_intertwine <= 1e-10;
  return {pass, "theta error " + sci(worst_theta) + ", ||UT-T~U|| " + sci(worst_intertwine) + " (<= 1e-10)"};
}

Matrix diag(std::initializer_list<Complex> v) {
  Matrix m = Matrix::Zero(static_cast<Eigen::Index>(v.size()), static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (Complex c : v) {
    m(i, i) = c;
    ++i;
  }
  return m;
}

Matrix jordan(int n, Complex lambda) {
  Matrix m = lambda * identity(n);
  for (int i = 0; i + 1 < n; ++i) m(i, i + 1) = 1.0;
  return m;
}

oracle::Dense dense(const Matrix& m) {
  oracle::Dense d(static_cast<std::size_t>(m.rows()), std::vector<oracle::cplx>(static_cast<std::size_t>(m.cols())));
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) d[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = m(i, j);
  return d;
}

Outcome ac6() {
  Matrix mixed = Matrix::Zero(4, 4);
  mixed.topLeftCorner(3, 3) = jordan(3, 1.0);
  mixed(3, 3) = 1.0;
  const std::vector<Matrix> catalogue{
      diag({1.0, 2.0, 3.0}), diag({1.0, 1.0, 2.0}), diag({Complex(0, 1), Complex(0, -1)}),
      jordan(2, 0.0),        jordan(3, 0.5),        jordan(4, 0.0),
      diag({5.0, 6.0}),      diag({0.5, 0.5, 0.5, 0.5}), mixed};
  int agree = 0, total = 0;
  for (const Matrix& a : catalogue)
    for (const Matrix& c : catalogue) {
      ++total;
      agree += sylvester_kernel(a, c).dimension == oracle::intertwiner_nullity(dense(a), dense(c)) ? 1 : 0;
    }
  return {agree == total, std::to_string(agree) + "/" + std::to_string(total) + " pairs agree"};
}

Outcome ac7() {
  const std::vector<double> radii{0.9, 0.99, 0.999};
  const int n = required_truncation(0.999);
  const DiagonalKernel k0 = bergman_coefficients(1, n), k1 = bergman_coefficients(2, n);
  const DiagonalKernel ks = separator_kernel(k0, k1);
  bool pass = true;
  std::string detail = "N = " + std::to_string(n);
  double closed = 0.0;
  for (int i = 0; i < 2; ++i) {
    const auto s = diagonal_ratio(ks, i == 0 ? k0 : k1, radii);
    pass = pass && s[0].ratio > s[1].ratio && s[1].ratio > s[2].ratio && s[2].ratio <= 0.05;
    detail += ", Ks/K" + std::to_string(i) + " at 0.999 " + sci(s[2].ratio);
    if (i == 0)
      for (const auto& v : s) {
        const double x = v.radius * v.radius;
        closed = std::max(closed, std::abs(v.ratio - (1.0 - x) * std::log(1.0 / (1.0 - x)) / x));
      }
  }
  pass = pass && closed <= 1e-6;
  return {pass, detail + " (<= 0.05), closed form " + sci(closed) + " (<= 1e-6)"};
}

Outcome ac8() {
  Rng rng(8080);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double worst_block = 0.0, worst_involution = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    const UpperTriangularModel m = assemble_model(model_from_matrix(random_scaled(4, 0.5, rng)),
                                                  model_from_matrix(random_scaled(4, 0.5, rng)),
                                                  random_scaled(4, 0.5, rng));
    const Complex a = std::polar(0.7 * unit(rng), 2.0 * std::numbers::pi * unit(rng));
    const double phase = 2.0 * std::numbers::pi * unit(rng);
    const double scale = operator_norm(m.t);
    const ConditionReport r = mobius_block_identity_check(m, MobiusMap(a, phase), 1e-10 * scale);
    worst_block = std::max(worst_block, r.at("block-identity").residual / scale);
    const MobiusMap inv(a);
    worst_involution = std::max(worst_involution, fro(inv(inv(m.t)) - m.t));
  }
  const bool pass = worst_block <= 1e-10 && worst_involution <= 1e-9;
  return {pass, "block identity " + sci(worst_block) + " ||T|| (<= 1e-10), involution " + sci(worst_involution) +
                    " (<= 1e-9)"};
}

CurvatureField rank2_curvature(const PolynomialFrame& frame, const DiskGrid& grid) {
  return curvature(gram_metric(frame_field(frame, grid)), CurvatureMethod::kSeries, {{1, 0}, {0, 1}});
}

Outcome ac9() {
  const DiskGrid grid = DiskGrid::polar({0.1, 0.2, 0.3, 0.4, 0.5}, 16);
  Rng rng(9090);
  auto model = [&](int n0, int n1) {
    return assemble_model(shift_from_kernel(bergman_coefficients(n0, 40)),
                          shift_from_kernel(bergman_coefficients(n1, 40)), random_scaled(40, 0.5, rng));
  };
  const PolynomialFrame fa = model_frame(model(1, 2));
  const CurvatureField ka = rank2_curvature(fa, grid);
  const IsometryCheck same = curvature_isometry_check(ka, rank2_curvature(fa.recombined(random_unitary(2, rng)), grid), 1e-8);
  const IsometryCheck other = curvature_isometry_check(ka, rank2_curvature(model_frame(model(2, 3)), grid), 1e-8);
  int certified = 0;
  for (const IsometryPoint& p : other.points) certified += !p.found && p.spectrum_mismatch ? 1 : 0;
  const double n = static_cast<double>(grid.size());
  const bool pass = same.found_count == static_cast<int>(grid.size()) && same.max_residual <= 1e-8 &&
                    certified >= 0.9 * n;
  return {pass, "rotated found " + std::to_string(same.found_count) + "/" + std::to_string(grid.size()) +
                    " residual " + sci(same.max_residual) + " (<= 1e-8), independent certified not-found " +
                    std::to_string(certified) + "/" + std::to_string(grid.size()) + " (>= 90%)"};
}

Outcome ac10() {
  Rng rng(1010);
  double worst = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 2 + trial % 7;
    const UpperTriangularModel m = assemble_model(model_from_matrix(random_scaled(n, 0.5, rng)),
                                                  model_from_matrix(random_scaled(n, 0.5, rng)),
                                                  random_scaled(n, 1.0 + trial % 3, rng));
    const SimilaritySplit s = similarity_split(m);
    worst = std::max(worst, s.residual / operator_norm(m.t));
  }
  return {worst <= 1e-12, "||WT-(T0+T1)W|| " + sci(worst) + " ||T|| (<= 1e-12)"};
}

Outcome ac11() {
  // K1 = bergman(2), K0 = 4 K1 so t0 = 2 t1; X = diagonal phases, Y = X^*.
  const DiagonalKernel k1 = bergman_coefficients(2, 40);
  const DiagonalKernel k0 = k1.scaled(4.0);
  Rng rng(2718);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  Vector phases(40);
  for (Eigen::Index i = 0; i < 40; ++i) phases(i) = std::polar(1.0, angle(rng));
  const Matrix x = phases.asDiagonal();
  const ConditionReport r = main3_verifier(k0, k1, separator_kernel(k0, k1), x, x.adjoint(),
                                           DiskGrid::default_polar(), 1e-8);
  const double hyp = std::max(r.at("hyp-adjoint").residual, r.at("hyp-norm").residual);
  const Condition& kt = r.at("kernel-transform");
  const bool pass = hyp <= 1e-8 && kt.residual <= 1e-8 && kt.note.find("64 ") != std::string::npos;
  return {pass, "hypotheses " + sci(hyp) + ", kernel transform " + sci(kt.residual) + " over " + kt.note +
                    " (<= 1e-8)"};
}

}  // namespace

int main() {
  criterion("AC1", "Bergman curvature", ac1);
  criterion("AC2", "frame lemma eigen-residuals", ac2);
  criterion("AC3", "normal-X unitary construction", ac3);
  criterion("AC4", "FB2 pair and similarity", ac4);
  criterion("AC5", "e^{i theta} intertwiner", ac5);
  criterion("AC6", "Sylvester kernel vs dense oracle", ac6);
  criterion("AC7", "separator kernel", ac7);
  criterion("AC8", "Mobius block identity", ac8);
  criterion("AC9", "curvature isometry", ac9);
  criterion("AC10", "similarity split", ac10);
  criterion("AC11", "kernel hypotheses and transform", ac11);
  std::printf("%d/11 criteria passed\n", 11 - failures);
  return failures == 0 ? 0 : 1;
}
