#include <gtest/gtest.h>

#include <cmath>

#include "cdlab/jet.hpp"

using namespace cdlab;

namespace {

// Jet at w0 of f(w, wbar) = sum c_{ab} w^a wbar^b.
MatrixJet poly_jet(const std::vector<std::tuple<int, int, Complex>>& terms, Complex w0, int order) {
  MatrixJet j(order, 1, 1);
  for (int p = 0; p + 0 <= order; ++p) {
    for (int q = 0; p + q <= order; ++q) {
      Complex s = 0.0;
      for (auto [a, b, c] : terms) {
        if (a < p || b < q) continue;
        double fa = 1.0, fb = 1.0;
        for (int k = 0; k < p; ++k) fa *= a - k;
        for (int k = 0; k < q; ++k) fb *= b - k;
        s += c * fa * fb * std::pow(w0, a - p) * std::pow(std::conj(w0), b - q);
      }
      j.at(p, q)(0, 0) = s;
    }
  }
  return j;
}

}  // namespace

TEST(Jet, ProductRule) {
  const Complex w0{0.3, -0.2};
  const auto f = poly_jet({{1, 0, 1.0}, {0, 1, 2.0}}, w0, 3);       // w + 2 wbar
  const auto g = poly_jet({{2, 1, 1.0}, {0, 0, Complex(0, 1)}}, w0, 3);  // w^2 wbar + i
  // product: w^3 wbar + 2 w^2 wbar^2 + i w + 2i wbar
  const auto expect =
      poly_jet({{3, 1, 1.0}, {2, 2, 2.0}, {1, 0, Complex(0, 1)}, {0, 1, Complex(0, 2)}}, w0, 3);
  const auto fg = f * g;
  for (int p = 0; p <= 3; ++p)
    for (int q = 0; p + q <= 3; ++q)
      EXPECT_NEAR(std::abs(fg.at(p, q)(0, 0) - expect.at(p, q)(0, 0)), 0.0, 1e-14) << p << "," << q;
}

TEST(Jet, InverseAndDerivatives) {
  const Complex w0{0.2, 0.1};
  const auto f = poly_jet({{0, 0, 2.0}, {1, 1, 1.0}, {2, 0, 0.5}}, w0, 4);
  const auto one = f * f.inverse();
  EXPECT_NEAR(std::abs(one.at(0, 0)(0, 0) - 1.0), 0.0, 1e-14);
  for (int p = 0; p <= 4; ++p)
    for (int q = 0; p + q <= 4; ++q)
      if (p + q > 0) EXPECT_NEAR(std::abs(one.at(p, q)(0, 0)), 0.0, 1e-13);
  const auto df = f.d();
  EXPECT_EQ(df.order(), 3);
  EXPECT_EQ(df.at(1, 1)(0, 0), f.at(2, 1)(0, 0));
  EXPECT_EQ(f.dbar().at(2, 0)(0, 0), f.at(2, 1)(0, 0));
}

TEST(Jet, CurvatureOfConstantMetricIsZero) {
  MatrixJet h(3, 2, 2);
  h.at(0, 0) << 2.0, Complex(0.5, 0.1), Complex(0.5, -0.1), 1.0;
  const auto k = curvature_jet(h);
  for (int p = 0; p <= k.order(); ++p)
    for (int q = 0; p + q <= k.order(); ++q) EXPECT_EQ(fro(k.at(p, q)), 0.0);
  EXPECT_EQ(fro(covariant_from_metric_jet(h, 1, 0)), 0.0);
}

TEST(Jet, RadialScalarCurvature) {
  // h = 1/(1 - |w|^2) truncated at high degree: K(w0) = -1/(1-|w0|^2)^2.
  const Complex w0{0.3, 0.4};
  std::vector<std::tuple<int, int, Complex>> terms;
  for (int k = 0; k < 120; ++k) terms.emplace_back(k, k, 1.0);
  const auto h = poly_jet(terms, w0, 3);
  const double x = std::norm(w0);
  EXPECT_NEAR(covariant_from_metric_jet(h, 0, 0)(0, 0).real(), -1.0 / ((1 - x) * (1 - x)), 1e-12);
  EXPECT_THROW(covariant_from_metric_jet(h, 1, 1), std::exception);
}
