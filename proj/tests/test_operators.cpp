#include <gtest/gtest.h>

#include <cmath>

#include "cdlab/error.hpp"
#include "cdlab/operators.hpp"
#include "oracles.hpp"

using namespace cdlab;

namespace {

oracle::Dense dense(const Matrix& m) {
  oracle::Dense d(m.rows(), std::vector<oracle::cplx>(m.cols()));
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) d[i][j] = m(i, j);
  return d;
}

Matrix diag(std::initializer_list<Complex> v) {
  Vector d(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (Complex c : v) d(i++) = c;
  return d.asDiagonal();
}

Matrix jordan(int n, Complex lambda) {
  Matrix j = lambda * identity(n);
  for (int i = 0; i + 1 < n; ++i) j(i, i + 1) = 1.0;
  return j;
}

}  // namespace

TEST(Operators, ShiftWeights) {
  const ModelOperator t = shift_from_kernel(bergman_coefficients(2, 4));
  // entry (k, k+1) = sqrt(a_k / a_{k+1}) with a_k = k + 1
  EXPECT_DOUBLE_EQ(t.matrix(0, 1).real(), std::sqrt(0.5));
  EXPECT_DOUBLE_EQ(t.matrix(1, 2).real(), std::sqrt(2.0 / 3.0));
  EXPECT_DOUBLE_EQ(t.matrix(2, 3).real(), std::sqrt(0.75));
  EXPECT_NEAR(fro(t.matrix) * fro(t.matrix), 0.5 + 2.0 / 3.0 + 0.75, 1e-15);
  EXPECT_THROW(shift_from_kernel(bergman_coefficients(2, 1)), Error);
}

TEST(Operators, SectionIsEigenvectorUpToLastTerm) {
  // (T - w) t(w) = -sqrt(a_{N-1}) w^N e_{N-1}
  const auto k = bergman_coefficients(3, 12);
  const ModelOperator t = shift_from_kernel(k);
  const Complex w{0.3, -0.4};
  const Vector s = section_vector(k, w).coordinates;
  const Vector r = t.matrix * s - w * s;
  for (int i = 0; i + 1 < 12; ++i) EXPECT_LT(std::abs(r(i)), 1e-15);
  EXPECT_NEAR(std::abs(r(11) + std::sqrt(k[11]) * std::pow(w, 12)), 0.0, 1e-15);
}

TEST(Operators, AssembleModel) {
  Rng rng(3);
  const ModelOperator t0 = model_from_matrix(random_gaussian(3, 3, rng));
  const ModelOperator t1 = model_from_matrix(random_gaussian(3, 3, rng));
  const Matrix x = random_gaussian(3, 3, rng);
  const UpperTriangularModel m = assemble_model(t0, t1, x);
  EXPECT_EQ(m.t.rows(), 6);
  EXPECT_LT(fro(m.off_diagonal() - (x * t1.matrix - t0.matrix * x)), 1e-14);
  EXPECT_EQ(fro(m.t.bottomLeftCorner(3, 3)), 0.0);
  EXPECT_THROW(assemble_model(t0, model_from_matrix(identity(4)), x), Error);
  EXPECT_THROW(model_from_matrix(Matrix::Zero(2, 3)), Error);
}

TEST(Operators, Fb2Membership) {
  const ModelOperator t0 = shift_from_kernel(bergman_coefficients(1, 8));
  const ModelOperator t1 = shift_from_kernel(bergman_coefficients(2, 8));
  EXPECT_TRUE(fb2_membership(t0, t1, Matrix::Zero(8, 8), 1e-12).member);
  EXPECT_TRUE(fb2_membership(t0, t0, identity(8), 1e-12).member);
  // X = p(T0) with T0 = T1: polynomials in T0 commute with it.
  const Matrix p = identity(8) + 0.5 * t0.matrix * t0.matrix;
  EXPECT_TRUE(fb2_membership(t0, t0, p, 1e-12).member);
  Rng rng(11);
  const auto r = fb2_membership(t0, t1, random_scaled(8, 0.5, rng), 1e-10);
  EXPECT_FALSE(r.member);
  EXPECT_GT(r.residual, r.threshold);
  EXPECT_THROW(fb2_membership(t0, t1, identity(8), 0.0), Error);
}

TEST(Operators, SylvesterMatchesEliminationOracle) {
  const std::vector<Matrix> catalogue{
      diag({1.0, 2.0, 3.0}),
      diag({1.0, 1.0, 2.0}),
      diag({Complex(0, 1), Complex(0, -1)}),
      jordan(2, 0.0),
      jordan(3, 0.5),
      jordan(4, 0.0),
      diag({5.0, 6.0}),
      diag({0.5, 0.5, 0.5, 0.5}),
      [] {
        Matrix m = jordan(3, 1.0);
        m.conservativeResize(4, 4);
        m.row(3).setZero();
        m.col(3).setZero();
        m(3, 3) = 1.0;
        return m;
      }(),
  };
  int pairs = 0;
  for (const Matrix& a : catalogue) {
    for (const Matrix& c : catalogue) {
      const IntertwinerSpace s = sylvester_kernel(a, c);
      EXPECT_EQ(s.dimension, oracle::intertwiner_nullity(dense(a), dense(c)))
          << "A=\n" << a << "\nC=\n" << c;
      EXPECT_LT(s.residual, 1e-10);
      ++pairs;
    }
  }
  EXPECT_EQ(pairs, 81);
}

TEST(Operators, SylvesterFrozenDimensions) {
  // Commutant dimensions: sum of (2k - 1) * block sizes for Jordan structure.
  EXPECT_EQ(sylvester_kernel(jordan(4, 0.0), jordan(4, 0.0)).dimension, 4);
  EXPECT_EQ(sylvester_kernel(diag({1.0, 1.0, 2.0}), diag({1.0, 1.0, 2.0})).dimension, 5);
  EXPECT_EQ(sylvester_kernel(diag({1.0, 2.0}), diag({3.0, 4.0})).dimension, 0);
  // Rectangular intertwiners between different sizes.
  EXPECT_EQ(sylvester_kernel(jordan(3, 0.0), jordan(2, 0.0)).dimension, 2);
}

TEST(Operators, SylvesterBasisIsOrthonormal) {
  const IntertwinerSpace s = sylvester_kernel(diag({1.0, 1.0, 2.0}), diag({1.0, 1.0, 2.0}));
  for (std::size_t i = 0; i < s.basis.size(); ++i)
    for (std::size_t j = 0; j < s.basis.size(); ++j)
      EXPECT_NEAR(std::abs(fro_inner(s.basis[i], s.basis[j])), i == j ? 1.0 : 0.0, 1e-12);
}

TEST(Operators, SimilaritySplit) {
  Rng rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    const UpperTriangularModel m =
        assemble_model(model_from_matrix(random_scaled(5, 0.5, rng)),
                       model_from_matrix(random_scaled(5, 0.5, rng)), random_scaled(5, 0.5, rng));
    const SimilaritySplit s = similarity_split(m);
    EXPECT_LE(s.residual, 1e-12 * fro(m.t));
    EXPECT_LT(fro(s.w * s.w_inv - identity(10)), 1e-15);
    EXPECT_LT(fro(s.w_inv * s.d * s.w - m.t), 1e-12 * fro(m.t));
  }
}

TEST(Operators, MobiusOnDiagonalMatchesScalarMap) {
  const Complex a{0.3, 0.2};
  const double phase = 0.9;
  const Matrix d = diag({0.1, Complex(-0.2, 0.3), Complex(0.0, -0.5)});
  const Matrix f = apply_mobius(d, a, phase);
  for (int i = 0; i < 3; ++i) {
    const Complex z = d(i, i);
    const Complex expect = std::polar(1.0, phase) * (a - z) / (1.0 - std::conj(a) * z);
    EXPECT_NEAR(std::abs(f(i, i) - expect), 0.0, 1e-15);
  }
  // a = 0, phase = 0 is z -> -z.
  EXPECT_LT(fro(apply_mobius(d, 0.0, 0.0) + d), 1e-16);
}

TEST(Operators, MobiusSingularResolvent) {
  // conj(a) A has eigenvalue 1 when A = (1/conj(a)) I.
  const Complex a{0.5, 0.0};
  try {
    apply_mobius(2.0 * identity(2), a, 0.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kSingularity);
  }
  EXPECT_THROW(apply_mobius(identity(2), 1.0, 0.0), Error);
}
