#pragma once

// Independent reference computations for the tests. Nothing here calls the
// library's numerical routines.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <vector>

namespace oracle {

using cplx = std::complex<double>;

/// Truncated Taylor series in one real variable: c[k] = f^(k)(x0) / k!.
template <int K>
struct Taylor {
  std::array<double, K + 1> c{};

  static Taylor variable(double x0) {
    Taylor t;
    t.c[0] = x0;
    if (K >= 1) t.c[1] = 1.0;
    return t;
  }
  static Taylor constant(double v) {
    Taylor t;
    t.c[0] = v;
    return t;
  }

  double derivative(int k) const {
    double f = 1.0;
    for (int i = 2; i <= k; ++i) f *= i;
    return c[k] * f;
  }

  friend Taylor operator+(Taylor a, const Taylor& b) {
    for (int i = 0; i <= K; ++i) a.c[i] += b.c[i];
    return a;
  }
  friend Taylor operator-(Taylor a, const Taylor& b) {
    for (int i = 0; i <= K; ++i) a.c[i] -= b.c[i];
    return a;
  }
  friend Taylor operator*(const Taylor& a, const Taylor& b) {
    Taylor r;
    for (int i = 0; i <= K; ++i)
      for (int j = 0; i + j <= K; ++j) r.c[i + j] += a.c[i] * b.c[j];
    return r;
  }
  friend Taylor operator*(double s, Taylor a) {
    for (auto& v : a.c) v *= s;
    return a;
  }
};

/// log of a series with nonzero constant term: (log u)' = u'/u solved termwise.
template <int K>
Taylor<K> log(const Taylor<K>& u) {
  Taylor<K> r;
  r.c[0] = std::log(u.c[0]);
  for (int k = 1; k <= K; ++k) {
    double s = k * u.c[k];
    for (int j = 1; j < k; ++j) s -= j * r.c[j] * u.c[k - j];
    r.c[k] = s / (k * u.c[0]);
  }
  return r;
}

/// For a radial rank-1 metric f(|w|^2) with g = log f: K = -(g' + x g''), and
/// dbar d of a radial function q(x) equals q'(x) + x q''(x).
struct RadialCurvature {
  double k;        // K(w)
  double k_w_abs;  // |K_w| = |k'(x)| |w|
  double k_wwbar;  // K_{w wbar}
};

inline RadialCurvature radial_curvature(const std::function<Taylor<4>(const Taylor<4>&)>& log_f,
                                        double x) {
  const Taylor<4> g = log_f(Taylor<4>::variable(x));
  const double g1 = g.derivative(1), g2 = g.derivative(2), g3 = g.derivative(3),
               g4 = g.derivative(4);
  const double k = -(g1 + x * g2);
  const double k1 = -(2.0 * g2 + x * g3);
  const double k2 = -(3.0 * g3 + x * g4);
  return {k, std::abs(k1) * std::sqrt(x), k1 + x * k2};
}

/// log (1 - x)^{-n}.
inline std::function<Taylor<4>(const Taylor<4>&)> bergman_log(int n) {
  return [n](const Taylor<4>& x) { return -double(n) * log(Taylor<4>::constant(1.0) - x); };
}

/// log sum_k a_k x^k for a finite coefficient list.
inline std::function<Taylor<4>(const Taylor<4>&)> series_log(std::vector<double> a) {
  return [a](const Taylor<4>& x) {
    Taylor<4> s;
    for (auto it = a.rbegin(); it != a.rend(); ++it) s = s * x + Taylor<4>::constant(*it);
    return log(s);
  };
}

using Dense = std::vector<std::vector<cplx>>;

/// Rank by Gaussian elimination with partial pivoting; pivots below
/// rel_tol * (largest entry) count as zero.
inline int rank(Dense m, double rel_tol = 1e-9) {
  const std::size_t rows = m.size(), cols = rows ? m[0].size() : 0;
  double scale = 0.0;
  for (const auto& r : m)
    for (cplx v : r) scale = std::max(scale, std::abs(v));
  if (scale == 0.0) return 0;
  int rk = 0;
  std::size_t row = 0;
  for (std::size_t col = 0; col < cols && row < rows; ++col) {
    std::size_t piv = row;
    for (std::size_t i = row; i < rows; ++i)
      if (std::abs(m[i][col]) > std::abs(m[piv][col])) piv = i;
    if (std::abs(m[piv][col]) <= rel_tol * scale) continue;
    std::swap(m[piv], m[row]);
    for (std::size_t i = row + 1; i < rows; ++i) {
      const cplx f = m[i][col] / m[row][col];
      for (std::size_t j = col; j < cols; ++j) m[i][j] -= f * m[row][j];
    }
    ++row;
    ++rk;
  }
  return rk;
}

/// dim {B : A B = B C}: images of the matrix units E_ij under B -> A B - B C,
/// flattened as columns, then n*m - rank.
inline int intertwiner_nullity(const Dense& a, const Dense& c) {
  const std::size_t m = a.size(), n = c.size();
  Dense map(m * n, std::vector<cplx>(m * n));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      // (A E_ij)_{rk} = A_{ri} [k == j]; (E_ij C)_{rk} = [r == i] C_{jk}
      const std::size_t col = i * n + j;
      for (std::size_t r = 0; r < m; ++r) map[r * n + j][col] += a[r][i];
      for (std::size_t k = 0; k < n; ++k) map[i * n + k][col] -= c[j][k];
    }
  }
  return static_cast<int>(m * n) - rank(map);
}

}  // namespace oracle
