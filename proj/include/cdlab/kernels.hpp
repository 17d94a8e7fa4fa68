#pragma once

#include <string>
#include <vector>

#include "cdlab/linalg.hpp"

namespace cdlab {

/// K(z, w) = sum_k a_k z^k conj(w)^k on the unit disk, truncated at N = coefficients.size().
///
/// The monomials e_k = sqrt(a_k) z^k form an orthonormal basis of the
/// reproducing kernel Hilbert space; every matrix in the library is written
/// in this basis.
class DiagonalKernel {
 public:
  DiagonalKernel(std::vector<double> coefficients, std::string label);

  const std::vector<double>& coefficients() const noexcept { return coefficients_; }
  int truncation() const noexcept { return static_cast<int>(coefficients_.size()); }
  const std::string& label() const noexcept { return label_; }
  double operator[](int k) const { return coefficients_.at(static_cast<std::size_t>(k)); }

  /// Coefficientwise multiple c*K, c > 0.
  DiagonalKernel scaled(double factor) const;

 private:
  std::vector<double> coefficients_;
  std::string label_;
};

/// Holomorphic section t(w) = K(., conj(w)) in the orthonormal basis: t_k = sqrt(a_k) w^k.
struct SectionVector {
  Complex point;
  Vector coordinates;
};

/// (1 - z conj(w))^{-n}: a_k = binomial(n + k - 1, k).
DiagonalKernel bergman_coefficients(int n, int truncation);

Complex evaluate_kernel(const DiagonalKernel& kernel, Complex z, Complex w);

SectionVector section_vector(const DiagonalKernel& kernel, Complex w);

/// Upper bound on the omitted tail sum_{k >= N} a_k |w|^{2k} of K(w, w). Valid when
/// the ratios a_{k+1}/a_k are non-increasing (every Bergman kernel), extrapolating
/// with the last stored ratio rho: a_{N-1} rho |w|^{2N} / (1 - rho |w|^2).
double truncation_tail(const DiagonalKernel& kernel, double radius);

/// Smallest N with radius^(2N) < tail_tol.
int required_truncation(double radius, double tail_tol = 1e-12);

struct RatioSample {
  double radius;
  double k0;       // K0(r, r)
  double k1;       // K1(r, r)
  double ratio;    // k0 / k1
  double inverse;  // k1 / k0
};

/// Boundary behaviour of K0(r, r) / K1(r, r). Both orders are reported because
/// which of the two must vanish depends on the direction of the intertwiner.
std::vector<RatioSample> diagonal_ratio(const DiagonalKernel& k0, const DiagonalKernel& k1,
                                        const std::vector<double>& radii);

/// s_n = min(alpha_n, beta_n) / (n + 1), so s_n/alpha_n and s_n/beta_n tend to zero.
DiagonalKernel separator_kernel(const DiagonalKernel& k0, const DiagonalKernel& k1);

}  // namespace cdlab
