#include "cdlab/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "cdlab/error.hpp"

namespace cdlab {
namespace {

void require_in_disk(Complex p, const char* what) {
  if (!(std::abs(p) < 1.0)) {
    std::ostringstream msg;
    msg << what << " = " << p << " is not in the open unit disk";
    fail(ErrorKind::kDomain, msg.str());
  }
}

}  // namespace

DiagonalKernel::DiagonalKernel(std::vector<double> coefficients, std::string label)
    : coefficients_(std::move(coefficients)), label_(std::move(label)) {
  if (coefficients_.empty()) fail(ErrorKind::kInvalidArgument, "kernel truncation must be >= 1");
  for (std::size_t k = 0; k < coefficients_.size(); ++k) {
    if (!(coefficients_[k] > 0.0) || !std::isfinite(coefficients_[k])) {
      std::ostringstream msg;
      msg << "kernel coefficient a_" << k << " = " << coefficients_[k] << " is not a positive real";
      fail(ErrorKind::kInvalidArgument, msg.str());
    }
  }
}

DiagonalKernel DiagonalKernel::scaled(double factor) const {
  std::vector<double> c = coefficients_;
  for (double& a : c) a *= factor;
  std::ostringstream label;
  label << factor << "*" << label_;
  return {std::move(c), label.str()};
}

DiagonalKernel bergman_coefficients(int n, int truncation) {
  if (n < 1 || truncation < 1) {
    fail(ErrorKind::kInvalidArgument, "bergman kernel needs n >= 1 and N >= 1");
  }
  std::vector<double> a(static_cast<std::size_t>(truncation));
  a[0] = 1.0;
  for (int k = 0; k + 1 < truncation; ++k) {
    a[k + 1] = a[k] * static_cast<double>(n + k) / static_cast<double>(k + 1);
  }
  return {std::move(a), "bergman(" + std::to_string(n) + ")"};
}

Complex evaluate_kernel(const DiagonalKernel& kernel, Complex z, Complex w) {
  require_in_disk(z, "z");
  require_in_disk(w, "w");
  const Complex x = z * std::conj(w);
  // Horner from the top coefficient down.
  Complex sum = 0.0;
  for (int k = kernel.truncation() - 1; k >= 0; --k) sum = sum * x + kernel[k];
  return sum;
}

SectionVector section_vector(const DiagonalKernel& kernel, Complex w) {
  require_in_disk(w, "w");
  Vector t(kernel.truncation());
  Complex power = 1.0;
  for (int k = 0; k < kernel.truncation(); ++k) {
    t(k) = std::sqrt(kernel[k]) * power;
    power *= w;
  }
  return {w, std::move(t)};
}

double truncation_tail(const DiagonalKernel& kernel, double radius) {
  const double x = radius * radius;
  const int n = kernel.truncation();
  const double rho = n >= 2 ? std::max(kernel[n - 1] / kernel[n - 2], 1.0) : 1.0;
  if (!(rho * x < 1.0)) return std::numeric_limits<double>::infinity();
  // a_{N+j} <= a_{N-1} rho^{j+1}, summed geometrically.
  return kernel[n - 1] * rho * std::pow(x, n) / (1.0 - rho * x);
}

int required_truncation(double radius, double tail_tol) {
  if (radius <= 0.0) return 1;
  if (!(radius < 1.0)) fail(ErrorKind::kDomain, "radius must lie in [0, 1)");
  const double n = std::log(tail_tol) / (2.0 * std::log(radius));
  return static_cast<int>(std::floor(n)) + 1;
}

std::vector<RatioSample> diagonal_ratio(const DiagonalKernel& k0, const DiagonalKernel& k1,
                                        const std::vector<double>& radii) {
  std::vector<RatioSample> out;
  if (radii.empty()) return out;
  for (std::size_t i = 0; i < radii.size(); ++i) {
    if (!(radii[i] >= 0.0 && radii[i] < 1.0)) fail(ErrorKind::kDomain, "radii must lie in [0, 1)");
    if (i > 0 && !(radii[i] > radii[i - 1])) {
      fail(ErrorKind::kInvalidArgument, "radii must be strictly increasing");
    }
  }
  const double r_max = radii.back();
  const int needed = required_truncation(r_max);
  for (const DiagonalKernel* k : {&k0, &k1}) {
    if (std::pow(r_max, 2.0 * k->truncation()) >= 1e-12) {
      std::ostringstream msg;
      msg << "kernel " << k->label() << " truncated at N = " << k->truncation()
          << " is too short for radius " << r_max << "; need N >= " << needed;
      fail(ErrorKind::kPrecision, msg.str());
    }
  }
  out.reserve(radii.size());
  for (double r : radii) {
    const double v0 = evaluate_kernel(k0, r, r).real();
    const double v1 = evaluate_kernel(k1, r, r).real();
    out.push_back({r, v0, v1, v0 / v1, v1 / v0});
  }
  return out;
}

DiagonalKernel separator_kernel(const DiagonalKernel& k0, const DiagonalKernel& k1) {
  if (k0.truncation() != k1.truncation()) {
    fail(ErrorKind::kInvalidArgument, "separator kernel needs equal truncations");
  }
  std::vector<double> s(static_cast<std::size_t>(k0.truncation()));
  for (int n = 0; n < k0.truncation(); ++n) {
    s[n] = std::min(k0[n], k1[n]) / static_cast<double>(n + 1);
  }
  return {std::move(s), "separator(" + k0.label() + "," + k1.label() + ")"};
}

}  // namespace cdlab
