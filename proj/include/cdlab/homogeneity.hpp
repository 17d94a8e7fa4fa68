#pragma once

#include <string>
#include <vector>

#include "cdlab/equivalence.hpp"
#include "cdlab/linalg.hpp"
#include "cdlab/operators.hpp"
#include "cdlab/report.hpp"

namespace cdlab {

/// phi(z) = e^{i phase} (a - z) / (1 - conj(a) z), |a| < 1.
class MobiusMap {
 public:
  MobiusMap(Complex a, double phase = 0.0);

  Complex a() const noexcept { return a_; }
  double phase() const noexcept { return phase_; }

  Complex operator()(Complex z) const;
  Matrix operator()(const Matrix& op) const;

  std::string describe() const;

 private:
  Complex a_;
  double phase_;
};

/// |a| in {0.2, 0.5, 0.7} times four directions, phase 0.
std::vector<MobiusMap> default_mobius_sample();

/// ||phi(T) - [[phi(T0), X phi(T1) - phi(T0) X], [0, phi(T1)]]||, plus the same
/// block identity for T^n, n in {2, 3, 5}.
ConditionReport mobius_block_identity_check(const UpperTriangularModel& model,
                                            const MobiusMap& phi, double tol);

struct WitnessEntry {
  MobiusMap phi;
  Matrix u0;
  Matrix u1;
};

/// Per sampled map, unitaries with U0 T0 U0^* = phi(T0) and U1 T1 U1^* = phi(T1).
class HomogeneityWitness {
 public:
  /// Throws numeric-error when either unitary is off by more than 1e-10.
  void add(WitnessEntry entry);

  const std::vector<WitnessEntry>& entries() const noexcept { return entries_; }
  std::size_t size() const noexcept { return entries_.size(); }

 private:
  std::vector<WitnessEntry> entries_;
};

/// Per map: both conjugations, U0 X = X U1, and ||(U0 + U1) T - phi(T) (U0 + U1)||.
ConditionReport homogeneity_condition_check(const UpperTriangularModel& model,
                                            const HomogeneityWitness& witness, double tol);

/// Conditions for U T = phi(T) U: (1) the similarity of the corner blocks,
/// (2) U00 = X U10 = U01 X^* and -U11 = X^* U01 = U10 X,
/// (3) (I + XX^*)^{-1} = (I + X^*X)^{-1} = U10^* U10, and the end-to-end relation.
ConditionReport thm45_condition_check(const BlockUnitary& u, const UpperTriangularModel& model,
                                      const MobiusMap& phi, double tol);

}  // namespace cdlab
