#pragma once

#include <string>
#include <vector>

namespace cdlab {

enum class Verdict { kPass, kFail, kIndeterminate };

std::string to_string(Verdict v);

struct Condition {
  std::string name;
  double residual = 0.0;
  double tolerance = 0.0;
  Verdict verdict = Verdict::kFail;
  std::string note;
};

/// Named residuals with tolerances. A condition passes iff residual <= tolerance;
/// indeterminate conditions (skipped for a stated reason) never pass.
/// Informational entries carry no verdict and do not affect passed().
class ConditionReport {
 public:
  explicit ConditionReport(std::string name = {}) : name_(std::move(name)) {}

  const std::string& name() const noexcept { return name_; }

  Condition& add(std::string name, double residual, double tolerance, std::string note = {});
  Condition& add_indeterminate(std::string name, std::string note);
  void add_info(std::string key, std::string value);
  /// Appends every condition of `other`, prefixing names with `prefix`.
  void merge(const ConditionReport& other, const std::string& prefix = {});

  const std::vector<Condition>& conditions() const noexcept { return conditions_; }
  const std::vector<std::pair<std::string, std::string>>& info() const noexcept { return info_; }
  const Condition& at(const std::string& name) const;
  bool contains(const std::string& name) const;

  bool passed() const;
  double max_residual() const;

 private:
  std::string name_;
  std::vector<Condition> conditions_;
  std::vector<std::pair<std::string, std::string>> info_;
};

}  // namespace cdlab
