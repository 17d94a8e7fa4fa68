#include "cdlab/report.hpp"

#include <algorithm>
#include <cmath>

#include "cdlab/error.hpp"

namespace cdlab {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::kPass: return "pass";
    case Verdict::kFail: return "fail";
    case Verdict::kIndeterminate: return "indeterminate";
  }
  return "fail";
}

Condition& ConditionReport::add(std::string name, double residual, double tolerance,
                                std::string note) {
  const Verdict v = residual <= tolerance ? Verdict::kPass : Verdict::kFail;
  conditions_.push_back({std::move(name), residual, tolerance, v, std::move(note)});
  return conditions_.back();
}

Condition& ConditionReport::add_indeterminate(std::string name, std::string note) {
  conditions_.push_back({std::move(name), 0.0, 0.0, Verdict::kIndeterminate, std::move(note)});
  return conditions_.back();
}

void ConditionReport::add_info(std::string key, std::string value) {
  info_.emplace_back(std::move(key), std::move(value));
}

void ConditionReport::merge(const ConditionReport& other, const std::string& prefix) {
  for (Condition c : other.conditions_) {
    c.name = prefix + c.name;
    conditions_.push_back(std::move(c));
  }
  for (auto [k, v] : other.info_) info_.emplace_back(prefix + k, std::move(v));
}

const Condition& ConditionReport::at(const std::string& name) const {
  auto it = std::find_if(conditions_.begin(), conditions_.end(),
                         [&](const Condition& c) { return c.name == name; });
  if (it == conditions_.end()) fail(ErrorKind::kInvalidArgument, "no condition named " + name);
  return *it;
}

bool ConditionReport::contains(const std::string& name) const {
  return std::any_of(conditions_.begin(), conditions_.end(),
                     [&](const Condition& c) { return c.name == name; });
}

bool ConditionReport::passed() const {
  return std::all_of(conditions_.begin(), conditions_.end(),
                     [](const Condition& c) { return c.verdict == Verdict::kPass; });
}

double ConditionReport::max_residual() const {
  double m = 0.0;
  for (const Condition& c : conditions_)
    if (c.verdict != Verdict::kIndeterminate) m = std::max(m, c.residual);
  return m;
}

}  // namespace cdlab
