#pragma once

#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cdlab/report.hpp"
#include "cdlab/scenario.hpp"

namespace cdlab {

/// Typed access to one check's "params" object; every failure is a schema error
/// anchored at the offending key.
class CheckParams {
 public:
  CheckParams(const Scenario& scenario, const CheckSpec& spec, std::filesystem::path out_dir);

  double tolerance() const noexcept { return spec_.tolerance; }
  const Scenario& scenario() const noexcept { return scenario_; }
  const std::filesystem::path& out_dir() const noexcept { return out_dir_; }

  bool has(const std::string& key) const;
  double number(const std::string& key) const;
  double number(const std::string& key, double fallback) const;
  int integer(const std::string& key, int fallback, int lo = 0) const;
  bool boolean(const std::string& key, bool fallback) const;
  std::string string(const std::string& key, const std::string& fallback) const;
  /// Either a string from `allowed` or `fallback` when absent.
  std::string choice(const std::string& key, const std::vector<std::string>& allowed,
                     const std::string& fallback) const;
  Complex complex(const std::string& key, Complex fallback) const;
  std::vector<double> numbers(const std::string& key, std::vector<double> fallback) const;
  std::vector<Complex> complexes(const std::string& key, std::vector<Complex> fallback) const;
  const ModelOperator& op(const std::string& key) const;
  const DiagonalKernel& kernel(const std::string& key) const;
  /// "grid" parameter, or the scenario grid, or the default polar grid.
  DiskGrid grid() const;
  const Json* raw(const std::string& key) const;
  std::string pointer(const std::string& key) const;

  [[noreturn]] void error(const std::string& key, const std::string& message) const;
  /// Rejects keys that were never read.
  void finish() const;

 private:
  const Json& need(const std::string& key) const;

  const Scenario& scenario_;
  const CheckSpec& spec_;
  std::filesystem::path out_dir_;
  mutable std::vector<std::string> used_;
};

using CheckRunner = std::function<ConditionReport()>;

struct CheckEntry {
  std::string name;
  std::string description;
  std::string anchor;  // the identity the check verifies
  /// Reads and validates params, returning the deferred computation.
  std::function<CheckRunner(const CheckParams&)> prepare;
};

/// Alphabetized by name.
const std::vector<CheckEntry>& check_registry();
const CheckEntry* find_check(std::string_view name);

struct CheckOutcome {
  std::string check;
  std::string label;
  ConditionReport report;
  std::optional<std::string> error;
  double seconds = 0.0;

  bool passed() const { return !error && report.passed(); }
};

struct CampaignResult {
  std::string scenario;
  std::vector<CheckOutcome> outcomes;
  double seconds = 0.0;

  bool passed() const;
};

struct RunOptions {
  std::filesystem::path out_dir = ".";
  /// When set, only checks of this registry name run.
  std::optional<std::string> only_check;
};

/// Validates every check's parameters first (schema errors abort before any
/// computation), then runs the checks in listed order. Failures inside a check
/// are recorded on that check and the campaign continues.
CampaignResult run_scenario(const Scenario& scenario, const RunOptions& options = {});

/// Deterministic report body; "timing" is appended only when requested.
Json report_json(const CampaignResult& result, bool include_timing = true);
std::string summary_text(const CampaignResult& result);

}  // namespace cdlab
