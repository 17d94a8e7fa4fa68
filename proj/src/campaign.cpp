#include "cdlab/campaign.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <sstream>

#include "cdlab/error.hpp"

namespace cdlab {

CheckParams::CheckParams(const Scenario& scenario, const CheckSpec& spec,
                         std::filesystem::path out_dir)
    : scenario_(scenario), spec_(spec), out_dir_(std::move(out_dir)) {}

std::string CheckParams::pointer(const std::string& key) const {
  return spec_.pointer + "/params/" + key;
}

void CheckParams::error(const std::string& key, const std::string& message) const {
  schema_fail(scenario_.source, *scenario_.lines,
              key.empty() ? spec_.pointer : pointer(key), message);
}

const Json* CheckParams::raw(const std::string& key) const {
  used_.push_back(key);
  auto it = spec_.params.find(key);
  return it == spec_.params.end() ? nullptr : &*it;
}

bool CheckParams::has(const std::string& key) const { return spec_.params.contains(key); }

const Json& CheckParams::need(const std::string& key) const {
  const Json* j = raw(key);
  if (!j) error("", "missing required parameter \"" + key + "\"");
  return *j;
}

double CheckParams::number(const std::string& key) const {
  const Json& j = need(key);
  if (!j.is_number()) error(key, "expected a number");
  return j.get<double>();
}

double CheckParams::number(const std::string& key, double fallback) const {
  return has(key) ? number(key) : (used_.push_back(key), fallback);
}

int CheckParams::integer(const std::string& key, int fallback, int lo) const {
  const Json* j = raw(key);
  if (!j) return fallback;
  if (!j->is_number_integer() || j->get<long long>() < lo || j->get<long long>() > 1'000'000) {
    error(key, "expected an integer >= " + std::to_string(lo));
  }
  return j->get<int>();
}

bool CheckParams::boolean(const std::string& key, bool fallback) const {
  const Json* j = raw(key);
  if (!j) return fallback;
  if (!j->is_boolean()) error(key, "expected true or false");
  return j->get<bool>();
}

std::string CheckParams::string(const std::string& key, const std::string& fallback) const {
  const Json* j = raw(key);
  if (!j) return fallback;
  if (!j->is_string()) error(key, "expected a string");
  return j->get<std::string>();
}

std::string CheckParams::choice(const std::string& key, const std::vector<std::string>& allowed,
                                const std::string& fallback) const {
  const std::string v = string(key, fallback);
  if (std::find(allowed.begin(), allowed.end(), v) == allowed.end()) {
    std::string list;
    for (const auto& a : allowed) list += (list.empty() ? "" : ", ") + a;
    error(key, "expected one of: " + list);
  }
  return v;
}

Complex CheckParams::complex(const std::string& key, Complex fallback) const {
  const Json* j = raw(key);
  if (!j) return fallback;
  if (j->is_number()) return j->get<double>();
  if (!j->is_array() || j->size() != 2 || !(*j)[0].is_number() || !(*j)[1].is_number()) {
    error(key, "expected a number or [re, im]");
  }
  return {(*j)[0].get<double>(), (*j)[1].get<double>()};
}

std::vector<double> CheckParams::numbers(const std::string& key,
                                         std::vector<double> fallback) const {
  const Json* j = raw(key);
  if (!j) return fallback;
  if (!j->is_array() || j->empty()) error(key, "expected a non-empty array of numbers");
  std::vector<double> out;
  for (const Json& v : *j) {
    if (!v.is_number()) error(key, "expected a non-empty array of numbers");
    out.push_back(v.get<double>());
  }
  return out;
}

std::vector<Complex> CheckParams::complexes(const std::string& key,
                                            std::vector<Complex> fallback) const {
  const Json* j = raw(key);
  if (!j) return fallback;
  if (!j->is_array() || j->empty()) error(key, "expected a non-empty array");
  std::vector<Complex> out;
  for (const Json& v : *j) {
    if (v.is_number()) {
      out.emplace_back(v.get<double>());
    } else if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number()) {
      out.emplace_back(v[0].get<double>(), v[1].get<double>());
    } else {
      error(key, "entries must be numbers or [re, im]");
    }
  }
  return out;
}

const ModelOperator& CheckParams::op(const std::string& key) const {
  const Json& j = need(key);
  if (!j.is_string()) error(key, "expected an operator name");
  auto it = scenario_.operators.find(j.get<std::string>());
  if (it == scenario_.operators.end()) error(key, "unknown operator \"" + j.get<std::string>() + "\"");
  return it->second;
}

const DiagonalKernel& CheckParams::kernel(const std::string& key) const {
  const Json& j = need(key);
  if (!j.is_string()) error(key, "expected a kernel name");
  auto it = scenario_.kernels.find(j.get<std::string>());
  if (it == scenario_.kernels.end()) error(key, "unknown kernel \"" + j.get<std::string>() + "\"");
  return it->second;
}

DiskGrid CheckParams::grid() const {
  if (const Json* j = raw("grid")) return grid_from_json(*j, pointer("grid"), scenario_);
  return scenario_.default_grid();
}

void CheckParams::finish() const {
  for (auto it = spec_.params.begin(); it != spec_.params.end(); ++it) {
    if (std::find(used_.begin(), used_.end(), it.key()) == used_.end()) {
      error(it.key(), "unknown parameter \"" + it.key() + "\" for check \"" + spec_.check + "\"");
    }
  }
}

const CheckEntry* find_check(std::string_view name) {
  for (const CheckEntry& e : check_registry())
    if (e.name == name) return &e;
  return nullptr;
}

bool CampaignResult::passed() const {
  return !outcomes.empty() &&
         std::all_of(outcomes.begin(), outcomes.end(), [](const CheckOutcome& o) { return o.passed(); });
}

CampaignResult run_scenario(const Scenario& scenario, const RunOptions& options) {
  using Clock = std::chrono::steady_clock;
  const auto start = Clock::now();

  std::vector<std::pair<const CheckSpec*, CheckRunner>> plan;
  for (const CheckSpec& spec : scenario.checks) {
    const CheckEntry* entry = find_check(spec.check);
    if (!entry) {
      schema_fail(scenario.source, *scenario.lines, spec.pointer + "/check",
                  "unknown check \"" + spec.check + "\" (see `cdlab list`)");
    }
    if (options.only_check && *options.only_check != spec.check) continue;
    CheckParams params(scenario, spec, options.out_dir);
    CheckRunner runner = entry->prepare(params);
    params.finish();
    plan.emplace_back(&spec, std::move(runner));
  }
  if (options.only_check && plan.empty()) {
    fail(ErrorKind::kSchema, scenario.source + ": no \"" + *options.only_check + "\" check in scenario");
  }

  CampaignResult result;
  result.scenario = scenario.name;
  for (auto& [spec, runner] : plan) {
    CheckOutcome o;
    o.check = spec->check;
    o.label = spec->label;
    o.report = ConditionReport(spec->check);
    const auto t0 = Clock::now();
    try {
      o.report = runner();
    } catch (const std::exception& e) {
      o.error = e.what();
    }
    o.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
    result.outcomes.push_back(std::move(o));
  }
  result.seconds = std::chrono::duration<double>(Clock::now() - start).count();
  return result;
}

namespace {

Json residual_value(double v) {
  if (std::isfinite(v)) return v;
  return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
}

}  // namespace

Json report_json(const CampaignResult& result, bool include_timing) {
  Json checks = Json::array();
  Json timing = Json::array();
  for (const CheckOutcome& o : result.outcomes) {
    Json conds = Json::array();
    for (const Condition& c : o.report.conditions()) {
      Json cj{{"name", c.name},
              {"residual", residual_value(c.residual)},
              {"tolerance", residual_value(c.tolerance)},
              {"verdict", to_string(c.verdict)}};
      if (!c.note.empty()) cj["note"] = c.note;
      conds.push_back(std::move(cj));
    }
    Json info = Json::object();
    for (const auto& [k, v] : o.report.info()) info[k] = v;
    Json cj{{"check", o.check}, {"label", o.label}, {"passed", o.passed()}, {"conditions", conds}};
    if (!info.empty()) cj["info"] = std::move(info);
    if (o.error) cj["error"] = *o.error;
    checks.push_back(std::move(cj));
    timing.push_back(Json{{"label", o.label}, {"seconds", o.seconds}});
  }
  Json out{{"scenario", result.scenario},
           {"environment", Json{{"version", CDLAB_VERSION}, {"precision", "binary64"}}},
           {"passed", result.passed()},
           {"checks", std::move(checks)}};
  if (include_timing) out["timing"] = Json{{"total_seconds", result.seconds}, {"checks", timing}};
  return out;
}

std::string summary_text(const CampaignResult& result) {
  std::ostringstream s;
  s << "scenario " << result.scenario << "\n";
  for (const CheckOutcome& o : result.outcomes) {
    s << "  [" << (o.passed() ? "PASS" : "FAIL") << "] " << o.label;
    if (o.label != o.check) s << " (" << o.check << ")";
    s << "\n";
    if (o.error) s << "      error: " << *o.error << "\n";
    for (const Condition& c : o.report.conditions()) {
      s << "      " << to_string(c.verdict) << "  " << c.name << "  residual=" << c.residual
        << " tol=" << c.tolerance;
      if (!c.note.empty()) s << "  (" << c.note << ")";
      s << "\n";
    }
    for (const auto& [k, v] : o.report.info()) s << "      info  " << k << ": " << v << "\n";
  }
  s << (result.passed() ? "PASS" : "FAIL") << "\n";
  return s.str();
}

}  // namespace cdlab
