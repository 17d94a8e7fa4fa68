#include <charconv>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "cdlab/campaign.hpp"
#include "cdlab/error.hpp"
#include "cdlab/geometry.hpp"
#include "cdlab/kernels.hpp"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

struct RunArgs {
  std::string scenario;
  std::string check;
  std::string out_dir = ".";
  std::string report;
  bool no_timing = false;
  bool quiet = false;
};

int run_command(const RunArgs& args) {
  const cdlab::Scenario sc = cdlab::load_scenario(args.scenario);
  cdlab::RunOptions opt;
  opt.out_dir = args.out_dir;
  if (!args.check.empty()) {
    if (!cdlab::find_check(args.check)) {
      std::cerr << "cdlab: unknown check \"" << args.check << "\" (see `cdlab list`)\n";
      return kExitUsage;
    }
    opt.only_check = args.check;
  }
  const cdlab::CampaignResult result = cdlab::run_scenario(sc, opt);

  std::filesystem::path report;
  if (!args.report.empty()) report = args.report;
  else if (sc.report_path) report = opt.out_dir / *sc.report_path;
  else if (args.check.empty()) report = opt.out_dir / (sc.name + ".report.json");
  if (!report.empty()) {
    if (report.has_parent_path()) std::filesystem::create_directories(report.parent_path());
    std::ofstream out(report);
    if (!out) {
      std::cerr << "cdlab: cannot write " << report << "\n";
      return kExitUsage;
    }
    out << cdlab::report_json(result, !args.no_timing).dump(2) << "\n";
  }
  if (!args.quiet) std::cout << cdlab::summary_text(result);
  if (!report.empty() && !args.quiet) std::cout << "report: " << report.string() << "\n";
  return result.passed() ? kExitPass : kExitFail;
}

struct CurvatureArgs {
  std::string kernel = "bergman:1";
  int truncation = 80;
  double rmax = 0.6;
  int angles = 16;
  double fd_step = 1e-3;
  std::string method = "series";
  std::vector<std::string> derivatives;
  std::string out;
};

int curvature_command(const CurvatureArgs& args) {
  const auto colon = args.kernel.find(':');
  int n = 0;
  const std::string family = args.kernel.substr(0, colon);
  const std::string order = colon == std::string::npos ? "" : args.kernel.substr(colon + 1);
  auto [ptr, ec] = std::from_chars(order.data(), order.data() + order.size(), n);
  if (family != "bergman" || ec != std::errc() || ptr != order.data() + order.size() || n < 1) {
    std::cerr << "cdlab: --kernel expects bergman:<n> with n >= 1\n";
    return kExitUsage;
  }
  std::vector<cdlab::DerivativeOrder> derivs;
  for (const std::string& d : args.derivatives) {
    int i = -1, j = -1;
    char comma = 0;
    std::istringstream s(d);
    if (!(s >> i >> comma >> j) || comma != ',' || i < 0 || j < 0) {
      std::cerr << "cdlab: --deriv expects i,j\n";
      return kExitUsage;
    }
    derivs.emplace_back(i, j);
  }
  std::vector<double> radii;
  for (int k = 1; k * 0.1 <= args.rmax + 1e-12; ++k) radii.push_back(k * 0.1);
  if (radii.empty() || radii.back() < args.rmax - 1e-12) radii.push_back(args.rmax);

  const cdlab::DiagonalKernel kernel = cdlab::bergman_coefficients(n, args.truncation);
  const cdlab::DiskGrid grid = cdlab::DiskGrid::polar(radii, args.angles, args.fd_step);
  const cdlab::MetricField metric =
      cdlab::gram_metric(cdlab::frame_field(cdlab::PolynomialFrame::section(kernel), grid));
  const cdlab::CurvatureField field = cdlab::curvature(
      metric,
      args.method == "fd" ? cdlab::CurvatureMethod::kFiniteDifference : cdlab::CurvatureMethod::kSeries,
      derivs);
  if (args.out.empty() || args.out == "-") {
    cdlab::write_curvature_csv(field, std::cout);
  } else {
    std::ofstream out(args.out);
    if (!out) {
      std::cerr << "cdlab: cannot write " << args.out << "\n";
      return kExitUsage;
    }
    cdlab::write_curvature_csv(field, out);
  }
  return kExitPass;
}

int list_command(bool json) {
  if (json) {
    cdlab::Json out = cdlab::Json::array();
    for (const auto& e : cdlab::check_registry())
      out.push_back({{"name", e.name}, {"description", e.description}, {"anchor", e.anchor}});
    std::cout << out.dump(2) << "\n";
    return kExitPass;
  }
  for (const auto& e : cdlab::check_registry()) {
    std::cout << e.name << "\t" << e.description << "\t[" << e.anchor << "]\n";
  }
  return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cdlab: numerical verification for upper-triangular Cowen-Douglas models"};
  app.set_version_flag("--version", std::string(CDLAB_VERSION));
  app.require_subcommand(1);

  RunArgs run_args;
  auto* run = app.add_subcommand("run", "Run every check of a scenario");
  run->add_option("scenario", run_args.scenario, "Scenario JSON file")->required();
  run->add_option("--out-dir", run_args.out_dir, "Directory for reports and CSV exports");
  run->add_option("--report", run_args.report, "Report path (overrides the scenario)");
  run->add_flag("--no-timing", run_args.no_timing, "Omit the timing section from the report");
  run->add_flag("-q,--quiet", run_args.quiet, "Suppress the summary");

  RunArgs verify_args;
  auto* verify = app.add_subcommand("verify", "Run the checks of one kind from a scenario");
  verify->add_option("check", verify_args.check, "Check name, e.g. mainlemma, main1, main3")->required();
  verify->add_option("scenario", verify_args.scenario, "Scenario JSON file")->required();
  verify->add_option("--out-dir", verify_args.out_dir, "Directory for CSV exports");
  verify->add_option("--report", verify_args.report, "Write the JSON report here");
  verify->add_flag("--no-timing", verify_args.no_timing, "Omit the timing section from the report");
  verify->add_flag("-q,--quiet", verify_args.quiet, "Suppress the summary");

  bool list_json = false;
  auto* list = app.add_subcommand("list", "List registered checks");
  list->add_flag("--json", list_json, "Machine-readable listing");

  CurvatureArgs curv;
  auto* cmd = app.add_subcommand("curvature", "Export the curvature field of a Bergman kernel");
  cmd->add_option("--kernel", curv.kernel, "bergman:<n>")->capture_default_str();
  cmd->add_option("--N", curv.truncation, "Truncation")->capture_default_str()->check(CLI::Range(2, 100000));
  cmd->add_option("--rmax", curv.rmax, "Largest grid radius")->capture_default_str()->check(CLI::Range(0.05, 0.99));
  cmd->add_option("--angles", curv.angles, "Angles per radius")->capture_default_str()->check(CLI::Range(1, 4096));
  cmd->add_option("--fd-step", curv.fd_step, "Finite-difference step")->capture_default_str();
  cmd->add_option("--method", curv.method, "series or fd")
      ->capture_default_str()
      ->check(CLI::IsMember({"series", "fd"}));
  cmd->add_option("--deriv", curv.derivatives, "Covariant derivative i,j (repeatable)");
  cmd->add_option("--out", curv.out, "CSV path, - for stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitPass : kExitUsage;
  }

  try {
    if (*run) return run_command(run_args);
    if (*verify) return run_command(verify_args);
    if (*list) return list_command(list_json);
    if (*cmd) return curvature_command(curv);
  } catch (const cdlab::Error& e) {
    std::cerr << "cdlab: " << e.what() << "\n";
    const bool usage = e.kind() == cdlab::ErrorKind::kSchema || e.kind() == cdlab::ErrorKind::kInvalidArgument;
    return usage ? kExitUsage : kExitFail;
  } catch (const std::exception& e) {
    std::cerr << "cdlab: " << e.what() << "\n";
    return kExitFail;
  }
  return kExitUsage;
}
