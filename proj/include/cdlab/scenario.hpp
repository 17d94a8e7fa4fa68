#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "cdlab/geometry.hpp"
#include "cdlab/kernels.hpp"
#include "cdlab/operators.hpp"

namespace cdlab {

using Json = nlohmann::ordered_json;

/// Maps JSON pointers of a parsed document to the 1-based line where the value starts.
class LineIndex {
 public:
  LineIndex() = default;
  explicit LineIndex(const std::string& text);

  /// Line of `pointer`, falling back to its closest recorded ancestor.
  int line_of(const std::string& pointer) const;

 private:
  std::map<std::string, int> lines_;
};

/// Schema-error helper: "<source>:<line>: <pointer>: message".
[[noreturn]] void schema_fail(const std::string& source, const LineIndex& lines,
                              const std::string& pointer, const std::string& message);

/// {"rows": r, "cols": c, "re": [...], "im": [...]} in row-major order; "im" optional.
Matrix matrix_from_json(const Json& j);
Json matrix_to_json(const Matrix& m);

struct CheckSpec {
  std::string check;
  std::string label;
  double tolerance = 1e-9;
  Json params;
  std::string pointer;  // of the check object, for error messages
};

struct Scenario {
  std::string name;
  std::string source;  // file name used in messages
  std::filesystem::path base_dir;
  std::optional<std::uint64_t> seed;
  std::map<std::string, DiagonalKernel> kernels;
  std::map<std::string, ModelOperator> operators;
  std::optional<DiskGrid> grid;
  std::vector<CheckSpec> checks;
  std::optional<std::string> report_path;
  std::shared_ptr<const LineIndex> lines;

  const DiskGrid& default_grid() const;
};

/// Parses and resolves a scenario document. Any violation throws a schema error
/// whose message names the line and JSON pointer.
Scenario parse_scenario(const std::string& text, const std::string& source = "<scenario>",
                        const std::filesystem::path& base_dir = {});
Scenario load_scenario(const std::filesystem::path& path);

/// {"radii": [...], "angles": n, "fd_step": h} or {"points": [[re, im], ...], "fd_step": h}.
DiskGrid grid_from_json(const Json& j, const std::string& pointer, const Scenario& sc);

}  // namespace cdlab
