#include "cdlab/scenario.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>

#include "cdlab/error.hpp"
#include "cdlab/homogeneity.hpp"

namespace cdlab {
namespace {

std::string escape_token(const std::string& key) {
  std::string out;
  for (char c : key) {
    if (c == '~') out += "~0";
    else if (c == '/') out += "~1";
    else out += c;
  }
  return out;
}

// Minimal scanner over already-validated JSON text that records where each value starts.
class PointerScanner {
 public:
  PointerScanner(const std::string& text, std::map<std::string, int>& out)
      : text_(text), out_(out) {}

  void run() {
    skip_ws();
    if (pos_ < text_.size()) value("");
  }

 private:
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      if (text_[pos_] == '\n') ++line_;
      ++pos_;
    }
  }

  std::string string_token() {
    std::string s;
    ++pos_;
    while (pos_ < text_.size() && text_[pos_] != '"') {
      if (text_[pos_] == '\\' && pos_ + 1 < text_.size()) ++pos_;
      s += text_[pos_++];
    }
    ++pos_;
    return s;
  }

  void value(const std::string& ptr) {
    out_.emplace(ptr, line_);
    const char c = text_[pos_];
    if (c == '{') {
      ++pos_;
      skip_ws();
      while (pos_ < text_.size() && text_[pos_] != '}') {
        const std::string key = string_token();
        skip_ws();
        ++pos_;  // ':'
        skip_ws();
        value(ptr + "/" + escape_token(key));
        skip_ws();
        if (text_[pos_] == ',') ++pos_;
        skip_ws();
      }
      ++pos_;
    } else if (c == '[') {
      ++pos_;
      skip_ws();
      for (int i = 0; pos_ < text_.size() && text_[pos_] != ']'; ++i) {
        value(ptr + "/" + std::to_string(i));
        skip_ws();
        if (text_[pos_] == ',') ++pos_;
        skip_ws();
      }
      ++pos_;
    } else if (c == '"') {
      string_token();
    } else {
      while (pos_ < text_.size() && std::string_view(",]} \t\r\n").find(text_[pos_]) ==
                                        std::string_view::npos)
        ++pos_;
    }
  }

  const std::string& text_;
  std::map<std::string, int>& out_;
  std::size_t pos_ = 0;
  int line_ = 1;
};

class Reader {
 public:
  Reader(std::string source, std::shared_ptr<const LineIndex> lines)
      : source_(std::move(source)), lines_(std::move(lines)) {}

  [[noreturn]] void error(const std::string& ptr, const std::string& msg) const {
    schema_fail(source_, *lines_, ptr, msg);
  }

  const Json& object(const Json& j, const std::string& ptr) const {
    if (!j.is_object()) error(ptr, "expected an object");
    return j;
  }

  const Json* find(const Json& obj, const std::string& key) const {
    auto it = obj.find(key);
    return it == obj.end() ? nullptr : &*it;
  }

  const Json& need(const Json& obj, const std::string& ptr, const std::string& key) const {
    const Json* v = find(obj, key);
    if (!v) error(ptr, "missing required key \"" + key + "\"");
    return *v;
  }

  double number(const Json& j, const std::string& ptr) const {
    if (!j.is_number()) error(ptr, "expected a number");
    return j.get<double>();
  }

  int integer(const Json& j, const std::string& ptr, int lo) const {
    if (!j.is_number_integer()) error(ptr, "expected an integer");
    const auto v = j.get<long long>();
    if (v < lo || v > 1'000'000) error(ptr, "integer out of range");
    return static_cast<int>(v);
  }

  std::string string(const Json& j, const std::string& ptr) const {
    if (!j.is_string()) error(ptr, "expected a string");
    return j.get<std::string>();
  }

  void only(const Json& obj, const std::string& ptr, std::initializer_list<const char*> keys) const {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
      bool ok = false;
      for (const char* k : keys) ok = ok || it.key() == k;
      if (!ok) error(ptr + "/" + escape_token(it.key()), "unknown key \"" + it.key() + "\"");
    }
  }

 private:
  std::string source_;
  std::shared_ptr<const LineIndex> lines_;
};

DiagonalKernel parse_kernel(const Reader& rd, const Json& j, const std::string& ptr,
                            const std::map<std::string, DiagonalKernel>& known) {
  rd.object(j, ptr);
  auto ref = [&](const Json& v, const std::string& p) -> const DiagonalKernel& {
    const std::string name = rd.string(v, p);
    auto it = known.find(name);
    if (it == known.end()) rd.error(p, "unknown kernel \"" + name + "\" (declare it earlier)");
    return it->second;
  };
  try {
    if (const Json* preset = rd.find(j, "preset")) {
      rd.only(j, ptr, {"preset", "n", "N"});
      if (rd.string(*preset, ptr + "/preset") != "bergman") {
        rd.error(ptr + "/preset", "only the \"bergman\" preset is known");
      }
      return bergman_coefficients(rd.integer(rd.need(j, ptr, "n"), ptr + "/n", 1),
                                  rd.integer(rd.need(j, ptr, "N"), ptr + "/N", 1));
    }
    if (const Json* coeffs = rd.find(j, "coeffs")) {
      rd.only(j, ptr, {"coeffs", "label"});
      if (!coeffs->is_array()) rd.error(ptr + "/coeffs", "expected an array of numbers");
      std::vector<double> c;
      for (std::size_t i = 0; i < coeffs->size(); ++i)
        c.push_back(rd.number((*coeffs)[i], ptr + "/coeffs/" + std::to_string(i)));
      const Json* label = rd.find(j, "label");
      return DiagonalKernel(std::move(c), label ? rd.string(*label, ptr + "/label") : "custom");
    }
    if (const Json* of = rd.find(j, "scaled")) {
      rd.only(j, ptr, {"scaled", "factor"});
      return ref(*of, ptr + "/scaled").scaled(rd.number(rd.need(j, ptr, "factor"), ptr + "/factor"));
    }
    if (const Json* pair = rd.find(j, "separator")) {
      rd.only(j, ptr, {"separator"});
      if (!pair->is_array() || pair->size() != 2) rd.error(ptr + "/separator", "expected two kernel names");
      return separator_kernel(ref((*pair)[0], ptr + "/separator/0"), ref((*pair)[1], ptr + "/separator/1"));
    }
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::kSchema) throw;
    rd.error(ptr, e.what());
  }
  rd.error(ptr, "kernel needs one of \"preset\", \"coeffs\", \"scaled\", \"separator\"");
}

Complex complex_pair(const Reader& rd, const Json& j, const std::string& ptr) {
  if (j.is_number()) return j.get<double>();
  if (!j.is_array() || j.size() != 2) rd.error(ptr, "expected a number or [re, im]");
  return {rd.number(j[0], ptr + "/0"), rd.number(j[1], ptr + "/1")};
}

ModelOperator parse_operator(const Reader& rd, const Json& j, const std::string& ptr,
                             const Scenario& sc, Rng* rng) {
  rd.object(j, ptr);
  if (j.size() != 1) rd.error(ptr, "an operator has exactly one source key");
  const std::string kind = j.begin().key();
  const Json& v = j.begin().value();
  const std::string vp = ptr + "/" + escape_token(kind);
  auto op_ref = [&](const Json& name_json, const std::string& p) -> const ModelOperator& {
    const std::string name = rd.string(name_json, p);
    auto it = sc.operators.find(name);
    if (it == sc.operators.end()) rd.error(p, "unknown operator \"" + name + "\" (declare it earlier)");
    return it->second;
  };
  try {
    if (kind == "shift") {
      const std::string name = rd.string(v, vp);
      auto it = sc.kernels.find(name);
      if (it == sc.kernels.end()) rd.error(vp, "unknown kernel \"" + name + "\"");
      return shift_from_kernel(it->second);
    }
    if (kind == "matrix") return model_from_matrix(matrix_from_json(v));
    if (kind == "file") {
      const std::filesystem::path file = sc.base_dir / rd.string(v, vp);
      std::ifstream in(file);
      if (!in) rd.error(vp, "cannot open " + file.string());
      Json m;
      try {
        m = Json::parse(in);
      } catch (const Json::exception& e) {
        rd.error(vp, file.string() + ": " + e.what());
      }
      return model_from_matrix(matrix_from_json(m));
    }
    if (kind == "identity") return model_from_matrix(identity(rd.integer(v, vp, 1)));
    if (kind == "scalar") {
      rd.object(v, vp);
      rd.only(v, vp, {"size", "value"});
      const int n = rd.integer(rd.need(v, vp, "size"), vp + "/size", 1);
      return model_from_matrix(complex_pair(rd, rd.need(v, vp, "value"), vp + "/value") * identity(n));
    }
    if (kind == "diagonal") {
      if (!v.is_array() || v.empty()) rd.error(vp, "expected a non-empty array of entries");
      Vector d(static_cast<Eigen::Index>(v.size()));
      for (std::size_t i = 0; i < v.size(); ++i)
        d(static_cast<Eigen::Index>(i)) = complex_pair(rd, v[i], vp + "/" + std::to_string(i));
      return model_from_matrix(d.asDiagonal());
    }
    if (kind == "adjoint") return model_from_matrix(op_ref(v, vp).matrix.adjoint());
    if (kind == "mobius") {
      rd.object(v, vp);
      rd.only(v, vp, {"of", "a", "phase"});
      const Json* phase = rd.find(v, "phase");
      const MobiusMap phi(complex_pair(rd, rd.need(v, vp, "a"), vp + "/a"),
                          phase ? rd.number(*phase, vp + "/phase") : 0.0);
      return model_from_matrix(phi(op_ref(rd.need(v, vp, "of"), vp + "/of").matrix));
    }
    if (kind == "random") {
      rd.object(v, vp);
      rd.only(v, vp, {"size", "norm", "kind"});
      if (!rng) rd.error(vp, "random operators require a top-level \"seed\"");
      const int n = rd.integer(rd.need(v, vp, "size"), vp + "/size", 1);
      const Json* nj = rd.find(v, "norm");
      const double norm = nj ? rd.number(*nj, vp + "/norm") : 0.5;
      const Json* kj = rd.find(v, "kind");
      const std::string k = kj ? rd.string(*kj, vp + "/kind") : "general";
      if (k == "general") return model_from_matrix(random_scaled(n, norm, *rng));
      if (k == "normal") {
        Matrix m = random_normal(n, *rng);
        return model_from_matrix(m * (norm / operator_norm(m)));
      }
      if (k == "unitary") return model_from_matrix(random_unitary(n, *rng));
      if (k == "diagonal-unitary") {
        std::uniform_real_distribution<double> u(0.0, 2.0 * std::numbers::pi);
        Vector d(n);
        for (int i = 0; i < n; ++i) d(i) = std::polar(1.0, u(*rng));
        return model_from_matrix(d.asDiagonal());
      }
      rd.error(vp + "/kind", "kind must be general, normal, unitary or diagonal-unitary");
    }
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::kSchema) throw;
    rd.error(vp, e.what());
  }
  rd.error(ptr, "unknown operator source \"" + kind +
                    "\" (shift, matrix, file, identity, scalar, diagonal, adjoint, mobius, random)");
}

DiskGrid parse_grid(const Reader& rd, const Json& j, const std::string& ptr) {
  rd.object(j, ptr);
  rd.only(j, ptr, {"radii", "angles", "points", "fd_step"});
  const Json* h = rd.find(j, "fd_step");
  const double step = h ? rd.number(*h, ptr + "/fd_step") : 1e-3;
  try {
    if (const Json* pts = rd.find(j, "points")) {
      if (!pts->is_array() || pts->empty()) rd.error(ptr + "/points", "expected a non-empty array");
      std::vector<Complex> p;
      for (std::size_t i = 0; i < pts->size(); ++i)
        p.push_back(complex_pair(rd, (*pts)[i], ptr + "/points/" + std::to_string(i)));
      return DiskGrid(std::move(p), step);
    }
    const Json& radii = rd.need(j, ptr, "radii");
    if (!radii.is_array() || radii.empty()) rd.error(ptr + "/radii", "expected a non-empty array");
    std::vector<double> r;
    for (std::size_t i = 0; i < radii.size(); ++i)
      r.push_back(rd.number(radii[i], ptr + "/radii/" + std::to_string(i)));
    const Json* a = rd.find(j, "angles");
    return DiskGrid::polar(r, a ? rd.integer(*a, ptr + "/angles", 1) : 16, step);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::kSchema) throw;
    rd.error(ptr, e.what());
  }
}

}  // namespace

LineIndex::LineIndex(const std::string& text) { PointerScanner(text, lines_).run(); }

int LineIndex::line_of(const std::string& pointer) const {
  std::string p = pointer;
  while (true) {
    auto it = lines_.find(p);
    if (it != lines_.end()) return it->second;
    if (p.empty()) return 1;
    p.erase(p.rfind('/'));
  }
}

void schema_fail(const std::string& source, const LineIndex& lines, const std::string& pointer,
                 const std::string& message) {
  std::ostringstream s;
  s << source << ":" << lines.line_of(pointer) << ": " << (pointer.empty() ? "/" : pointer) << ": "
    << message;
  fail(ErrorKind::kSchema, s.str());
}

Matrix matrix_from_json(const Json& j) {
  auto bad = [](const std::string& m) { fail(ErrorKind::kInvalidArgument, "matrix: " + m); };
  if (!j.is_object() || !j.contains("rows") || !j.contains("cols") || !j.contains("re")) {
    bad("expected {\"rows\", \"cols\", \"re\", \"im\"}");
  }
  if (!j["rows"].is_number_integer() || !j["cols"].is_number_integer()) bad("rows/cols must be integers");
  const long long r = j["rows"].get<long long>(), c = j["cols"].get<long long>();
  if (r < 1 || c < 1 || r * c > 100'000'000) bad("invalid shape");
  const Json& re = j["re"];
  const Json* im = j.contains("im") ? &j["im"] : nullptr;
  const auto count = static_cast<std::size_t>(r * c);
  if (!re.is_array() || re.size() != count || (im && (!im->is_array() || im->size() != count))) {
    bad("re/im must hold rows*cols numbers");
  }
  Matrix m(r, c);
  for (std::size_t k = 0; k < count; ++k) {
    if (!re[k].is_number() || (im && !(*im)[k].is_number())) bad("entries must be numbers");
    m(static_cast<Eigen::Index>(k) / c, static_cast<Eigen::Index>(k) % c) =
        Complex(re[k].get<double>(), im ? (*im)[k].get<double>() : 0.0);
  }
  return m;
}

Json matrix_to_json(const Matrix& m) {
  Json re = Json::array(), im = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index k = 0; k < m.cols(); ++k) {
      re.push_back(m(i, k).real());
      im.push_back(m(i, k).imag());
    }
  }
  return Json{{"rows", m.rows()}, {"cols", m.cols()}, {"re", re}, {"im", im}};
}

DiskGrid grid_from_json(const Json& j, const std::string& pointer, const Scenario& sc) {
  return parse_grid(Reader(sc.source, sc.lines), j, pointer);
}

const DiskGrid& Scenario::default_grid() const {
  static const DiskGrid fallback = DiskGrid::default_polar();
  return grid ? *grid : fallback;
}

Scenario parse_scenario(const std::string& text, const std::string& source,
                        const std::filesystem::path& base_dir) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    const std::size_t upto = std::min(text.size(), static_cast<std::size_t>(e.byte));
    const int line = 1 + static_cast<int>(std::count(text.begin(), text.begin() + upto, '\n'));
    fail(ErrorKind::kSchema, source + ":" + std::to_string(line) + ": invalid JSON: " + e.what());
  }
  Scenario sc;
  sc.source = source;
  sc.base_dir = base_dir;
  sc.lines = std::make_shared<const LineIndex>(text);
  const Reader rd(source, sc.lines);

  rd.object(doc, "");
  rd.only(doc, "", {"name", "description", "seed", "kernels", "operators", "grid", "checks", "output"});
  sc.name = rd.string(rd.need(doc, "", "name"), "/name");
  if (const Json* seed = rd.find(doc, "seed")) {
    if (!seed->is_number_unsigned()) rd.error("/seed", "seed must be a non-negative integer");
    sc.seed = seed->get<std::uint64_t>();
  }
  if (const Json* ks = rd.find(doc, "kernels")) {
    rd.object(*ks, "/kernels");
    for (auto it = ks->begin(); it != ks->end(); ++it) {
      const std::string p = "/kernels/" + escape_token(it.key());
      sc.kernels.emplace(it.key(), parse_kernel(rd, it.value(), p, sc.kernels));
    }
  }
  std::optional<Rng> rng;
  if (sc.seed) rng.emplace(*sc.seed);
  if (const Json* ops = rd.find(doc, "operators")) {
    rd.object(*ops, "/operators");
    for (auto it = ops->begin(); it != ops->end(); ++it) {
      const std::string p = "/operators/" + escape_token(it.key());
      sc.operators.emplace(it.key(), parse_operator(rd, it.value(), p, sc, rng ? &*rng : nullptr));
    }
  }
  if (const Json* g = rd.find(doc, "grid")) sc.grid = parse_grid(rd, *g, "/grid");
  if (const Json* out = rd.find(doc, "output")) {
    rd.object(*out, "/output");
    rd.only(*out, "/output", {"report"});
    if (const Json* r = rd.find(*out, "report")) sc.report_path = rd.string(*r, "/output/report");
  }

  const Json& checks = rd.need(doc, "", "checks");
  if (!checks.is_array() || checks.empty()) rd.error("/checks", "expected a non-empty array");
  for (std::size_t i = 0; i < checks.size(); ++i) {
    const std::string p = "/checks/" + std::to_string(i);
    const Json& c = rd.object(checks[i], p);
    rd.only(c, p, {"check", "label", "tolerance", "params"});
    CheckSpec spec;
    spec.pointer = p;
    spec.check = rd.string(rd.need(c, p, "check"), p + "/check");
    const Json* label = rd.find(c, "label");
    spec.label = label ? rd.string(*label, p + "/label") : spec.check;
    if (const Json* tol = rd.find(c, "tolerance")) {
      spec.tolerance = rd.number(*tol, p + "/tolerance");
      if (spec.tolerance < 0.0) rd.error(p + "/tolerance", "tolerance must be non-negative");
    }
    if (const Json* params = rd.find(c, "params")) spec.params = rd.object(*params, p + "/params");
    else spec.params = Json::object();
    sc.checks.push_back(std::move(spec));
  }
  return sc;
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::kSchema, path.string() + ": cannot open scenario file");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str(), path.filename().string(), path.parent_path());
}

}  // namespace cdlab
