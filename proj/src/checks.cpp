#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "cdlab/campaign.hpp"
#include "cdlab/equivalence.hpp"
#include "cdlab/error.hpp"
#include "cdlab/geometry.hpp"
#include "cdlab/homogeneity.hpp"

namespace cdlab {
namespace {

std::string fmt(double v) {
  std::ostringstream s;
  s.precision(6);
  s << v;
  return s.str();
}

struct ModelRefs {
  const ModelOperator* t0;
  const ModelOperator* t1;
  const ModelOperator* x;

  UpperTriangularModel build() const { return assemble_model(*t0, *t1, x->matrix); }
};

ModelRefs model_params(const CheckParams& p, const std::string& prefix = "") {
  return {&p.op(prefix + "t0"), &p.op(prefix + "t1"), &p.op(prefix + "x")};
}

void require_kernels(const CheckParams& p, const ModelRefs& m, const std::string& prefix = "") {
  if (!m.t0->kernel) p.error(prefix + "t0", "operator must be a kernel shift");
  if (!m.t1->kernel) p.error(prefix + "t1", "operator must be a kernel shift");
}

std::ofstream open_output(const std::filesystem::path& path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) fail(ErrorKind::kInvalidArgument, "cannot write " + path.string());
  return out;
}

std::vector<std::pair<Complex, Complex>> sample_pairs(const DiskGrid& grid, int count) {
  const std::size_t m = std::min<std::size_t>(static_cast<std::size_t>(count), grid.size());
  const std::size_t stride = std::max<std::size_t>(1, grid.size() / m);
  std::vector<Complex> pts;
  for (std::size_t i = 0; i < m; ++i) pts.push_back(grid.points()[(i * stride) % grid.size()]);
  std::vector<std::pair<Complex, Complex>> out;
  for (Complex z : pts)
    for (Complex w : pts) out.emplace_back(z, w);
  return out;
}

// Number of steps where the sequence fails to decrease strictly.
int non_decreasing_steps(const std::vector<double>& v) {
  int n = 0;
  for (std::size_t i = 1; i < v.size(); ++i) n += v[i] < v[i - 1] ? 0 : 1;
  return n;
}

CheckRunner prepare_corollary_theta(const CheckParams& p) {
  const ModelOperator& t0 = p.op("t0");
  const ModelOperator& t1 = p.op("t1");
  const Matrix y = p.op("y").matrix;
  const std::string expect = p.choice("expect", {"accept", "reject"}, "accept");
  const std::optional<double> theta0 =
      p.has("expect_theta") ? std::optional(p.number("expect_theta")) : std::nullopt;
  const double tol = p.tolerance();
  return [=, &t0, &t1] {
    const ThetaCheck r = theta_intertwiner_check(t0, t1, y, tol);
    ConditionReport rep("corollary-theta");
    rep.add_info("theta", fmt(r.theta));
    if (expect == "reject") {
      rep.add("rejected", r.accepted ? 1.0 : 0.0, 0.0, "relation residual " + fmt(r.relation_residual));
      return rep;
    }
    rep.add("relation", r.relation_residual, tol, "Y T0 - T1 Y = e^{i theta}(T0 - T1)");
    if (r.accepted) rep.add("intertwining", r.intertwining_residual, tol, "U T = T~ U");
    if (theta0) {
      const double two_pi = 2.0 * std::numbers::pi;
      double d = std::fmod(std::abs(r.theta - *theta0), two_pi);
      d = std::min(d, two_pi - d);
      rep.add("theta", d, tol, "recovered vs expected phase");
    }
    return rep;
  };
}

CheckRunner prepare_curvature(const CheckParams& p) {
  std::optional<DiagonalKernel> kernel;
  std::optional<ModelRefs> model;
  if (p.has("kernel")) {
    kernel = p.kernel("kernel");
  } else {
    model = model_params(p);
    require_kernels(p, *model);
  }
  const std::string method = p.choice("method", {"series", "fd", "both"}, "series");
  const int bergman_n = p.integer("bergman_n", 0, 0);
  const double fd_tol = p.number("fd_tolerance", 1e-4);
  std::vector<DerivativeOrder> derivs;
  if (const Json* d = p.raw("derivatives")) {
    if (!d->is_array()) p.error("derivatives", "expected [[i, j], ...]");
    for (const Json& e : *d) {
      if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() || !e[1].is_number_integer() ||
          e[0].get<int>() < 0 || e[1].get<int>() < 0) {
        p.error("derivatives", "expected [[i, j], ...] with non-negative integers");
      }
      derivs.emplace_back(e[0].get<int>(), e[1].get<int>());
    }
  }
  const std::string csv = p.string("csv", "");
  const DiskGrid grid = p.grid();
  const double tol = p.tolerance();
  const std::filesystem::path out_dir = p.out_dir();
  if (bergman_n > 0 && !kernel) p.error("bergman_n", "closed form applies to a rank-1 kernel");

  return [=] {
    const FrameField frame =
        kernel ? frame_field(PolynomialFrame::section(*kernel), grid) : frame_field(model_frame(model->build()), grid);
    const MetricField metric = gram_metric(frame);
    ConditionReport rep("curvature");
    std::optional<CurvatureField> series, fd;
    if (method != "fd") series = curvature(metric, CurvatureMethod::kSeries, derivs);
    if (method != "series") {
      std::vector<DerivativeOrder> fd_derivs;
      for (auto d : derivs)
        if (d.first + d.second <= 1) fd_derivs.push_back(d);
      fd = curvature(metric, CurvatureMethod::kFiniteDifference, method == "fd" ? derivs : fd_derivs);
    }
    const CurvatureField& primary = series ? *series : *fd;
    if (bergman_n > 0) {
      double worst = 0.0;
      for (std::size_t i = 0; i < grid.size(); ++i) {
        const double x = std::norm(grid.points()[i]);
        const Complex k = primary.values[i](0, 0);
        worst = std::max(worst, std::abs(k + bergman_n / ((1.0 - x) * (1.0 - x))) / std::abs(k));
      }
      rep.add("closed-form", worst, tol, "|K + n/(1-|w|^2)^2| / |K|");
    }
    if (series && fd) {
      double worst = 0.0;
      for (std::size_t i = 0; i < grid.size(); ++i) {
        worst = std::max(worst, fro(series->values[i] - fd->values[i]) / fro(series->values[i]));
      }
      rep.add("series-vs-fd", worst, fd_tol, "relative, h = " + fmt(grid.fd_step()));
    }
    if (kernel) {
      double worst = 0.0;
      for (const Matrix& k : primary.values) {
        const Complex v = k(0, 0);
        worst = std::max(worst, v.real() < 0.0 ? std::abs(v.imag()) / std::abs(v) : 1.0);
      }
      rep.add("real-negative", worst, tol, "|Im K| / |K|, 1 where Re K >= 0");
    }
    rep.add_info("points", std::to_string(grid.size()));
    if (!csv.empty()) {
      std::ofstream out = open_output(out_dir / csv);
      write_curvature_csv(primary, out);
      rep.add_info("csv", csv);
    }
    return rep;
  };
}

CheckRunner prepare_curvature_isometry(const CheckParams& p) {
  const ModelRefs a = model_params(p);
  require_kernels(p, a);
  std::optional<ModelRefs> b;
  Matrix rotation;
  if (p.has("b_t0")) {
    b = model_params(p, "b_");
    require_kernels(p, *b, "b_");
  } else {
    Rng rng(static_cast<std::uint64_t>(p.integer("rotation_seed", 1)));
    rotation = random_unitary(2, rng);
  }
  const std::string expect = p.choice("expect", {"found", "not-found"}, b ? "not-found" : "found");
  const double min_fraction = p.number("min_fraction", expect == "found" ? 1.0 : 0.9);
  const bool mixed = p.boolean("include_mixed", false);
  const DiskGrid grid = p.grid();
  const double tol = p.tolerance();
  return [=] {
    std::vector<DerivativeOrder> derivs{{1, 0}, {0, 1}};
    if (mixed) derivs.emplace_back(1, 1);
    const PolynomialFrame fa = model_frame(a.build());
    const PolynomialFrame fb = b ? model_frame(b->build()) : fa.recombined(rotation);
    const MetricField ma = gram_metric(frame_field(fa, grid));
    const MetricField mb = gram_metric(frame_field(fb, grid));
    const CurvatureField ka = curvature(ma, CurvatureMethod::kSeries, derivs);
    const CurvatureField kb = curvature(mb, CurvatureMethod::kSeries, derivs);
    const IsometryCheck r = curvature_isometry_check(ka, kb, tol, mixed);
    const double found = static_cast<double>(r.found_count) / static_cast<double>(r.points.size());
    int certified = 0;
    for (const auto& pt : r.points) certified += pt.spectrum_mismatch ? 1 : 0;
    ConditionReport rep("curvature-isometry");
    if (expect == "found") {
      rep.add("max-residual", r.max_residual, tol, "joint intertwining residual");
      rep.add("found-fraction", 1.0 - found, 1.0 - min_fraction, "1 - fraction of points found");
    } else {
      rep.add("not-found-fraction", found, 1.0 - min_fraction, "fraction of points found");
    }
    rep.add_info("found", std::to_string(r.found_count) + "/" + std::to_string(r.points.size()));
    rep.add_info("spectrum-certified", std::to_string(certified));
    return rep;
  };
}

CheckRunner prepare_eigenframe(const CheckParams& p) {
  const ModelRefs m = model_params(p);
  require_kernels(p, m);
  const double tail_tol = p.number("tail_tol", 1e-8);
  const double factor = p.number("bound_factor", 10.0);
  const DiskGrid grid = p.grid();
  const double tol = p.tolerance();
  return [=] {
    const UpperTriangularModel model = m.build();
    const FrameField f = eigenframe(model, grid, tail_tol);
    const int n = static_cast<int>(model.block_size());
    const double bound =
        (1.0 + operator_norm(model.coupling)) * std::pow(grid.r_max(), n - 1) * factor;
    ConditionReport rep("eigenframe");
    rep.add("eigen-residual", f.max_residual(), tol, "max ||(T - w) gamma_i(w)||");
    rep.add("truncation-bound", f.max_residual(), bound, "(1 + ||X||) r^(N-1) * " + fmt(factor));
    return rep;
  };
}

CheckRunner prepare_fb2_membership(const CheckParams& p) {
  const ModelRefs m = model_params(p);
  const bool expect = p.boolean("expect", true);
  const double tol = p.tolerance();
  return [=] {
    const Fb2Membership r = fb2_membership(*m.t0, *m.t1, m.x->matrix, tol);
    ConditionReport rep("fb2-membership");
    if (expect) {
      rep.add("fb2", r.residual, r.threshold, "X T1^2 - 2 T0 X T1 + T0^2 X = 0");
    } else {
      rep.add("not-fb2", r.member ? 1.0 : 0.0, 0.0,
              "residual " + fmt(r.residual) + " vs threshold " + fmt(r.threshold));
    }
    return rep;
  };
}

CheckRunner prepare_homogeneity(const CheckParams& p) {
  const Complex lambda = p.complex("lambda", Complex(0.3, 0.1));
  const Complex mu = p.complex("mu", Complex(-0.2, 0.25));
  const Complex pc = p.complex("p", 0.4);
  const Complex qc = p.complex("q", Complex(0.1, -0.2));
  const Complex a = p.complex("a", Complex(0.35, -0.2));
  if (!(std::abs(a) < 1.0)) p.error("a", "|a| must be < 1");
  const double tol = p.tolerance();
  return [=] {
    // Involutive map (phase 0): diag(l, phi(l)) is conjugated to its image by the swap.
    const MobiusMap phi(a, 0.0);
    Matrix t0 = Matrix::Zero(2, 2), t1 = Matrix::Zero(2, 2), x(2, 2), swap = Matrix::Zero(2, 2);
    t0(0, 0) = lambda;
    t0(1, 1) = phi(lambda);
    t1(0, 0) = mu;
    t1(1, 1) = phi(mu);
    x << pc, qc, qc, pc;
    swap(0, 1) = swap(1, 0) = 1.0;
    const UpperTriangularModel model =
        assemble_model(model_from_matrix(t0), model_from_matrix(t1), x);
    HomogeneityWitness w;
    w.add({phi, swap, swap});
    return homogeneity_condition_check(model, w, tol);
  };
}

CheckRunner prepare_kernel_transform(const CheckParams& p) {
  const ModelRefs m = model_params(p);
  require_kernels(p, m);
  const int samples = p.integer("samples", 8, 1);
  const DiskGrid grid = p.grid();
  const double tol = p.tolerance();
  return [=] {
    const PolynomialFrame fa = model_frame(m.build());
    Matrix swap = Matrix::Zero(2, 2);
    swap(0, 1) = swap(1, 0) = 1.0;
    const FrameField a = frame_field(fa, grid);
    const FrameField b = frame_field(fa.recombined(swap), grid);
    const auto pairs = sample_pairs(grid, samples);
    ConditionReport rep("kernel-transform");
    rep.add("swap", kernel_transform_check(a, b, AntidiagonalWeight{}, pairs), tol,
            std::to_string(pairs.size()) + " sample pairs, phi = psi = 1");
    return rep;
  };
}

CheckRunner prepare_main1(const CheckParams& p) {
  const ModelRefs m = model_params(p);
  const bool dims = p.boolean("kernel_dims", false);
  const double tol = p.tolerance();
  return [=] {
    const UpperTriangularModel t = m.build();
    const UnitaryConstruction c = build_unitary_from_X(*m.t0, *m.t1, m.x->matrix);
    const Fb2Pair pair = construct_fb2_pair(c.u, t, c.t_tilde, tol);
    ConditionReport rep = pair.residuals;
    if (dims) {
      rep.add_info("dim Ker sigma(T0, T~0)",
                   std::to_string(sylvester_kernel(t.t0.matrix, c.t_tilde.t0.matrix).dimension));
      rep.add_info("dim Ker sigma(T~1, T1)",
                   std::to_string(sylvester_kernel(c.t_tilde.t1.matrix, t.t1.matrix).dimension));
    }
    return rep;
  };
}

CheckRunner prepare_main3(const CheckParams& p) {
  const DiagonalKernel& k0 = p.kernel("k0");
  const DiagonalKernel& k1 = p.kernel("k1");
  const DiagonalKernel& ks = p.kernel("ks");
  const Matrix x = p.op("x").matrix;
  const Matrix y = p.op("y").matrix;
  Main3Options opt;
  opt.psi = p.complexes("psi", opt.psi);
  opt.sample_points = p.integer("samples", opt.sample_points, 1);
  opt.kernel_dimension_truncation = p.integer("kernel_dims_truncation", opt.kernel_dimension_truncation, 0);
  const DiskGrid grid = p.grid();
  const double tol = p.tolerance();
  return [=, &k0, &k1, &ks] { return main3_verifier(k0, k1, ks, x, y, grid, tol, opt); };
}

CheckRunner prepare_mainlemma(const CheckParams& p) {
  const ModelRefs m = model_params(p);
  const double perturb = p.number("perturb", 0.0);
  const std::uint64_t seed = static_cast<std::uint64_t>(p.integer("perturb_seed", 1));
  const double tol = p.tolerance();
  return [=] {
    const UpperTriangularModel t = m.build();
    UnitaryConstruction c = build_unitary_from_X(*m.t0, *m.t1, m.x->matrix);
    if (perturb == 0.0) return verify_mainlemma(c.u, t, c.t_tilde, tol);
    Rng rng(seed);
    const Eigen::Index n = t.block_size();
    auto bump = [&](const Matrix& b) -> Matrix { return b + perturb * random_gaussian(n, n, rng); };
    const BlockUnitary u = BlockUnitary::unchecked(bump(c.u.u00()), bump(c.u.u01()),
                                                   bump(c.u.u10()), bump(c.u.u11()));
    ConditionReport rep = verify_mainlemma(u, t, c.t_tilde, tol);
    rep.add_info("perturbation", fmt(perturb));
    return rep;
  };
}

std::vector<MobiusMap> maps_param(const CheckParams& p) {
  const Json* j = p.raw("maps");
  if (!j) return default_mobius_sample();
  if (!j->is_array() || j->empty()) p.error("maps", "expected a non-empty array of {a, phase}");
  std::vector<MobiusMap> out;
  for (const Json& e : *j) {
    if (!e.is_object() || !e.contains("a")) p.error("maps", "each map needs \"a\"");
    const Json& a = e["a"];
    Complex av;
    if (a.is_number()) av = a.get<double>();
    else if (a.is_array() && a.size() == 2 && a[0].is_number() && a[1].is_number())
      av = {a[0].get<double>(), a[1].get<double>()};
    else p.error("maps", "\"a\" must be a number or [re, im]");
    const double phase = e.contains("phase") && e["phase"].is_number() ? e["phase"].get<double>() : 0.0;
    if (!(std::abs(av) < 1.0)) p.error("maps", "|a| must be < 1");
    out.emplace_back(av, phase);
  }
  return out;
}

CheckRunner prepare_mobius_block(const CheckParams& p) {
  const ModelRefs m = model_params(p);
  const std::vector<MobiusMap> maps = maps_param(p);
  const double inv_tol = p.number("involution_tolerance", 1e-9);
  const double tol = p.tolerance();
  return [=] {
    const UpperTriangularModel t = m.build();
    const double scale = std::max(1.0, fro(t.t));
    ConditionReport rep("mobius-block");
    for (std::size_t k = 0; k < maps.size(); ++k) {
      const std::string pre = "phi" + std::to_string(k) + "/";
      rep.merge(mobius_block_identity_check(t, maps[k], tol * scale), pre);
      if (maps[k].phase() == 0.0) {
        rep.add(pre + "involution", fro(maps[k](maps[k](t.t)) - t.t), inv_tol, "phi(phi(T)) = T");
      }
    }
    return rep;
  };
}

CheckRunner prepare_separator(const CheckParams& p) {
  const std::vector<double> ns = p.numbers("bergman", {1.0, 2.0});
  if (ns.size() != 2 || ns[0] < 1 || ns[1] < 1 || ns[0] != std::floor(ns[0]) || ns[1] != std::floor(ns[1])) {
    p.error("bergman", "expected two positive integers");
  }
  const std::vector<double> radii = p.numbers("radii", {0.9, 0.99, 0.999});
  const double endpoint = p.number("endpoint_max", 0.05);
  const double tol = p.tolerance();
  const int n0 = static_cast<int>(ns[0]), n1 = static_cast<int>(ns[1]);
  return [=] {
    const int n = required_truncation(*std::max_element(radii.begin(), radii.end()));
    const DiagonalKernel k0 = bergman_coefficients(n0, n);
    const DiagonalKernel k1 = bergman_coefficients(n1, n);
    const DiagonalKernel ks = separator_kernel(k0, k1);
    ConditionReport rep("separator");
    rep.add_info("truncation", std::to_string(n));
    for (int i = 0; i < 2; ++i) {
      const auto samples = diagonal_ratio(ks, i == 0 ? k0 : k1, radii);
      std::vector<double> ratios;
      for (const auto& s : samples) ratios.push_back(s.ratio);
      const std::string id = std::to_string(i);
      rep.add("decreasing-" + id, non_decreasing_steps(ratios), 0.0, "Ks/K" + id + " strictly decreasing");
      rep.add("endpoint-" + id, ratios.back(), endpoint, "Ks/K" + id + " at r = " + fmt(radii.back()));
      if (i == 0 && n0 == 1) {
        double worst = 0.0;
        for (const auto& s : samples) {
          const double x = s.radius * s.radius;
          worst = std::max(worst, std::abs(s.ratio - (1.0 - x) * std::log(1.0 / (1.0 - x)) / x));
        }
        rep.add("closed-form-0", worst, tol, "(1 - r^2) ln(1/(1 - r^2)) / r^2");
      }
    }
    return rep;
  };
}

CheckRunner prepare_similarity_split(const CheckParams& p) {
  const ModelRefs m = model_params(p);
  const double tol = p.tolerance();
  return [=] {
    const UpperTriangularModel t = m.build();
    const SimilaritySplit s = similarity_split(t);
    const double scale = std::max(1.0, fro(t.t));
    ConditionReport rep("similarity-split");
    rep.add("split", s.residual, tol * scale, "W T = (T0 + T1) W");
    rep.add("inverse", fro(s.w * s.w_inv - identity(s.w.rows())), tol, "W W^{-1} = I");
    return rep;
  };
}

CheckRunner prepare_sylvester(const CheckParams& p) {
  const Matrix a = p.op("a").matrix;
  const Matrix c = p.op("c").matrix;
  const int expect = p.integer("expect_dimension", -1, 0);
  const double svd_tol = p.number("svd_tolerance", 1e-10);
  const double tol = p.tolerance();
  return [=] {
    const IntertwinerSpace s = sylvester_kernel(a, c, svd_tol);
    ConditionReport rep("sylvester");
    rep.add("basis-residual", s.residual, tol, "max ||A B - B C||");
    if (expect >= 0) {
      rep.add("dimension", std::abs(s.dimension - expect), 0.0,
              "found " + std::to_string(s.dimension) + ", expected " + std::to_string(expect));
    }
    rep.add_info("dimension", std::to_string(s.dimension));
    return rep;
  };
}

CheckRunner prepare_thm45(const CheckParams& p) {
  const Matrix t0 = p.op("t0").matrix;
  const Complex a = p.complex("a", Complex(0.3, 0.2));
  if (!(std::abs(a) < 1.0)) p.error("a", "|a| must be < 1");
  const double tol = p.tolerance();
  return [=] {
    // T1 = phi(T0) with phi involutive, X = I: the phase-0 scalar-block unitary
    // intertwines T with phi(T).
    const MobiusMap phi(a, 0.0);
    const ModelOperator m0 = model_from_matrix(t0);
    const ModelOperator m1 = model_from_matrix(phi(t0));
    const Eigen::Index n = t0.rows();
    const UpperTriangularModel model = assemble_model(m0, m1, identity(n));
    const ThetaCheck c = theta_intertwiner_check(m0, m1, identity(n), 1e-10);
    if (!c.u) fail(ErrorKind::kPrecondition, "scalar-block unitary unavailable");
    return thm45_condition_check(*c.u, model, phi, tol);
  };
}

std::vector<CheckEntry> make_registry() {
  std::vector<CheckEntry> r{
      {"corollary-theta", "recover theta and the scalar-block unitary for coupling T1 - T0",
       "Y T0 - T1 Y = e^{i theta}(T0 - T1)", prepare_corollary_theta},
      {"curvature", "curvature field of a kernel or model frame, closed form and series/fd agreement",
       "K = -dbar(h^{-1} dh)", prepare_curvature},
      {"curvature-isometry", "pointwise unitary intertwining of curvature tuples of two rank-2 models",
       "V_w K_{z^i zbar^j} = K~_{z^i zbar^j} V_w", prepare_curvature_isometry},
      {"eigenframe", "eigen-residuals of gamma_0 = (t0, 0), gamma_1 = (X t1, t1)",
       "(T - w) gamma_i(w) = 0", prepare_eigenframe},
      {"fb2-membership", "quadratic intertwining relation of the coupling",
       "X T1^2 - 2 T0 X T1 + T0^2 X = 0", prepare_fb2_membership},
      {"homogeneity", "Mobius witness unitaries on a diagonal toy model",
       "U0 X = X U1, U_i T_i U_i^* = phi(T_i)", prepare_homogeneity},
      {"kernel-transform", "antidiagonal transform of the rank-2 frame kernel",
       "Phi(z) K(z, w) Phi(w)^* = K~(z, w)", prepare_kernel_transform},
      {"main1", "FB2 pair (F, F~) and the similarity Z F = F~ Z from the normal-X unitary",
       "S0 = Y U10 - U01 X^*, S1 = U01^* Y - X^* U10^*", prepare_main1},
      {"main3", "kernel hypotheses and frame-kernel transform with a separating kernel",
       "X^* t0 = 2 Y t1, ||t0||^2 = 2(||Y t1||^2 + ||t1||^2)", prepare_main3},
      {"mainlemma", "the three intertwining conditions of the normal-X unitary",
       "(I + XX^*)^{-1} = U10^* U10", prepare_mainlemma},
      {"mobius-block", "block form of phi(T) and of T^n",
       "phi(T) = [[phi(T0), X phi(T1) - phi(T0) X], [0, phi(T1)]]", prepare_mobius_block},
      {"separator", "boundary decay of Ks/K_i for the separating kernel",
       "s_n = min(a_n, b_n)/(n + 1)", prepare_separator},
      {"similarity-split", "similarity of T to T0 (+) T1",
       "W T = (T0 + T1) W, W = [[I, -X], [0, I]]", prepare_similarity_split},
      {"sylvester", "null space of B -> A B - B C", "A B = B C", prepare_sylvester},
      {"thm45", "block conditions for U T = phi(T) U", "U00 = X U10 = U01 X^*", prepare_thm45},
  };
  std::sort(r.begin(), r.end(), [](const CheckEntry& a, const CheckEntry& b) { return a.name < b.name; });
  return r;
}

}  // namespace

const std::vector<CheckEntry>& check_registry() {
  static const std::vector<CheckEntry> registry = make_registry();
  return registry;
}

}  // namespace cdlab
