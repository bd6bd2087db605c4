#include "hhb/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>

#include "hhb/errors.hpp"
#include "hhb/integrate.hpp"
#include "hhb/kernels.hpp"
#include "hhb/quadrature.hpp"
#include "hhb/spaces.hpp"
#include "hhb/specfun.hpp"

namespace hhb {

namespace {

Json command_defaults(const std::string& command) {
  if (command == "cm-table") return {{"n", 2}, {"alpha", 0.0}, {"max_degree", 50}};
  if (command == "kernel-scan") {
    return {{"n", 3},
            {"alpha", 0.0},
            {"s", 0.0},
            {"t", 0.0},
            {"k", 0},
            {"thetas", {0.0, 0.1, 0.5}},
            {"radii", {0.90, 0.95, 0.99}},
            {"tolerance", 1e-12}};
  }
  if (command == "reproduce-check") {
    return {{"n", 3},         {"alpha", 0.0},      {"beta", 2.0},        {"p", 2.0},
            {"t", 1.0},       {"max_degree", 5},   {"points", 20},       {"radius", 0.7},
            {"radial_nodes", 0}, {"sphere_degree", 0}, {"tolerance", 1e-10}};
  }
  if (command == "norm-equiv") {
    return {{"n", 3},
            {"alpha", 0.0},
            {"p", 2.0},
            {"family", "kernel-slices"},
            {"family_alpha", 0.0},
            {"members", 10},
            {"max_degree", 10},
            {"k", 0},
            {"s", 0.0},
            {"t", 0.0},
            {"radial_nodes", 0},
            {"sphere_degree", 0},
            {"probe_radius", 0.5},
            {"inclusion", Json::array({Json{{"alpha", 0.0}, {"beta", 1.0}},
                                       Json{{"alpha", 1.0}, {"beta", 0.0}}})},
            {"inclusion_gamma", 0.0},
            {"inclusion_steps", 6}};
  }
  if (command == "estimate-scan") {
    return {{"n", 3},
            {"ltxy_samples", 100000},
            {"lint_samples", 2000},
            {"nodes", 64},
            {"radius", 0.99},
            {"cases", Json::array({Json::array({0.0, 1.0}), Json::array({0.5, 0.0}),
                                   Json::array({1.0, -0.5})})}};
  }
  throw ParameterError("unknown command '" + command + "'");
}

int checked_dim(const ExperimentConfig& cfg) {
  const int n = cfg.integer("n");
  if (n < 2 || n > kMaxDim) throw ParameterError("n must lie in [2, 8]");
  return n;
}

std::vector<double> numbers(const Json& j, const std::string& key) {
  if (!j.is_array()) throw ParameterError(key + " must be an array of numbers");
  std::vector<double> out;
  for (const auto& v : j) {
    if (!v.is_number()) throw ParameterError(key + " must be an array of numbers");
    out.push_back(v.get<double>());
  }
  return out;
}

Json scan_json(const std::string& name, int order, const KernelScan& s) {
  Json j;
  j["operator"] = name;
  j["order"] = order;
  j["exponent"] = s.exponent;
  j["log_factor"] = s.log_factor;
  Json rows = Json::array();
  for (const auto& r : s.rows) {
    rows.push_back({{"theta", r.theta},
                    {"r", r.r},
                    {"value", r.value},
                    {"bracket", r.bracket},
                    {"normalized", r.normalized},
                    {"normalized_raised", r.normalized_raised},
                    {"degree", r.degree}});
  }
  j["rows"] = std::move(rows);
  Json sum = Json::array();
  for (const auto& r : s.summary) {
    sum.push_back({{"theta", r.theta},
                   {"growth", r.growth},
                   {"growth_raised", r.growth_raised},
                   {"divergence", r.divergence}});
  }
  j["summary"] = std::move(sum);
  j["y0"] = s.y0_values;
  return j;
}

int smallest_order(double alpha, double p) {
  int k = 1;
  while (!(alpha + p * k > -1.0)) ++k;
  return k;
}

std::vector<NormSpec> configured_specs(const ExperimentConfig& cfg, int n) {
  const double p = cfg.number("p");
  const double alpha = cfg.number("alpha");
  const NormQuadrature quad{cfg.integer("radial_nodes"), cfg.integer("sphere_degree")};
  std::vector<NormSpec> specs;
  if (cfg.has("specs") && !cfg.at("specs").is_null()) {
    for (const auto& js : cfg.at("specs")) {
      NormSpec s;
      s.kind = parse_norm_kind(js.at("kind").get<std::string>());
      s.p = js.value("p", p);
      s.alpha = js.value("alpha", alpha);
      s.s = js.value("s", 0.0);
      s.t = js.value("t", 0.0);
      s.k = js.value("k", smallest_order(s.alpha, s.p));
      specs.push_back(s);
    }
  } else {
    const int k = cfg.integer("k") > 0 ? cfg.integer("k") : smallest_order(alpha, p);
    const double t = cfg.number("t") != 0.0 ? cfg.number("t") : double(smallest_order(alpha, p));
    if (alpha > -1.0) specs.push_back(NormSpec::direct(p, alpha));
    specs.push_back(NormSpec::dst(p, alpha, cfg.number("s"), t));
    if (n <= 5 && k <= 3) specs.push_back(NormSpec::tangential(p, alpha, k));
    specs.push_back(NormSpec::normal(p, alpha, k));
    specs.push_back(NormSpec::partial(p, alpha, k));
  }
  for (auto& s : specs) {
    s.quad = quad;
    s.validate(n);
  }
  return specs;
}

std::vector<HHarmonicFunction> configured_family(const ExperimentConfig& cfg, int n) {
  const std::string kind = cfg.at("family").get<std::string>();
  const int members = cfg.integer("members");
  const int degree = cfg.integer("max_degree");
  if (members < 1) throw ParameterError("members must be at least 1");
  if (degree < 0) throw ParameterError("max_degree must be nonnegative");
  if (kind == "kernel-slices") return kernel_slice_family(n, cfg.number("family_alpha"), degree, members);
  if (kind == "constant") return {HHarmonicFunction::constant(n, 1.0)};
  if (kind == "random") {
    const std::uint64_t seed = cfg.seed();
    std::vector<HHarmonicFunction> out;
    for (int j = 0; j < members; ++j) out.push_back(random_hharmonic(n, degree, seed + j));
    return out;
  }
  throw ParameterError("family must be kernel-slices, constant or random");
}

}  // namespace

ExperimentConfig::ExperimentConfig(std::string command, Json values)
    : command_(std::move(command)), values_(std::move(values)) {}

ExperimentConfig ExperimentConfig::defaults(const std::string& command) {
  return ExperimentConfig(command, command_defaults(command));
}

void ExperimentConfig::merge(const Json& layer) {
  if (layer.is_null()) return;
  if (!layer.is_object()) throw ParameterError("configuration must be a JSON object");
  for (auto it = layer.begin(); it != layer.end(); ++it) values_[it.key()] = it.value();
}

bool ExperimentConfig::has(const std::string& key) const { return values_.contains(key); }

const Json& ExperimentConfig::at(const std::string& key) const {
  if (!values_.contains(key)) throw ParameterError("missing configuration key '" + key + "'");
  return values_.at(key);
}

double ExperimentConfig::number(const std::string& key) const {
  const Json& v = at(key);
  if (!v.is_number()) throw ParameterError("configuration key '" + key + "' must be a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) throw ParameterError("configuration key '" + key + "' must be finite");
  return d;
}

int ExperimentConfig::integer(const std::string& key) const {
  const double d = number(key);
  if (d != std::floor(d) || std::abs(d) > 1e9) {
    throw ParameterError("configuration key '" + key + "' must be an integer");
  }
  return static_cast<int>(d);
}

std::uint64_t ExperimentConfig::seed() const {
  if (!has("seed") || values_.at("seed").is_null()) {
    throw ParameterError("seed is required for randomized experiments");
  }
  const Json& v = values_.at("seed");
  if (!v.is_number_integer() || v.get<long long>() < 0) {
    throw ParameterError("seed must be a nonnegative integer");
  }
  return v.get<std::uint64_t>();
}

std::string ExperimentConfig::hash() const {
  const std::string text = command_ + "\n" + nlohmann::json::parse(values_.dump()).dump();
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[20];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

Json ExperimentConfig::provenance() const {
  return {{"library", "hhb"}, {"version", HHB_VERSION}, {"command", command_}, {"config_hash", hash()}};
}

std::string cmd_cm_table(const ExperimentConfig& cfg) {
  const int n = checked_dim(cfg);
  const double alpha = cfg.number("alpha");
  const int M = cfg.integer("max_degree");
  if (M < 0) throw ParameterError("max_degree must be nonnegative");
  const auto c = CoefficientFamily(n, alpha).range(M);
  std::string out = "# hhb " + std::string(HHB_VERSION) + " cm-table config=" + cfg.hash() + "\r\n";
  out += "m,c_m,c_m_over_m_pow\r\n";
  for (int m = 0; m <= M; ++m) {
    const double cm = c[static_cast<std::size_t>(m)];
    out += std::to_string(m) + "," + format_number(cm) + ",";
    if (m > 0) out += format_number(cm / std::pow(m, alpha + 1.0));
    out += "\r\n";
  }
  return out;
}

Json cmd_kernel_scan(const ExperimentConfig& cfg) {
  const int n = checked_dim(cfg);
  const double alpha = cfg.number("alpha");
  const double t = cfg.number("t");
  const int k = cfg.integer("k");
  if (k < 0 || k > n - 1) throw ParameterError("k must lie in [0, n-1]");
  KernelScanConfig base;
  base.n = n;
  base.alpha = alpha;
  base.thetas = numbers(cfg.at("thetas"), "thetas");
  base.radii = numbers(cfg.at("radii"), "radii");
  base.tolerance = cfg.number("tolerance");
  for (double r : base.radii) {
    if (!(r > 0.0 && r < 1.0)) throw ParameterError("scan radii must lie in (0, 1)");
  }
  Json scans = Json::array();
  KernelScanConfig dst = base;
  if (t != 0.0) {
    dst.op.multiplier = true;
    dst.op.s = cfg.number("s");
    dst.op.t = t;
  }
  scans.push_back(scan_json("dst", 0, kernel_growth_scan(dst)));
  if (alpha > -1.0) {
    for (int order = 1; order <= n - 1; ++order) {
      if (k > 0 && order != k) continue;
      KernelScanConfig c = base;
      c.op.order = order;
      c.op.kind = KernelOperator::Kind::AxialPartial;
      scans.push_back(scan_json("partial", order, kernel_growth_scan(c)));
      c.op.kind = KernelOperator::Kind::Normal;
      scans.push_back(scan_json("normal", order, kernel_growth_scan(c)));
    }
  }
  Json out;
  out["provenance"] = cfg.provenance();
  out["config"] = cfg.values();
  out["scans"] = std::move(scans);
  return out;
}

Json cmd_reproduce_check(const ExperimentConfig& cfg) {
  const int n = checked_dim(cfg);
  const double alpha = cfg.number("alpha");
  const double beta = cfg.number("beta");
  const double p = cfg.number("p");
  const double t = cfg.number("t");
  const int M = cfg.integer("max_degree");
  const int points = cfg.integer("points");
  const double radius = cfg.number("radius");
  const double tol = cfg.number("tolerance");
  if (!(p >= 1.0)) throw ParameterError("p must be at least 1");
  if (!(alpha + 1.0 < p * (beta + 1.0))) throw ParameterError("alpha+1 < p*(beta+1) is violated");
  if (M < 0 || M > kMaxZonalPolynomialDegree) throw ParameterError("max_degree must lie in [0, 64]");
  if (points < 1) throw ParameterError("points must be at least 1");
  if (!(radius >= 0.0 && radius < 1.0)) throw ParameterError("radius must lie in [0, 1)");
  const std::uint64_t seed = cfg.seed();

  const HHarmonicFunction f = random_hharmonic(n, M, seed);
  std::mt19937_64 rng(seed + 1);
  std::vector<std::vector<double>> xs;
  for (int i = 0; i < points; ++i) xs.push_back(random_ball_point(n, radius, rng));

  Json out;
  out["provenance"] = cfg.provenance();
  out["config"] = cfg.values();
  out["precondition"] = {{"inequality", "alpha+1 < p*(beta+1)"}, {"holds", true}};

  double exact = 0.0;
  for (const auto& x : xs) {
    const BallPoint bx(x);
    const double fx = f(x);
    const double v = inner_product_B2(f, kernel_as_function(n, beta, bx, M), beta);
    exact = std::max(exact, std::abs(v - fx) / (1.0 + std::abs(fx)));
  }
  out["exact_route"] = {{"max_scaled_residual", exact}};

  if (beta > -1.0) {
    const int mk = kernel_truncation_degree(n, beta, radius, tol);
    const int extra = static_cast<int>(std::ceil(std::max(t, 0.0)));
    int sphere = cfg.integer("sphere_degree");
    int radial = cfg.integer("radial_nodes");
    if (sphere <= 0) sphere = std::min(kMaxSphereDegree, mk + M + 2 * extra);
    if (radial <= 0) radial = (mk + M) / 2 + 16 + extra;
    const BallRule rule = make_ball_rule(n, beta, radial, sphere);
    std::vector<BallPoint> bxs;
    for (const auto& x : xs) bxs.emplace_back(x);
    const auto proj = project_sampled(beta, sample_on_rule(f, rule), bxs, rule, tol);
    double quad = 0.0;
    int degree = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      const double fx = f(xs[i]);
      degree = std::max(degree, proj[i].kernel_degree);
      quad = std::max(quad, std::abs(proj[i].value - fx) / std::abs(fx));
    }
    out["quadrature_route"] = {{"max_relative_residual", quad},
                               {"kernel_degree", degree},
                               {"radial_nodes", radial},
                               {"sphere_degree", sphere}};

    // Right inverse: g = (V_beta / V_{beta+t}) (1-|y|^2)^t D^t_beta f satisfies P_beta g = f.
    if (beta + t > -1.0) {
      const HHarmonicFunction h = apply_Dst(beta, t, f);
      const double scale = v_alpha(n, beta) / v_alpha(n, beta + t);
      const ScalarField g = [&](std::span<const double> y) {
        return scale * std::pow(1.0 - norm_sq(y), t) * h(y);
      };
      const auto pg = project_sampled(beta, sample_on_rule(g, rule), bxs, rule, tol);
      double besov = 0.0;
      for (std::size_t i = 0; i < xs.size(); ++i) {
        const double fx = f(xs[i]);
        besov = std::max(besov, std::abs(pg[i].value - fx) / std::abs(fx));
      }
      out["multiplier_route"] = {{"t", t}, {"max_relative_residual", besov}};
    } else {
      out["multiplier_route"] = {{"skipped", "beta+t must exceed -1"}};
    }
  } else {
    out["quadrature_route"] = {{"skipped", "beta must exceed -1 for quadrature"}};
  }
  return out;
}

std::string cmd_norm_equiv(const ExperimentConfig& cfg, Json* summary) {
  const int n = checked_dim(cfg);
  const auto specs = configured_specs(cfg, n);
  const auto family = configured_family(cfg, n);
  const EquivalenceReport rep = equivalence_report(family, specs);

  std::string csv = "# hhb " + std::string(HHB_VERSION) + " norm-equiv config=" + cfg.hash() + "\r\n";
  csv += report_csv(rep);
  if (summary == nullptr) return csv;

  Json s;
  s["provenance"] = cfg.provenance();
  s["config"] = cfg.values();
  s["specs"] = rep.spec_labels;
  s["summary"] = report_summary_json(rep);
  s["anomalies"] = rep.anomalies;
  Json flags = Json::array();
  for (const auto& sp : specs) {
    if (sp.kind == NormKind::Partial && !sp.condalpha_holds(n)) {
      flags.push_back(sp.label() + ": alpha+p*(n-1) > -1 fails");
    }
  }
  s["condalpha_flags"] = std::move(flags);

  std::vector<double> probe(static_cast<std::size_t>(n), 0.0);
  probe[1] = cfg.number("probe_radius");
  if (!(std::abs(probe[1]) < 1.0)) throw ParameterError("probe_radius must lie in (-1, 1)");
  Json ratios = Json::array();
  double worst = 0.0;
  for (std::size_t i = 0; i < family.size(); ++i) {
    const double r = std::abs(family[i](probe)) / rep.norms[i][0];
    ratios.push_back(r);
    worst = std::max(worst, r);
  }
  s["point_evaluation"] = {{"x", probe}, {"spec", rep.spec_labels[0]}, {"ratios", ratios}, {"max", worst}};

  Json inc = Json::array();
  for (const auto& pr : cfg.at("inclusion")) {
    const auto probe_res = inclusion_probe(n, pr.at("alpha").get<double>(), pr.at("beta").get<double>(),
                                           cfg.number("inclusion_gamma"), cfg.integer("inclusion_steps"));
    Json rows = Json::array();
    for (const auto& r : probe_res.rows) {
      rows.push_back({{"j", r.j},
                      {"a", r.a},
                      {"degree", r.degree},
                      {"norm_alpha", r.norm_alpha},
                      {"norm_beta", r.norm_beta},
                      {"ratio", r.ratio}});
    }
    inc.push_back({{"alpha", probe_res.alpha},
                   {"beta", probe_res.beta},
                   {"p", 2.0},
                   {"q", 2.0},
                   {"inclusion_expected", probe_res.inclusion_expected},
                   {"rows", rows},
                   {"growth", probe_res.growth}});
  }
  s["inclusion"] = std::move(inc);
  *summary = std::move(s);
  return csv;
}

Json cmd_estimate_scan(const ExperimentConfig& cfg) {
  const int n = checked_dim(cfg);
  const std::uint64_t seed = cfg.seed();
  const int ltxy = cfg.integer("ltxy_samples");
  const int lint = cfg.integer("lint_samples");
  const int nodes = cfg.integer("nodes");
  const double radius = cfg.number("radius");
  if (ltxy < 1 || lint < 1) throw ParameterError("sample counts must be positive");
  if (nodes < 2 || nodes > 2048) throw ParameterError("nodes must lie in [2, 2048]");
  if (!(radius > 0.0 && radius < 1.0)) throw ParameterError("radius must lie in (0, 1)");

  Json out;
  out["provenance"] = cfg.provenance();
  out["config"] = cfg.values();
  const LtxyScan lt = ltxy_scan(n, ltxy, seed);
  out["ltxy"] = {{"samples", lt.samples}, {"violations", lt.violations}, {"min_ratio", lt.min_ratio}};
  Json cases = Json::array();
  std::uint64_t i = 0;
  for (const auto& c : cfg.at("cases")) {
    const auto bc = numbers(c, "cases");
    if (bc.size() != 2) throw ParameterError("each case must be a pair [b, c]");
    const Lint01Scan s = lint01_scan(n, bc[0], bc[1], lint, seed + 1 + i++, nodes, radius);
    cases.push_back({{"b", s.b},
                     {"c", s.c},
                     {"nodes", s.nodes},
                     {"sup_ratio", s.sup_ratio},
                     {"sup_ratio_refined", s.sup_ratio_refined},
                     {"drift", s.drift},
                     {"min_bracket", s.min_bracket}});
  }
  out["lint01"] = std::move(cases);
  return out;
}

}  // namespace hhb
