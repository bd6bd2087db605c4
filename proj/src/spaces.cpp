#include "hhb/spaces.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "hhb/errors.hpp"
#include "hhb/integrate.hpp"
#include "hhb/kernels.hpp"
#include "hhb/quadrature.hpp"
#include "hhb/specfun.hpp"

namespace hhb {

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

bool is_zero_function(const HHarmonicFunction& f) {
  for (const auto& [m, b] : f.blocks()) {
    if (b.scale == 0.0) continue;
    if (!b.poly.is_zero()) return false;
    for (const auto& t : b.terms) {
      if (t.a != 0.0) return false;
    }
  }
  return true;
}

BallRule rule_for(int n, double weight, int degree, double p, const NormQuadrature& q) {
  const int d = std::max(degree, 0);
  int radial = q.radial_nodes;
  int sphere = q.sphere_degree;
  if (p == 2.0) {
    if (radial <= 0) radial = d + 16;
    if (sphere <= 0) sphere = 2 * d + 2;
  } else {
    if (radial <= 0) radial = 2 * d + 24;
    if (sphere <= 0) sphere = 2 * d + 16;
  }
  sphere = std::min(sphere, kMaxSphereDegree);
  return make_ball_rule(n, weight, radial, sphere);
}

double finish(double sum, double p) { return p == 1.0 ? sum : std::pow(sum, 1.0 / p); }

double lp_norm(const HHarmonicFunction& h, double p, double weight, const NormQuadrature& q) {
  if (h.blocks().empty()) return 0.0;
  const BallRule rule = rule_for(h.dim(), weight, h.max_degree(), p, q);
  const double sum = ball_integral_shells(
      rule, [&](double u) { return h.profile_values(u); },
      [&](const std::vector<double>& prof, std::span<const double> x) {
        return std::pow(std::abs(h.eval_with(x, prof)), p);
      });
  return finish(sum, p);
}

double lp_norm(const DerivedField& h, double p, double weight, const NormQuadrature& q) {
  if (h.is_zero()) return 0.0;
  int degree = 0;
  for (const auto& [key, poly] : h.atoms()) degree = std::max(degree, std::max(key.first, poly.degree()));
  const BallRule rule = rule_for(h.dim(), weight, degree, p, q);
  const double sum = ball_integral_shells(
      rule, [&](double u) { return h.radial_values(u); },
      [&](const std::vector<double>& rad, std::span<const double> x) {
        return std::pow(std::abs(h.eval_with(x, rad)), p);
      });
  return finish(sum, p);
}

double tangential_sum(const HHarmonicFunction& f, int k, double p, double weight,
                      const NormQuadrature& q) {
  const auto pairs = tangential_pairs(f.dim());
  std::vector<HHarmonicFunction> level{f};
  for (int step = 0; step < k; ++step) {
    std::vector<HHarmonicFunction> next;
    next.reserve(level.size() * pairs.size());
    for (const auto& g : level) {
      for (const auto& [i, j] : pairs) next.push_back(tangential(g, i, j));
    }
    level = std::move(next);
  }
  double s = 0.0;
  for (const auto& g : level) s += lp_norm(g, p, weight, q);
  return s;
}

}  // namespace

NormSpec NormSpec::direct(double p, double alpha) {
  NormSpec s;
  s.kind = NormKind::Direct;
  s.p = p;
  s.alpha = alpha;
  return s;
}

NormSpec NormSpec::dst(double p, double alpha, double s_, double t_) {
  NormSpec s = direct(p, alpha);
  s.kind = NormKind::Dst;
  s.s = s_;
  s.t = t_;
  return s;
}

NormSpec NormSpec::tangential(double p, double alpha, int k) {
  NormSpec s = direct(p, alpha);
  s.kind = NormKind::Tangential;
  s.k = k;
  return s;
}

NormSpec NormSpec::normal(double p, double alpha, int k) {
  NormSpec s = tangential(p, alpha, k);
  s.kind = NormKind::Normal;
  return s;
}

NormSpec NormSpec::partial(double p, double alpha, int k) {
  NormSpec s = tangential(p, alpha, k);
  s.kind = NormKind::Partial;
  return s;
}

double NormSpec::weight() const {
  switch (kind) {
    case NormKind::Direct:
      return alpha;
    case NormKind::Dst:
      return alpha + p * t;
    default:
      return alpha + p * k;
  }
}

void NormSpec::validate(int n) const {
  if (!(p >= 1.0) || !std::isfinite(p)) throw ParameterError("p must be at least 1");
  if (!std::isfinite(alpha)) throw ParameterError("alpha must be finite");
  switch (kind) {
    case NormKind::Direct:
      if (!(alpha > -1.0)) throw ParameterError("alpha must exceed -1");
      return;
    case NormKind::Dst:
      if (!std::isfinite(s) || !std::isfinite(t)) throw ParameterError("s and t must be finite");
      if (!(alpha + p * t > -1.0)) throw ParameterError("alpha+p*t must exceed -1");
      return;
    default:
      break;
  }
  if (k < 1) throw ParameterError("k must be at least 1");
  if (!(alpha + p * k > -1.0)) throw ParameterError("alpha+p*k must exceed -1");
  if (kind == NormKind::Tangential && (k > 3 || n > 5)) {
    throw UnsupportedError("tangential norms require k <= 3 and n <= 5");
  }
  if (kind == NormKind::Partial && k > kMaxPartialOrder) {
    throw UnsupportedError("partial norms require k <= 6");
  }
}

bool NormSpec::condalpha_holds(int n) const { return alpha + p * (n - 1) > -1.0; }

std::string norm_kind_name(NormKind kind) {
  switch (kind) {
    case NormKind::Direct:
      return "direct";
    case NormKind::Dst:
      return "dst";
    case NormKind::Tangential:
      return "tangential";
    case NormKind::Normal:
      return "normal";
    case NormKind::Partial:
      return "partial";
  }
  return "?";
}

NormKind parse_norm_kind(const std::string& name) {
  for (NormKind k : {NormKind::Direct, NormKind::Dst, NormKind::Tangential, NormKind::Normal,
                     NormKind::Partial}) {
    if (norm_kind_name(k) == name) return k;
  }
  throw ParameterError("unknown norm characterization '" + name + "'");
}

std::string NormSpec::label() const {
  std::string out = norm_kind_name(kind) + "(p=" + fmt(p) + ",alpha=" + fmt(alpha);
  if (kind == NormKind::Dst) {
    out += ",s=" + fmt(s) + ",t=" + fmt(t);
  } else if (kind != NormKind::Direct) {
    out += ",k=" + std::to_string(k);
  }
  return out + ")";
}

double norm(const HHarmonicFunction& f, const NormSpec& spec) {
  const int n = f.dim();
  spec.validate(n);
  const double p = spec.p;
  const double w = spec.weight();
  switch (spec.kind) {
    case NormKind::Direct:
      return lp_norm(f, p, w, spec.quad);
    case NormKind::Dst:
      return lp_norm(apply_Dst(spec.s, spec.t, f), p, w, spec.quad);
    case NormKind::Tangential: {
      const std::vector<double> origin(static_cast<std::size_t>(n), 0.0);
      return tangential_sum(f, spec.k, p, w, spec.quad) + std::abs(f(origin));
    }
    case NormKind::Normal: {
      const std::vector<double> origin(static_cast<std::size_t>(n), 0.0);
      return lp_norm(normal_k(f, spec.k), p, w, spec.quad) + std::abs(f(origin));
    }
    case NormKind::Partial: {
      const std::vector<double> origin(static_cast<std::size_t>(n), 0.0);
      double s = 0.0;
      for (const auto& kappa : multi_indices(n, spec.k)) {
        s += lp_norm(partial(f, kappa), p, w, spec.quad);
      }
      for (int j = 0; j < spec.k; ++j) {
        for (const auto& kappa : multi_indices(n, j)) s += std::abs(partial(f, kappa)(origin));
      }
      return s;
    }
  }
  return 0.0;
}

std::map<int, double> block_inner_products(const HHarmonicFunction& f,
                                           const HHarmonicFunction& g) {
  if (f.dim() != g.dim()) throw ParameterError("dimension mismatch between functions");
  const int n = f.dim();
  std::map<int, double> out;
  for (const auto& [m, bf] : f.blocks()) {
    const auto it = g.blocks().find(m);
    if (it == g.blocks().end()) continue;
    const Block& bg = it->second;
    double s = 0.0;
    for (const auto& ti : bf.terms) {
      for (const auto& tj : bg.terms) {
        s += ti.a * tj.a * zonal_value(n, m, dot(ti.pole.coords(), tj.pole.coords()));
      }
      if (!bg.poly.is_zero()) s += ti.a * bg.poly(ti.pole.coords());
    }
    if (!bf.poly.is_zero()) {
      for (const auto& tj : bg.terms) s += tj.a * bf.poly(tj.pole.coords());
      if (!bg.poly.is_zero()) s += sphere_inner_product(bf.poly, bg.poly);
    }
    out[m] = bf.scale * bg.scale * s;
  }
  return out;
}

double inner_product_B2(const HHarmonicFunction& f, const HHarmonicFunction& g, double alpha) {
  const auto blocks = block_inner_products(f, g);
  if (blocks.empty()) return 0.0;
  const auto c = CoefficientFamily(f.dim(), alpha).range(blocks.rbegin()->first);
  double s = 0.0;
  for (const auto& [m, v] : blocks) s += v / c[static_cast<std::size_t>(m)];
  return s;
}

BlochGrid BlochGrid::uniform(int shells, int sphere_degree, double rmax) {
  if (shells < 1) throw ParameterError("Bloch grid needs at least one shell");
  if (!(rmax > 0.0 && rmax < 1.0)) throw ParameterError("Bloch grid radius must lie in (0, 1)");
  BlochGrid g;
  g.sphere_degree = sphere_degree;
  for (int i = 0; i <= shells; ++i) g.radii.push_back(rmax * i / shells);
  return g;
}

BlochGrid BlochGrid::doubled() const {
  BlochGrid g;
  g.sphere_degree = std::min(2 * sphere_degree, kMaxSphereDegree);
  for (std::size_t i = 0; i < radii.size(); ++i) {
    if (i > 0) g.radii.push_back(0.5 * (radii[i - 1] + radii[i]));
    g.radii.push_back(radii[i]);
  }
  return g;
}

std::vector<double> bloch_shells(const HHarmonicFunction& f, const BlochGrid& grid) {
  const int n = f.dim();
  const SphereRule sphere = make_sphere_rule(n, grid.sphere_degree);
  std::vector<double> out;
  std::vector<double> x(static_cast<std::size_t>(n));
  for (double r : grid.radii) {
    if (!(r >= 0.0 && r < 1.0)) throw DomainError("Bloch grid radii must lie in [0, 1)");
    double best = 0.0;
    const std::size_t count = r == 0.0 ? 1 : sphere.size();
    for (std::size_t j = 0; j < count; ++j) {
      const auto z = sphere.node(j);
      for (int i = 0; i < n; ++i) x[static_cast<std::size_t>(i)] = r * z[static_cast<std::size_t>(i)];
      const auto g = f.gradient(x);
      best = std::max(best, (1.0 - r * r) * std::sqrt(norm_sq(g)));
    }
    out.push_back(best);
  }
  return out;
}

double bloch_seminorm(const HHarmonicFunction& f, const BlochGrid& grid) {
  const auto v = bloch_shells(f, grid);
  return v.empty() ? 0.0 : *std::max_element(v.begin(), v.end());
}

EquivalenceReport equivalence_report(const std::vector<HHarmonicFunction>& family,
                                     const std::vector<NormSpec>& specs) {
  EquivalenceReport rep;
  for (const auto& s : specs) rep.spec_labels.push_back(s.label());
  const int ns = static_cast<int>(specs.size());
  for (std::size_t f = 0; f < family.size(); ++f) {
    std::vector<double> row;
    const bool nonzero = !is_zero_function(family[f]);
    for (int i = 0; i < ns; ++i) {
      const double v = norm(family[f], specs[static_cast<std::size_t>(i)]);
      if (nonzero && !(v > 0.0 && std::isfinite(v))) {
        rep.anomalies.push_back("function " + std::to_string(f) + ": " +
                                rep.spec_labels[static_cast<std::size_t>(i)] +
                                " is not positive (" + fmt(v) + ")");
      }
      row.push_back(v);
    }
    rep.norms.push_back(std::move(row));
  }
  for (int i = 0; i < ns; ++i) {
    for (int j = i + 1; j < ns; ++j) {
      PairSummary sum{i, j, std::numeric_limits<double>::infinity(), 0.0, 0.0};
      for (std::size_t f = 0; f < family.size(); ++f) {
        const double a = rep.norms[f][static_cast<std::size_t>(i)];
        const double b = rep.norms[f][static_cast<std::size_t>(j)];
        const double r = a / b;
        rep.rows.push_back({static_cast<int>(f), i, j, r});
        if (!(a > 0.0 && b > 0.0 && std::isfinite(r))) continue;
        sum.min = std::min(sum.min, r);
        sum.max = std::max(sum.max, r);
      }
      sum.spread = sum.max > 0.0 ? sum.max / sum.min : std::numeric_limits<double>::quiet_NaN();
      rep.summary.push_back(sum);
    }
  }
  return rep;
}

bool inclusion_holds(int n, double alpha, double beta, double p, double q) {
  if (q >= p) return (alpha + n) / p <= (beta + n) / q;
  return (alpha + 1.0) / p < (beta + 1.0) / q;
}

InclusionProbe inclusion_probe(int n, double alpha, double beta, double gamma, int steps) {
  if (steps < 2 || steps > 8) throw ParameterError("inclusion probe needs 2 to 8 steps");
  InclusionProbe out;
  out.alpha = alpha;
  out.beta = beta;
  out.inclusion_expected = inclusion_holds(n, alpha, beta, 2.0, 2.0);
  for (int j = 1; j <= steps; ++j) {
    const double a = 1.0 - std::ldexp(1.0, -j);
    // a^(2M) below 1e-14 relative to the leading terms.
    const int degree = std::min(kMaxCoefficientDegree, 40 * (1 << j));
    const auto f = kernel_as_function(n, gamma, BallPoint::on_axis(n, 0, a), degree);
    InclusionRow row{j, a, degree, std::sqrt(inner_product_B2(f, f, alpha)),
                     std::sqrt(inner_product_B2(f, f, beta)), 0.0};
    row.ratio = row.norm_beta / row.norm_alpha;
    out.rows.push_back(row);
  }
  out.growth = out.rows.back().ratio / out.rows.front().ratio;
  return out;
}

std::vector<HHarmonicFunction> kernel_slice_family(int n, double alpha, int max_degree,
                                                   int members) {
  if (members < 1) throw ParameterError("family needs at least one member");
  std::vector<HHarmonicFunction> out;
  for (int j = 0; j < members; ++j) {
    out.push_back(kernel_as_function(n, alpha, BallPoint::on_axis(n, 0, double(j) / members),
                                     max_degree));
  }
  return out;
}

}  // namespace hhb
