#include "hhb/integrate.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "hhb/errors.hpp"
#include "hhb/kernels.hpp"
#include "hhb/specfun.hpp"

namespace hhb {

namespace {

void check_rule_alpha(const BallRule& rule, double alpha, const char* what) {
  if (std::abs(rule.alpha - alpha) > 1e-14 * std::max(1.0, std::abs(alpha)) ||
      rule.radius != 1.0) {
    throw ParameterError(std::string("quadrature rule must be the full-ball rule for ") + what);
  }
}

void check_dim(const BallRule& rule, int n) {
  if (rule.n != n) throw ParameterError("dimension mismatch between rule and argument");
}

ProjectionResult project_one(double beta, std::span<const double> samples, const BallPoint& x,
                             const BallRule& rule, double tol) {
  if (!(beta > -1.0)) throw ParameterError("beta must exceed -1");
  check_dim(rule, x.dim());
  check_rule_alpha(rule, beta, "beta");
  if (!x.interior()) throw DomainError("x must lie in the open ball");
  if (samples.size() != rule.size()) throw ParameterError("sample count does not match the rule");
  const int n = x.dim();
  const double rx = x.norm();
  const double rmax = rule.r.empty() ? 0.0 : *std::max_element(rule.r.begin(), rule.r.end());
  const int M = rx == 0.0 ? 0 : kernel_truncation_degree(n, beta, rx * rmax, tol);
  const auto c = CoefficientFamily(n, beta).range(M);
  const auto sx = profile_sequence(n, x.norm_sq(), M);
  std::vector<double> a(static_cast<std::size_t>(M) + 1);
  double p = 1.0;
  for (int m = 0; m <= M; ++m) {
    const auto um = static_cast<std::size_t>(m);
    a[um] = c[um] * sx[um] * p;
    p *= rx;
  }
  std::vector<double> zeta(static_cast<std::size_t>(n), 0.0);
  if (rx > 0.0) {
    for (int i = 0; i < n; ++i) zeta[static_cast<std::size_t>(i)] = x[i] / rx;
  }
  std::vector<double> vals;
  vals.reserve(rule.size());
  std::vector<double> b(a.size());
  std::vector<double> y(static_cast<std::size_t>(n));
  std::size_t idx = 0;
  for (std::size_t i = 0; i < rule.u.size(); ++i) {
    const auto sy = profile_sequence(n, rule.u[i], M);
    double q = 1.0;
    for (std::size_t m = 0; m < a.size(); ++m) {
      b[m] = a[m] * sy[m] * q;
      q *= rule.r[i];
    }
    for (std::size_t j = 0; j < rule.sphere.size(); ++j, ++idx) {
      const double w = ball_node(rule, i, j, y);
      double k = b[0];
      if (M > 0) {
        // sphere nodes are unit vectors, so <zeta, y/|y|> is the dot with the node
        const double t = std::clamp(dot(zeta, rule.sphere.node(j)), -1.0, 1.0);
        const auto z = zonal_sequence(n, t, M);
        for (std::size_t m = 1; m < z.size(); ++m) k += b[m] * z[m];
      }
      vals.push_back(w * k * samples[idx]);
    }
  }
  return {pairwise_sum(vals), M};
}

double bracket_scaled(std::span<const double> x, std::span<const double> y, double t) {
  const double v = 1.0 - 2.0 * t * dot(x, y) + t * t * norm_sq(x) * norm_sq(y);
  return std::sqrt(std::max(v, 0.0));
}

double lint01_with(const GaussRule& g, std::span<const double> x, std::span<const double> y,
                   double b, double c) {
  std::vector<double> vals(g.nodes.size());
  for (std::size_t i = 0; i < vals.size(); ++i) {
    vals[i] = g.weights[i] * std::pow(bracket_scaled(x, y, g.nodes[i]), -(1.0 + b + c));
  }
  return pairwise_sum(vals) / (b + 1.0);
}

}  // namespace

double sphere_integral(const ScalarField& g, const SphereRule& rule) {
  std::vector<double> vals(rule.size());
  for (std::size_t j = 0; j < rule.size(); ++j) vals[j] = rule.weights[j] * g(rule.node(j));
  return pairwise_sum(vals);
}

double ball_integral(const ScalarField& g, const BallRule& rule) {
  return ball_integral_shells(
      rule, [](double) { return 0; }, [&](int, std::span<const double> x) { return g(x); });
}

double ball_integral(const HHarmonicFunction& f, const BallRule& rule) {
  check_dim(rule, f.dim());
  return ball_integral_shells(
      rule, [&](double u) { return f.profile_values(u); },
      [&](const std::vector<double>& prof, std::span<const double> x) {
        return f.eval_with(x, prof);
      });
}

std::vector<double> sample_on_rule(const HHarmonicFunction& g, const BallRule& rule) {
  check_dim(rule, g.dim());
  std::vector<double> out;
  out.reserve(rule.size());
  std::vector<double> y(static_cast<std::size_t>(rule.n));
  for (std::size_t i = 0; i < rule.u.size(); ++i) {
    const auto prof = g.profile_values(rule.u[i]);
    for (std::size_t j = 0; j < rule.sphere.size(); ++j) {
      ball_node(rule, i, j, y);
      out.push_back(g.eval_with(y, prof));
    }
  }
  return out;
}

std::vector<double> sample_on_rule(const ScalarField& g, const BallRule& rule) {
  std::vector<double> out;
  out.reserve(rule.size());
  std::vector<double> y(static_cast<std::size_t>(rule.n));
  for (std::size_t i = 0; i < rule.u.size(); ++i) {
    for (std::size_t j = 0; j < rule.sphere.size(); ++j) {
      ball_node(rule, i, j, y);
      out.push_back(g(y));
    }
  }
  return out;
}

std::vector<ProjectionResult> project_sampled(double beta, std::span<const double> samples,
                                              std::span<const BallPoint> xs, const BallRule& rule,
                                              double tolerance) {
  std::vector<ProjectionResult> out;
  for (const auto& x : xs) out.push_back(project_one(beta, samples, x, rule, tolerance));
  return out;
}

ProjectionResult project(double beta, const HHarmonicFunction& g, const BallPoint& x,
                         const BallRule& rule, double tolerance) {
  if (g.dim() != x.dim()) throw ParameterError("dimension mismatch between function and point");
  return project_one(beta, sample_on_rule(g, rule), x, rule, tolerance);
}

ProjectionResult project(double beta, const ScalarField& g, const BallPoint& x,
                         const BallRule& rule, double tolerance) {
  check_dim(rule, x.dim());
  return project_one(beta, sample_on_rule(g, rule), x, rule, tolerance);
}

double apply_Est(double s, double t, const ScalarField& g, const BallPoint& x,
                 const BallRule& rule) {
  if (!(s > -1.0)) throw ParameterError("s must exceed -1 for quadrature of E_{s,t}");
  check_dim(rule, x.dim());
  check_rule_alpha(rule, s, "s");
  if (!x.interior()) throw DomainError("x must lie in the open ball");
  const int n = x.dim();
  const double e = n + s + t;
  const double integral = ball_integral(
      [&](std::span<const double> y) {
        return g(y) * std::pow(bracket(x.coords(), y), -e);
      },
      rule);
  return std::pow(1.0 - x.norm_sq(), t) * v_alpha(n, s) * integral;
}

double pairing_dual(const HHarmonicFunction& f, const HHarmonicFunction& g, double alpha, double p,
                    double s, double t, const BallRule& rule) {
  if (!(p >= 1.0)) throw ParameterError("p must be at least 1");
  const double a = alpha + p * t;
  if (!(a > -1.0)) throw ParameterError("alpha+p*t must exceed -1");
  if (f.dim() != g.dim()) throw ParameterError("dimension mismatch between functions");
  check_dim(rule, f.dim());
  check_rule_alpha(rule, a, "alpha+p*t");
  const HHarmonicFunction F = apply_Dst(s, t, f);
  const HHarmonicFunction G = apply_Dst(s, (p - 1.0) * t, g);
  struct Prof {
    std::vector<double> f, g;
  };
  return ball_integral_shells(
      rule, [&](double u) { return Prof{F.profile_values(u), G.profile_values(u)}; },
      [&](const Prof& pr, std::span<const double> x) {
        return F.eval_with(x, pr.f) * G.eval_with(x, pr.g);
      });
}

std::vector<double> pairing_bloch(const HHarmonicFunction& f, const HHarmonicFunction& g,
                                  double alpha, double s, double t, std::span<const double> radii,
                                  int radial_nodes, int sphere_degree) {
  const double a = alpha + t;
  if (!(a > -1.0)) throw ParameterError("alpha+t must exceed -1");
  if (f.dim() != g.dim()) throw ParameterError("dimension mismatch between functions");
  const int n = f.dim();
  const HHarmonicFunction F = apply_Dst(s, t, f);
  const double va = v_alpha(n, a);
  struct Prof {
    std::vector<double> f, g;
    double w;
  };
  std::vector<double> out;
  for (double r : radii) {
    if (!(r > 0.0 && r < 1.0)) throw ParameterError("pairing radius must lie in (0, 1)");
    const BallRule rule = make_subball_rule(n, r, radial_nodes, sphere_degree);
    out.push_back(ball_integral_shells(
        rule,
        [&](double u) {
          return Prof{F.profile_values(u), g.profile_values(u), std::pow(1.0 - u, a) / va};
        },
        [&](const Prof& pr, std::span<const double> x) {
          return pr.w * F.eval_with(x, pr.f) * g.eval_with(x, pr.g);
        }));
  }
  return out;
}

double lint01_integral(std::span<const double> x, std::span<const double> y, double b, double c,
                       int nodes) {
  if (!(b > -1.0)) throw ParameterError("b must exceed -1");
  return lint01_with(gauss_jacobi_unit(nodes, b, 0.0), x, y, b, c);
}

double lint01_bound(std::span<const double> x, std::span<const double> y, double c) {
  const double br = bracket(x, y);
  if (c > 0.0) return std::pow(br, -c);
  if (c == 0.0) return 1.0 + std::log(1.0 / br);
  return 1.0;
}

Lint01Scan lint01_scan(int n, double b, double c, int samples, std::uint64_t seed, int nodes,
                       double radius) {
  if (!(b > -1.0)) throw ParameterError("b must exceed -1");
  if (samples <= 0) throw ParameterError("sample count must be positive");
  const GaussRule coarse = gauss_jacobi_unit(nodes, b, 0.0);
  const GaussRule fine = gauss_jacobi_unit(2 * nodes, b, 0.0);
  std::mt19937_64 rng(seed);
  Lint01Scan out{b, c, nodes, 0.0, 0.0, 0.0, 1.0};
  for (int i = 0; i < samples; ++i) {
    const auto x = random_ball_point(n, radius, rng);
    const auto y = random_ball_point(n, radius, rng);
    const double bound = lint01_bound(x, y, c);
    out.sup_ratio = std::max(out.sup_ratio, lint01_with(coarse, x, y, b, c) / bound);
    out.sup_ratio_refined = std::max(out.sup_ratio_refined, lint01_with(fine, x, y, b, c) / bound);
    out.min_bracket = std::min(out.min_bracket, bracket(x, y));
  }
  out.drift = std::abs(out.sup_ratio_refined / out.sup_ratio - 1.0);
  return out;
}

LtxyScan ltxy_scan(int n, long samples, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  LtxyScan out{samples, 0, 1e300};
  for (long i = 0; i < samples; ++i) {
    const auto x = random_ball_point(n, 1.0, rng);
    const auto y = random_ball_point(n, 1.0, rng);
    const double t = unit(rng);
    const double lhs = bracket_scaled(x, y, t);
    const double rhs = bracket(x, y);
    if (lhs < 0.5 * rhs) ++out.violations;
    out.min_ratio = std::min(out.min_ratio, lhs / rhs);
  }
  return out;
}

}  // namespace hhb
