#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "hhb/expansion.hpp"
#include "hhb/geometry.hpp"
#include "hhb/quadrature.hpp"

namespace hhb {

double sphere_integral(const ScalarField& g, const SphereRule& rule);
/// Sum of weights times g over the nodes of `rule` (nu_alpha when rule is weighted).
double ball_integral(const ScalarField& g, const BallRule& rule);

/// Shell-structured quadrature: prepare(u) runs once per radial node and its
/// result is handed to eval(ctx, x) for every sphere node on that shell.
template <class Prepare, class Eval>
double ball_integral_shells(const BallRule& rule, Prepare&& prepare, Eval&& eval) {
  std::vector<double> vals;
  vals.reserve(rule.size());
  std::vector<double> x(static_cast<std::size_t>(rule.n));
  for (std::size_t i = 0; i < rule.u.size(); ++i) {
    const auto ctx = prepare(rule.u[i]);
    for (std::size_t j = 0; j < rule.sphere.size(); ++j) {
      const double w = ball_node(rule, i, j, x);
      vals.push_back(w * eval(ctx, std::span<const double>(x)));
    }
  }
  return pairwise_sum(vals);
}

/// Integral of f against nu_alpha on the rule (rule.alpha is the weight).
double ball_integral(const HHarmonicFunction& f, const BallRule& rule);

struct ProjectionResult {
  double value = 0.0;
  int kernel_degree = 0;
};

/// P_beta g(x) = int R_beta(x, y) g(y) dnu_beta(y). The kernel is truncated so
/// that its tail at the outermost node is below tolerance; rule.alpha must be beta.
ProjectionResult project(double beta, const HHarmonicFunction& g, const BallPoint& x,
                         const BallRule& rule, double tolerance = 1e-10);
ProjectionResult project(double beta, const ScalarField& g, const BallPoint& x,
                         const BallRule& rule, double tolerance = 1e-10);

/// g at every node of `rule`, shell by shell.
std::vector<double> sample_on_rule(const HHarmonicFunction& g, const BallRule& rule);
std::vector<double> sample_on_rule(const ScalarField& g, const BallRule& rule);
/// P_beta at several points, reusing one sampling of the integrand.
std::vector<ProjectionResult> project_sampled(double beta, std::span<const double> samples,
                                              std::span<const BallPoint> xs, const BallRule& rule,
                                              double tolerance = 1e-10);

/// E_{s,t} g(x) = (1-|x|^2)^t int g(y) (1-|y|^2)^s / [x,y]^{n+s+t} dnu(y).
/// The weight (1-|y|^2)^s is carried by the rule: rule.alpha must be s.
double apply_Est(double s, double t, const ScalarField& g, const BallPoint& x,
                 const BallRule& rule);

/// int D^t_s f . D^{(p-1)t}_s g dnu_{alpha+pt}; rule.alpha must be alpha + p t.
double pairing_dual(const HHarmonicFunction& f, const HHarmonicFunction& g, double alpha, double p,
                    double s, double t, const BallRule& rule);

/// int_{rB} D^t_s f . g dnu_{alpha+t} for each r in radii (the p = 1 pairing
/// against a Bloch function, reported as a sequence in r).
std::vector<double> pairing_bloch(const HHarmonicFunction& f, const HHarmonicFunction& g,
                                  double alpha, double s, double t, std::span<const double> radii,
                                  int radial_nodes, int sphere_degree);

/// int_0^1 (1-t)^b / [tx, y]^{1+b+c} dt by Gauss-Jacobi with `nodes` points.
double lint01_integral(std::span<const double> x, std::span<const double> y, double b, double c,
                       int nodes);
/// 1/[x,y]^c for c > 0, 1 + log(1/[x,y]) for c = 0, 1 for c < 0.
double lint01_bound(std::span<const double> x, std::span<const double> y, double c);

struct Lint01Scan {
  double b = 0.0;
  double c = 0.0;
  int nodes = 0;
  double sup_ratio = 0.0;         // with `nodes` points
  double sup_ratio_refined = 0.0;  // with 2 * nodes points
  double drift = 0.0;             // |refined / coarse - 1|
  double min_bracket = 0.0;
};

/// Empirical sup of integral / bound over random pairs with |x|, |y| <= radius.
Lint01Scan lint01_scan(int n, double b, double c, int samples, std::uint64_t seed, int nodes = 64,
                       double radius = 0.99);

struct LtxyScan {
  long samples = 0;
  long violations = 0;
  double min_ratio = 0.0;  // min of [tx, y] / [x, y]
};

/// Checks [tx, y] >= [x, y] / 2 on random triples (x, y in B, t in [0, 1]).
LtxyScan ltxy_scan(int n, long samples, std::uint64_t seed);

}  // namespace hhb
