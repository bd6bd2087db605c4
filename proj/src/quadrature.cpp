#include "hhb/quadrature.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <numbers>
#include <string>

#include "hhb/errors.hpp"
#include "hhb/geometry.hpp"

namespace hhb {

namespace {

// P_N^{(a,b)}(x) and P_{N-1}^{(a,b)}(x).
std::pair<double, double> jacobi_pair(int n, double a, double b, double x) {
  double p0 = 1.0;
  double p1 = 0.5 * (a - b + (a + b + 2.0) * x);
  if (n == 0) return {p0, 0.0};
  for (int k = 2; k <= n; ++k) {
    const double s = 2.0 * k + a + b;
    const double p2 = ((s - 1.0) * (s * (s - 2.0) * x + a * a - b * b) * p1 -
                       2.0 * (k + a - 1.0) * (k + b - 1.0) * s * p0) /
                      (2.0 * k * (k + a + b) * (s - 2.0));
    p0 = p1;
    p1 = p2;
  }
  return {p1, p0};
}

double jacobi_derivative(int n, double a, double b, double x, double pn, double pn1) {
  const double s = 2.0 * n + a + b;
  return (n * ((a - b) - s * x) * pn + 2.0 * (n + a) * (n + b) * pn1) / (s * (1.0 - x * x));
}

double pairwise(const double* v, std::size_t n) {
  if (n <= 8) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += v[i];
    return s;
  }
  const std::size_t h = n / 2;
  return pairwise(v, h) + pairwise(v + h, n - h);
}

}  // namespace

double pairwise_sum(std::span<const double> v) { return pairwise(v.data(), v.size()); }

GaussRule gauss_jacobi(int n_nodes, double a, double b) {
  if (n_nodes < 1) throw ParameterError("Gauss-Jacobi rule needs at least one node");
  if (!(a > -1.0 && b > -1.0)) throw ParameterError("Gauss-Jacobi exponents must exceed -1");
  const auto nn = static_cast<std::size_t>(n_nodes);
  Eigen::VectorXd diag(n_nodes);
  Eigen::VectorXd sub(std::max(n_nodes - 1, 1));
  for (int k = 0; k < n_nodes; ++k) {
    const double s = 2.0 * k + a + b;
    diag[k] = (k == 0) ? (b - a) / (a + b + 2.0) : (b * b - a * a) / (s * (s + 2.0));
  }
  for (int k = 1; k < n_nodes; ++k) {
    const double s = 2.0 * k + a + b;
    double v;
    if (k == 1) {
      v = 4.0 * (1.0 + a) * (1.0 + b) / ((2.0 + a + b) * (2.0 + a + b) * (3.0 + a + b));
    } else {
      v = 4.0 * k * (k + a) * (k + b) * (k + a + b) / (s * s * (s + 1.0) * (s - 1.0));
    }
    sub[k - 1] = std::sqrt(v);
  }
  GaussRule rule;
  rule.nodes.resize(nn);
  rule.weights.resize(nn);
  if (n_nodes == 1) {
    rule.nodes[0] = diag[0];
  } else {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
    es.computeFromTridiagonal(diag, sub.head(n_nodes - 1), Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) throw ConvergenceError("Jacobi matrix eigenvalues failed");
    for (std::size_t i = 0; i < nn; ++i) rule.nodes[i] = es.eigenvalues()[static_cast<Eigen::Index>(i)];
  }
  const double log_const = std::lgamma(n_nodes + a + 1.0) + std::lgamma(n_nodes + b + 1.0) -
                           std::lgamma(n_nodes + a + b + 1.0) - std::lgamma(n_nodes + 1.0) +
                           (a + b + 1.0) * std::numbers::ln2;
  for (std::size_t i = 0; i < nn; ++i) {
    double x = rule.nodes[i];
    double dp = 0.0;
    for (int it = 0; it < 3; ++it) {
      const auto [pn, pn1] = jacobi_pair(n_nodes, a, b, x);
      dp = jacobi_derivative(n_nodes, a, b, x, pn, pn1);
      const double step = pn / dp;
      const double next = x - step;
      if (!(next > -1.0 && next < 1.0)) break;
      x = next;
      if (std::abs(step) <= 1e-16 * (1.0 - std::abs(x))) break;
    }
    const auto [pn, pn1] = jacobi_pair(n_nodes, a, b, x);
    dp = jacobi_derivative(n_nodes, a, b, x, pn, pn1);
    rule.nodes[i] = x;
    rule.weights[i] = std::exp(log_const) / ((1.0 - x * x) * dp * dp);
  }
  const double exact = std::exp((a + b + 1.0) * std::numbers::ln2 + std::lgamma(a + 1.0) +
                                std::lgamma(b + 1.0) - std::lgamma(a + b + 2.0));
  const double total = pairwise_sum(rule.weights);
  if (!(std::abs(total / exact - 1.0) < 1e-6)) {
    throw ConvergenceError("Gauss-Jacobi weights do not sum to the total mass (N = " +
                           std::to_string(n_nodes) + ")");
  }
  for (double& w : rule.weights) w *= exact / total;
  return rule;
}

GaussRule gauss_jacobi_unit(int n_nodes, double alpha, double beta) {
  GaussRule g = gauss_jacobi(n_nodes, alpha, beta);
  const double total = pairwise_sum(g.weights);
  for (std::size_t i = 0; i < g.nodes.size(); ++i) {
    g.nodes[i] = 0.5 * (1.0 + g.nodes[i]);
    g.weights[i] /= total;
  }
  return g;
}

SphereRule make_sphere_rule(int n, int exact_degree) {
  if (n < 2 || n > kMaxDim) throw ParameterError("dimension must lie in [2, 8]");
  if (exact_degree < 0 || exact_degree > kMaxSphereDegree) {
    throw UnsupportedError("sphere rule exactness must lie in [0, " +
                           std::to_string(kMaxSphereDegree) + "]");
  }
  SphereRule rule;
  rule.n = n;
  rule.exact_degree = exact_degree;
  if (n == 2) {
    int k = exact_degree + 1;
    if (k % 2 != 0) ++k;
    for (int i = 0; i < k; ++i) {
      const double th = 2.0 * std::numbers::pi * i / k;
      rule.nodes.push_back(std::cos(th));
      rule.nodes.push_back(std::sin(th));
      rule.weights.push_back(1.0 / k);
    }
    return rule;
  }
  const SphereRule lower = make_sphere_rule(n - 1, exact_degree);
  const int levels = std::max(1, (exact_degree + 2) / 2);
  const double e = 0.5 * (n - 3);
  const GaussRule g = gauss_jacobi(levels, e, e);
  const double total = pairwise_sum(g.weights);
  for (std::size_t l = 0; l < g.nodes.size(); ++l) {
    const double t = g.nodes[l];
    const double c = std::sqrt((1.0 - t) * (1.0 + t));
    for (std::size_t j = 0; j < lower.size(); ++j) {
      for (double v : lower.node(j)) rule.nodes.push_back(c * v);
      rule.nodes.push_back(t);
      rule.weights.push_back(g.weights[l] / total * lower.weights[j]);
    }
  }
  return rule;
}

GaussRule radial_rule_u(int n, double alpha, int n_nodes) {
  if (n % 2 == 0) return gauss_jacobi_unit(n_nodes, alpha, 0.5 * n - 1.0);
  // u = 1 - v^2: weight 2 v^{2 alpha + 1} (1-v)^{n/2-1} (1+v)^{n/2-1} dv.
  GaussRule g = gauss_jacobi_unit(n_nodes, 0.5 * n - 1.0, 2.0 * alpha + 1.0);
  for (std::size_t i = 0; i < g.nodes.size(); ++i) {
    const double v = g.nodes[i];
    g.weights[i] *= std::pow(1.0 + v, 0.5 * n - 1.0);
    g.nodes[i] = (1.0 - v) * (1.0 + v);
  }
  const double total = pairwise_sum(g.weights);
  for (double& w : g.weights) w /= total;
  return g;
}

namespace {

BallRule radial_rule(int n, double alpha, double radius, int radial_nodes, int sphere_degree) {
  if (radial_nodes < 1) throw ParameterError("ball rule needs at least one radial node");
  BallRule rule;
  rule.n = n;
  rule.alpha = alpha;
  rule.radius = radius;
  rule.sphere = make_sphere_rule(n, sphere_degree);
  const GaussRule g = radius == 1.0 ? radial_rule_u(n, alpha, radial_nodes)
                                    : gauss_jacobi_unit(radial_nodes, alpha, 0.5 * n - 1.0);
  const double r2 = radius * radius;
  const double mass = std::pow(radius, n);
  for (std::size_t i = 0; i < g.nodes.size(); ++i) {
    rule.u.push_back(r2 * g.nodes[i]);
    rule.r.push_back(radius * std::sqrt(g.nodes[i]));
    rule.radial_weights.push_back(mass * g.weights[i]);
  }
  return rule;
}

}  // namespace

BallRule make_ball_rule(int n, double alpha, int radial_nodes, int sphere_degree) {
  if (!(alpha > -1.0)) throw ParameterError("alpha must exceed -1 for a finite measure");
  return radial_rule(n, alpha, 1.0, radial_nodes, sphere_degree);
}

BallRule make_subball_rule(int n, double radius, int radial_nodes, int sphere_degree) {
  if (!(radius > 0.0 && radius <= 1.0)) throw ParameterError("sub-ball radius must lie in (0, 1]");
  BallRule rule = radial_rule(n, 0.0, radius, radial_nodes, sphere_degree);
  return rule;
}

double ball_node(const BallRule& rule, std::size_t i, std::size_t j, std::vector<double>& x) {
  const auto z = rule.sphere.node(j);
  x.resize(z.size());
  for (std::size_t k = 0; k < z.size(); ++k) x[k] = rule.r[i] * z[k];
  return rule.radial_weights[i] * rule.sphere.weights[j];
}

}  // namespace hhb
