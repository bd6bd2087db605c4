#pragma once

#include <span>
#include <vector>

namespace hhb {

/// Nodes and weights of a one-dimensional rule.
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// N-point Gauss-Jacobi rule on [-1, 1] for the weight (1-x)^a (1+x)^b, a, b > -1.
/// Nodes come from the Jacobi matrix and are polished by Newton steps on the
/// three-term recurrence; weights are rescaled to the exact total mass.
GaussRule gauss_jacobi(int n_nodes, double a, double b);

/// Gauss-Jacobi rule on [0, 1] for the weight (1-u)^alpha u^beta, normalized
/// so the weights sum to 1.
GaussRule gauss_jacobi_unit(int n_nodes, double alpha, double beta);

/// Rule on [0, 1] in u for the weight (1-u)^alpha u^{n/2-1}, normalized. Even n:
/// Gauss-Jacobi in u. Odd n: Gauss-Jacobi in v = sqrt(1-u), which makes the
/// (1-u)^{n-1} log(1-u) boundary term of the profiles smooth enough for
/// spectral convergence.
GaussRule radial_rule_u(int n, double alpha, int n_nodes);

/// Tree summation; the result depends only on the order of the inputs.
double pairwise_sum(std::span<const double> v);

inline constexpr int kMaxSphereDegree = 128;

/// Product rule on S^{n-1} for normalized surface measure.
struct SphereRule {
  int n = 0;
  int exact_degree = 0;
  std::vector<double> nodes;  // row-major, size() rows of length n
  std::vector<double> weights;

  std::size_t size() const noexcept { return weights.size(); }
  std::span<const double> node(std::size_t i) const {
    return {nodes.data() + i * static_cast<std::size_t>(n), static_cast<std::size_t>(n)};
  }
};

/// Exact for polynomials of degree <= exact_degree restricted to the sphere, and
/// symmetric under x -> -x.
SphereRule make_sphere_rule(int n, int exact_degree);

/// Product rule on a ball of radius R in polar form.
///
/// The radial part is Gauss-Jacobi in u = r^2. For the weighted rule the weights
/// integrate against nu_alpha (total 1); for the sub-ball rule they integrate
/// against the unweighted normalized volume restricted to B_R (total R^n).
struct BallRule {
  int n = 0;
  double alpha = 0.0;
  double radius = 1.0;
  std::vector<double> u;
  std::vector<double> r;
  std::vector<double> radial_weights;
  SphereRule sphere;

  std::size_t size() const noexcept { return u.size() * sphere.size(); }
};

/// Requires alpha > -1.
BallRule make_ball_rule(int n, double alpha, int radial_nodes, int sphere_degree);
BallRule make_subball_rule(int n, double radius, int radial_nodes, int sphere_degree);

/// Fills x with the node r_i * zeta_j and returns its weight.
double ball_node(const BallRule& rule, std::size_t i, std::size_t j, std::vector<double>& x);

}  // namespace hhb
