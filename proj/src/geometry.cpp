#include "hhb/geometry.hpp"

#include <cmath>
#include <string>

#include "hhb/errors.hpp"

namespace hhb {

namespace {

void check_dim(std::size_t n) {
  if (n < 2 || n > static_cast<std::size_t>(kMaxDim)) {
    throw ParameterError("dimension must lie in [2, " + std::to_string(kMaxDim) +
                         "], got " + std::to_string(n));
  }
}

void check_same_dim(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) {
    throw ParameterError("dimension mismatch: " + std::to_string(x.size()) + " vs " +
                         std::to_string(y.size()));
  }
}

}  // namespace

double dot(std::span<const double> x, std::span<const double> y) {
  check_same_dim(x, y);
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
  return s;
}

double norm_sq(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  return s;
}

BallPoint::BallPoint(std::vector<double> coords) : coords_(std::move(coords)) {
  check_dim(coords_.size());
  norm_ = std::sqrt(hhb::norm_sq(coords_));
  if (!(norm_ <= 1.0)) {
    throw DomainError("ball point has norm " + std::to_string(norm_) + " > 1");
  }
}

BallPoint BallPoint::origin(int n) {
  return BallPoint(std::vector<double>(static_cast<std::size_t>(n), 0.0));
}

BallPoint BallPoint::on_axis(int n, int axis, double r) {
  std::vector<double> v(static_cast<std::size_t>(n), 0.0);
  v.at(static_cast<std::size_t>(axis)) = r;
  return BallPoint(std::move(v));
}

SpherePoint::SpherePoint(std::vector<double> coords, Unchecked) : coords_(std::move(coords)) {}

SpherePoint::SpherePoint(std::vector<double> coords) : coords_(std::move(coords)) {
  check_dim(coords_.size());
  const double r = std::sqrt(hhb::norm_sq(coords_));
  if (std::abs(r - 1.0) > 1e-8) {
    throw DomainError("sphere point has norm " + std::to_string(r));
  }
  for (double& v : coords_) v /= r;
}

SpherePoint SpherePoint::exact(std::vector<double> coords) {
  check_dim(coords.size());
  const double r = std::sqrt(hhb::norm_sq(coords));
  if (std::abs(r - 1.0) > 1e-12) throw DomainError("sphere point has norm " + std::to_string(r));
  return SpherePoint(std::move(coords), Unchecked{});
}

SpherePoint SpherePoint::direction(std::span<const double> v) {
  check_dim(v.size());
  const double r = std::sqrt(hhb::norm_sq(v));
  if (!(r > 0.0)) throw DomainError("cannot normalize the zero vector");
  std::vector<double> c(v.begin(), v.end());
  for (double& x : c) x /= r;
  return SpherePoint(std::move(c), Unchecked{});
}

SpherePoint SpherePoint::axis(int n, int i) {
  check_dim(static_cast<std::size_t>(n));
  std::vector<double> v(static_cast<std::size_t>(n), 0.0);
  v.at(static_cast<std::size_t>(i)) = 1.0;
  return SpherePoint(std::move(v), Unchecked{});
}

double bracket(std::span<const double> x, std::span<const double> y) {
  check_same_dim(x, y);
  const double xx = norm_sq(x);
  const double yy = norm_sq(y);
  if (xx > 1.0 + 1e-12 || yy > 1.0 + 1e-12) {
    throw DomainError("bracket requires points of the closed unit ball");
  }
  const double v = 1.0 - 2.0 * dot(x, y) + xx * yy;
  return std::sqrt(std::max(v, 0.0));
}

BallPoint mobius(const BallPoint& a, const BallPoint& x) {
  const auto ac = a.coords();
  const auto xc = x.coords();
  check_same_dim(ac, xc);
  const double aa = a.norm_sq();
  const double xa = dot(xc, ac);
  const double denom = 1.0 - 2.0 * xa + aa * x.norm_sq();
  if (denom < 1e-300) throw DomainError("mobius: degenerate denominator");
  double dist = 0.0;
  for (std::size_t i = 0; i < xc.size(); ++i) dist += (xc[i] - ac[i]) * (xc[i] - ac[i]);
  std::vector<double> out(xc.size());
  for (std::size_t i = 0; i < xc.size(); ++i) {
    out[i] = (ac[i] * dist + (1.0 - aa) * (ac[i] - xc[i])) / denom;
  }
  return BallPoint(std::move(out));
}

double v_alpha(int n, double alpha) {
  if (alpha <= -1.0) return 1.0;
  const double h = 0.5 * n;
  return std::exp(std::lgamma(h + 1.0) + std::lgamma(alpha + 1.0) - std::lgamma(h + alpha + 1.0));
}

double euclidean_laplacian_fd(const ScalarField& field, std::span<const double> x, double h) {
  std::vector<double> p(x.begin(), x.end());
  const double f0 = field(p);
  double lap = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double xi = p[i];
    p[i] = xi + h;
    const double fp = field(p);
    p[i] = xi - h;
    const double fm = field(p);
    p[i] = xi;
    lap += (fp - 2.0 * f0 + fm) / (h * h);
  }
  return lap;
}

std::vector<double> gradient_fd(const ScalarField& field, std::span<const double> x, double h) {
  std::vector<double> p(x.begin(), x.end());
  std::vector<double> g(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double xi = p[i];
    p[i] = xi + h;
    const double fp = field(p);
    p[i] = xi - h;
    const double fm = field(p);
    p[i] = xi;
    g[i] = (fp - fm) / (2.0 * h);
  }
  return g;
}

double hyperbolic_laplacian_fd(const ScalarField& field, const BallPoint& x, double h) {
  if (!(h > 0.0)) throw ParameterError("finite-difference step must be positive");
  if (x.norm() + h >= 1.0) throw DomainError("finite-difference stencil leaves the ball");
  const auto xc = x.coords();
  const int n = x.dim();
  const double w = 1.0 - x.norm_sq();
  const double lap = euclidean_laplacian_fd(field, xc, h);
  const auto grad = gradient_fd(field, xc, h);
  return w * w * lap + 2.0 * (n - 2) * w * dot(xc, grad);
}

}  // namespace hhb
