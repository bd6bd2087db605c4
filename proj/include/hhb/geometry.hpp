#pragma once

#include <functional>
#include <span>
#include <vector>

namespace hhb {

inline constexpr int kMaxDim = 8;

/// A point of the closed unit ball in R^n, 2 <= n <= kMaxDim.
///
/// Interior points are the common case; boundary points (|x| = 1) are
/// accepted so that a BallPoint can stand in for x/|x| when convenient.
class BallPoint {
 public:
  explicit BallPoint(std::vector<double> coords);

  static BallPoint origin(int n);
  /// r * e_axis.
  static BallPoint on_axis(int n, int axis, double r);

  int dim() const noexcept { return static_cast<int>(coords_.size()); }
  std::span<const double> coords() const noexcept { return coords_; }
  double operator[](int i) const { return coords_[static_cast<std::size_t>(i)]; }
  double norm() const noexcept { return norm_; }
  double norm_sq() const noexcept { return norm_ * norm_; }
  bool interior() const noexcept { return norm_ < 1.0; }

 private:
  std::vector<double> coords_;
  double norm_;
};

/// A unit vector in R^n. Construction renormalizes; inputs must already be
/// unit length to within 1e-8 unless built with SpherePoint::direction.
class SpherePoint {
 public:
  explicit SpherePoint(std::vector<double> coords);

  /// Normalizes an arbitrary nonzero vector.
  static SpherePoint direction(std::span<const double> v);
  static SpherePoint axis(int n, int i);
  /// Keeps the coordinates bit for bit; they must be unit length within 1e-12.
  static SpherePoint exact(std::vector<double> coords);

  int dim() const noexcept { return static_cast<int>(coords_.size()); }
  std::span<const double> coords() const noexcept { return coords_; }
  double operator[](int i) const { return coords_[static_cast<std::size_t>(i)]; }

 private:
  struct Unchecked {};
  SpherePoint(std::vector<double> coords, Unchecked);
  std::vector<double> coords_;
};

double dot(std::span<const double> x, std::span<const double> y);
double norm_sq(std::span<const double> x);

/// [x,y] = sqrt(1 - 2<x,y> + |x|^2 |y|^2).
double bracket(std::span<const double> x, std::span<const double> y);
inline double bracket(const BallPoint& x, const BallPoint& y) {
  return bracket(x.coords(), y.coords());
}
inline double bracket(const BallPoint& x, const SpherePoint& y) {
  return bracket(x.coords(), y.coords());
}
inline double bracket(const SpherePoint& x, const BallPoint& y) {
  return bracket(x.coords(), y.coords());
}

/// The involutive Moebius map phi_a exchanging a and 0.
BallPoint mobius(const BallPoint& a, const BallPoint& x);

/// Normalizing constant V_alpha of nu_alpha; 1 when alpha <= -1.
double v_alpha(int n, double alpha);

/// d nu_alpha = (1/V_alpha) (1 - |x|^2)^alpha d nu.
struct WeightedMeasure {
  int n;
  double alpha;
  double v_alpha;

  static WeightedMeasure make(int n, double alpha) {
    return {n, alpha, hhb::v_alpha(n, alpha)};
  }
  bool finite() const noexcept { return alpha > -1.0; }
};

using ScalarField = std::function<double(std::span<const double>)>;

/// Second-order central-difference estimate of
/// (1-|x|^2)^2 Lap f + 2(n-2)(1-|x|^2) <x, grad f>.
double hyperbolic_laplacian_fd(const ScalarField& field, const BallPoint& x,
                               double h = 1e-4);

/// Central-difference Euclidean Laplacian.
double euclidean_laplacian_fd(const ScalarField& field, std::span<const double> x,
                              double h = 1e-4);

/// Central-difference gradient.
std::vector<double> gradient_fd(const ScalarField& field, std::span<const double> x,
                                double h = 1e-5);

}  // namespace hhb
