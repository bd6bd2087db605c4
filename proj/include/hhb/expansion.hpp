#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <random>
#include <span>
#include <utility>
#include <vector>

#include "hhb/geometry.hpp"
#include "hhb/polynomial.hpp"

namespace hhb {

struct PoleTerm {
  double a;
  SpherePoint pole;
};

/// One homogeneous block f_m = scale * (sum_j a_j Z_m(., eta_j) + poly).
///
/// Multipliers only touch `scale`, so operators that act inside the block
/// (tangential derivatives) commute with them bit for bit.
struct Block {
  int m = 0;
  double scale = 1.0;
  std::vector<PoleTerm> terms;
  Polynomial poly;

  /// f_m(x) for any x in R^n.
  double value(std::span<const double> x) const;
  std::vector<double> gradient(std::span<const double> x) const;
  /// f_m as an exact polynomial (m <= kMaxZonalPolynomialDegree when pole terms are present).
  Polynomial to_polynomial() const;
};

/// Finite expansion f(x) = sum_m S_m(|x|) f_m(x), f_m in H_m(R^n).
class HHarmonicFunction {
 public:
  explicit HHarmonicFunction(int n);

  static HHarmonicFunction constant(int n, double c);

  int dim() const noexcept { return n_; }
  /// Largest degree present; -1 when there are no blocks.
  int max_degree() const;
  /// Smallest degree present; -1 when there are no blocks.
  int min_degree() const;
  const std::map<int, Block>& blocks() const noexcept { return blocks_; }

  void add_term(int m, double a, SpherePoint pole);
  /// p must be a homogeneous harmonic polynomial of degree m.
  void add_polynomial(int m, const Polynomial& p);
  void scale_block(int m, double factor);

  double operator()(std::span<const double> x) const;
  double operator()(const BallPoint& x) const { return (*this)(x.coords()); }
  std::vector<double> gradient(std::span<const double> x) const;

  /// sigma_m(u) for every block, in block order; pair with eval_with.
  std::vector<double> profile_values(double u) const;
  double eval_with(std::span<const double> x, std::span<const double> profiles) const;

  HHarmonicFunction& operator+=(const HHarmonicFunction& o);
  HHarmonicFunction& operator*=(double c);
  friend HHarmonicFunction operator+(HHarmonicFunction a, const HHarmonicFunction& b) {
    return a += b;
  }
  friend HHarmonicFunction operator*(HHarmonicFunction a, double c) { return a *= c; }
  friend HHarmonicFunction operator*(double c, HHarmonicFunction a) { return a *= c; }

 private:
  Block& block(int m);

  int n_;
  std::map<int, Block> blocks_;
};

/// Sum of atoms sigma_m^{(j)}(|x|^2) q(x); the shape is closed under d_i and N.
class DerivedField {
 public:
  using Key = std::pair<int, int>;  // (m, j)

  explicit DerivedField(int n);
  static DerivedField from(const HHarmonicFunction& f);

  int dim() const noexcept { return n_; }
  const std::map<Key, Polynomial>& atoms() const noexcept { return atoms_; }
  bool is_zero() const;

  void add_atom(int m, int j, const Polynomial& q);

  DerivedField partial(int i) const;
  DerivedField normal() const;
  DerivedField tangential(int i, int j) const;

  double operator()(std::span<const double> x) const;
  /// Radial factors sigma_m^{(j)}(u) per atom, in atom order.
  std::vector<double> radial_values(double u) const;
  double eval_with(std::span<const double> x, std::span<const double> radial) const;

 private:
  int n_;
  std::map<Key, Polynomial> atoms_;
};

inline constexpr int kMaxPartialOrder = 6;

using MultiIndex = std::array<int, kMaxDim>;

HHarmonicFunction tangential(const HHarmonicFunction& f, int i, int j);
/// T_{i1,j1} o ... o T_{ik,jk}; the last pair acts first.
HHarmonicFunction tangential_chain(const HHarmonicFunction& f,
                                   std::span<const std::pair<int, int>> ops);
HHarmonicFunction spherical_laplacian(const HHarmonicFunction& f);

DerivedField normal(const HHarmonicFunction& f);
DerivedField normal_k(const HHarmonicFunction& f, int k);
DerivedField partial(const HHarmonicFunction& f, const MultiIndex& kappa);

/// All multi-indices of order k in n variables, lexicographically descending.
std::vector<MultiIndex> multi_indices(int n, int k);
/// All n(n-1)/2 pairs (i, j), i < j, 0-based.
std::vector<std::pair<int, int>> tangential_pairs(int n);

/// Degrees 0..max_degree, `terms_per_degree` pole terms each with coefficients
/// uniform in [-1, 1] and poles uniform on the sphere.
HHarmonicFunction random_hharmonic(int n, int max_degree, std::uint64_t seed,
                                   int terms_per_degree = 2, int min_degree = 0);

/// Random point with uniformly distributed direction and norm uniform in [0, radius].
std::vector<double> random_ball_point(int n, double radius, std::mt19937_64& rng);
std::vector<double> random_unit_vector(int n, std::mt19937_64& rng);

}  // namespace hhb
