#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "hhb/geometry.hpp"

namespace hhb {

/// Sparse real polynomial in n <= kMaxDim variables.
///
/// Terms with an exactly-zero coefficient are dropped, so exact cancellations
/// (e.g. in T_{i,j} of a radial polynomial) leave no residue.
class Polynomial {
 public:
  using Exponents = std::array<std::uint8_t, kMaxDim>;
  using TermMap = std::map<Exponents, double>;

  explicit Polynomial(int n = 2);

  static Polynomial constant(int n, double c);
  static Polynomial coordinate(int n, int i);
  /// <x, coeffs>.
  static Polynomial linear_form(std::span<const double> coeffs);
  /// |x|^2.
  static Polynomial norm_sq(int n);

  int dim() const noexcept { return n_; }
  const TermMap& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool is_zero() const noexcept { return terms_.empty(); }
  /// Largest total degree; -1 for the zero polynomial.
  int degree() const;
  bool is_homogeneous(int m) const;
  double max_abs_coefficient() const;

  void add_term(const Exponents& e, double c);

  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial& operator*=(double c);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(Polynomial a, double c) { return a *= c; }
  friend Polynomial operator*(double c, Polynomial a) { return a *= c; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend bool operator==(const Polynomial&, const Polynomial&) = default;

  Polynomial pow(int k) const;
  Polynomial derivative(int i) const;
  Polynomial times_coordinate(int i) const;
  /// N p = <x, grad p>.
  Polynomial euler() const;
  /// T_{i,j} p = x_i d_j p - x_j d_i p (0-based indices).
  Polynomial tangential(int i, int j) const;
  Polynomial laplacian() const;

  double operator()(std::span<const double> x) const;
  std::vector<double> gradient(std::span<const double> x) const;

 private:
  int n_;
  TermMap terms_;
};

/// Integral of x^e over the unit sphere against normalized surface measure.
double sphere_monomial_mean(int n, const Polynomial::Exponents& e);

/// <p, q>_{L^2(S)} under normalized surface measure, computed exactly.
double sphere_inner_product(const Polynomial& p, const Polynomial& q);

}  // namespace hhb
