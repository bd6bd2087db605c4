#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "hhb/geometry.hpp"
#include "hhb/polynomial.hpp"

namespace hhb {

/// Radial profile S_m(r) = 2F1(m, 1-n/2; m+n/2; r^2) / 2F1(m, 1-n/2; m+n/2; 1).
///
/// Internally everything is a function of u = r^2; sigma_m(u) := S_m(sqrt u).
/// The normalization uses Gauss's summation theorem, so S_m(1) = 1 exactly.
/// For even n the series terminates (sigma_m is a polynomial of degree n/2-1
/// in u). For odd n the evaluator switches between the power series around
/// u = 0 and the logarithmic expansion around u = 1.
class RadialProfile {
 public:
  RadialProfile(int m, int n);

  int degree() const noexcept { return m_; }
  int dim() const noexcept { return n_; }
  /// 2F1(m, 1-n/2; m+n/2; 1).
  double norm_const() const noexcept { return norm_const_; }

  double operator()(double r) const;
  /// dS_m/dr.
  double prime(double r) const;

  double value_u(double u) const;
  /// sigma_m^{(j)}(u) for j = 0..order. Requires u < 1 when order >= 2.
  std::vector<double> derivatives_u(double u, int order) const;

 private:
  int m_;
  int n_;
  double norm_const_;
};

double eval_S(int m, int n, double r);
double eval_S_prime(int m, int n, double r);

/// sigma_m(u) for m = 0..max_degree.
std::vector<double> profile_sequence(int n, double u, int max_degree);
/// d sigma_m/du for m = 0..max_degree.
std::vector<double> profile_derivative_sequence(int n, double u, int max_degree);

/// table[j][m] = sigma_m^{(j)}(u) for j = 0..order, m = 0..max_degree.
std::vector<std::vector<double>> profile_derivative_table(int n, double u, int max_degree, int order);

/// dim H_m(R^n). Throws UnsupportedError if the count overflows 64 bits.
std::uint64_t zonal_dim(int n, int m);
double zonal_dim_real(int n, int m);

inline constexpr int kMaxZonalPolynomialDegree = 64;

/// b_k with Z_m(x, eta) = sum_k b_k <x,eta>^{m-2k} |x|^{2k}, |eta| = 1.
/// Memoized per (n, m); safe to call concurrently.
const std::vector<double>& zonal_coefficients(int n, int m);

/// Z_m(zeta, eta) for unit vectors with <zeta, eta> = t (Gegenbauer recurrence).
double zonal_value(int n, int m, double t);
/// Z_m(zeta, eta), m = 0..max_degree, for <zeta, eta> = t.
std::vector<double> zonal_sequence(int n, double t, int max_degree);
/// Z_m(x, y) extended by homogeneity in both arguments.
double zonal_kernel(int n, int m, std::span<const double> x, std::span<const double> y);

/// Z_m(., eta) as an exact polynomial in (<x,eta>, |x|^2).
class ZonalPolynomial {
 public:
  ZonalPolynomial(int n, int m, SpherePoint pole);

  int degree() const noexcept { return m_; }
  int dim() const noexcept { return n_; }
  const SpherePoint& pole() const noexcept { return pole_; }
  std::span<const double> coefficients() const noexcept { return *coeffs_; }

  double operator()(std::span<const double> x) const;
  std::vector<double> gradient(std::span<const double> x) const;
  /// Expansion into monomials x^e.
  Polynomial to_polynomial() const;

 private:
  int n_;
  int m_;
  SpherePoint pole_;
  const std::vector<double>* coeffs_;
};

double eval_zonal(const ZonalPolynomial& z, const BallPoint& x);
std::vector<double> zonal_gradient(const ZonalPolynomial& z, const BallPoint& x);

double digamma(double x);

/// Gamma(x) / Gamma(x + h) for x > 0, x + h > 0; exact recurrences when 2h is an
/// integer, log-Gamma otherwise.
double gamma_ratio(double x, double h);

}  // namespace hhb
