#include "hhb/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <string>
#include <utility>

#include "hhb/errors.hpp"

namespace hhb {

namespace {

constexpr int kSeriesCap = 4000000;
constexpr double kSeriesTol = 1e-17;
// Below this value of m(1-u) the expansion around u = 1 is used for odd n.
constexpr double kNearOneScale = 1.0;

void check_args(int m, int n) {
  if (n < 2 || n > kMaxDim) throw ParameterError("dimension must lie in [2, 8]");
  if (m < 0) throw ParameterError("degree must be nonnegative");
}

void check_u(double u) {
  if (!(u >= 0.0 && u <= 1.0)) throw DomainError("radial argument outside [0, 1]");
}

// Gamma(x + 1/2) / Gamma(x) for x > 0.
double half_gamma_ratio(double x) {
  double scale = 1.0;
  while (x < 400.0) {
    scale *= x / (x + 0.5);
    x += 1.0;
  }
  const double y = 1.0 / x;
  const double series =
      1.0 + y * (-1.0 / 8 + y * (1.0 / 128 + y * (5.0 / 1024 + y * (-21.0 / 32768))));
  return scale * std::sqrt(x) * series;
}

// Gamma(x) / Gamma(x + h) for 2h an integer and x, x + h > 0.
double gamma_ratio_half_integer(double x, double h) {
  double r = 1.0;
  while (h >= 1.0) {
    h -= 1.0;
    r /= x + h;
  }
  while (h < 0.0) {
    r *= x + h;
    h += 1.0;
  }
  if (h != 0.0) r /= half_gamma_ratio(x);
  return r;
}

// The profiles are members of the family F(m, d-s; m+d; u) with d = n/2 and a
// positive integer s; the value at u = 1 is Gamma(m+d)Gamma(s)/(Gamma(d)Gamma(m+s)).
struct Family {
  double d;
  int s;

  double b() const { return d - s; }
  double unit_value(int m) const {
    return std::tgamma(static_cast<double>(s)) / std::tgamma(d) * gamma_ratio_half_integer(m + d, s - d);
  }
  bool terminating() const { return b() <= 0.0 && b() == std::floor(b()); }
};

// j-th u-derivative of F(m, b; m+d; u) / F(m, b; m+d; 1) when b = -N is a
// nonpositive integer, from the finite expansion in w = 1-u (positive terms).
double terminating_derivative(int m, const Family& f, double u, int j) {
  const int top = static_cast<int>(-f.b());
  const double w = 1.0 - u;
  const double lower = 1.0 - f.d - top;
  double t = 1.0;
  double sum = 0.0;
  for (int k = 0; k <= top; ++k) {
    if (k >= j) {
      double falling = 1.0;
      for (int i = 0; i < j; ++i) falling *= k - i;
      sum += t * falling * std::pow(w, k - j);
    }
    t *= (m + k) * (static_cast<double>(k) - top) / ((lower + k) * (k + 1));
  }
  return (j % 2 == 0) ? sum : -sum;
}

// j-th u-derivative of the unnormalized F(m, b; m+d; u) through the Euler
// transform w^{s-j} F(d, m+s; m+d+j; u), whose series has positive terms.
double euler_series_derivative(int m, const Family& f, double u, int j) {
  const double a = m;
  const double b = f.b();
  const double c = m + f.d;
  double lead = 1.0;
  for (int i = 0; i < j; ++i) lead *= (a + i) * (b + i) / (c + i);
  if (lead == 0.0) return 0.0;
  const double p = f.d;
  const double q = m + f.s;
  const double r = c + j;
  double t = 1.0;
  double sum = 0.0;
  for (int k = 0; k < kSeriesCap; ++k) {
    sum += t;
    t *= (p + k) * (q + k) / ((r + k) * (k + 1)) * u;
    if (t <= kSeriesTol * sum && (k + 1) * (1.0 - u) > 1.0) {
      return lead * std::pow(1.0 - u, f.s - j) * (sum + t);
    }
  }
  throw ConvergenceError("hypergeometric series did not converge at u = " + std::to_string(u));
}

// j-th w-derivative of w^p ln w is w^{p-j} (P ln w + dP/dp) with P = p(p-1)...(p-j+1).
void falling_and_slope(int p, int j, double& fall, double& slope) {
  fall = 1.0;
  slope = 0.0;
  for (int i = 0; i < j; ++i) {
    slope = slope * (p - i) + fall;
    fall *= p - i;
  }
}

// j-th u-derivative of F(a, b; a+b+s; u) / F(a, b; a+b+s; 1) for a positive
// integer s, from the logarithmic expansion in w = 1-u.
double near_one_derivative(double a, double b, int s, double u, int j) {
  const double w = 1.0 - u;
  if (w == 0.0 && j >= s) throw DomainError("profile derivative diverges at u = 1");
  double first = 0.0;
  {
    double t = 1.0;
    for (int k = 0; k < s; ++k) {
      if (k >= j) {
        double fall = 1.0;
        for (int i = 0; i < j; ++i) fall *= k - i;
        first += t * fall * (k == j ? 1.0 : std::pow(w, k - j));
      }
      t *= (a + k) * (b + k) / ((k + 1) * (1.0 - s + k));
    }
  }
  if (w == 0.0) return (j % 2 == 0) ? first : -first;
  // (-1)^s (a)_s (b)_s / (s-1)!
  double pref = (s % 2 == 0) ? 1.0 : -1.0;
  for (int k = 0; k < s; ++k) pref *= (a + k) * (b + k);
  for (int k = 1; k < s; ++k) pref /= k;

  constexpr double kEuler = 0.57721566490153286061;
  const double lw = std::log(w);
  double psi_k1 = -kEuler;
  double psi_ks1 = -kEuler;
  for (int k = 1; k <= s; ++k) psi_ks1 += 1.0 / k;
  double psi_a = digamma(a + s);
  double psi_b = digamma(b + s);
  double coef = 1.0;
  for (int k = 1; k <= s; ++k) coef /= k;
  double sum = 0.0;
  int small = 0;
  for (int k = 0; k < kSeriesCap; ++k) {
    const int p = k + s;
    double fall;
    double slope;
    falling_and_slope(p, j, fall, slope);
    const double e = -psi_k1 - psi_ks1 + psi_a + psi_b;
    const double term =
        (p == j ? 1.0 : std::pow(w, p - j)) * coef * (fall * (lw + e) + slope);
    sum += term;
    if (std::abs(term) <= kSeriesTol * std::abs(sum) && p > j + 1) {
      if (++small == 2) break;
    } else {
      small = 0;
    }
    coef *= (a + s + k) * (b + s + k) / ((k + 1.0) * (k + s + 1.0));
    psi_k1 += 1.0 / (k + 1);
    psi_ks1 += 1.0 / (k + s + 1);
    psi_a += 1.0 / (a + s + k);
    psi_b += 1.0 / (b + s + k);
    if (k + 1 == kSeriesCap) {
      throw ConvergenceError("logarithmic expansion did not converge at u = " + std::to_string(u));
    }
  }
  const double value = first - pref * sum;
  return (j % 2 == 0) ? value : -value;
}

// j-th u-derivative of F(m, d-s; m+d; u) / F(m, d-s; m+d; 1).
double normalized_derivative(int m, const Family& f, double u, int j) {
  if (m == 0 || (f.terminating() && j > static_cast<int>(-f.b()))) return j == 0 ? 1.0 : 0.0;
  if (f.terminating()) return terminating_derivative(m, f, u, j);
  const double w = 1.0 - u;
  if (u >= 0.5 && m * w <= kNearOneScale) return near_one_derivative(m, f.b(), f.s, u, j);
  return euler_series_derivative(m, f, u, j) / f.unit_value(m);
}

bool odd_dim(int n) { return n % 2 != 0; }

Family profile_family(int n) { return {0.5 * n, n - 1}; }

// F(m, b; m+d; u) for m = 0..top, by downward recursion from two directly
// computed values. The wanted solution is minimal as m grows (the other one
// behaves like u^{-m}), so the downward direction is stable. The recursion
// reproduces F_0 = 1, which serves as an accuracy check.
std::vector<double> hyper_sequence(const Family& f, double u, int top) {
  const double b = f.b();
  const double d = f.d;
  std::vector<double> out(static_cast<std::size_t>(top) + 2);
  for (int m : {top, top + 1}) {
    out[static_cast<std::size_t>(m)] = normalized_derivative(m, f, u, 0) * f.unit_value(m);
  }
  for (int m = top - 1; m >= 0; --m) {
    const auto um = static_cast<std::size_t>(m);
    const double md = m + d;
    const double c1 = md + u * (m + 1 - b);
    const double c2 = u * (m + 1) * (b - d - m - 1) / (md + 1);
    out[um] = (c1 * out[um + 1] + c2 * out[um + 2]) / md;
  }
  if (std::abs(out[0] - 1.0) > 1e-9) {
    throw ConvergenceError("profile recurrence lost accuracy at u = " + std::to_string(u));
  }
  return out;
}

bool use_recurrence(int n, double u, int max_degree) {
  return odd_dim(n) && u < 1.0 && max_degree >= 16;
}

}  // namespace

double digamma(double x) {
  if (!(x > 0.0)) throw DomainError("digamma implemented for positive arguments only");
  double r = 0.0;
  while (x < 12.0) {
    r -= 1.0 / x;
    x += 1.0;
  }
  const double x2 = 1.0 / (x * x);
  r += std::log(x) - 0.5 / x -
       x2 * (1.0 / 12 -
             x2 * (1.0 / 120 -
                   x2 * (1.0 / 252 - x2 * (1.0 / 240 - x2 * (1.0 / 132 - x2 * (691.0 / 32760 - x2 / 12))))));
  return r;
}

RadialProfile::RadialProfile(int m, int n) : m_(m), n_(n) {
  check_args(m, n);
  norm_const_ = (m == 0 || n == 2) ? 1.0 : profile_family(n).unit_value(m);
}

double RadialProfile::value_u(double u) const {
  check_u(u);
  if (n_ == 2) return 1.0;
  return normalized_derivative(m_, profile_family(n_), u, 0);
}

double RadialProfile::operator()(double r) const {
  if (!(r >= 0.0 && r <= 1.0)) throw DomainError("radius outside [0, 1]");
  return value_u(r * r);
}

double RadialProfile::prime(double r) const {
  if (!(r >= 0.0 && r <= 1.0)) throw DomainError("radius outside [0, 1]");
  if (n_ == 2) return 0.0;
  return 2.0 * r * normalized_derivative(m_, profile_family(n_), r * r, 1);
}

std::vector<double> RadialProfile::derivatives_u(double u, int order) const {
  check_u(u);
  if (order < 0) throw ParameterError("negative derivative order");
  std::vector<double> d(static_cast<std::size_t>(order) + 1, 0.0);
  if (m_ == 0 || n_ == 2) {
    d[0] = 1.0;
    return d;
  }
  const Family f = profile_family(n_);
  for (int j = 0; j <= order; ++j) d[static_cast<std::size_t>(j)] = normalized_derivative(m_, f, u, j);
  return d;
}

double eval_S(int m, int n, double r) { return RadialProfile(m, n)(r); }

double eval_S_prime(int m, int n, double r) { return RadialProfile(m, n).prime(r); }

std::vector<double> profile_sequence(int n, double u, int max_degree) {
  check_args(max_degree, n);
  check_u(u);
  std::vector<double> out(static_cast<std::size_t>(max_degree) + 1, 1.0);
  if (n == 2) return out;
  const Family f = profile_family(n);
  if (!use_recurrence(n, u, max_degree)) {
    for (int m = 1; m <= max_degree; ++m) out[static_cast<std::size_t>(m)] = normalized_derivative(m, f, u, 0);
    return out;
  }
  const auto seq = hyper_sequence(f, u, max_degree);
  for (int m = 1; m <= max_degree; ++m) {
    out[static_cast<std::size_t>(m)] = seq[static_cast<std::size_t>(m)] / f.unit_value(m);
  }
  return out;
}

std::vector<double> profile_derivative_sequence(int n, double u, int max_degree) {
  check_args(max_degree, n);
  check_u(u);
  std::vector<double> out(static_cast<std::size_t>(max_degree) + 1, 0.0);
  if (n == 2) return out;
  const Family f = profile_family(n);
  if (!use_recurrence(n, u, max_degree)) {
    for (int m = 1; m <= max_degree; ++m) out[static_cast<std::size_t>(m)] = normalized_derivative(m, f, u, 1);
    return out;
  }
  // sigma_m' = (m b / (m+d)) G_{m+1} / F_m(1) with G_k = F(k, b+1; k+d; u).
  const Family g{f.d, f.s - 1};
  const auto seq = hyper_sequence(g, u, max_degree + 1);
  for (int m = 1; m <= max_degree; ++m) {
    out[static_cast<std::size_t>(m)] =
        m * f.b() / (m + f.d) * seq[static_cast<std::size_t>(m) + 1] / f.unit_value(m);
  }
  return out;
}

std::vector<std::vector<double>> profile_derivative_table(int n, double u, int max_degree, int order) {
  check_args(max_degree, n);
  check_u(u);
  if (order < 0) throw ParameterError("negative derivative order");
  std::vector<std::vector<double>> table;
  table.push_back(profile_sequence(n, u, max_degree));
  if (order >= 1) table.push_back(profile_derivative_sequence(n, u, max_degree));
  for (int j = 2; j <= order; ++j) table.emplace_back(static_cast<std::size_t>(max_degree) + 1, 0.0);
  if (order >= 2 && n != 2) {
    const Family f = profile_family(n);
    for (int m = 1; m <= max_degree; ++m) {
      for (int j = 2; j <= order; ++j) {
        table[static_cast<std::size_t>(j)][static_cast<std::size_t>(m)] = normalized_derivative(m, f, u, j);
      }
    }
  }
  return table;
}

double gamma_ratio(double x, double h) {
  if (!(x > 0.0 && x + h > 0.0)) throw DomainError("gamma_ratio needs positive arguments");
  if (2.0 * h == std::floor(2.0 * h)) return gamma_ratio_half_integer(x, h);
  return std::exp(std::lgamma(x) - std::lgamma(x + h));
}

std::uint64_t zonal_dim(int n, int m) {
  check_args(m, n);
  const double d = zonal_dim_real(n, m);
  if (d > 9.0e18) throw UnsupportedError("dim H_m overflows 64 bits");
  return static_cast<std::uint64_t>(std::llround(d));
}

double zonal_dim_real(int n, int m) {
  check_args(m, n);
  if (m == 0) return 1.0;
  if (m == 1) return n;
  if (n == 2) return 2.0;
  // C(m+n-1, n-1) - C(m+n-3, n-1) = (2m+n-2)(m+n-3)! / (m! (n-2)!).
  double v = (2.0 * m + n - 2);
  for (int k = 1; k <= n - 3; ++k) v *= static_cast<double>(m + k) / k;
  return v / (n - 2);
}

const std::vector<double>& zonal_coefficients(int n, int m) {
  check_args(m, n);
  if (m > kMaxZonalPolynomialDegree) {
    throw UnsupportedError("zonal polynomial degree above " + std::to_string(kMaxZonalPolynomialDegree));
  }
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::unique_ptr<const std::vector<double>>> cache;
  std::lock_guard lock(mu);
  auto& slot = cache[{n, m}];
  if (!slot) {
    std::vector<double> b(static_cast<std::size_t>(m / 2) + 1);
    for (int k = 0; k <= m / 2; ++k) {
      const double sign = (k % 2 == 0) ? 1.0 : -1.0;
      double mag;
      if (m == 0) {
        mag = 1.0;
      } else if (n == 2) {
        mag = m * std::exp(std::lgamma(m - k) - std::lgamma(k + 1.0) - std::lgamma(m - 2.0 * k + 1.0) +
                           (m - 2 * k) * std::numbers::ln2);
      } else {
        const double lam = 0.5 * n - 1.0;
        mag = (2.0 * m + n - 2) / (n - 2) *
              std::exp(std::lgamma(m - k + lam) - std::lgamma(lam) - std::lgamma(k + 1.0) -
                       std::lgamma(m - 2.0 * k + 1.0) + (m - 2 * k) * std::numbers::ln2);
      }
      b[static_cast<std::size_t>(k)] = sign * mag;
    }
    slot = std::make_unique<const std::vector<double>>(std::move(b));
  }
  return *slot;
}

std::vector<double> zonal_sequence(int n, double t, int max_degree) {
  check_args(max_degree, n);
  t = std::clamp(t, -1.0, 1.0);
  std::vector<double> z(static_cast<std::size_t>(max_degree) + 1);
  z[0] = 1.0;
  if (max_degree == 0) return z;
  if (n == 2) {
    double tm2 = 1.0;
    double tm1 = t;
    z[1] = 2.0 * t;
    for (int m = 2; m <= max_degree; ++m) {
      const double tm = 2.0 * t * tm1 - tm2;
      z[static_cast<std::size_t>(m)] = 2.0 * tm;
      tm2 = tm1;
      tm1 = tm;
    }
    return z;
  }
  const double lam = 0.5 * n - 1.0;
  double cm2 = 1.0;
  double cm1 = 2.0 * lam * t;
  z[1] = (2.0 + n - 2) / (n - 2) * cm1;
  for (int m = 2; m <= max_degree; ++m) {
    const double cm = (2.0 * t * (m + lam - 1) * cm1 - (m + 2 * lam - 2) * cm2) / m;
    z[static_cast<std::size_t>(m)] = (2.0 * m + n - 2) / (n - 2) * cm;
    cm2 = cm1;
    cm1 = cm;
  }
  return z;
}

double zonal_value(int n, int m, double t) { return zonal_sequence(n, t, m).back(); }

double zonal_kernel(int n, int m, std::span<const double> x, std::span<const double> y) {
  check_args(m, n);
  if (static_cast<int>(x.size()) != n || static_cast<int>(y.size()) != n) {
    throw ParameterError("zonal_kernel: dimension mismatch");
  }
  if (m == 0) return 1.0;
  const double rx = std::sqrt(norm_sq(x));
  const double ry = std::sqrt(norm_sq(y));
  const double rr = rx * ry;
  if (rr == 0.0) return 0.0;
  return std::pow(rr, m) * zonal_value(n, m, dot(x, y) / rr);
}

ZonalPolynomial::ZonalPolynomial(int n, int m, SpherePoint pole)
    : n_(n), m_(m), pole_(std::move(pole)), coeffs_(&zonal_coefficients(n, m)) {
  if (pole_.dim() != n) throw ParameterError("pole dimension mismatch");
}

double ZonalPolynomial::operator()(std::span<const double> x) const {
  return zonal_kernel(n_, m_, x, pole_.coords());
}

std::vector<double> ZonalPolynomial::gradient(std::span<const double> x) const {
  if (static_cast<int>(x.size()) != n_) throw ParameterError("gradient dimension mismatch");
  const auto eta = pole_.coords();
  const double s = dot(x, eta);
  const double u = norm_sq(x);
  // d/dx of sum_k b_k s^{m-2k} u^k.
  double along_eta = 0.0;
  double along_x = 0.0;
  const auto& b = *coeffs_;
  for (int k = 0; k <= m_ / 2; ++k) {
    const double bk = b[static_cast<std::size_t>(k)];
    const int a = m_ - 2 * k;
    if (a > 0) along_eta += bk * a * std::pow(s, a - 1) * std::pow(u, k);
    if (k > 0) along_x += bk * 2.0 * k * std::pow(s, a) * std::pow(u, k - 1);
  }
  std::vector<double> g(static_cast<std::size_t>(n_));
  for (int i = 0; i < n_; ++i) {
    const auto ui = static_cast<std::size_t>(i);
    g[ui] = along_eta * eta[ui] + along_x * x[ui];
  }
  return g;
}

Polynomial ZonalPolynomial::to_polynomial() const {
  const Polynomial lin = Polynomial::linear_form(pole_.coords());
  const Polynomial q = Polynomial::norm_sq(n_);
  const auto& b = *coeffs_;
  Polynomial out(n_);
  // Horner-like accumulation in powers of |x|^2 keeps the number of products small.
  std::vector<Polynomial> lin_pow(static_cast<std::size_t>(m_) + 1, Polynomial(n_));
  lin_pow[0] = Polynomial::constant(n_, 1.0);
  for (int a = 1; a <= m_; ++a) lin_pow[static_cast<std::size_t>(a)] = lin_pow[static_cast<std::size_t>(a) - 1] * lin;
  Polynomial qk = Polynomial::constant(n_, 1.0);
  for (int k = 0; k <= m_ / 2; ++k) {
    out += (lin_pow[static_cast<std::size_t>(m_ - 2 * k)] * qk) * b[static_cast<std::size_t>(k)];
    qk = qk * q;
  }
  return out;
}

double eval_zonal(const ZonalPolynomial& z, const BallPoint& x) { return z(x.coords()); }

std::vector<double> zonal_gradient(const ZonalPolynomial& z, const BallPoint& x) {
  return z.gradient(x.coords());
}

}  // namespace hhb
