#include "hhb/polynomial.hpp"

#include <cmath>
#include <numbers>

#include "hhb/errors.hpp"

namespace hhb {

namespace {

int total_degree(const Polynomial::Exponents& e) {
  int d = 0;
  for (auto v : e) d += v;
  return d;
}

void check_index(int n, int i) {
  if (i < 0 || i >= n) throw ParameterError("coordinate index out of range");
}

}  // namespace

Polynomial::Polynomial(int n) : n_(n) {
  if (n < 1 || n > kMaxDim) throw ParameterError("polynomial dimension out of range");
}

Polynomial Polynomial::constant(int n, double c) {
  Polynomial p(n);
  p.add_term(Exponents{}, c);
  return p;
}

Polynomial Polynomial::coordinate(int n, int i) {
  check_index(n, i);
  Polynomial p(n);
  Exponents e{};
  e[static_cast<std::size_t>(i)] = 1;
  p.add_term(e, 1.0);
  return p;
}

Polynomial Polynomial::linear_form(std::span<const double> coeffs) {
  Polynomial p(static_cast<int>(coeffs.size()));
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    Exponents e{};
    e[i] = 1;
    p.add_term(e, coeffs[i]);
  }
  return p;
}

Polynomial Polynomial::norm_sq(int n) {
  Polynomial p(n);
  for (int i = 0; i < n; ++i) {
    Exponents e{};
    e[static_cast<std::size_t>(i)] = 2;
    p.add_term(e, 1.0);
  }
  return p;
}

int Polynomial::degree() const {
  int d = -1;
  for (const auto& [e, c] : terms_) d = std::max(d, total_degree(e));
  return d;
}

bool Polynomial::is_homogeneous(int m) const {
  for (const auto& [e, c] : terms_) {
    if (total_degree(e) != m) return false;
  }
  return true;
}

double Polynomial::max_abs_coefficient() const {
  double mx = 0.0;
  for (const auto& [e, c] : terms_) mx = std::max(mx, std::abs(c));
  return mx;
}

void Polynomial::add_term(const Exponents& e, double c) {
  if (c == 0.0) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0.0) terms_.erase(it);
  }
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  if (o.n_ != n_) throw ParameterError("polynomial dimension mismatch");
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  if (o.n_ != n_) throw ParameterError("polynomial dimension mismatch");
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

Polynomial& Polynomial::operator*=(double c) {
  if (c == 0.0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, v] : terms_) v *= c;
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.n_ != b.n_) throw ParameterError("polynomial dimension mismatch");
  Polynomial out(a.n_);
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      Polynomial::Exponents e{};
      for (std::size_t i = 0; i < e.size(); ++i) {
        const int s = ea[i] + eb[i];
        if (s > 255) throw UnsupportedError("polynomial exponent overflow");
        e[i] = static_cast<std::uint8_t>(s);
      }
      out.add_term(e, ca * cb);
    }
  }
  return out;
}

Polynomial Polynomial::pow(int k) const {
  if (k < 0) throw ParameterError("negative polynomial power");
  Polynomial out = constant(n_, 1.0);
  Polynomial base = *this;
  while (k > 0) {
    if (k & 1) out = out * base;
    k >>= 1;
    if (k > 0) base = base * base;
  }
  return out;
}

Polynomial Polynomial::derivative(int i) const {
  check_index(n_, i);
  const auto ui = static_cast<std::size_t>(i);
  Polynomial out(n_);
  for (const auto& [e, c] : terms_) {
    if (e[ui] == 0) continue;
    Exponents d = e;
    d[ui] = static_cast<std::uint8_t>(e[ui] - 1);
    out.add_term(d, c * e[ui]);
  }
  return out;
}

Polynomial Polynomial::times_coordinate(int i) const {
  check_index(n_, i);
  const auto ui = static_cast<std::size_t>(i);
  Polynomial out(n_);
  for (const auto& [e, c] : terms_) {
    Exponents d = e;
    if (d[ui] == 255) throw UnsupportedError("polynomial exponent overflow");
    d[ui] = static_cast<std::uint8_t>(e[ui] + 1);
    out.add_term(d, c);
  }
  return out;
}

Polynomial Polynomial::euler() const {
  Polynomial out(n_);
  for (const auto& [e, c] : terms_) out.add_term(e, c * total_degree(e));
  return out;
}

Polynomial Polynomial::tangential(int i, int j) const {
  check_index(n_, i);
  check_index(n_, j);
  Polynomial out = derivative(j).times_coordinate(i);
  out -= derivative(i).times_coordinate(j);
  return out;
}

Polynomial Polynomial::laplacian() const {
  Polynomial out(n_);
  for (int i = 0; i < n_; ++i) out += derivative(i).derivative(i);
  return out;
}

double Polynomial::operator()(std::span<const double> x) const {
  if (static_cast<int>(x.size()) != n_) throw ParameterError("evaluation dimension mismatch");
  // Powers x_i^k, k up to the largest exponent present.
  int maxe = 0;
  for (const auto& [e, c] : terms_) {
    for (int i = 0; i < n_; ++i) maxe = std::max(maxe, static_cast<int>(e[static_cast<std::size_t>(i)]));
  }
  std::vector<double> pw(static_cast<std::size_t>(n_ * (maxe + 1)));
  for (int i = 0; i < n_; ++i) {
    double v = 1.0;
    for (int k = 0; k <= maxe; ++k) {
      pw[static_cast<std::size_t>(i * (maxe + 1) + k)] = v;
      v *= x[static_cast<std::size_t>(i)];
    }
  }
  double s = 0.0;
  for (const auto& [e, c] : terms_) {
    double t = c;
    for (int i = 0; i < n_; ++i) t *= pw[static_cast<std::size_t>(i * (maxe + 1) + e[static_cast<std::size_t>(i)])];
    s += t;
  }
  return s;
}

std::vector<double> Polynomial::gradient(std::span<const double> x) const {
  std::vector<double> g(static_cast<std::size_t>(n_));
  for (int i = 0; i < n_; ++i) g[static_cast<std::size_t>(i)] = derivative(i)(x);
  return g;
}

double sphere_monomial_mean(int n, const Polynomial::Exponents& e) {
  // Gamma(n/2) prod Gamma((e_i+1)/2) / (pi^{n/2} Gamma((|e|+n)/2)), zero unless all e_i even.
  double lg = std::lgamma(0.5 * n);
  int deg = 0;
  for (int i = 0; i < n; ++i) {
    const int k = e[static_cast<std::size_t>(i)];
    if (k % 2 != 0) return 0.0;
    deg += k;
    lg += std::lgamma(0.5 * (k + 1));
  }
  lg -= 0.5 * n * std::log(std::numbers::pi) + std::lgamma(0.5 * (deg + n));
  return std::exp(lg);
}

double sphere_inner_product(const Polynomial& p, const Polynomial& q) {
  if (p.dim() != q.dim()) throw ParameterError("polynomial dimension mismatch");
  const int n = p.dim();
  double s = 0.0;
  for (const auto& [ea, ca] : p.terms()) {
    for (const auto& [eb, cb] : q.terms()) {
      Polynomial::Exponents e{};
      bool even = true;
      for (int i = 0; i < n; ++i) {
        const auto ui = static_cast<std::size_t>(i);
        e[ui] = static_cast<std::uint8_t>(ea[ui] + eb[ui]);
        if (e[ui] % 2) {
          even = false;
          break;
        }
      }
      if (even) s += ca * cb * sphere_monomial_mean(n, e);
    }
  }
  return s;
}

}  // namespace hhb
