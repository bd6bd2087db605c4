#include "hhb/expansion.hpp"

#include <cmath>
#include <string>

#include "hhb/errors.hpp"
#include "hhb/specfun.hpp"

namespace hhb {

namespace {

bool radial_trivial(int n, int m) { return n == 2 || m == 0; }

void check_pair(int n, int i, int j) {
  if (i < 0 || j < 0 || i >= n || j >= n || i >= j) {
    throw ParameterError("tangential pair must satisfy 0 <= i < j < n");
  }
}

}  // namespace

double Block::value(std::span<const double> x) const {
  const int n = static_cast<int>(x.size());
  double s = 0.0;
  for (const auto& t : terms) s += t.a * zonal_kernel(n, m, x, t.pole.coords());
  if (!poly.is_zero()) s += poly(x);
  return scale * s;
}

std::vector<double> Block::gradient(std::span<const double> x) const {
  const int n = static_cast<int>(x.size());
  std::vector<double> g(x.size(), 0.0);
  for (const auto& t : terms) {
    const auto gz = ZonalPolynomial(n, m, t.pole).gradient(x);
    for (std::size_t i = 0; i < g.size(); ++i) g[i] += t.a * gz[i];
  }
  if (!poly.is_zero()) {
    const auto gp = poly.gradient(x);
    for (std::size_t i = 0; i < g.size(); ++i) g[i] += gp[i];
  }
  for (double& v : g) v *= scale;
  return g;
}

Polynomial Block::to_polynomial() const {
  Polynomial p = poly;
  for (const auto& t : terms) {
    p += ZonalPolynomial(p.dim(), m, t.pole).to_polynomial() * t.a;
  }
  return p * scale;
}

HHarmonicFunction::HHarmonicFunction(int n) : n_(n) {
  if (n < 2 || n > kMaxDim) throw ParameterError("dimension must lie in [2, 8]");
}

HHarmonicFunction HHarmonicFunction::constant(int n, double c) {
  HHarmonicFunction f(n);
  f.add_polynomial(0, Polynomial::constant(n, c));
  return f;
}

int HHarmonicFunction::max_degree() const { return blocks_.empty() ? -1 : blocks_.rbegin()->first; }

int HHarmonicFunction::min_degree() const { return blocks_.empty() ? -1 : blocks_.begin()->first; }

Block& HHarmonicFunction::block(int m) {
  if (m < 0) throw ParameterError("degree must be nonnegative");
  auto it = blocks_.find(m);
  if (it == blocks_.end()) {
    Block b;
    b.m = m;
    b.poly = Polynomial(n_);
    it = blocks_.emplace(m, std::move(b)).first;
  }
  return it->second;
}

void HHarmonicFunction::add_term(int m, double a, SpherePoint pole) {
  if (pole.dim() != n_) throw ParameterError("pole dimension mismatch");
  Block& b = block(m);
  if (b.scale != 1.0) throw ParameterError("cannot add terms to a rescaled block");
  b.terms.push_back({a, std::move(pole)});
}

void HHarmonicFunction::add_polynomial(int m, const Polynomial& p) {
  if (p.dim() != n_) throw ParameterError("polynomial dimension mismatch");
  if (!p.is_homogeneous(m)) throw ParameterError("block polynomial must be homogeneous of degree m");
  const double lap = p.laplacian().max_abs_coefficient();
  if (lap > 1e-9 * std::max(1.0, p.max_abs_coefficient())) {
    throw ParameterError("block polynomial must be harmonic");
  }
  Block& b = block(m);
  if (b.scale != 1.0) throw ParameterError("cannot add terms to a rescaled block");
  b.poly += p;
}

void HHarmonicFunction::scale_block(int m, double factor) {
  auto it = blocks_.find(m);
  if (it != blocks_.end()) it->second.scale *= factor;
}

std::vector<double> HHarmonicFunction::profile_values(double u) const {
  std::vector<double> v;
  v.reserve(blocks_.size());
  for (const auto& [m, b] : blocks_) {
    v.push_back(radial_trivial(n_, m) ? 1.0 : RadialProfile(m, n_).value_u(u));
  }
  return v;
}

double HHarmonicFunction::eval_with(std::span<const double> x, std::span<const double> profiles) const {
  double s = 0.0;
  std::size_t k = 0;
  for (const auto& [m, b] : blocks_) s += profiles[k++] * b.value(x);
  return s;
}

double HHarmonicFunction::operator()(std::span<const double> x) const {
  if (static_cast<int>(x.size()) != n_) throw ParameterError("evaluation point dimension mismatch");
  const double u = norm_sq(x);
  if (!(u < 1.0)) throw DomainError("evaluation point must lie in the open ball");
  return eval_with(x, profile_values(u));
}

std::vector<double> HHarmonicFunction::gradient(std::span<const double> x) const {
  if (static_cast<int>(x.size()) != n_) throw ParameterError("evaluation point dimension mismatch");
  const double u = norm_sq(x);
  if (!(u < 1.0)) throw DomainError("evaluation point must lie in the open ball");
  std::vector<double> g(x.size(), 0.0);
  for (const auto& [m, b] : blocks_) {
    double sigma = 1.0;
    double dsigma = 0.0;
    if (!radial_trivial(n_, m)) {
      const auto d = RadialProfile(m, n_).derivatives_u(u, 1);
      sigma = d[0];
      dsigma = d[1];
    }
    const double v = dsigma != 0.0 ? b.value(x) : 0.0;
    const auto gb = b.gradient(x);
    for (std::size_t i = 0; i < g.size(); ++i) g[i] += 2.0 * x[i] * dsigma * v + sigma * gb[i];
  }
  return g;
}

HHarmonicFunction& HHarmonicFunction::operator+=(const HHarmonicFunction& o) {
  if (o.n_ != n_) throw ParameterError("dimension mismatch");
  for (const auto& [m, ob] : o.blocks_) {
    auto it = blocks_.find(m);
    if (it == blocks_.end()) {
      blocks_.emplace(m, ob);
      continue;
    }
    Block& b = it->second;
    if (b.scale == ob.scale) {
      b.terms.insert(b.terms.end(), ob.terms.begin(), ob.terms.end());
      b.poly += ob.poly;
    } else {
      // Fold both scales into the polynomial part.
      Block merged;
      merged.m = m;
      merged.poly = b.to_polynomial() + ob.to_polynomial();
      b = std::move(merged);
    }
  }
  return *this;
}

HHarmonicFunction& HHarmonicFunction::operator*=(double c) {
  for (auto& [m, b] : blocks_) {
    for (auto& t : b.terms) t.a *= c;
    b.poly *= c;
  }
  return *this;
}

HHarmonicFunction tangential(const HHarmonicFunction& f, int i, int j) {
  const int n = f.dim();
  check_pair(n, i, j);
  HHarmonicFunction out(n);
  for (const auto& [m, b] : f.blocks()) {
    if (m == 0) continue;
    Block inner = b;
    inner.scale = 1.0;
    Polynomial p = inner.to_polynomial().tangential(i, j);
    if (p.is_zero()) continue;
    out.add_polynomial(m, p);
    out.scale_block(m, b.scale);
  }
  return out;
}

HHarmonicFunction tangential_chain(const HHarmonicFunction& f,
                                   std::span<const std::pair<int, int>> ops) {
  HHarmonicFunction g = f;
  for (auto it = ops.rbegin(); it != ops.rend(); ++it) g = tangential(g, it->first, it->second);
  return g;
}

HHarmonicFunction spherical_laplacian(const HHarmonicFunction& f) {
  HHarmonicFunction out(f.dim());
  for (const auto& [i, j] : tangential_pairs(f.dim())) {
    out += tangential(tangential(f, i, j), i, j);
  }
  return out;
}

DerivedField::DerivedField(int n) : n_(n) {
  if (n < 2 || n > kMaxDim) throw ParameterError("dimension must lie in [2, 8]");
}

DerivedField DerivedField::from(const HHarmonicFunction& f) {
  DerivedField d(f.dim());
  for (const auto& [m, b] : f.blocks()) d.add_atom(m, 0, b.to_polynomial());
  return d;
}

bool DerivedField::is_zero() const {
  for (const auto& [k, q] : atoms_) {
    if (!q.is_zero()) return false;
  }
  return true;
}

void DerivedField::add_atom(int m, int j, const Polynomial& q) {
  if (q.is_zero()) return;
  if (j > 0 && radial_trivial(n_, m)) return;
  auto [it, fresh] = atoms_.try_emplace({m, j}, q);
  if (!fresh) {
    it->second += q;
    if (it->second.is_zero()) atoms_.erase(it);
  }
}

DerivedField DerivedField::partial(int i) const {
  if (i < 0 || i >= n_) throw ParameterError("coordinate index out of range");
  DerivedField d(n_);
  for (const auto& [key, q] : atoms_) {
    const auto [m, j] = key;
    d.add_atom(m, j + 1, q.times_coordinate(i) * 2.0);
    d.add_atom(m, j, q.derivative(i));
  }
  return d;
}

DerivedField DerivedField::normal() const {
  DerivedField d(n_);
  const Polynomial r2 = Polynomial::norm_sq(n_);
  for (const auto& [key, q] : atoms_) {
    const auto [m, j] = key;
    d.add_atom(m, j + 1, (q * r2) * 2.0);
    d.add_atom(m, j, q.euler());
  }
  return d;
}

DerivedField DerivedField::tangential(int i, int j) const {
  check_pair(n_, i, j);
  DerivedField d(n_);
  for (const auto& [key, q] : atoms_) d.add_atom(key.first, key.second, q.tangential(i, j));
  return d;
}

std::vector<double> DerivedField::radial_values(double u) const {
  std::vector<double> v;
  v.reserve(atoms_.size());
  auto it = atoms_.begin();
  while (it != atoms_.end()) {
    const int m = it->first.first;
    auto end = it;
    int top = 0;
    while (end != atoms_.end() && end->first.first == m) {
      top = std::max(top, end->first.second);
      ++end;
    }
    std::vector<double> d;
    if (radial_trivial(n_, m)) {
      d.assign(static_cast<std::size_t>(top) + 1, 0.0);
      d[0] = 1.0;
    } else {
      d = RadialProfile(m, n_).derivatives_u(u, top);
    }
    for (; it != end; ++it) v.push_back(d[static_cast<std::size_t>(it->first.second)]);
  }
  return v;
}

double DerivedField::eval_with(std::span<const double> x, std::span<const double> radial) const {
  double s = 0.0;
  std::size_t k = 0;
  for (const auto& [key, q] : atoms_) {
    const double r = radial[k++];
    if (r != 0.0) s += r * q(x);
  }
  return s;
}

double DerivedField::operator()(std::span<const double> x) const {
  if (static_cast<int>(x.size()) != n_) throw ParameterError("evaluation point dimension mismatch");
  const double u = norm_sq(x);
  if (!(u < 1.0)) throw DomainError("evaluation point must lie in the open ball");
  return eval_with(x, radial_values(u));
}

DerivedField normal(const HHarmonicFunction& f) { return DerivedField::from(f).normal(); }

DerivedField normal_k(const HHarmonicFunction& f, int k) {
  if (k < 0) throw ParameterError("derivative order must be nonnegative");
  DerivedField d = DerivedField::from(f);
  for (int i = 0; i < k; ++i) d = d.normal();
  return d;
}

DerivedField partial(const HHarmonicFunction& f, const MultiIndex& kappa) {
  int order = 0;
  for (int i = 0; i < kMaxDim; ++i) {
    const int e = kappa[static_cast<std::size_t>(i)];
    if (e < 0) throw ParameterError("multi-index entries must be nonnegative");
    if (e > 0 && i >= f.dim()) throw ParameterError("multi-index exceeds the dimension");
    order += e;
  }
  if (order > kMaxPartialOrder) {
    throw UnsupportedError("partial derivatives of order above " + std::to_string(kMaxPartialOrder) +
                           " are not supported");
  }
  DerivedField d = DerivedField::from(f);
  for (int i = 0; i < f.dim(); ++i) {
    for (int e = 0; e < kappa[static_cast<std::size_t>(i)]; ++e) d = d.partial(i);
  }
  return d;
}

std::vector<MultiIndex> multi_indices(int n, int k) {
  std::vector<MultiIndex> out;
  MultiIndex cur{};
  auto rec = [&](auto&& self, int pos, int left) -> void {
    if (pos == n - 1) {
      cur[static_cast<std::size_t>(pos)] = left;
      out.push_back(cur);
      return;
    }
    for (int e = left; e >= 0; --e) {
      cur[static_cast<std::size_t>(pos)] = e;
      self(self, pos + 1, left - e);
    }
    cur[static_cast<std::size_t>(pos)] = 0;
  };
  rec(rec, 0, k);
  return out;
}

std::vector<std::pair<int, int>> tangential_pairs(int n) {
  std::vector<std::pair<int, int>> out;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) out.emplace_back(i, j);
  }
  return out;
}

std::vector<double> random_unit_vector(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  std::vector<double> v(static_cast<std::size_t>(n));
  double s = 0.0;
  do {
    s = 0.0;
    for (double& c : v) {
      c = g(rng);
      s += c * c;
    }
  } while (s < 1e-12);
  const double inv = 1.0 / std::sqrt(s);
  for (double& c : v) c *= inv;
  return v;
}

std::vector<double> random_ball_point(int n, double radius, std::mt19937_64& rng) {
  auto v = random_unit_vector(n, rng);
  const double r = std::uniform_real_distribution<double>(0.0, radius)(rng);
  for (double& c : v) c *= r;
  return v;
}

HHarmonicFunction random_hharmonic(int n, int max_degree, std::uint64_t seed, int terms_per_degree,
                                   int min_degree) {
  if (max_degree < min_degree || min_degree < 0) throw ParameterError("invalid degree range");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  HHarmonicFunction f(n);
  for (int m = min_degree; m <= max_degree; ++m) {
    for (int k = 0; k < terms_per_degree; ++k) {
      const double a = coef(rng);
      f.add_term(m, a, SpherePoint(random_unit_vector(n, rng)));
    }
  }
  return f;
}

}  // namespace hhb
