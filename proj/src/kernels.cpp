#include "hhb/kernels.hpp"

#include <array>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <string>

#include "hhb/errors.hpp"
#include "hhb/quadrature.hpp"
#include "hhb/specfun.hpp"

namespace hhb {

namespace {

constexpr std::array<int, 4> kBuckets = {64, 256, 1024, 4096};
constexpr int kExtraNodes = 40;

struct CoefficientCache {
  std::mutex mu;
  std::vector<double> values;  // c_0..c_{kBuckets[done-1]}
  std::size_t done = 0;
};

CoefficientCache& cache_for(int n, double alpha) {
  static std::mutex mu;
  static std::map<std::pair<int, double>, std::unique_ptr<CoefficientCache>> caches;
  std::lock_guard lock(mu);
  auto& slot = caches[{n, alpha}];
  if (!slot) slot = std::make_unique<CoefficientCache>();
  return *slot;
}

// Appends c_m for m in (previous bucket, bucket] using one Gauss-Jacobi rule in
// u for the weight (1-u)^alpha u^{n/2-1}, normalized to a probability measure, so
// that 1/c_m = sum_i w_i u_i^m sigma_m(u_i)^2.
void extend_bucket(int n, double alpha, CoefficientCache& c) {
  const int top = kBuckets[c.done];
  const int first = c.done == 0 ? 0 : kBuckets[c.done - 1] + 1;
  const GaussRule g = radial_rule_u(n, alpha, top + kExtraNodes);
  const auto count = static_cast<std::size_t>(top - first + 1);
  std::vector<std::vector<double>> contrib(count, std::vector<double>(g.nodes.size()));
  for (std::size_t i = 0; i < g.nodes.size(); ++i) {
    const double u = g.nodes[i];
    const auto sigma = profile_sequence(n, u, top);
    for (int m = first; m <= top; ++m) {
      const double s = sigma[static_cast<std::size_t>(m)];
      contrib[static_cast<std::size_t>(m - first)][i] = g.weights[i] * std::pow(u, m) * s * s;
    }
  }
  for (std::size_t k = 0; k < count; ++k) {
    // S_0 = 1 makes the m = 0 integral exactly the normalizing Beta integral
    c.values.push_back(c.values.empty() ? 1.0 : 1.0 / pairwise_sum(contrib[k]));
  }
  ++c.done;
}

double closed_form(double alpha, int m) {
  if (m == 0) return 1.0;
  return gamma_ratio(m, -alpha - 1.0);
}

void check_family(int n) {
  if (n < 2 || n > kMaxDim) throw ParameterError("dimension must lie in [2, 8]");
}

}  // namespace

CoefficientFamily::CoefficientFamily(int n, double alpha) : n_(n), alpha_(alpha) {
  check_family(n);
  if (!std::isfinite(alpha)) throw ParameterError("alpha must be finite");
}

std::vector<double> CoefficientFamily::range(int max_degree) const {
  if (max_degree < 0) throw ParameterError("degree must be nonnegative");
  std::vector<double> out(static_cast<std::size_t>(max_degree) + 1);
  if (!integral_mode()) {
    for (int m = 0; m <= max_degree; ++m) out[static_cast<std::size_t>(m)] = closed_form(alpha_, m);
    return out;
  }
  if (max_degree > kMaxCoefficientDegree) {
    throw UnsupportedError("c_m(alpha) is available for m <= " + std::to_string(kMaxCoefficientDegree) +
                           " when alpha > -1, requested " + std::to_string(max_degree));
  }
  CoefficientCache& c = cache_for(n_, alpha_);
  std::lock_guard lock(c.mu);
  while (static_cast<int>(c.values.size()) <= max_degree) extend_bucket(n_, alpha_, c);
  std::copy(c.values.begin(), c.values.begin() + max_degree + 1, out.begin());
  return out;
}

double CoefficientFamily::operator()(int m) const {
  if (m < 0) throw ParameterError("degree must be nonnegative");
  if (!integral_mode()) return closed_form(alpha_, m);
  return range(m)[static_cast<std::size_t>(m)];
}

double coeff_c(int n, double alpha, int m) { return CoefficientFamily(n, alpha)(m); }

Multiplier::Multiplier(int n, double s, double t) : s_(s), t_(t), num_(n, s + t), den_(n, s) {}

double Multiplier::operator()(int m) const {
  if (t_ == 0.0) return 1.0;
  return num_(m) / den_(m);
}

std::vector<double> Multiplier::range(int max_degree) const {
  if (t_ == 0.0) return std::vector<double>(static_cast<std::size_t>(max_degree) + 1, 1.0);
  auto a = num_.range(max_degree);
  const auto b = den_.range(max_degree);
  for (std::size_t i = 0; i < a.size(); ++i) a[i] /= b[i];
  return a;
}

double multiplier_d(int n, double s, double t, int m) { return Multiplier(n, s, t)(m); }

HHarmonicFunction apply_Dst(double s, double t, const HHarmonicFunction& f) {
  HHarmonicFunction g = f;
  if (t == 0.0 || f.max_degree() < 0) return g;
  const auto d = Multiplier(f.dim(), s, t).range(f.max_degree());
  for (const auto& [m, b] : f.blocks()) g.scale_block(m, d[static_cast<std::size_t>(m)]);
  return g;
}

namespace {

struct SeriesTerms {
  std::vector<double> terms;
  std::vector<double> scaled_bound;  // |term| bound with the factor rho^m removed
};

struct SeriesSetup {
  int n;
  double alpha;
  KernelOperator op;
  double rx;
  double ry;
  double t;  // <zeta, eta>
};

int derivative_order(const KernelOperator& op) {
  return op.kind == KernelOperator::Kind::Value ? 0 : op.order;
}

double growth_exponent(const SeriesSetup& s) {
  double p = s.alpha + 1.0 + 2.0 * (s.n - 2) + derivative_order(s.op);
  if (s.op.multiplier) p += s.op.t;
  return p;
}

SeriesTerms compute_terms(const SeriesSetup& s, int top) {
  const int n = s.n;
  const auto count = static_cast<std::size_t>(top) + 1;
  std::vector<double> e = CoefficientFamily(n, s.alpha).range(top);
  if (s.op.multiplier) {
    const auto d = Multiplier(n, s.op.s, s.op.t).range(top);
    for (std::size_t m = 0; m < count; ++m) e[m] *= d[m];
  }
  const double ux = s.rx * s.rx;
  const double uy = s.ry * s.ry;
  const auto sy = profile_sequence(n, uy, top);
  const auto zon = zonal_sequence(n, s.t, top);
  const int k = derivative_order(s.op);
  const auto table = profile_derivative_table(n, ux, top, k);
  SeriesTerms out;
  out.terms.resize(count);
  out.scaled_bound.resize(count);
  for (int m = 0; m <= top; ++m) {
    const auto um = static_cast<std::size_t>(m);
    double x_part = 0.0;
    double x_abs = 0.0;
    double rho_m = 0.0;
    switch (s.op.kind) {
      case KernelOperator::Kind::Value:
        x_part = table[0][um];
        x_abs = std::abs(x_part);
        rho_m = std::pow(s.rx * s.ry, m);
        break;
      case KernelOperator::Kind::Normal: {
        // (2u d/du)^k [sigma(u) u^{m/2}] = u^{m/2} sum_j c_j u^j sigma^{(j)}(u).
        std::vector<double> c(static_cast<std::size_t>(k) + 1, 0.0);
        c[0] = 1.0;
        for (int step = 0; step < k; ++step) {
          std::vector<double> next(c.size(), 0.0);
          for (int j = 0; j <= step; ++j) {
            const auto uj = static_cast<std::size_t>(j);
            next[uj] += (m + 2.0 * j) * c[uj];
            next[uj + 1] += 2.0 * c[uj];
          }
          c = std::move(next);
        }
        double uj = 1.0;
        for (int j = 0; j <= k; ++j) {
          const double v = c[static_cast<std::size_t>(j)] * uj * table[static_cast<std::size_t>(j)][um];
          x_part += v;
          x_abs += std::abs(v);
          uj *= ux;
        }
        rho_m = std::pow(s.rx * s.ry, m);
        break;
      }
      case KernelOperator::Kind::AxialPartial: {
        // d^k/dr^k [sigma(r^2) r^m] = sum_{j,e} c_{j,e} r^{m+e} sigma^{(j)}(r^2), e in [-k, k].
        const auto w = static_cast<std::size_t>(2 * k + 1);
        std::vector<double> c((static_cast<std::size_t>(k) + 1) * w, 0.0);
        auto at = [&](int j, int e) -> double& {
          return c[static_cast<std::size_t>(j) * w + static_cast<std::size_t>(e + k)];
        };
        at(0, 0) = 1.0;
        for (int step = 0; step < k; ++step) {
          std::vector<double> next(c.size(), 0.0);
          auto nat = [&](int j, int e) -> double& {
            return next[static_cast<std::size_t>(j) * w + static_cast<std::size_t>(e + k)];
          };
          for (int j = 0; j <= step; ++j) {
            for (int e = -step; e <= step; ++e) {
              const double v = at(j, e);
              if (v == 0.0) continue;
              nat(j, e - 1) += v * (m + e);
              nat(j + 1, e + 1) += 2.0 * v;
            }
          }
          c = std::move(next);
        }
        const double ym = std::pow(s.ry, m);
        for (int j = 0; j <= k; ++j) {
          for (int e = -k; e <= k; ++e) {
            const double v = at(j, e);
            if (v == 0.0 || m + e < 0) continue;
            const double term = v * std::pow(s.rx, m + e) * ym * table[static_cast<std::size_t>(j)][um];
            x_part += term;
            x_abs += std::abs(term);
          }
        }
        rho_m = 1.0;
        break;
      }
    }
    const double common = e[um] * sy[um];
    out.terms[um] = common * zon[um] * x_part * rho_m;
    const double rho_pow = std::pow(s.rx * s.ry, m);
    const double bound = std::abs(common) * zonal_dim_real(n, m) * x_abs * rho_m;
    out.scaled_bound[um] = rho_pow > 0.0 ? bound / rho_pow : 0.0;
  }
  return out;
}

// K * sum_{m > top} m^p rho^m with K fitted on the upper half of the computed terms.
double tail_estimate(const SeriesTerms& terms, int top, double p, double rho, int at) {
  if (rho == 0.0) return 0.0;
  double k = 0.0;
  for (int m = std::max(1, top / 2); m <= top; ++m) {
    k = std::max(k, terms.scaled_bound[static_cast<std::size_t>(m)] / std::pow(m, p));
  }
  k *= 1.5;
  const double ratio = rho * std::pow((at + 2.0) / (at + 1.0), std::max(p, 0.0));
  if (ratio >= 1.0) return INFINITY;
  return k * std::pow(at + 1.0, p) * std::pow(rho, at + 1) / (1.0 - ratio);
}

KernelValue sum_series(const SeriesSetup& s, const KernelSpec& spec) {
  const double rho = s.rx * s.ry;
  if (spec.degree >= 0) {
    const auto terms = compute_terms(s, spec.degree);
    return {pairwise_sum(terms.terms), spec.degree,
            tail_estimate(terms, spec.degree, growth_exponent(s), rho, spec.degree)};
  }
  if (!(spec.tolerance > 0.0)) throw ParameterError("kernel tolerance must be positive");
  if (rho == 0.0) {
    const auto terms = compute_terms(s, derivative_order(s.op));
    return {pairwise_sum(terms.terms), derivative_order(s.op), 0.0};
  }
  const double p = growth_exponent(s);
  if (rho > 0.999) {
    const int need = static_cast<int>(std::ceil(std::log(spec.tolerance) / std::log(rho)));
    throw TruncationError("kernel truncation infeasible: |x||y| = " + std::to_string(rho) +
                              " exceeds 0.999; required degree at least " + std::to_string(need),
                          need);
  }
  int top = 64;
  for (int round = 0; round < 6; ++round) {
    const auto terms = compute_terms(s, top);
    const double sum = pairwise_sum(terms.terms);
    const double target = spec.tolerance * std::max(1.0, std::abs(sum));
    const double tail = tail_estimate(terms, top, p, rho, top);
    if (tail <= target) return {sum, top, tail};
    int need = top;
    while (need < 1000000 && tail_estimate(terms, top, p, rho, need) > target) need += 16;
    need = std::max(need, top + 16);
    if (need > kMaxCoefficientDegree) {
      throw TruncationError("kernel truncation needs degree " + std::to_string(need) +
                                ", above the supported " + std::to_string(kMaxCoefficientDegree),
                            need);
    }
    top = need;
  }
  throw ConvergenceError("kernel truncation degree did not settle");
}

SeriesSetup make_setup(const KernelSpec& spec, const KernelOperator& op, const BallPoint& x,
                       const BallPoint& y) {
  const int n = spec.n;
  if (x.dim() != n || y.dim() != n) throw ParameterError("kernel point dimension mismatch");
  if (!x.interior() || !y.interior()) throw DomainError("kernel points must lie in the open ball");
  if (op.order < 0) throw ParameterError("derivative order must be nonnegative");
  if (op.kind == KernelOperator::Kind::AxialPartial && op.order > kMaxPartialOrder) {
    throw UnsupportedError("partial derivatives of order above 6 are not supported");
  }
  SeriesSetup s{n, spec.alpha, op, x.norm(), y.norm(), 1.0};
  std::vector<double> zeta(static_cast<std::size_t>(n), 0.0);
  zeta[0] = 1.0;
  if (op.kind == KernelOperator::Kind::AxialPartial) {
    for (int i = 1; i < n; ++i) {
      if (x[i] != 0.0) throw ParameterError("axial partial kernel needs x on the first axis");
    }
    if (x[0] < 0.0) throw ParameterError("axial partial kernel needs x = r e_1 with r >= 0");
  } else if (x.norm() > 0.0) {
    for (int i = 0; i < n; ++i) zeta[static_cast<std::size_t>(i)] = x[i] / x.norm();
  }
  if (y.norm() > 0.0) {
    double t = 0.0;
    for (int i = 0; i < n; ++i) t += zeta[static_cast<std::size_t>(i)] * y[i];
    s.t = std::clamp(t / y.norm(), -1.0, 1.0);
  }
  return s;
}

}  // namespace

KernelValue kernel_value(const KernelSpec& spec, const KernelOperator& op, const BallPoint& x,
                         const BallPoint& y) {
  if (op.kind == KernelOperator::Kind::Value) {
    // symmetric in x and y; a canonical order makes R(x,y) == R(y,x) bit for bit
    const auto a = x.coords(), b = y.coords();
    if (std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end())) {
      return sum_series(make_setup(spec, op, y, x), spec);
    }
  }
  return sum_series(make_setup(spec, op, x, y), spec);
}

KernelValue kernel_value(const KernelSpec& spec, const BallPoint& x, const BallPoint& y) {
  return kernel_value(spec, KernelOperator{}, x, y);
}

double eval_kernel(const KernelSpec& spec, const BallPoint& x, const BallPoint& y) {
  return kernel_value(spec, x, y).value;
}

int kernel_truncation_degree(int n, double alpha, double rho, double tolerance) {
  if (!(rho >= 0.0 && rho < 1.0)) throw DomainError("rho must lie in [0, 1)");
  const double r = std::sqrt(rho);
  const BallPoint x = BallPoint::on_axis(n, 0, r);
  return kernel_value({n, alpha, -1, tolerance}, x, x).degree;
}

namespace {

double growth_bound(double br, double e) {
  if (e > 0.0) return std::pow(br, -e);
  if (e == 0.0) return 1.0 + std::log(1.0 / br);
  return 1.0;
}

}  // namespace

KernelScan kernel_growth_scan(const KernelScanConfig& cfg) {
  const int n = cfg.n;
  const int k = derivative_order(cfg.op);
  if (cfg.op.kind != KernelOperator::Kind::Value) {
    if (k < 1 || k > n - 1) throw UnsupportedError("derivative scans support orders 1..n-1");
    if (!(cfg.alpha > -1.0)) throw ParameterError("alpha must exceed -1 for derivative scans");
  }
  if (cfg.radii.size() < 2) throw ParameterError("scan needs at least two radii");
  KernelScan out;
  out.exponent = n + cfg.alpha + k + (cfg.op.multiplier ? cfg.op.t : 0.0);
  out.log_factor = cfg.op.kind != KernelOperator::Kind::Value && k == n - 1;
  const KernelSpec spec{n, cfg.alpha, -1, cfg.tolerance};
  for (double th : cfg.thetas) {
    KernelScanSummary sum{th, 0.0, 0.0, 0.0};
    double first = 0.0, first_raised = 0.0;
    for (std::size_t i = 0; i < cfg.radii.size(); ++i) {
      const double r = cfg.radii[i];
      const BallPoint x = BallPoint::on_axis(n, 0, r);
      std::vector<double> yc(static_cast<std::size_t>(n), 0.0);
      yc[0] = r * std::cos(th);
      yc[1] = r * std::sin(th);
      const BallPoint y(yc);
      const KernelValue kv = kernel_value(spec, cfg.op, x, y);
      KernelScanRow row{th, r, kv.value, bracket(x, y), 0.0, 0.0, kv.degree};
      double bound = growth_bound(row.bracket, out.exponent);
      if (out.log_factor) bound *= 1.0 + std::log(1.0 / (1.0 - r * r));
      const double raised = bound * growth_bound(row.bracket, out.exponent + 1.0) /
                            growth_bound(row.bracket, out.exponent);
      row.normalized = std::abs(kv.value) / bound;
      row.normalized_raised = std::abs(kv.value) / raised;
      if (i == 0) {
        first = row.normalized;
        first_raised = row.normalized_raised;
      }
      sum.growth = row.normalized / first;
      sum.growth_raised = row.normalized_raised / first_raised;
      out.rows.push_back(row);
    }
    sum.divergence = std::max(sum.growth_raised, 1.0 / sum.growth_raised);
    out.summary.push_back(sum);
  }
  for (double r : cfg.radii) {
    out.y0_values.push_back(
        kernel_value(spec, cfg.op, BallPoint::on_axis(n, 0, r), BallPoint::origin(n)).value);
  }
  return out;
}

HHarmonicFunction kernel_as_function(int n, double alpha, const BallPoint& x, int max_degree) {
  if (x.dim() != n) throw ParameterError("kernel point dimension mismatch");
  if (!x.interior()) throw DomainError("kernel point must lie in the open ball");
  if (max_degree < 0) throw ParameterError("degree must be nonnegative");
  HHarmonicFunction f(n);
  f.add_term(0, 1.0, SpherePoint::axis(n, 0));
  if (x.norm() == 0.0) return f;
  const auto c = CoefficientFamily(n, alpha).range(max_degree);
  const auto sigma = profile_sequence(n, x.norm_sq(), max_degree);
  const SpherePoint pole = SpherePoint::direction(x.coords());
  double rm = 1.0;
  for (int m = 1; m <= max_degree; ++m) {
    rm *= x.norm();
    const auto um = static_cast<std::size_t>(m);
    f.add_term(m, c[um] * sigma[um] * rm, pole);
  }
  return f;
}

}  // namespace hhb
