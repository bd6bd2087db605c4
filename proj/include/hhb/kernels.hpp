#pragma once

#include <vector>

#include "hhb/expansion.hpp"
#include "hhb/geometry.hpp"

namespace hhb {

/// Largest degree for which c_m(alpha) is available when alpha > -1.
inline constexpr int kMaxCoefficientDegree = 4096;

/// c_m(alpha) for every real alpha.
///
/// alpha > -1: 1/c_m = (n/V_alpha) int_0^1 r^{2m+n-1} (1-r^2)^alpha S_m(r)^2 dr, by
/// Gauss-Jacobi quadrature in u = r^2 on shared rules for degree buckets
/// {64, 256, 1024, 4096}. alpha <= -1: c_m = Gamma(m)/Gamma(m-alpha-1), c_0 = 1.
/// Values are cached per (n, alpha), computed bucket by bucket in a fixed order,
/// and never recomputed.
class CoefficientFamily {
 public:
  CoefficientFamily(int n, double alpha);

  int dim() const noexcept { return n_; }
  double alpha() const noexcept { return alpha_; }
  bool integral_mode() const noexcept { return alpha_ > -1.0; }

  double operator()(int m) const;
  /// c_0..c_max_degree.
  std::vector<double> range(int max_degree) const;

 private:
  int n_;
  double alpha_;
};

double coeff_c(int n, double alpha, int m);

/// d_m = c_m(s+t) / c_m(s), the coefficient multiplier of D^t_s.
class Multiplier {
 public:
  Multiplier(int n, double s, double t);

  double s() const noexcept { return s_; }
  double t() const noexcept { return t_; }
  double operator()(int m) const;
  std::vector<double> range(int max_degree) const;

 private:
  double s_;
  double t_;
  CoefficientFamily num_;
  CoefficientFamily den_;
};

double multiplier_d(int n, double s, double t, int m);

/// Block-wise scaling by d_m; poles and polynomials untouched.
HHarmonicFunction apply_Dst(double s, double t, const HHarmonicFunction& f);

/// Truncation of the kernel series: fixed degree when degree >= 0, otherwise the
/// smallest degree whose estimated tail is below tolerance * max(1, |sum|).
struct KernelSpec {
  int n = 3;
  double alpha = 0.0;
  int degree = -1;
  double tolerance = 1e-12;
};

struct KernelValue {
  double value = 0.0;
  int degree = 0;
  double tail_bound = 0.0;
};

/// Operator applied to R_alpha(., y) in its first argument.
struct KernelOperator {
  enum class Kind { Value, Normal, AxialPartial };
  Kind kind = Kind::Value;
  int order = 0;         // k for N^k or d_1^k
  bool multiplier = false;
  double s = 0.0;        // D^t_s parameters when multiplier is set
  double t = 0.0;
};

/// R_alpha(x, y) = sum_m c_m(alpha) S_m(|x|) S_m(|y|) Z_m(x, y).
KernelValue kernel_value(const KernelSpec& spec, const BallPoint& x, const BallPoint& y);
double eval_kernel(const KernelSpec& spec, const BallPoint& x, const BallPoint& y);

/// op_x R_alpha(x, y). AxialPartial requires x on the first coordinate axis.
KernelValue kernel_value(const KernelSpec& spec, const KernelOperator& op, const BallPoint& x,
                         const BallPoint& y);

/// Smallest degree at which the R_alpha series for |x||y| = rho (worst direction)
/// meets the relative tail tolerance.
int kernel_truncation_degree(int n, double alpha, double rho, double tolerance);

/// Boundary growth scan of op_x R_alpha(x, y) along x = r e_1,
/// y = r (cos(theta) e_1 + sin(theta) e_2).
struct KernelScanConfig {
  int n = 3;
  double alpha = 0.0;
  KernelOperator op;
  std::vector<double> thetas = {0.0, 0.1, 0.5};
  std::vector<double> radii = {0.90, 0.95, 0.99};
  double tolerance = 1e-12;
};

struct KernelScanRow {
  double theta = 0.0;
  double r = 0.0;
  double value = 0.0;
  double bracket = 0.0;
  double normalized = 0.0;         // |value| / bound
  double normalized_raised = 0.0;  // |value| / bound with the exponent raised by 1
  int degree = 0;
};

struct KernelScanSummary {
  double theta = 0.0;
  double growth = 0.0;         // normalized at the last radius over the first
  double growth_raised = 0.0;
  double divergence = 0.0;     // max(g, 1/g) of growth_raised
};

struct KernelScan {
  double exponent = 0.0;
  bool log_factor = false;  // bound carries 1 + log(1/(1-|x|^2))
  std::vector<KernelScanRow> rows;
  std::vector<KernelScanSummary> summary;
  std::vector<double> y0_values;  // op_x R_alpha(r e_1, 0) per radius
};

/// Exponent of the growth bound: n+alpha+t for R_alpha and D^t_s R_alpha,
/// n+alpha+k for N^k and d_1^k (k <= n-1, with the log factor at k = n-1).
KernelScan kernel_growth_scan(const KernelScanConfig& cfg);

/// R_alpha(x, .) truncated at degree M: blocks c_m(alpha) S_m(|x|) Z_m(., x).
HHarmonicFunction kernel_as_function(int n, double alpha, const BallPoint& x, int max_degree);

}  // namespace hhb
