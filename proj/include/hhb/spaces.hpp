#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hhb/expansion.hpp"

namespace hhb {

enum class NormKind { Direct, Dst, Tangential, Normal, Partial };

/// Quadrature sizes; zero means "choose from the degree of the integrand".
struct NormQuadrature {
  int radial_nodes = 0;
  int sphere_degree = 0;
};

struct NormSpec {
  NormKind kind = NormKind::Direct;
  double p = 2.0;
  double alpha = 0.0;
  double s = 0.0;  // dst
  double t = 0.0;  // dst
  int k = 1;       // tangential, normal, partial
  NormQuadrature quad;

  static NormSpec direct(double p, double alpha);
  static NormSpec dst(double p, double alpha, double s, double t);
  static NormSpec tangential(double p, double alpha, int k);
  static NormSpec normal(double p, double alpha, int k);
  static NormSpec partial(double p, double alpha, int k);

  /// Weight exponent of the L^p space the characterization integrates against.
  double weight() const;
  /// Throws ParameterError naming the violated inequality.
  void validate(int n) const;
  /// alpha + p(n-1) > -1; partial norms are still computed when this fails.
  bool condalpha_holds(int n) const;
  std::string label() const;
};

NormKind parse_norm_kind(const std::string& name);
std::string norm_kind_name(NormKind kind);

double norm(const HHarmonicFunction& f, const NormSpec& spec);

/// <f_m, g_m>_{L^2(S)} for every degree present in both.
std::map<int, double> block_inner_products(const HHarmonicFunction& f, const HHarmonicFunction& g);
/// sum_m c_m(alpha)^{-1} <f_m, g_m>_{L^2(S)}, for every real alpha.
double inner_product_B2(const HHarmonicFunction& f, const HHarmonicFunction& g, double alpha);

struct BlochGrid {
  std::vector<double> radii;
  int sphere_degree = 16;

  /// radii i * rmax / shells, i = 0..shells.
  static BlochGrid uniform(int shells, int sphere_degree, double rmax = 0.99);
  BlochGrid doubled() const;
};

/// max over sphere nodes of (1-r^2)|grad f(r zeta)|, one value per radius.
std::vector<double> bloch_shells(const HHarmonicFunction& f, const BlochGrid& grid);
double bloch_seminorm(const HHarmonicFunction& f, const BlochGrid& grid);

struct PairSummary {
  int i = 0;
  int j = 0;
  double min = 0.0;
  double max = 0.0;
  double spread = 0.0;  // max / min
};

struct RatioRow {
  int function_id = 0;
  int i = 0;
  int j = 0;
  double ratio = 0.0;
};

struct EquivalenceReport {
  std::vector<std::string> spec_labels;
  std::vector<std::vector<double>> norms;  // norms[f][spec]
  std::vector<RatioRow> rows;
  std::vector<PairSummary> summary;
  std::vector<std::string> anomalies;
};

EquivalenceReport equivalence_report(const std::vector<HHarmonicFunction>& family,
                                     const std::vector<NormSpec>& specs);

/// Whether B^p_alpha is contained in B^q_beta: (alpha+n)/p <= (beta+n)/q when
/// q >= p, (alpha+1)/p < (beta+1)/q when q < p.
bool inclusion_holds(int n, double alpha, double beta, double p, double q);

struct InclusionRow {
  int j = 0;
  double a = 0.0;  // |a_j| = 1 - 2^-j
  int degree = 0;
  double norm_alpha = 0.0;
  double norm_beta = 0.0;
  double ratio = 0.0;  // norm_beta / norm_alpha
};

struct InclusionProbe {
  double alpha = 0.0;
  double beta = 0.0;
  bool inclusion_expected = false;
  std::vector<InclusionRow> rows;
  double growth = 0.0;  // last ratio over first
};

/// p = q = 2 probe on R_gamma(., a_j e_1), a_j = 1 - 2^-j, j = 1..steps, with
/// exact coefficient norms.
InclusionProbe inclusion_probe(int n, double alpha, double beta, double gamma, int steps = 6);

/// R_alpha(., a_j) truncated at max_degree, a_j = (j / members) e_1, j = 0..members-1.
std::vector<HHarmonicFunction> kernel_slice_family(int n, double alpha, int max_degree,
                                                   int members = 10);

}  // namespace hhb
