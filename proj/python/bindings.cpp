#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "hhb/errors.hpp"
#include "hhb/experiments.hpp"
#include "hhb/integrate.hpp"
#include "hhb/kernels.hpp"
#include "hhb/quadrature.hpp"
#include "hhb/serialize.hpp"
#include "hhb/spaces.hpp"
#include "hhb/specfun.hpp"

namespace py = pybind11;
using namespace hhb;

namespace {

using Vec = std::vector<double>;

NormSpec make_spec(const std::string& kind, double p, double alpha, double s, double t, int k) {
  switch (parse_norm_kind(kind)) {
    case NormKind::Direct: return NormSpec::direct(p, alpha);
    case NormKind::Dst: return NormSpec::dst(p, alpha, s, t);
    case NormKind::Tangential: return NormSpec::tangential(p, alpha, k);
    case NormKind::Normal: return NormSpec::normal(p, alpha, k);
    case NormKind::Partial: return NormSpec::partial(p, alpha, k);
  }
  throw ParameterError("unknown norm kind");
}

MultiIndex to_multi_index(const std::vector<int>& kappa) {
  if (kappa.size() > static_cast<std::size_t>(kMaxDim)) throw ParameterError("multi-index too long");
  MultiIndex m{};
  std::copy(kappa.begin(), kappa.end(), m.begin());
  return m;
}

py::dict scan_to_dict(const KernelScan& s) {
  py::list rows, summary;
  for (const auto& r : s.rows) {
    py::dict d;
    d["theta"] = r.theta;
    d["r"] = r.r;
    d["value"] = r.value;
    d["bracket"] = r.bracket;
    d["normalized"] = r.normalized;
    d["normalized_raised"] = r.normalized_raised;
    d["degree"] = r.degree;
    rows.append(d);
  }
  for (const auto& r : s.summary) {
    py::dict d;
    d["theta"] = r.theta;
    d["growth"] = r.growth;
    d["growth_raised"] = r.growth_raised;
    d["divergence"] = r.divergence;
    summary.append(d);
  }
  py::dict out;
  out["exponent"] = s.exponent;
  out["log_factor"] = s.log_factor;
  out["rows"] = rows;
  out["summary"] = summary;
  out["y0_values"] = s.y0_values;
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Hyperbolic-harmonic expansions, kernels and norms on the real unit ball";
  m.attr("__version__") = HHB_VERSION;

  auto param = py::register_exception<ParameterError>(m, "ParameterError", PyExc_ValueError);
  py::register_exception<ConvergenceError>(m, "ConvergenceError", PyExc_RuntimeError);
  (void)param;

  m.def("bracket", [](const Vec& x, const Vec& y) { return bracket(x, y); }, py::arg("x"), py::arg("y"));
  m.def("mobius", [](const Vec& a, const Vec& x) {
    const BallPoint r = mobius(BallPoint(a), BallPoint(x));
    return Vec(r.coords().begin(), r.coords().end());
  }, py::arg("a"), py::arg("x"));
  m.def("v_alpha", &v_alpha, py::arg("n"), py::arg("alpha"));
  m.def("eval_S", &eval_S, py::arg("m"), py::arg("n"), py::arg("r"));
  m.def("eval_S_prime", &eval_S_prime, py::arg("m"), py::arg("n"), py::arg("r"));
  m.def("profile_sequence", &profile_sequence, py::arg("n"), py::arg("u"), py::arg("max_degree"));
  m.def("zonal_dim", &zonal_dim, py::arg("n"), py::arg("m"));
  m.def("zonal_value", &zonal_value, py::arg("n"), py::arg("m"), py::arg("t"));
  m.def("coeff_c", &coeff_c, py::arg("n"), py::arg("alpha"), py::arg("m"));
  m.def("coeff_range", [](int n, double alpha, int max_degree) { return CoefficientFamily(n, alpha).range(max_degree); },
        py::arg("n"), py::arg("alpha"), py::arg("max_degree"));
  m.def("multiplier_d", &multiplier_d, py::arg("n"), py::arg("s"), py::arg("t"), py::arg("m"));

  py::class_<HHarmonicFunction>(m, "HHarmonicFunction")
      .def(py::init<int>(), py::arg("n"))
      .def_static("constant", &HHarmonicFunction::constant, py::arg("n"), py::arg("c"))
      .def_static("random", &random_hharmonic, py::arg("n"), py::arg("max_degree"), py::arg("seed"),
                  py::arg("terms_per_degree") = 2, py::arg("min_degree") = 0)
      .def_static("from_json", &function_from_json_string, py::arg("text"))
      .def_property_readonly("n", &HHarmonicFunction::dim)
      .def_property_readonly("max_degree", &HHarmonicFunction::max_degree)
      .def_property_readonly("degrees", [](const HHarmonicFunction& f) {
        std::vector<int> d;
        for (const auto& [k, b] : f.blocks()) d.push_back(k);
        return d;
      })
      .def("add_term", [](HHarmonicFunction& f, int deg, double a, const Vec& pole) {
        f.add_term(deg, a, SpherePoint::direction(pole));
      }, py::arg("m"), py::arg("a"), py::arg("pole"))
      .def("__call__", [](const HHarmonicFunction& f, const Vec& x) { return f(x); }, py::arg("x"))
      .def("gradient", [](const HHarmonicFunction& f, const Vec& x) { return f.gradient(x); }, py::arg("x"))
      .def("to_json", &to_json_string)
      .def("__add__", [](const HHarmonicFunction& a, const HHarmonicFunction& b) { return a + b; })
      .def("__mul__", [](const HHarmonicFunction& a, double c) { return a * c; })
      .def("__rmul__", [](const HHarmonicFunction& a, double c) { return c * a; });

  m.def("apply_Dst", &apply_Dst, py::arg("s"), py::arg("t"), py::arg("f"));
  m.def("tangential", &tangential, py::arg("f"), py::arg("i"), py::arg("j"));
  m.def("spherical_laplacian", &spherical_laplacian, py::arg("f"));
  m.def("normal_value", [](const HHarmonicFunction& f, int k, const Vec& x) { return normal_k(f, k)(x); },
        py::arg("f"), py::arg("k"), py::arg("x"));
  m.def("partial_value", [](const HHarmonicFunction& f, const std::vector<int>& kappa, const Vec& x) {
    return partial(f, to_multi_index(kappa))(x);
  }, py::arg("f"), py::arg("kappa"), py::arg("x"));
  m.def("hyperbolic_laplacian_fd", [](const HHarmonicFunction& f, const Vec& x, double h) {
    return hyperbolic_laplacian_fd([&](std::span<const double> y) { return f(y); }, BallPoint(x), h);
  }, py::arg("f"), py::arg("x"), py::arg("h") = 1e-4);

  m.def("kernel_value", [](int n, double alpha, const Vec& x, const Vec& y, int degree, double tolerance) {
    const auto v = kernel_value(KernelSpec{n, alpha, degree, tolerance}, BallPoint(x), BallPoint(y));
    return py::make_tuple(v.value, v.degree);
  }, py::arg("n"), py::arg("alpha"), py::arg("x"), py::arg("y"), py::arg("degree") = -1,
     py::arg("tolerance") = 1e-12);
  m.def("kernel_as_function", [](int n, double alpha, const Vec& x, int max_degree) {
    return kernel_as_function(n, alpha, BallPoint(x), max_degree);
  }, py::arg("n"), py::arg("alpha"), py::arg("x"), py::arg("max_degree"));
  m.def("kernel_growth_scan", [](int n, double alpha, const std::string& op, int order, double s, double t) {
    KernelScanConfig cfg;
    cfg.n = n;
    cfg.alpha = alpha;
    if (op == "normal") {
      cfg.op.kind = KernelOperator::Kind::Normal;
    } else if (op == "partial") {
      cfg.op.kind = KernelOperator::Kind::AxialPartial;
    } else if (op != "value") {
      throw ParameterError("op must be value, normal or partial");
    }
    cfg.op.order = order;
    if (t != 0.0) {
      cfg.op.multiplier = true;
      cfg.op.s = s;
      cfg.op.t = t;
    }
    return scan_to_dict(kernel_growth_scan(cfg));
  }, py::arg("n"), py::arg("alpha"), py::arg("op") = "value", py::arg("order") = 0, py::arg("s") = 0.0,
     py::arg("t") = 0.0);

  m.def("ball_integral", [](const HHarmonicFunction& f, double alpha, int radial_nodes, int sphere_degree) {
    return ball_integral(f, make_ball_rule(f.dim(), alpha, radial_nodes, sphere_degree));
  }, py::arg("f"), py::arg("alpha"), py::arg("radial_nodes") = 16, py::arg("sphere_degree") = 16);
  m.def("project", [](double beta, const HHarmonicFunction& f, const std::vector<Vec>& xs, int radial_nodes,
                      int sphere_degree, double tolerance) {
    const BallRule rule = make_ball_rule(f.dim(), beta, radial_nodes, sphere_degree);
    std::vector<BallPoint> pts;
    for (const auto& x : xs) pts.emplace_back(x);
    Vec out;
    for (const auto& r : project_sampled(beta, sample_on_rule(f, rule), pts, rule, tolerance)) out.push_back(r.value);
    return out;
  }, py::arg("beta"), py::arg("f"), py::arg("points"), py::arg("radial_nodes"), py::arg("sphere_degree"),
     py::arg("tolerance") = 1e-10);

  m.def("inner_product_B2", &inner_product_B2, py::arg("f"), py::arg("g"), py::arg("alpha"));
  m.def("norm", [](const HHarmonicFunction& f, const std::string& kind, double p, double alpha, double s, double t,
                   int k) { return norm(f, make_spec(kind, p, alpha, s, t, k)); },
        py::arg("f"), py::arg("kind"), py::arg("p"), py::arg("alpha"), py::arg("s") = 0.0, py::arg("t") = 0.0,
        py::arg("k") = 1);
  m.def("bloch_seminorm", [](const HHarmonicFunction& f, int shells, int sphere_degree, double rmax) {
    return bloch_seminorm(f, BlochGrid::uniform(shells, sphere_degree, rmax));
  }, py::arg("f"), py::arg("shells") = 20, py::arg("sphere_degree") = 16, py::arg("rmax") = 0.99);

  // Experiments take and return JSON text; the package wrapper converts to Python objects.
  m.def("_run", [](const std::string& command, const std::string& overrides) -> py::tuple {
    auto cfg = ExperimentConfig::defaults(command);
    cfg.merge(Json::parse(overrides));
    if (command == "cm-table") return py::make_tuple(cmd_cm_table(cfg), py::none());
    if (command == "kernel-scan") return py::make_tuple(cmd_kernel_scan(cfg).dump(), py::none());
    if (command == "reproduce-check") return py::make_tuple(cmd_reproduce_check(cfg).dump(), py::none());
    if (command == "estimate-scan") return py::make_tuple(cmd_estimate_scan(cfg).dump(), py::none());
    Json summary;
    const std::string csv = cmd_norm_equiv(cfg, &summary);
    return py::make_tuple(csv, summary.dump());
  }, py::arg("command"), py::arg("overrides"));
}
