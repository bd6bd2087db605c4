#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "hhb/errors.hpp"
#include "hhb/experiments.hpp"

namespace {

struct Overrides {
  std::string config_path;
  std::string out;
  std::string summary;
  std::optional<int> n, k, max_degree;
  std::optional<double> alpha, p, s, t, beta;
  std::optional<long long> seed;
};

void add_common(CLI::App* cmd, Overrides& o) {
  cmd->add_option("--config", o.config_path, "JSON configuration file");
  cmd->add_option("--out", o.out, "output file (default stdout)");
  cmd->add_option("--n", o.n, "dimension");
  cmd->add_option("--alpha", o.alpha, "weight parameter alpha");
  cmd->add_option("--p", o.p, "integrability exponent p");
  cmd->add_option("--s", o.s, "multiplier parameter s");
  cmd->add_option("--t", o.t, "multiplier order t");
  cmd->add_option("--k", o.k, "derivative order k");
  cmd->add_option("--max-degree", o.max_degree, "largest expansion degree M");
  cmd->add_option("--seed", o.seed, "random seed");
}

hhb::Json read_file_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw hhb::ParameterError("cannot open configuration file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return hhb::Json::parse(ss.str());
  } catch (const nlohmann::json::exception& e) {
    throw hhb::ParameterError("malformed configuration file: " + std::string(e.what()));
  }
}

hhb::ExperimentConfig build_config(const std::string& command, const Overrides& o) {
  auto cfg = hhb::ExperimentConfig::defaults(command);
  if (!o.config_path.empty()) cfg.merge(read_file_json(o.config_path));
  hhb::Json flags = hhb::Json::object();
  if (o.n) flags["n"] = *o.n;
  if (o.alpha) flags["alpha"] = *o.alpha;
  if (o.p) flags["p"] = *o.p;
  if (o.s) flags["s"] = *o.s;
  if (o.t) flags["t"] = *o.t;
  if (o.k) flags["k"] = *o.k;
  if (o.max_degree) flags["max_degree"] = *o.max_degree;
  if (o.beta) flags["beta"] = *o.beta;
  if (o.seed) flags["seed"] = *o.seed;
  cfg.merge(flags);
  return cfg;
}

void emit(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw hhb::ParameterError("cannot write " + path);
  out << text;
}

std::string dump(const hhb::Json& j) { return j.dump(2) + "\n"; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hyperbolic-harmonic Bergman-Besov verification driver"};
  app.set_version_flag("--version", std::string("hhb ") + HHB_VERSION);
  app.require_subcommand(1);
  Overrides o;
  auto* cm = app.add_subcommand("cm-table", "kernel coefficients c_m(alpha) as CSV");
  auto* ks = app.add_subcommand("kernel-scan", "boundary growth scans of kernel derivatives (JSON)");
  auto* rc = app.add_subcommand("reproduce-check", "reproducing-formula residuals (JSON)");
  auto* ne = app.add_subcommand("norm-equiv", "norm equivalence ratios (CSV) and probes (JSON)");
  auto* es = app.add_subcommand("estimate-scan", "empirical checks of the bracket estimates (JSON)");
  for (auto* c : {cm, ks, rc, ne, es}) add_common(c, o);
  rc->add_option("--beta", o.beta, "projection parameter beta");
  ne->add_option("--summary", o.summary, "summary JSON file (default: <out>.json when --out is set)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    auto* sub = app.get_subcommands().front();
    const std::string command = sub->get_name();
    const auto cfg = build_config(command, o);
    if (command == "cm-table") {
      emit(o.out, hhb::cmd_cm_table(cfg));
    } else if (command == "kernel-scan") {
      emit(o.out, dump(hhb::cmd_kernel_scan(cfg)));
    } else if (command == "reproduce-check") {
      emit(o.out, dump(hhb::cmd_reproduce_check(cfg)));
    } else if (command == "norm-equiv") {
      hhb::Json summary;
      const std::string csv = hhb::cmd_norm_equiv(cfg, &summary);
      emit(o.out, csv);
      std::string path = o.summary;
      if (path.empty() && !o.out.empty()) path = o.out + ".json";
      if (!path.empty()) emit(path, dump(summary));
    } else {
      emit(o.out, dump(hhb::cmd_estimate_scan(cfg)));
    }
  } catch (const hhb::ParameterError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const hhb::ConvergenceError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
