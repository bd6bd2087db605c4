#pragma once

#include <string>

#include "hhb/serialize.hpp"

namespace hhb {

/// Flat key/value configuration: command defaults, then a JSON file, then flag
/// overrides, each layer replacing keys of the previous one.
class ExperimentConfig {
 public:
  ExperimentConfig() = default;
  ExperimentConfig(std::string command, Json values);

  static ExperimentConfig defaults(const std::string& command);
  /// Keys of `layer` replace existing ones.
  void merge(const Json& layer);

  const std::string& command() const noexcept { return command_; }
  const Json& values() const noexcept { return values_; }

  bool has(const std::string& key) const;
  double number(const std::string& key) const;
  int integer(const std::string& key) const;
  std::uint64_t seed() const;  // required key for randomized experiments
  const Json& at(const std::string& key) const;

  /// FNV-1a of the command and the canonical (sorted-key) config dump.
  std::string hash() const;
  Json provenance() const;

 private:
  std::string command_;
  Json values_ = Json::object();
};

inline constexpr const char* kCommands[] = {"cm-table", "kernel-scan", "reproduce-check",
                                            "norm-equiv", "estimate-scan"};

/// CSV m, c_m, c_m/m^{alpha+1}.
std::string cmd_cm_table(const ExperimentConfig& cfg);
Json cmd_kernel_scan(const ExperimentConfig& cfg);
Json cmd_reproduce_check(const ExperimentConfig& cfg);
/// Ratio CSV; the summary document (pair spreads, anomalies, probes) goes to *summary.
std::string cmd_norm_equiv(const ExperimentConfig& cfg, Json* summary);
Json cmd_estimate_scan(const ExperimentConfig& cfg);

}  // namespace hhb
