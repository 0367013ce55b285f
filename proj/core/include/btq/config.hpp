#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "btq/io.hpp"

namespace btq {

/// Resolved experiment configuration. Identical configs produce
/// byte-identical reports: all randomness is counter-based off `seed`, and
/// the worker count never enters the numbers.
struct ExperimentConfig {
  std::string command;
  Domain domain = Domain::plane;
  double h = 0.5;
  std::vector<double> h_grid;
  int N = 2;
  int n = 1;
  int K = 4;
  int margin = 8;
  int R = 1;
  int sign = -1;
  std::uint64_t samples = 100000;
  std::uint64_t seed = 12345;
  int workers = 1;
  std::string part;  // verify-theorem: i | ii | v
  std::string mode;  // semiclassical: spectral | uinvariant; kernel-check: single | product
  std::optional<Symbol> phi;
  std::optional<Symbol> psi;
  std::string out = "btq-out";

  void apply_json(const ordered_json& j);  // overlay fields present in j
  ordered_json to_json() const;            // full resolved config (report embedding)

  DomainSpec domain_spec() const;
  DomainSpec domain_spec(double h_value) const;
  McOptions mc_options() const { return McOptions{samples, seed, workers}; }
};

/// Parses a config file; propagates JSON parse errors (with byte position)
/// and field validation errors as std::invalid_argument.
ExperimentConfig load_config_file(const std::string& path, ExperimentConfig base = {});

}  // namespace btq
