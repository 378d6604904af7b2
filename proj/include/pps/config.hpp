#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "pps/optimizer.hpp"

namespace pps {

struct ModelConfig {
  std::string kind;  // tfim_chain | ising_square | ising_heavyhex | kitaev
  int n = 0;         // tfim_chain
  int nx = 0, ny = 0;
  double gx = 0.0, gz = 0.0;
  double jx = 1.0, jy = 1.0, jz = 1.0;
  std::string lattice_file;  // ising_heavyhex
};

struct AnsatzConfig {
  int reps = 1;
  bool proxy = true;  // train on the translation-invariant proxy cost
};

struct RunConfig {
  ModelConfig model;
  AnsatzConfig ansatz;
  AdamParams adam;
  SpsaParams spsa;
  std::uint64_t seed = 1;
  int record_every = 10;
  int checkpoint_every = 200;
  std::vector<Stage> stages;
  double report_delta_c = 1e-4;
  int shards = 0;  // 0 = auto
};

/// INI-style config: [model]/[ansatz]/[optimizer]/[schedule]/[report]
/// sections of `key = value` lines, '#' comments. The schedule section takes
/// repeated `stage = <iterations> <delta_c> [eta]` lines. Unknown keys and
/// malformed values raise with the offending section and key named.
RunConfig load_config(const std::string& path);
RunConfig parse_config(std::istream& in, const std::string& origin);
void save_config(const RunConfig& cfg, const std::string& path);

}  // namespace pps
