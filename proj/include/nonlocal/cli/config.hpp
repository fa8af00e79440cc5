#pragma once

// Experiment configuration: one JSON document per run.  Every key is
// documented in configs/schema.json.

#include <cstdint>
#include <string>
#include <vector>

#include "nonlocal/attractor.hpp"
#include "nonlocal/bounds.hpp"
#include "nonlocal/dynamics.hpp"

namespace nonlocal::cli {

enum class InitialKind { random, constant };

struct SimulateBlock {
  double tau = 0.0;
  double t = 10.0;
  InitialKind initial = InitialKind::random;
  /// Weighted norm of the random initial field.
  double initial_norm = 1.0;
  /// Value of the constant initial field.
  double initial_value = 0.5;
  /// Write the full field every this many steps; 0 disables snapshots.
  int snapshot_every = 0;
};

struct AttractorBlock {
  double t = 0.0;
  std::vector<double> ladder{-10.0, -20.0, -40.0};
  SamplingPlan plan{};
};

struct HStarBlock {
  std::vector<double> h_ladder;
};

struct VerifyBlock {
  std::vector<std::string> checks = check_names();
  /// 0 selects each check's default.
  int samples = 0;
  VerifyOptions options{};
};

struct SweepBlock {
  std::vector<double> epsilons{0.4, 0.2, 0.1, 0.05, 0.0};
};

struct ExperimentConfig {
  ProcessConfig process;
  std::uint64_t seed = 1;
  std::string output = "out";
  SimulateBlock simulate;
  AttractorBlock attractor;
  HStarBlock hstar;
  VerifyBlock verify;
  SweepBlock sweep;
  /// "key = value" for every default filled in, in document order.
  std::vector<std::string> applied_defaults;
};

/// Throws Error(ErrorCode::config) naming the offending key path.
ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config(const std::string& path);

}  // namespace nonlocal::cli
