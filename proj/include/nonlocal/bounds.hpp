#pragma once

// Explicit constants of the well-posedness, absorption, regularity and
// continuity estimates, and measured verdicts against them.

#include <cstdint>
#include <string>
#include <vector>

#include "nonlocal/attractor.hpp"
#include "nonlocal/dynamics.hpp"

namespace nonlocal {

struct BoundReport {
  std::string name;
  double theoretical = 0.0;
  double measured = 0.0;
  double margin = 0.0;
  double tolerance = 0.0;
  bool passed = false;
  std::uint64_t seed = 0;
  int samples = 0;
  std::string cfg_digest;
  /// Free-form detail: companion constants, restrictions, flags.
  std::string note;
};

/// Fills margin and passed from theoretical, measured and tolerance.
BoundReport make_report(std::string name, double theoretical, double measured, double tolerance);

struct LipschitzConstants {
  /// 1 + ell_g beta K^{1/p} + beta ell_h, as stated.
  double stated = 0.0;
  /// 1 + ell_g beta K^{1/p} + ell_g beta ell_h, as the estimate chain produces.
  double proof_chain = 0.0;
};

LipschitzConstants lipschitz_constant_f(const ProcessConfig& cfg, double K);

/// M1 = 2^{(p+1)/p} ell_g beta.
double continuity_m1(const ProcessConfig& cfg);
/// M1 ||J||_inf / rho_1, the exponential rate of the continuity envelope.
double continuity_rate(const ProcessConfig& cfg);
/// M1 h_gap exp(M1 ||J||_inf rho_1^{-1} horizon).  May overflow to +inf.
double continuity_envelope(const ProcessConfig& cfg, double h_gap, double horizon);

/// a beta^2 ||J'||_1 (a k1 ||J||_1 + k2 + h*).
double c1_regularity_bound(const ProcessConfig& cfg, double h_star);

/// Pointwise bound on |d/dx w| inside B(0;R) for the split component started
/// in B(0; a + eps): beta^2 k1 C1 C2 + beta (k2 + h*) C2 with
/// C_i = 2^p ||J^{(i-1)}||_inf (a^p + eps^p) / rho_{R+1}, rho_{R+1} = inf_{|y| <= 2R + 1} rho.
double split_derivative_bound(const ProcessConfig& cfg, double radius, double eps, double h_star);

/// Smallest R (to 1e-6 relative) with tail_mass(R) <= eta^p / (4^p a^p).
double exterior_radius(const ProcessConfig& cfg, double eta);

/// The weight constant K used by the estimates: 3 for the Cauchy weight,
/// the grid estimate otherwise.
double weight_constant(const ProcessConfig& cfg);

/// h* for the config's beta and g (0 when beta <= 1).
double config_h_star(const ProcessConfig& cfg);

inline const std::vector<std::string>& check_names() {
  static const std::vector<std::string> names{"lemma1a",  "lemma1a_deriv", "lemma1b",      "prop_lipschitz",
                                              "absorbing", "w_bound",      "c1_attractor", "gronwall_continuity"};
  return names;
}

struct VerifyOptions {
  double absorbing_radius = 10.0;
  double absorbing_eps = 0.1;
  double observation_time = 0.0;
  /// Extra initial times below the entry time, as offsets.
  std::vector<double> absorbing_offsets{0.0, 1.0, 3.0};
  double continuity_epsilon = 0.2;
  double continuity_horizon = 1.0;
  double split_horizon = 8.0;
  SamplingPlan plan{};
  std::vector<double> tau_ladder{-10.0, -20.0, -40.0};
};

/// Default sample count per check.
int default_samples(const std::string& name);

/// Runs the named check.  samples <= 0 selects the default.
BoundReport verify(const std::string& name, const ProcessConfig& cfg, int samples, std::uint64_t seed,
                   const VerifyOptions& options = {});

}  // namespace nonlocal
