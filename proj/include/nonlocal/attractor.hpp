#pragma once

// Pullback attractor approximation.
//
// A(t) is approximated by endpoint sets S(t, tau_k) D for a finite sample D
// of the absorbing ball B(0; a + eps) and a ladder tau_0 > tau_1 > ... of
// initial times.  The deepest rung is kept once consecutive rungs agree to
// the cluster tolerance in Hausdorff distance.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "nonlocal/dynamics.hpp"
#include "nonlocal/random_fields.hpp"

namespace nonlocal {

using FieldSet = std::vector<WeightedField>;

/// tau_0 = t + ln(eps / R): entry time into B(0; a + eps) from a ball of radius R.
double absorbing_entry_time(double t, double radius, double eps);

struct SamplingPlan {
  /// Constant initial fields on an evenly spaced value ladder across the ball.
  int constants = 9;
  /// Seeded smooth random fields scaled into the ball.
  int random = 8;
  double eps = 0.1;
  double cluster_tol = 1e-3;
  std::uint64_t seed = 1;
  /// Long-wave fields: short domains coarsen too slowly for the ladder to settle.
  RandomFieldSpec field_spec{4, 0.3, 0.5};
};

/// Initial conditions drawn from B(0; a + eps), constants first.
FieldSet absorbing_ball_sample(const ProcessConfig& cfg, const SamplingPlan& plan);

struct Provenance {
  std::vector<double> tau_ladder;
  std::uint64_t seed = 0;
  int constants = 0;
  int random = 0;
  std::string cfg_digest;
};

struct AttractorSample {
  double t = 0.0;
  FieldSet members;
  Provenance provenance;
  /// Symmetric Hausdorff distance between consecutive rungs.
  std::vector<double> rung_distances;
  bool converged = false;
};

AttractorSample approximate_pullback_attractor(double t, const ProcessConfig& cfg, const SamplingPlan& plan,
                                               const std::vector<double>& tau_ladder);

/// sup_{a in A} inf_{b in B} ||a - b||_p.
double hausdorff_semidist(const FieldSet& a, const FieldSet& b, double p);
double hausdorff_semidist(const AttractorSample& a, const AttractorSample& b, double p);
/// max of both semidistances.
double hausdorff_distance(const FieldSet& a, const FieldSet& b, double p);

/// Keeps the first member of every cluster of radius tol.
FieldSet deduplicate(const FieldSet& fields, double tol, double p);

using FieldPerturbation = std::function<ExternalField(const ExternalField& h0, double epsilon)>;

/// h_eps = (1 - eps) h_0, so ||h_eps - h_0||_inf = eps * h_sup.
FieldPerturbation scaled_field_family();

struct SemicontinuityCurve {
  std::vector<double> epsilons;
  std::vector<double> field_gaps;
  std::vector<double> distances;
  /// Gronwall envelope of the process-continuity estimate at the ladder depth.
  std::vector<double> envelopes;
  std::vector<bool> converged;
};

SemicontinuityCurve upper_semicontinuity_sweep(double t, const ProcessConfig& cfg0,
                                               const std::vector<double>& epsilons, const SamplingPlan& plan,
                                               const std::vector<double>& tau_ladder,
                                               const FieldPerturbation& perturbation = scaled_field_family());

}  // namespace nonlocal
