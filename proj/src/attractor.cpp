#include "nonlocal/attractor.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "nonlocal/bounds.hpp"
#include "nonlocal/parallel.hpp"

namespace nonlocal {

double absorbing_entry_time(double t, double radius, double eps) {
  if (!(radius > 0.0) || !(eps > 0.0)) {
    throw Error(ErrorCode::invalid_argument, "absorbing_entry_time: radius and eps must be positive");
  }
  return t + std::log(eps / radius);
}

FieldSet absorbing_ball_sample(const ProcessConfig& cfg, const SamplingPlan& plan) {
  if (plan.constants < 0 || plan.random < 0 || plan.constants + plan.random < 1) {
    throw Error(ErrorCode::invalid_argument, "sampling plan needs at least one initial condition");
  }
  const double radius = cfg.nonlinearity.a + plan.eps;
  FieldSet out;
  out.reserve(static_cast<std::size_t>(plan.constants + plan.random));
  // A constant c has norm |c| * mass^{1/p}; stay just inside the ball.
  const double top = radius * (1.0 - 1e-3) / std::pow(cfg.space->total_mass(), 1.0 / cfg.p);
  for (int i = 0; i < plan.constants; ++i) {
    const double value = plan.constants == 1 ? 0.0 : top * (-1.0 + 2.0 * i / (plan.constants - 1));
    out.push_back(WeightedField::constant(cfg.space, value));
  }
  for (int i = 0; i < plan.random; ++i) {
    Rng rng = stream(plan.seed, static_cast<std::uint64_t>(i));
    std::uniform_real_distribution<double> share(0.2, 1.0);
    const double r = radius * (1.0 - 1e-3) * share(rng);
    out.push_back(random_field_with_norm(cfg.space, rng, r, cfg.p, plan.field_spec));
  }
  return out;
}

double hausdorff_semidist(const FieldSet& a, const FieldSet& b, double p) {
  if (a.empty() || b.empty()) throw Error(ErrorCode::empty_set, "Hausdorff semidistance of an empty set");
  double worst = 0.0;
  for (const auto& x : a) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& y : b) {
      check_same_space(x, y);
      best = std::min(best, weighted_norm(*x.space(), x.values() - y.values(), p));
      if (best == 0.0) break;
    }
    worst = std::max(worst, best);
  }
  return worst;
}

double hausdorff_semidist(const AttractorSample& a, const AttractorSample& b, double p) {
  return hausdorff_semidist(a.members, b.members, p);
}

double hausdorff_distance(const FieldSet& a, const FieldSet& b, double p) {
  return std::max(hausdorff_semidist(a, b, p), hausdorff_semidist(b, a, p));
}

FieldSet deduplicate(const FieldSet& fields, double tol, double p) {
  FieldSet kept;
  for (const auto& f : fields) {
    const bool duplicate = std::any_of(kept.begin(), kept.end(), [&](const WeightedField& k) {
      return weighted_norm(*f.space(), f.values() - k.values(), p) <= tol;
    });
    if (!duplicate) kept.push_back(f);
  }
  return kept;
}

AttractorSample approximate_pullback_attractor(double t, const ProcessConfig& cfg, const SamplingPlan& plan,
                                               const std::vector<double>& tau_ladder) {
  if (tau_ladder.empty()) throw Error(ErrorCode::invalid_argument, "tau ladder is empty");
  for (std::size_t k = 0; k < tau_ladder.size(); ++k) {
    if (!(tau_ladder[k] < t)) throw Error(ErrorCode::time_order, "every ladder time must precede t");
    if (k > 0 && !(tau_ladder[k] < tau_ladder[k - 1])) {
      throw Error(ErrorCode::invalid_argument, "tau ladder must be strictly decreasing");
    }
  }
  const FieldSet initial = absorbing_ball_sample(cfg, plan);
  const std::size_t n_ic = initial.size();
  const std::size_t n_rungs = tau_ladder.size();

  std::vector<std::optional<WeightedField>> endpoints(n_ic * n_rungs);
  parallel_for(endpoints.size(), [&](std::size_t job) {
    const std::size_t rung = job / n_ic;
    const std::size_t ic = job % n_ic;
    endpoints[job] = evolve(initial[ic], tau_ladder[rung], t, cfg);
  });
  std::vector<FieldSet> rungs(n_rungs);
  for (std::size_t job = 0; job < endpoints.size(); ++job) rungs[job / n_ic].push_back(*endpoints[job]);

  AttractorSample sample;
  sample.t = t;
  sample.provenance = Provenance{tau_ladder, plan.seed, plan.constants, plan.random, cfg.digest()};
  for (std::size_t k = 1; k < n_rungs; ++k) {
    sample.rung_distances.push_back(hausdorff_distance(rungs[k - 1], rungs[k], cfg.p));
  }
  sample.converged = !sample.rung_distances.empty() && sample.rung_distances.back() < plan.cluster_tol;
  sample.members = deduplicate(rungs.back(), plan.cluster_tol, cfg.p);
  return sample;
}

FieldPerturbation scaled_field_family() {
  return [](const ExternalField& h0, double epsilon) {
    if (!(epsilon >= 0.0 && epsilon <= 1.0)) {
      throw Error(ErrorCode::invalid_argument, "perturbation parameter must lie in [0, 1]");
    }
    return h0.scaled(1.0 - epsilon);
  };
}

SemicontinuityCurve upper_semicontinuity_sweep(double t, const ProcessConfig& cfg0,
                                               const std::vector<double>& epsilons, const SamplingPlan& plan,
                                               const std::vector<double>& tau_ladder,
                                               const FieldPerturbation& perturbation) {
  const AttractorSample base = approximate_pullback_attractor(t, cfg0, plan, tau_ladder);
  const double horizon = t - *std::min_element(tau_ladder.begin(), tau_ladder.end());
  SemicontinuityCurve curve;
  for (double eps : epsilons) {
    ProcessConfig cfg = cfg0;
    cfg.field = perturbation(cfg0.field, eps);
    const double gap = std::abs(cfg.field.h_sup - cfg0.field.h_sup);
    const bool same = cfg.digest() == cfg0.digest();
    const AttractorSample perturbed = same ? base : approximate_pullback_attractor(t, cfg, plan, tau_ladder);
    curve.epsilons.push_back(eps);
    curve.field_gaps.push_back(gap);
    curve.distances.push_back(hausdorff_semidist(perturbed, base, cfg0.p));
    curve.envelopes.push_back(continuity_envelope(cfg0, gap, horizon));
    curve.converged.push_back(perturbed.converged && base.converged);
  }
  return curve;
}

}  // namespace nonlocal
