#include "nonlocal/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "nonlocal/bifurcation.hpp"
#include "nonlocal/parallel.hpp"
#include "nonlocal/random_fields.hpp"

namespace nonlocal {

BoundReport make_report(std::string name, double theoretical, double measured, double tolerance) {
  BoundReport r;
  r.name = std::move(name);
  r.theoretical = theoretical;
  r.measured = measured;
  r.margin = theoretical - measured;
  r.tolerance = tolerance;
  r.passed = measured <= theoretical + tolerance;
  return r;
}

LipschitzConstants lipschitz_constant_f(const ProcessConfig& cfg, double K) {
  if (!(K >= 1.0)) throw Error(ErrorCode::invalid_argument, "weight constant K must be >= 1");
  const auto& g = cfg.nonlinearity;
  const double conv = g.ell_g * cfg.beta * std::pow(K, 1.0 / cfg.p);
  return LipschitzConstants{1.0 + conv + cfg.beta * cfg.field.ell_h,
                            1.0 + conv + g.ell_g * cfg.beta * cfg.field.ell_h};
}

double continuity_m1(const ProcessConfig& cfg) {
  return std::pow(2.0, (cfg.p + 1.0) / cfg.p) * cfg.nonlinearity.ell_g * cfg.beta;
}

double continuity_rate(const ProcessConfig& cfg) {
  return continuity_m1(cfg) * cfg.kernel->sup_norm() / rho_inf_unit_ball(cfg.space->weight());
}

double continuity_envelope(const ProcessConfig& cfg, double h_gap, double horizon) {
  if (!(horizon >= 0.0)) throw Error(ErrorCode::invalid_argument, "continuity horizon must be nonnegative");
  if (!(h_gap >= 0.0)) throw Error(ErrorCode::invalid_argument, "field gap must be nonnegative");
  if (h_gap == 0.0) return 0.0;
  return continuity_m1(cfg) * h_gap * std::exp(continuity_rate(cfg) * horizon);
}

double c1_regularity_bound(const ProcessConfig& cfg, double h_star) {
  const auto& g = cfg.nonlinearity;
  const auto& j = *cfg.kernel;
  return g.a * cfg.beta * cfg.beta * j.derivative_l1_norm() * (g.a * g.k1 * j.l1_norm() + g.k2 + h_star);
}

double split_derivative_bound(const ProcessConfig& cfg, double radius, double eps, double h_star) {
  const auto& g = cfg.nonlinearity;
  const auto& rho = cfg.space->weight();
  // rho is even and decreasing in |y| for the shipped weights.
  const double rho_far = rho(2.0 * radius + 1.0);
  const double ball = std::pow(2.0, cfg.p) * (std::pow(g.a, cfg.p) + std::pow(eps, cfg.p)) / rho_far;
  const double c1 = ball * cfg.kernel->sup_norm();
  const double c2 = ball * cfg.kernel->derivative_sup_norm();
  return cfg.beta * cfg.beta * g.k1 * c1 * c2 + cfg.beta * (g.k2 + h_star) * c2;
}

double exterior_radius(const ProcessConfig& cfg, double eta) {
  const double a = cfg.nonlinearity.a;
  const double target = std::pow(eta, cfg.p) / (std::pow(4.0, cfg.p) * std::pow(a, cfg.p));
  const auto& rho = cfg.space->weight();
  double lo = 0.0;
  double hi = 1.0;
  while (2.0 * rho.upper_tail(hi) > target) hi *= 2.0;
  while (hi - lo > 1e-6 * hi) {
    const double mid = 0.5 * (lo + hi);
    if (2.0 * rho.upper_tail(mid) > target) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return hi;
}

double weight_constant(const ProcessConfig& cfg) {
  if (cfg.space->weight().kind() == WeightKind::cauchy) return 3.0;
  return estimate_K(cfg.space->weight(), cfg.grid());
}

double config_h_star(const ProcessConfig& cfg) {
  if (!(cfg.beta > 1.0)) return 0.0;
  return compute_h_star(cfg.beta, cfg.nonlinearity).value;
}

int default_samples(const std::string& name) {
  if (name == "lemma1a" || name == "lemma1a_deriv" || name == "lemma1b") return 500;
  if (name == "prop_lipschitz") return 200;
  if (name == "absorbing") return 4;
  if (name == "w_bound") return 2;
  if (name == "c1_attractor") return 8;
  if (name == "gronwall_continuity") return 4;
  throw Error(ErrorCode::unknown_check, "unknown check: " + name);
}

namespace {

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// Max over a seeded corpus of a per-field statistic.
template <typename Stat>
double corpus_max(const ProcessConfig& cfg, int samples, std::uint64_t seed, Stat stat) {
  std::vector<double> values(static_cast<std::size_t>(samples));
  parallel_for(values.size(), [&](std::size_t i) {
    Rng rng = stream(seed, i);
    values[i] = stat(random_smooth_field(cfg.space, rng), rng, i);
  });
  return values.empty() ? 0.0 : *std::max_element(values.begin(), values.end());
}

BoundReport check_lemma1a(const ProcessConfig& cfg, int samples, std::uint64_t seed, KernelPart part) {
  const double K = weight_constant(cfg);
  const double p = cfg.p;
  const double measured = corpus_max(cfg, samples, seed, [&](const WeightedField& u, Rng&, std::size_t) {
    const Vector ju = cfg.kernel->apply_fast(u.values(), part);
    return weighted_norm(*cfg.space, ju, p) / weighted_norm(u, p);
  });
  const double constant = std::pow(K, 1.0 / p);
  BoundReport r = make_report(part == KernelPart::value ? "lemma1a" : "lemma1a_deriv", constant, measured, 1e-9);
  std::ostringstream note;
  note << "ratio ||J" << (part == KernelPart::value ? "" : "'") << "*u||/||u|| vs K^(1/p); K=" << fmt(K)
       << " p=" << fmt(p);
  if (part == KernelPart::derivative) {
    const double fallback = cfg.kernel->derivative_l1_norm() * constant;
    note << "; fallback ||J'||_1 K^(1/p)=" << fmt(fallback) << (measured <= fallback + 1e-9 ? " passed" : " failed");
  }
  r.note = note.str();
  return r;
}

BoundReport check_lemma1b(const ProcessConfig& cfg, int samples, std::uint64_t seed) {
  const auto first = cfg.grid().interior_first(1.0);
  const auto last = cfg.grid().interior_last(1.0);
  const double rho1 = rho_inf_unit_ball(cfg.space->weight());
  const double measured = corpus_max(cfg, samples, seed, [&](const WeightedField& u, Rng&, std::size_t) {
    const Vector ju = cfg.kernel->apply_fast(u.values(), KernelPart::value);
    return ju.segment(first, last - first + 1).cwiseAbs().maxCoeff() / weighted_norm(u, cfg.p);
  });
  BoundReport r = make_report("lemma1b", cfg.kernel->sup_norm() / rho1, measured, 1e-9);
  r.note = "interior |x|<=L-1; ratio max|J*u|/||u|| vs ||J||_inf/rho_1; rho_1=" + fmt(rho1);
  return r;
}

BoundReport check_prop_lipschitz(const ProcessConfig& cfg, int samples, std::uint64_t seed) {
  const double K = weight_constant(cfg);
  const auto constants = lipschitz_constant_f(cfg, K);
  const double measured = corpus_max(cfg, samples, seed, [&](const WeightedField& u, Rng& rng, std::size_t i) {
    const WeightedField v = random_smooth_field(cfg.space, rng);
    const double t = 0.37 * static_cast<double>(i);
    const Vector df = rhs_f(t, u, cfg).values() - rhs_f(t, v, cfg).values();
    return weighted_norm(*cfg.space, df, cfg.p) / weighted_norm(*cfg.space, u.values() - v.values(), cfg.p);
  });
  BoundReport r = make_report("prop_lipschitz", constants.stated, measured, 1e-9);
  r.note = "pairs; K=" + fmt(K) + " ell_h=" + fmt(cfg.field.ell_h) + "; proof-chain constant=" + fmt(constants.proof_chain) +
           (measured <= constants.proof_chain + 1e-9 ? " passed" : " failed");
  return r;
}

BoundReport check_absorbing(const ProcessConfig& cfg, int samples, std::uint64_t seed, const VerifyOptions& opt) {
  const double R = opt.absorbing_radius;
  const double a = cfg.nonlinearity.a;
  const double t = opt.observation_time;
  const double tau0 = absorbing_entry_time(t, R, opt.absorbing_eps);
  const std::size_t runs = static_cast<std::size_t>(samples) * opt.absorbing_offsets.size();
  std::vector<double> excess(runs), final_norm(runs);
  parallel_for(runs, [&](std::size_t job) {
    const std::size_t sample = job / opt.absorbing_offsets.size();
    const double tau = tau0 - opt.absorbing_offsets[job % opt.absorbing_offsets.size()];
    Rng rng = stream(seed, sample);
    const WeightedField u0 = random_field_with_norm(cfg.space, rng, R, cfg.p);
    double worst = -1e300;
    const WeightedField end = evolve(u0, tau, t, cfg, [&](const TrajectoryState& s) {
      worst = std::max(worst, weighted_norm(s.u, cfg.p) - std::exp(-(s.t - tau)) * R);
    });
    excess[job] = worst;
    final_norm[job] = weighted_norm(end, cfg.p);
  });
  const double measured = runs ? *std::max_element(excess.begin(), excess.end()) : 0.0;
  BoundReport r = make_report("absorbing", a, measured, 1e-3);
  const double worst_final = runs ? *std::max_element(final_norm.begin(), final_norm.end()) : 0.0;
  r.note = "max_s ||u(s)|| - e^-(s-tau) R vs a; R=" + fmt(R) + " tau0=" + fmt(tau0) + " max||u(t)||=" + fmt(worst_final) +
           " radius a+eps=" + fmt(a + opt.absorbing_eps);
  return r;
}

BoundReport check_w_bound(const ProcessConfig& cfg, int samples, std::uint64_t seed, const VerifyOptions& opt) {
  const double a = cfg.nonlinearity.a;
  std::vector<double> worst(static_cast<std::size_t>(samples), 0.0);
  parallel_for(worst.size(), [&](std::size_t i) {
    Rng rng = stream(seed, i);
    const WeightedField u0 = random_field_with_norm(cfg.space, rng, a + opt.absorbing_eps, cfg.p);
    evolve_split(u0, opt.observation_time - opt.split_horizon, opt.observation_time, cfg,
                 [&](const TrajectoryState& s) {
                   worst[i] = std::max(worst[i], s.split->w.values().cwiseAbs().maxCoeff());
                 });
  });
  const double measured = worst.empty() ? 0.0 : *std::max_element(worst.begin(), worst.end());
  BoundReport r = make_report("w_bound", a, measured, 1e-9);
  r.note = "max over (t,x) of |w| vs a";
  return r;
}

BoundReport check_c1_attractor(const ProcessConfig& cfg, int samples, std::uint64_t seed, const VerifyOptions& opt) {
  SamplingPlan plan = opt.plan;
  plan.random = samples;
  plan.seed = seed;
  const AttractorSample sample = approximate_pullback_attractor(opt.observation_time, cfg, plan, opt.tau_ladder);
  double measured = 0.0;
  for (const auto& m : sample.members) measured = std::max(measured, interior_max_abs_derivative(m));
  const double bound = c1_regularity_bound(cfg, config_h_star(cfg));
  BoundReport r = make_report("c1_attractor", bound, measured, 1e-3);
  r.note = "interior |x|<=L-1 max|du/dx| over " + std::to_string(sample.members.size()) + " members; ratio=" +
           fmt(measured / bound);
  if (!sample.converged) {
    r.passed = false;
    r.note += "; not-converged";
  }
  return r;
}

BoundReport check_gronwall(const ProcessConfig& cfg, int samples, std::uint64_t seed, const VerifyOptions& opt) {
  ProcessConfig perturbed = cfg;
  perturbed.field = cfg.field.scaled(1.0 - opt.continuity_epsilon);
  const double gap = opt.continuity_epsilon * cfg.field.h_sup;
  const double t = opt.observation_time;
  const double tau = t - opt.continuity_horizon;
  std::vector<double> divergence(static_cast<std::size_t>(samples), 0.0);
  parallel_for(divergence.size(), [&](std::size_t i) {
    Rng rng = stream(seed, i);
    const WeightedField u0 = random_field_with_norm(cfg.space, rng, cfg.nonlinearity.a + opt.absorbing_eps, cfg.p);
    const WeightedField a = evolve(u0, tau, t, cfg);
    const WeightedField b = evolve(u0, tau, t, perturbed);
    divergence[i] = weighted_norm(*cfg.space, a.values() - b.values(), cfg.p);
  });
  const double measured = divergence.empty() ? 0.0 : *std::max_element(divergence.begin(), divergence.end());
  BoundReport r = make_report("gronwall_continuity", continuity_envelope(cfg, gap, opt.continuity_horizon), measured, 1e-3);
  r.note = "field gap=" + fmt(gap) + " horizon=" + fmt(opt.continuity_horizon) + " rate=" + fmt(continuity_rate(cfg)) +
           "; artifact-level bound 10*gap=" + fmt(10.0 * gap) + (measured <= 10.0 * gap ? " passed" : " failed");
  return r;
}

}  // namespace

BoundReport verify(const std::string& name, const ProcessConfig& cfg, int samples, std::uint64_t seed,
                   const VerifyOptions& options) {
  const int n = samples > 0 ? samples : default_samples(name);
  BoundReport r;
  if (name == "lemma1a") {
    r = check_lemma1a(cfg, n, seed, KernelPart::value);
  } else if (name == "lemma1a_deriv") {
    r = check_lemma1a(cfg, n, seed, KernelPart::derivative);
  } else if (name == "lemma1b") {
    r = check_lemma1b(cfg, n, seed);
  } else if (name == "prop_lipschitz") {
    r = check_prop_lipschitz(cfg, n, seed);
  } else if (name == "absorbing") {
    r = check_absorbing(cfg, n, seed, options);
  } else if (name == "w_bound") {
    r = check_w_bound(cfg, n, seed, options);
  } else if (name == "c1_attractor") {
    r = check_c1_attractor(cfg, n, seed, options);
  } else if (name == "gronwall_continuity") {
    r = check_gronwall(cfg, n, seed, options);
  } else {
    throw Error(ErrorCode::unknown_check, "unknown check: " + name);
  }
  r.seed = seed;
  r.samples = n;
  r.cfg_digest = cfg.digest();
  return r;
}

}  // namespace nonlocal
