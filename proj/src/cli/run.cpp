#include "nonlocal/cli/run.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>

#include "nonlocal/bifurcation.hpp"
#include "nonlocal/cli/csv.hpp"
#include "nonlocal/random_fields.hpp"

namespace nonlocal::cli {

std::optional<Command> parse_command(std::string_view name) {
  if (name == "simulate") return Command::simulate;
  if (name == "attractor") return Command::attractor;
  if (name == "hstar") return Command::hstar;
  if (name == "verify") return Command::verify;
  if (name == "sweep") return Command::sweep;
  return std::nullopt;
}

const char* command_name(Command cmd) {
  switch (cmd) {
    case Command::simulate: return "simulate";
    case Command::attractor: return "attractor";
    case Command::hstar: return "hstar";
    case Command::verify: return "verify";
    case Command::sweep: return "sweep";
  }
  return "?";
}

namespace {

std::string out_path(const ExperimentConfig& cfg, const std::string& file) {
  return (std::filesystem::path(cfg.output) / file).string();
}

std::string num(double v) { return format_number(v); }

std::string join_numbers(const std::vector<double>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? " " : "") + num(v[i]);
  return out;
}

SamplingPlan seeded_plan(const ExperimentConfig& cfg) {
  SamplingPlan plan = cfg.attractor.plan;
  plan.seed = cfg.seed;
  return plan;
}

int run_simulate(const ExperimentConfig& cfg, std::ostream& out) {
  const auto& pc = cfg.process;
  const auto& sim = cfg.simulate;
  WeightedField u0 = WeightedField::constant(pc.space, sim.initial_value);
  if (sim.initial == InitialKind::random) {
    Rng rng = stream(cfg.seed, 0);
    u0 = random_field_with_norm(pc.space, rng, sim.initial_norm, pc.p);
  }
  std::vector<CsvRow> rows, snapshots;
  const Vector& x = pc.grid().nodes();
  long step = 0;
  const WeightedField end = evolve(u0, sim.tau, sim.t, pc, [&](const TrajectoryState& s) {
    rows.push_back({num(s.t), num(weighted_norm(s.u, pc.p)), num(s.u.values().cwiseAbs().maxCoeff()),
                    num(interior_max_abs_derivative(s.u))});
    if (sim.snapshot_every > 0 && step % sim.snapshot_every == 0) {
      for (Eigen::Index i = 0; i < x.size(); ++i) snapshots.push_back({num(s.t), num(x(i)), num(s.u.values()(i))});
    }
    ++step;
  });
  write_csv(out_path(cfg, "simulate.csv"), {"t", "norm", "max_abs_u", "interior_max_abs_dudx"}, rows);
  if (sim.snapshot_every > 0) write_csv(out_path(cfg, "simulate_fields.csv"), {"t", "x", "u"}, snapshots);
  out << "simulate: " << rows.size() << " rows, t = " << num(sim.t) << ", ||u(t)|| = " << num(weighted_norm(end, pc.p))
      << "\n";
  return exit_ok;
}

int run_attractor(const ExperimentConfig& cfg, std::ostream& out, std::ostream& log) {
  const auto& pc = cfg.process;
  const auto& block = cfg.attractor;
  const SamplingPlan plan = seeded_plan(cfg);
  const AttractorSample sample = approximate_pullback_attractor(block.t, pc, plan, block.ladder);
  const double h_star = config_h_star(pc);
  const double bound = c1_regularity_bound(pc, h_star);

  std::vector<CsvRow> members, fields;
  const Vector& x = pc.grid().nodes();
  for (std::size_t k = 0; k < sample.members.size(); ++k) {
    const auto& m = sample.members[k];
    members.push_back({std::to_string(k), num(weighted_norm(m, pc.p)), num(m.values().minCoeff()),
                       num(m.values().maxCoeff()), num(interior_max_abs_derivative(m))});
    for (Eigen::Index i = 0; i < x.size(); ++i) fields.push_back({std::to_string(k), num(x(i)), num(m.values()(i))});
  }
  write_csv(out_path(cfg, "attractor_members.csv"),
            {"member", "norm", "min_u", "max_u", "interior_max_abs_dudx"}, members);
  write_csv(out_path(cfg, "attractor_fields.csv"), {"member", "x", "u"}, fields);
  const auto& prov = sample.provenance;
  write_csv(out_path(cfg, "attractor_meta.csv"), {"key", "value"},
            {{"t", num(sample.t)},
             {"tau_ladder", join_numbers(prov.tau_ladder)},
             {"rung_distances", join_numbers(sample.rung_distances)},
             {"converged", sample.converged ? "true" : "false"},
             {"members", std::to_string(sample.members.size())},
             {"seed", std::to_string(prov.seed)},
             {"constants", std::to_string(prov.constants)},
             {"random", std::to_string(prov.random)},
             {"cluster_tol", num(plan.cluster_tol)},
             {"c1_bound", num(bound)},
             {"config_digest", prov.cfg_digest}});
  out << "attractor: " << sample.members.size() << " members at t = " << num(sample.t)
      << ", rung distances [" << join_numbers(sample.rung_distances) << "], "
      << (sample.converged ? "converged" : "not-converged") << "\n";
  if (!sample.converged) log << "warning: tau ladder did not stabilize within cluster_tol " << num(plan.cluster_tol) << "\n";
  return exit_ok;
}

int run_hstar(const ExperimentConfig& cfg, std::ostream& out) {
  const auto& pc = cfg.process;
  const auto& g = pc.nonlinearity;
  HStar hs;
  if (pc.beta > 1.0) {
    hs = compute_h_star(pc.beta, g);
  } else {
    hs.degenerate_regime = true;
  }
  char line[96];
  std::snprintf(line, sizeof line, "h_star = %.7f", hs.value);
  out << line;
  if (hs.degenerate_regime) out << " (beta <= 1: no three-root regime)";
  out << "\n";
  const double closed = pc.beta > 1.0 ? h_star_tanh_closed_form(pc.beta) : 0.0;
  if (pc.beta > 1.0) {
    std::snprintf(line, sizeof line, "closed_form = %.7f", closed);
    out << line << "\n";
  }

  std::vector<CsvRow> rows;
  out << "h,count,roots\n";
  for (double h : cfg.hstar.h_ladder) {
    const RootReport r = count_roots(pc.beta, h, g);
    rows.push_back({num(h), std::to_string(r.count), join_numbers(r.roots), join_numbers(r.tangential)});
    std::snprintf(line, sizeof line, "%.4f,%d,", h, r.count);
    out << line;
    for (std::size_t i = 0; i < r.roots.size(); ++i) {
      std::snprintf(line, sizeof line, "%s%.6f", i ? " " : "", r.roots[i]);
      out << line;
    }
    out << "\n";
  }
  write_csv(out_path(cfg, "hstar_roots.csv"), {"h", "count", "roots", "tangential"}, rows);
  write_csv(out_path(cfg, "hstar.csv"), {"beta", "h_star", "closed_form", "degenerate"},
            {{num(pc.beta), num(hs.value), num(closed), hs.degenerate_regime ? "true" : "false"}});
  return exit_ok;
}

int run_verify(const ExperimentConfig& cfg, std::ostream& out) {
  std::vector<CsvRow> rows;
  bool all = true;
  for (const auto& name : cfg.verify.checks) {
    const BoundReport r = verify(name, cfg.process, cfg.verify.samples, cfg.seed, cfg.verify.options);
    all = all && r.passed;
    rows.push_back({r.name, num(r.theoretical), num(r.measured), num(r.margin), r.passed ? "true" : "false",
                    std::to_string(r.seed), r.cfg_digest, num(r.tolerance), std::to_string(r.samples),
                    quote_field(r.note)});
    out << (r.passed ? "PASS " : "FAIL ") << r.name << " measured=" << num(r.measured)
        << " theoretical=" << num(r.theoretical) << " margin=" << num(r.margin) << "\n";
  }
  write_csv(out_path(cfg, "verify.csv"),
            {"name", "theoretical", "measured", "margin", "passed", "seed", "config_digest", "tolerance", "samples",
             "note"},
            rows);
  return all ? exit_ok : exit_failed_verdict;
}

int run_sweep(const ExperimentConfig& cfg, std::ostream& out, std::ostream& log) {
  const auto& pc = cfg.process;
  if (pc.field.is_zero()) log << "warning: the field is zero, every member of the family coincides\n";
  const SamplingPlan plan = seeded_plan(cfg);
  const SemicontinuityCurve curve =
      upper_semicontinuity_sweep(cfg.attractor.t, pc, cfg.sweep.epsilons, plan, cfg.attractor.ladder);

  std::vector<CsvRow> rows;
  bool all_converged = true;
  for (std::size_t k = 0; k < curve.epsilons.size(); ++k) {
    rows.push_back({num(curve.epsilons[k]), num(curve.field_gaps[k]), num(curve.distances[k]), num(curve.envelopes[k]),
                    curve.converged[k] ? "true" : "false"});
    all_converged = all_converged && curve.converged[k];
  }
  write_csv(out_path(cfg, "sweep.csv"), {"epsilon", "field_gap", "distance", "envelope", "converged"}, rows);

  // Verdicts: zero distance at epsilon = 0, distances nonincreasing as
  // epsilon decreases (within cluster_tol), each below envelope + cluster_tol.
  std::vector<std::size_t> order(curve.epsilons.size());
  for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return curve.epsilons[a] > curve.epsilons[b]; });
  const double tol = plan.cluster_tol;
  bool zero_ok = true, trend_ok = true, envelope_ok = true;
  for (std::size_t k = 0; k < order.size(); ++k) {
    const std::size_t i = order[k];
    if (curve.epsilons[i] == 0.0 && curve.distances[i] != 0.0) zero_ok = false;
    if (k > 0 && curve.distances[i] > curve.distances[order[k - 1]] + tol) trend_ok = false;
    if (curve.distances[i] > curve.envelopes[i] + tol) envelope_ok = false;
  }
  for (std::size_t k = 0; k < curve.epsilons.size(); ++k) {
    out << "sweep: epsilon=" << num(curve.epsilons[k]) << " gap=" << num(curve.field_gaps[k])
        << " distance=" << num(curve.distances[k]) << " envelope=" << num(curve.envelopes[k])
        << (curve.converged[k] ? "" : " not-converged") << "\n";
  }
  out << (zero_ok ? "PASS" : "FAIL") << " zero distance at epsilon = 0\n";
  out << (trend_ok ? "PASS" : "FAIL") << " distances nonincreasing as epsilon decreases\n";
  out << (envelope_ok ? "PASS" : "FAIL") << " distances within the continuity envelope\n";
  if (!all_converged) log << "warning: some attractor samples did not stabilize along the tau ladder\n";
  return zero_ok && trend_ok && envelope_ok ? exit_ok : exit_failed_verdict;
}

}  // namespace

int run(Command cmd, const ExperimentConfig& cfg, std::ostream& out, std::ostream& log) {
  for (const auto& d : cfg.applied_defaults) log << "default: " << d << "\n";
  log << "config digest " << cfg.process.digest() << ", seed " << cfg.seed << ", output " << cfg.output << "\n";
  switch (cmd) {
    case Command::simulate: return run_simulate(cfg, out);
    case Command::attractor: return run_attractor(cfg, out, log);
    case Command::hstar: return run_hstar(cfg, out);
    case Command::verify: return run_verify(cfg, out);
    case Command::sweep: return run_sweep(cfg, out, log);
  }
  return exit_usage;
}

}  // namespace nonlocal::cli
