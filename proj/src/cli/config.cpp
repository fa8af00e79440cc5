#include "nonlocal/cli/config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <optional>
#include <set>
#include <sstream>

#include <json.hpp>

#include "nonlocal/bifurcation.hpp"
#include "nonlocal/cli/csv.hpp"

namespace nonlocal::cli {

namespace {

using json = nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& reason) {
  throw Error(ErrorCode::config, "config error at '" + path + "': " + reason);
}

// Shortest representation that reads back exactly; for the run log only.
std::string shown(double v) {
  char buf[64];
  for (int digits = 1; digits <= 17; ++digits) {
    std::snprintf(buf, sizeof buf, "%.*g", digits, v);
    if (std::strtod(buf, nullptr) == v) break;
  }
  return buf;
}

std::string join(const std::vector<double>& v) {
  std::string out = "[";
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + shown(v[i]);
  return out + "]";
}

// One JSON object with its key path; remembers which keys were read so the
// rest can be reported as unknown.
class Section {
 public:
  Section(const json& node, std::string path, std::vector<std::string>& defaults)
      : node_(node), path_(std::move(path)), defaults_(defaults) {
    if (!node_.is_object()) fail(path_.empty() ? "<root>" : path_, "expected an object");
  }

  std::string key_path(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

  double number(const std::string& key, std::optional<double> fallback) {
    const json* v = lookup(key);
    if (!v) {
      if (!fallback) fail(key_path(key), "required key is missing");
      return defaulted(key, *fallback, shown(*fallback));
    }
    if (!v->is_number()) fail(key_path(key), "expected a number");
    const double x = v->get<double>();
    if (!std::isfinite(x)) fail(key_path(key), "must be finite");
    return x;
  }

  long long integer(const std::string& key, long long fallback) {
    const json* v = lookup(key);
    if (!v) return defaulted(key, fallback, std::to_string(fallback));
    if (!v->is_number_integer()) fail(key_path(key), "expected an integer");
    return v->get<long long>();
  }

  std::uint64_t unsigned_integer(const std::string& key, std::uint64_t fallback) {
    const json* v = lookup(key);
    if (!v) return defaulted(key, fallback, std::to_string(fallback));
    if (!v->is_number_unsigned()) {
      fail(key_path(key), "expected a nonnegative integer");
    }
    return v->get<std::uint64_t>();
  }

  std::string text(const std::string& key, const std::string& fallback) {
    const json* v = lookup(key);
    if (!v) return defaulted(key, fallback, fallback);
    if (!v->is_string()) fail(key_path(key), "expected a string");
    return v->get<std::string>();
  }

  std::vector<double> numbers(const std::string& key, const std::vector<double>& fallback) {
    const json* v = lookup(key);
    if (!v) return defaulted(key, fallback, join(fallback));
    if (!v->is_array()) fail(key_path(key), "expected an array of numbers");
    std::vector<double> out;
    for (const auto& item : *v) {
      if (!item.is_number() || !std::isfinite(item.get<double>())) {
        fail(key_path(key), "expected an array of finite numbers");
      }
      out.push_back(item.get<double>());
    }
    return out;
  }

  std::vector<std::string> strings(const std::string& key, const std::vector<std::string>& fallback) {
    const json* v = lookup(key);
    if (!v) {
      std::string shown = "[";
      for (std::size_t i = 0; i < fallback.size(); ++i) shown += (i ? ", " : "") + fallback[i];
      return defaulted(key, fallback, shown + "]");
    }
    if (!v->is_array()) fail(key_path(key), "expected an array of strings");
    std::vector<std::string> out;
    for (const auto& item : *v) {
      if (!item.is_string()) fail(key_path(key), "expected an array of strings");
      out.push_back(item.get<std::string>());
    }
    return out;
  }

  /// Nested object; an absent key yields an empty object.
  Section child(const std::string& key) {
    const json* v = lookup(key);
    if (!v) {
      defaults_.push_back(key_path(key) + " = {}");
      return Section(empty(), key_path(key), defaults_);
    }
    return Section(*v, key_path(key), defaults_);
  }

  void finish() const {
    for (auto it = node_.begin(); it != node_.end(); ++it) {
      if (!seen_.count(it.key())) fail(key_path(it.key()), "unknown key");
    }
  }

 private:
  static const json& empty() {
    static const json e = json::object();
    return e;
  }

  const json* lookup(const std::string& key) {
    seen_.insert(key);
    const auto it = node_.find(key);
    return it == node_.end() ? nullptr : &*it;
  }

  template <typename T>
  T defaulted(const std::string& key, T value, const std::string& shown) {
    defaults_.push_back(key_path(key) + " = " + shown);
    return value;
  }

  const json& node_;
  std::string path_;
  std::vector<std::string>& defaults_;
  std::set<std::string> seen_;
};

void positive(const Section& s, const std::string& key, double v) {
  if (!(v > 0.0)) fail(s.key_path(key), "must be positive");
}

std::vector<double> default_h_ladder() {
  std::vector<double> out;
  for (int k = 0; k <= 20; ++k) out.push_back(0.025 * k);
  return out;
}

ProcessConfig parse_process(Section& root) {
  const std::string model = root.text("model", "tanh");
  if (model != "tanh") fail(root.key_path("model"), "unsupported model '" + model + "' (expected tanh)");

  const double beta = root.number("beta", std::nullopt);
  positive(root, "beta", beta);
  const double p = root.number("p", 2.0);
  if (!(p >= 1.0)) fail(root.key_path("p"), "must be >= 1");
  const double dt = root.number("dt", 0.05);
  positive(root, "dt", dt);

  Section grid = root.child("grid");
  const double L = grid.number("L", 50.0);
  const long long n = grid.integer("n", 4096);
  grid.finish();
  if (!(L >= 4.0)) fail(grid.key_path("L"), "must be >= 4");
  if (n < 16 || n > (1LL << 26)) fail(grid.key_path("n"), "must lie in [16, 2^26]");
  if (!(2.0 * L / static_cast<double>(n) < 0.1)) {
    fail(grid.key_path("n"), "grid spacing 2L/n must be below 0.1 to resolve the kernel");
  }

  const std::string weight_name = root.text("weight", "cauchy");
  WeightFunction weight = WeightFunction::cauchy();
  if (weight_name == "gaussian") {
    weight = WeightFunction::gaussian();
  } else if (weight_name != "cauchy") {
    fail(root.key_path("weight"), "unknown weight '" + weight_name + "' (expected cauchy or gaussian)");
  }

  Section kernel = root.child("kernel");
  const std::string family = kernel.text("family", "bump");
  if (family != "bump") fail(kernel.key_path("family"), "unknown kernel '" + family + "' (expected bump)");
  const std::string ext_name = kernel.text("extension", "edge");
  Extension extension = Extension::edge;
  if (ext_name == "zero") {
    extension = Extension::zero;
  } else if (ext_name != "edge") {
    fail(kernel.key_path("extension"), "unknown extension '" + ext_name + "' (expected edge or zero)");
  }
  kernel.finish();

  Section field_section = root.child("field");
  const std::string field_family = field_section.text("family", "zero");
  ExternalField field = ExternalField::zero();
  if (field_family == "modulated_tanh2") {
    const double c = field_section.number("amplitude", std::nullopt);
    const double omega = field_section.number("omega", 1.0);
    if (!(c >= 0.0)) fail(field_section.key_path("amplitude"), "must be nonnegative");
    field = ExternalField::modulated_tanh2(c, omega);
  } else if (field_family != "zero") {
    fail(field_section.key_path("family"), "unknown field '" + field_family + "' (expected zero or modulated_tanh2)");
  }
  field_section.finish();

  if (!field.is_zero()) {
    if (!(beta > 1.0)) {
      fail(field_section.key_path("amplitude"), "a nonzero field needs beta > 1 (no bistable regime otherwise)");
    }
    const double h_star = compute_h_star(beta, Nonlinearity::tanh()).value;
    if (!(field.h_sup < h_star)) {
      fail(field_section.key_path("amplitude"),
           "field supremum " + format_number(field.h_sup) + " must stay below h*(beta) = " + format_number(h_star));
    }
  }

  return make_process_config(beta, Grid1D(L, static_cast<std::ptrdiff_t>(n)), weight, Nonlinearity::tanh(),
                             field, dt, p, extension);
}

SimulateBlock parse_simulate(Section s) {
  SimulateBlock b;
  b.tau = s.number("tau", b.tau);
  b.t = s.number("t", b.t);
  if (!(b.t >= b.tau)) fail(s.key_path("t"), "must not precede tau");
  Section init = s.child("initial");
  const std::string kind = init.text("kind", "random");
  if (kind == "random") {
    b.initial = InitialKind::random;
    b.initial_norm = init.number("norm", b.initial_norm);
    positive(init, "norm", b.initial_norm);
  } else if (kind == "constant") {
    b.initial = InitialKind::constant;
    b.initial_value = init.number("value", b.initial_value);
  } else {
    fail(init.key_path("kind"), "unknown initial kind '" + kind + "' (expected random or constant)");
  }
  init.finish();
  const long long every = s.integer("snapshot_every", 0);
  if (every < 0 || every > std::numeric_limits<int>::max()) fail(s.key_path("snapshot_every"), "must be >= 0");
  b.snapshot_every = static_cast<int>(every);
  s.finish();
  return b;
}

AttractorBlock parse_attractor(Section s) {
  AttractorBlock b;
  b.t = s.number("t", b.t);
  b.ladder = s.numbers("ladder", b.ladder);
  if (b.ladder.empty()) fail(s.key_path("ladder"), "must not be empty");
  for (std::size_t k = 0; k < b.ladder.size(); ++k) {
    if (!(b.ladder[k] < b.t)) fail(s.key_path("ladder"), "every initial time must precede t");
    if (k > 0 && !(b.ladder[k] < b.ladder[k - 1])) fail(s.key_path("ladder"), "must be strictly decreasing");
  }
  const long long constants = s.integer("constants", b.plan.constants);
  const long long random = s.integer("random", b.plan.random);
  if (constants < 0 || constants > 100000) fail(s.key_path("constants"), "must lie in [0, 100000]");
  if (random < 0 || random > 100000) fail(s.key_path("random"), "must lie in [0, 100000]");
  if (constants + random < 1) fail(s.key_path("random"), "at least one initial condition is needed");
  b.plan.constants = static_cast<int>(constants);
  b.plan.random = static_cast<int>(random);
  b.plan.eps = s.number("eps", b.plan.eps);
  positive(s, "eps", b.plan.eps);
  b.plan.cluster_tol = s.number("cluster_tol", b.plan.cluster_tol);
  positive(s, "cluster_tol", b.plan.cluster_tol);
  const long long modes = s.integer("field_modes", b.plan.field_spec.modes);
  if (modes < 1 || modes > 1000) fail(s.key_path("field_modes"), "must lie in [1, 1000]");
  b.plan.field_spec.modes = static_cast<int>(modes);
  b.plan.field_spec.max_wavenumber = s.number("field_wavenumber", b.plan.field_spec.max_wavenumber);
  positive(s, "field_wavenumber", b.plan.field_spec.max_wavenumber);
  s.finish();
  return b;
}

HStarBlock parse_hstar(Section s) {
  HStarBlock b;
  b.h_ladder = s.numbers("h_ladder", default_h_ladder());
  for (double h : b.h_ladder) {
    if (!(h >= 0.0)) fail(s.key_path("h_ladder"), "entries must be nonnegative");
  }
  s.finish();
  return b;
}

VerifyBlock parse_verify(Section s) {
  VerifyBlock b;
  b.checks = s.strings("checks", b.checks);
  if (b.checks.empty()) fail(s.key_path("checks"), "must not be empty");
  const auto& known = check_names();
  for (const auto& c : b.checks) {
    if (std::find(known.begin(), known.end(), c) == known.end()) fail(s.key_path("checks"), "unknown check '" + c + "'");
  }
  const long long samples = s.integer("samples", 0);
  if (samples < 0 || samples > 1000000) fail(s.key_path("samples"), "must lie in [0, 1000000]");
  b.samples = static_cast<int>(samples);
  auto& o = b.options;
  o.absorbing_radius = s.number("absorbing_radius", o.absorbing_radius);
  positive(s, "absorbing_radius", o.absorbing_radius);
  o.absorbing_eps = s.number("absorbing_eps", o.absorbing_eps);
  positive(s, "absorbing_eps", o.absorbing_eps);
  o.observation_time = s.number("observation_time", o.observation_time);
  o.absorbing_offsets = s.numbers("absorbing_offsets", o.absorbing_offsets);
  for (double off : o.absorbing_offsets) {
    if (!(off >= 0.0)) fail(s.key_path("absorbing_offsets"), "entries must be nonnegative");
  }
  o.continuity_epsilon = s.number("continuity_epsilon", o.continuity_epsilon);
  if (!(o.continuity_epsilon >= 0.0 && o.continuity_epsilon <= 1.0)) {
    fail(s.key_path("continuity_epsilon"), "must lie in [0, 1]");
  }
  o.continuity_horizon = s.number("continuity_horizon", o.continuity_horizon);
  if (!(o.continuity_horizon >= 0.0)) fail(s.key_path("continuity_horizon"), "must be nonnegative");
  o.split_horizon = s.number("split_horizon", o.split_horizon);
  positive(s, "split_horizon", o.split_horizon);
  s.finish();
  return b;
}

SweepBlock parse_sweep(Section s) {
  SweepBlock b;
  b.epsilons = s.numbers("epsilons", b.epsilons);
  if (b.epsilons.empty()) fail(s.key_path("epsilons"), "must not be empty");
  for (double e : b.epsilons) {
    if (!(e >= 0.0 && e <= 1.0)) fail(s.key_path("epsilons"), "entries must lie in [0, 1]");
  }
  s.finish();
  return b;
}

}  // namespace

ExperimentConfig parse_config(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::config, std::string("config is not valid JSON: ") + e.what());
  }
  ExperimentConfig cfg;
  Section root(doc, "", cfg.applied_defaults);
  try {
    cfg.process = parse_process(root);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::config) throw;
    throw Error(ErrorCode::config, std::string("config error: ") + e.what());
  }
  cfg.seed = root.unsigned_integer("seed", cfg.seed);
  cfg.output = root.text("output", cfg.output);
  cfg.simulate = parse_simulate(root.child("simulate"));
  cfg.attractor = parse_attractor(root.child("attractor"));
  cfg.hstar = parse_hstar(root.child("hstar"));
  cfg.verify = parse_verify(root.child("verify"));
  cfg.sweep = parse_sweep(root.child("sweep"));
  root.finish();
  cfg.verify.options.plan = cfg.attractor.plan;
  cfg.verify.options.tau_ladder = cfg.attractor.ladder;
  if (!std::all_of(cfg.attractor.ladder.begin(), cfg.attractor.ladder.end(),
                   [&](double tau) { return tau < cfg.verify.options.observation_time; })) {
    fail("verify.observation_time", "attractor.ladder times must precede it");
  }
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) throw Error(ErrorCode::config, "cannot read config file " + path);
  std::ostringstream text;
  text << file.rdbuf();
  return parse_config(text.str());
}

}  // namespace nonlocal::cli
