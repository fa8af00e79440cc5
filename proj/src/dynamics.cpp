#include "nonlocal/dynamics.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <sstream>

namespace nonlocal {

Nonlinearity Nonlinearity::tanh() {
  Nonlinearity n;
  n.name = "tanh";
  n.g = [](double s) { return std::tanh(s); };
  n.g_prime = [](double s) {
    const double c = std::cosh(s);
    return 1.0 / (c * c);
  };
  n.a = 1.0;
  n.ell_g = 1.0;
  // max |g''| = max |2 tanh sech^2| = 4 / (3 sqrt 3)
  n.k1 = 4.0 / (3.0 * std::sqrt(3.0));
  n.k2 = 1.0;
  return n;
}

Nonlinearity Nonlinearity::zero() {
  Nonlinearity n;
  n.name = "zero";
  n.g = [](double) { return 0.0; };
  n.g_prime = [](double) { return 0.0; };
  return n;
}

Nonlinearity Nonlinearity::constant(double c) {
  Nonlinearity n;
  n.name = "constant";
  n.g = [c](double) { return c; };
  n.g_prime = [](double) { return 0.0; };
  n.a = std::abs(c);
  return n;
}

ExternalField ExternalField::zero() {
  ExternalField f;
  f.family = "zero";
  f.h = [](double, double) { return 0.0; };
  f.dh_ds = [](double, double) { return 0.0; };
  return f;
}

ExternalField ExternalField::modulated_tanh2(double amplitude, double omega) {
  if (!(amplitude >= 0.0) || !std::isfinite(amplitude) || !std::isfinite(omega)) {
    throw Error(ErrorCode::invalid_argument, "field amplitude must be finite and nonnegative");
  }
  ExternalField f;
  f.family = "modulated_tanh2";
  f.amplitude = amplitude;
  f.omega = omega;
  f.h = [amplitude, omega](double t, double s) {
    const double th = std::tanh(s);
    return amplitude * 0.5 * (1.0 + std::sin(omega * t)) * th * th;
  };
  f.dh_ds = [amplitude, omega](double t, double s) {
    const double th = std::tanh(s);
    return amplitude * 0.5 * (1.0 + std::sin(omega * t)) * 2.0 * th * (1.0 - th * th);
  };
  f.ell_h = amplitude * 4.0 / (3.0 * std::sqrt(3.0));
  f.h_sup = amplitude;
  return f;
}

ExternalField ExternalField::scaled(double factor) const {
  if (!(factor >= 0.0)) throw Error(ErrorCode::invalid_argument, "field scale factor must be nonnegative");
  ExternalField f = *this;
  auto h0 = h;
  auto d0 = dh_ds;
  f.h = [h0, factor](double t, double s) { return factor * h0(t, s); };
  f.dh_ds = [d0, factor](double t, double s) { return factor * d0(t, s); };
  f.ell_h = factor * ell_h;
  f.h_sup = factor * h_sup;
  f.scale = factor * scale;
  return f;
}

void ProcessConfig::validate() const {
  if (!space || !kernel) throw Error(ErrorCode::invalid_argument, "process config needs a space and a kernel");
  if (!(kernel->grid() == space->grid())) throw Error(ErrorCode::grid_mismatch, "kernel grid differs from space grid");
  if (!(beta > 0.0) || !std::isfinite(beta)) throw Error(ErrorCode::invalid_argument, "beta must be positive");
  if (!(dt > 0.0) || !std::isfinite(dt)) throw Error(ErrorCode::invalid_argument, "dt must be positive");
  check_exponent(p);
  if (!nonlinearity.g) throw Error(ErrorCode::invalid_argument, "nonlinearity without g");
  if (!field.h) throw Error(ErrorCode::invalid_argument, "external field without h");
}

std::string ProcessConfig::digest() const {
  std::ostringstream os;
  os.precision(17);
  os << "beta=" << beta << ";p=" << p << ";L=" << grid().half_length() << ";n=" << grid().size()
     << ";weight=" << space->weight().name() << ";kernel=bump"
     << ";ext=" << (kernel->extension() == Extension::edge ? "edge" : "zero") << ";g=" << nonlinearity.name
     << ";field=" << field.family << ";c=" << field.amplitude << ";omega=" << field.omega
     << ";scale=" << field.scale << ";dt=" << dt;
  // FNV-1a, 64 bit.
  std::uint64_t hash = 1469598103934665603ULL;
  for (unsigned char ch : os.str()) {
    hash ^= ch;
    hash *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(hash));
  return buf;
}

ProcessConfig make_process_config(double beta, const Grid1D& grid, WeightFunction weight, Nonlinearity g,
                                  ExternalField field, double dt, double p, Extension extension) {
  ProcessConfig cfg;
  cfg.beta = beta;
  cfg.p = p;
  cfg.space = make_space(grid, weight);
  cfg.kernel = make_bump_kernel(grid, extension);
  cfg.nonlinearity = std::move(g);
  cfg.field = std::move(field);
  cfg.dt = dt;
  cfg.validate();
  return cfg;
}

ProcessConfig default_process_config(double beta) {
  return make_process_config(beta, Grid1D(50.0, 4096), WeightFunction::cauchy());
}

namespace {

// tanh(x) = 1 - 2 / (e^{2x} + 1), vectorized through Eigen's exp.  Absolute
// error stays at a few ulp of 1.
template <typename Derived>
auto fast_tanh(const Eigen::ArrayBase<Derived>& x) {
  return 1.0 - 2.0 / ((2.0 * x).exp() + 1.0);
}

}  // namespace

Vector nonlinear_drive(double t, const Vector& u, const ProcessConfig& cfg) {
  const Vector ju = cfg.kernel->apply_fast(u, KernelPart::value);
  const auto& field = cfg.field;
  Eigen::ArrayXd arg = cfg.beta * ju.array();
  if (field.family == "modulated_tanh2") {
    const double factor = field.scale * field.amplitude * 0.5 * (1.0 + std::sin(field.omega * t));
    if (factor != 0.0) arg += cfg.beta * factor * fast_tanh(u.array()).square();
  } else if (!field.is_zero()) {
    for (Eigen::Index i = 0; i < u.size(); ++i) arg(i) += cfg.beta * field.h(t, u(i));
  }
  if (cfg.nonlinearity.name == "tanh") return fast_tanh(arg).matrix();
  const auto& g = cfg.nonlinearity.g;
  Vector out(u.size());
  for (Eigen::Index i = 0; i < u.size(); ++i) out(i) = g(arg(i));
  return out;
}

WeightedField rhs_f(double t, const WeightedField& u, const ProcessConfig& cfg) {
  if (!(u.grid() == cfg.grid())) throw Error(ErrorCode::grid_mismatch, "rhs_f: field grid differs from config grid");
  Vector f = nonlinear_drive(t, u.values(), cfg) - u.values();
  if (!f.allFinite()) throw Error(ErrorCode::blow_up, "rhs_f: non-finite right-hand side");
  return WeightedField(u.space(), std::move(f));
}

namespace {

struct EtdCoefficients {
  double decay;  // e^{-d}
  double w1;     // d phi1(d) = 1 - e^{-d}
  double w2;     // d phi2(d) = (e^{-d} - 1 + d)/d
};

EtdCoefficients etd_coefficients(double d) {
  const double em1 = std::expm1(-d);  // e^{-d} - 1
  EtdCoefficients c;
  c.decay = std::exp(-d);
  c.w1 = -em1;
  c.w2 = (em1 + d) / d;
  return c;
}

// Advances w' = -w + G(s, base(s) + w) where base is a known free part
// (zero for the plain process).
Vector etd_step(double t, double d, const Vector& w, const Vector& base_now, const Vector& base_next,
                const ProcessConfig& cfg) {
  const auto c = etd_coefficients(d);
  const Vector g_now = nonlinear_drive(t, base_now + w, cfg);
  const Vector predictor = c.decay * w + c.w1 * g_now;
  const Vector g_next = nonlinear_drive(t + d, base_next + predictor, cfg);
  Vector next = c.decay * w + (c.w1 - c.w2) * g_now + c.w2 * g_next;
  if (!next.allFinite()) throw Error(ErrorCode::blow_up, "integrator produced non-finite state");
  return next;
}

void check_times(double tau, double t) {
  if (!std::isfinite(tau) || !std::isfinite(t)) throw Error(ErrorCode::time_order, "non-finite time");
  if (t < tau) throw Error(ErrorCode::time_order, "evolve requires t >= tau");
}

}  // namespace

std::vector<double> step_schedule(double tau, double t, double dt) {
  check_times(tau, t);
  const double span = t - tau;
  const auto full = static_cast<std::int64_t>(std::floor(span / dt + 1e-9));
  std::vector<double> steps(static_cast<std::size_t>(full), dt);
  const double rest = span - static_cast<double>(full) * dt;
  if (rest > 1e-12 * std::max(1.0, std::abs(span))) steps.push_back(rest);
  return steps;
}

TrajectoryState step_exponential(const TrajectoryState& state, const ProcessConfig& cfg, double delta) {
  if (!(delta > 0.0)) throw Error(ErrorCode::invalid_argument, "step length must be positive");
  const Vector& u = state.u.values();
  const Vector zero = Vector::Zero(u.size());
  TrajectoryState next{state.t + delta, WeightedField(state.u.space(), etd_step(state.t, delta, u, zero, zero, cfg)),
                       std::nullopt};
  return next;
}

TrajectoryState step_exponential(const TrajectoryState& state, const ProcessConfig& cfg) {
  return step_exponential(state, cfg, cfg.dt);
}

WeightedField evolve(const WeightedField& u_tau, double tau, double t, const ProcessConfig& cfg,
                     const StepObserver& observer) {
  if (!(u_tau.grid() == cfg.grid())) throw Error(ErrorCode::grid_mismatch, "evolve: field grid differs from config grid");
  const auto steps = step_schedule(tau, t, cfg.dt);
  TrajectoryState state{tau, u_tau, std::nullopt};
  if (observer) observer(state);
  double elapsed = 0.0;
  for (std::size_t k = 0; k < steps.size(); ++k) {
    state = step_exponential(state, cfg, steps[k]);
    // Times are recomputed from tau so that runs sharing step boundaries agree.
    elapsed = (k + 1 < steps.size() || steps[k] == cfg.dt) ? static_cast<double>(k + 1) * cfg.dt : t - tau;
    state.t = tau + elapsed;
    if (observer) observer(state);
  }
  return state.u;
}

TrajectoryState evolve_split(const WeightedField& u_tau, double tau, double t, const ProcessConfig& cfg,
                             const StepObserver& observer) {
  if (!(u_tau.grid() == cfg.grid())) throw Error(ErrorCode::grid_mismatch, "evolve_split: field grid differs from config grid");
  const auto steps = step_schedule(tau, t, cfg.dt);
  const auto& space = u_tau.space();
  Vector w = Vector::Zero(u_tau.size());
  Vector v = u_tau.values();
  auto make_state = [&](double time) {
    TrajectoryState s{time, WeightedField(space, v + w), SplitPair{WeightedField(space, v), WeightedField(space, w)}};
    return s;
  };
  if (observer) observer(make_state(tau));
  double time = tau;
  for (std::size_t k = 0; k < steps.size(); ++k) {
    const double elapsed_next = (k + 1 < steps.size() || steps[k] == cfg.dt) ? static_cast<double>(k + 1) * cfg.dt : t - tau;
    Vector v_next = std::exp(-elapsed_next) * u_tau.values();
    w = etd_step(time, steps[k], w, v, v_next, cfg);
    v = std::move(v_next);
    time = tau + elapsed_next;
    if (observer) observer(make_state(time));
  }
  return make_state(time);
}

}  // namespace nonlocal
