#pragma once

// Right-hand side f(t,u) = -u + g(beta (J*u) + beta h(t,u)) and the
// exponential integrator realizing the process S(t, tau).

#include <functional>
#include <optional>
#include <string>

#include "nonlocal/kernel.hpp"
#include "nonlocal/weighted_space.hpp"

namespace nonlocal {

/// Bounded, globally Lipschitz g with g(0) = 0, and the constants used by
/// the estimates: a = sup|g|, ell_g = Lip(g), k1 = Lip(g'), k2 = |g'(0)|.
struct Nonlinearity {
  std::string name;
  std::function<double(double)> g;
  std::function<double(double)> g_prime;
  double a = 0.0;
  double ell_g = 0.0;
  double k1 = 0.0;
  double k2 = 0.0;

  static Nonlinearity tanh();
  static Nonlinearity zero();
  /// g == c.  Violates g(0) = 0; only for integrator tests.
  static Nonlinearity constant(double c);
};

/// External field h(t, s) >= 0 with h(t, 0) = 0 and Lipschitz constant ell_h in s.
struct ExternalField {
  std::string family;
  std::function<double(double, double)> h;
  std::function<double(double, double)> dh_ds;
  double ell_h = 0.0;
  /// Supremum of h over (t, s); not attained by the shipped families.
  double h_sup = 0.0;
  double amplitude = 0.0;
  double omega = 0.0;
  double scale = 1.0;

  static ExternalField zero();
  /// h(t,s) = c (1 + sin(omega t))/2 tanh(s)^2.
  static ExternalField modulated_tanh2(double amplitude, double omega);

  /// The family member factor * h.
  ExternalField scaled(double factor) const;
  bool is_zero() const noexcept { return h_sup == 0.0; }
};

struct ProcessConfig {
  double beta = 2.0;
  double p = 2.0;
  SpacePtr space;
  KernelPtr kernel;
  Nonlinearity nonlinearity = Nonlinearity::tanh();
  ExternalField field = ExternalField::zero();
  double dt = 0.05;

  const Grid1D& grid() const { return space->grid(); }
  /// Throws on inconsistent or out-of-range parameters.
  void validate() const;
  /// Stable hexadecimal digest of every parameter.
  std::string digest() const;
};

/// Defaults: tanh, beta given, p = 2, L = 50, n = 4096, dt = 0.05,
/// Cauchy weight, bump kernel with edge extension, h == 0.
ProcessConfig default_process_config(double beta = 2.0);

/// Convenience for building a config on a given grid and weight.
ProcessConfig make_process_config(double beta, const Grid1D& grid, WeightFunction weight,
                                  Nonlinearity g = Nonlinearity::tanh(),
                                  ExternalField field = ExternalField::zero(), double dt = 0.05,
                                  double p = 2.0, Extension extension = Extension::edge);

struct SplitPair {
  WeightedField v;
  WeightedField w;
};

struct TrajectoryState {
  double t = 0.0;
  WeightedField u;
  std::optional<SplitPair> split;
};

using StepObserver = std::function<void(const TrajectoryState&)>;

/// G(t,u) = g(beta (J*u) + beta h(t,u)), sampled on the grid.
Vector nonlinear_drive(double t, const Vector& u, const ProcessConfig& cfg);

WeightedField rhs_f(double t, const WeightedField& u, const ProcessConfig& cfg);

/// One step of length cfg.dt.
///
/// Exponential time differencing, second order:
///   u+ = e^{-d} u + d phi1(d) G(t,u) + d phi2(d) (G(t+d, u~) - G(t,u)),
///   u~ = e^{-d} u + d phi1(d) G(t,u),
/// with phi1(d) = (1 - e^{-d})/d and phi2(d) = (e^{-d} - 1 + d)/d^2.  This is
/// the variation-of-constants integral with G replaced by its linear
/// interpolant between t and t+d; the linear part is integrated exactly.
TrajectoryState step_exponential(const TrajectoryState& state, const ProcessConfig& cfg);

/// Same scheme with an explicit step length.
TrajectoryState step_exponential(const TrajectoryState& state, const ProcessConfig& cfg, double delta);

/// S(t, tau) u_tau.  The observer, if any, sees the initial state and every step.
WeightedField evolve(const WeightedField& u_tau, double tau, double t, const ProcessConfig& cfg,
                     const StepObserver& observer = {});

/// Integrates v' = -v, v(tau) = u_tau exactly and
/// w' = -w + g(beta J*(v+w) + beta h(t, v+w)), w(tau) = 0 by the same scheme.
TrajectoryState evolve_split(const WeightedField& u_tau, double tau, double t, const ProcessConfig& cfg,
                             const StepObserver& observer = {});

/// Step lengths used to go from tau to t: full steps plus a trailing partial step.
std::vector<double> step_schedule(double tau, double t, double dt);

}  // namespace nonlocal
