#pragma once

// Root structure of the scalar fixed-point equation s = g(beta s + beta h)
// and the bistability threshold h*.

#include <vector>

#include "nonlocal/dynamics.hpp"

namespace nonlocal {

struct RootScan {
  double lower = -1.5;
  double upper = 1.5;
  std::ptrdiff_t nodes = 100001;
  double tolerance = 1e-12;
  /// |phi| below this at a local minimum without a sign change marks a tangency.
  double tangency = 1e-8;
};

struct RootReport {
  /// Transversal roots, strictly increasing.
  std::vector<double> roots;
  std::vector<double> residuals;
  /// Near-tangential (double) roots, reported but not counted.
  std::vector<double> tangential;
  int count = 0;
};

RootReport count_roots(double beta, double h, const Nonlinearity& g, const RootScan& scan = {});

struct HStar {
  double value = 0.0;
  /// Set when beta <= 1: no three-root regime exists and value is 0.
  bool degenerate_regime = false;
};

/// Supremum of h in [0, 2] for which count_roots reports three transversal roots.
/// Throws ErrorCode::not_bistable when no 3 -> 1 transition exists.
HStar compute_h_star(double beta, const Nonlinearity& g, double tolerance = 1e-8);

/// For g = tanh: h* = sqrt(1 - 1/beta) - artanh(sqrt(1 - 1/beta)) / beta.
double h_star_tanh_closed_form(double beta);

}  // namespace nonlocal
