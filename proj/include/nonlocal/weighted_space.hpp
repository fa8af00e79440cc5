#pragma once

// Weighted L^p spaces on a truncated one-dimensional grid.
//
// A field u is stored as samples on x_i = -L + i*dx, i = 0..n-1, dx = 2L/n.
// Integrals against the weight rho use composite trapezoid quadrature on
// [x_0, x_{n-1}]; the analytic weight mass outside that interval is folded
// into the two end nodes, i.e. fields are read as constant beyond the grid.
// The folded mass is exposed by truncation_tail() as the truncation error bar.

#include <cmath>
#include <cstddef>
#include <memory>
#include <string>

#include <Eigen/Core>

#include "nonlocal/errors.hpp"

namespace nonlocal {

template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using Vector = VectorX<double>;

class Grid1D {
 public:
  Grid1D(double half_length, std::ptrdiff_t n_points);

  double half_length() const noexcept { return half_length_; }
  std::ptrdiff_t size() const noexcept { return n_; }
  double spacing() const noexcept { return dx_; }
  double node(std::ptrdiff_t i) const noexcept { return -half_length_ + static_cast<double>(i) * dx_; }
  Vector nodes() const;

  /// Index range [first, last] of nodes with |x| <= L - margin.
  std::ptrdiff_t interior_first(double margin = 1.0) const;
  std::ptrdiff_t interior_last(double margin = 1.0) const;

  friend bool operator==(const Grid1D& a, const Grid1D& b) noexcept {
    return a.half_length_ == b.half_length_ && a.n_ == b.n_;
  }

 private:
  double half_length_;
  std::ptrdiff_t n_;
  double dx_;
};

enum class WeightKind { cauchy, gaussian };

/// Positive unit-mass weight density on the real line.
class WeightFunction {
 public:
  static WeightFunction cauchy() { return WeightFunction(WeightKind::cauchy); }
  static WeightFunction gaussian() { return WeightFunction(WeightKind::gaussian); }

  WeightKind kind() const noexcept { return kind_; }
  std::string name() const;

  double operator()(double x) const noexcept {
    switch (kind_) {
      case WeightKind::cauchy:
        return 1.0 / (M_PI * (1.0 + x * x));
      case WeightKind::gaussian:
        return std::exp(-0.5 * x * x) / std::sqrt(2.0 * M_PI);
    }
    return 0.0;
  }

  /// Closed-form mass of [x, +inf).
  double upper_tail(double x) const noexcept;

  friend bool operator==(WeightFunction a, WeightFunction b) noexcept { return a.kind_ == b.kind_; }

 private:
  explicit WeightFunction(WeightKind kind) : kind_(kind) {}
  WeightKind kind_;
};

/// A grid paired with a weight and its quadrature weights.  Immutable.
class WeightedSpace {
 public:
  WeightedSpace(Grid1D grid, WeightFunction weight);

  const Grid1D& grid() const noexcept { return grid_; }
  const WeightFunction& weight() const noexcept { return weight_; }
  const Vector& quadrature_weights() const noexcept { return weights_; }
  double total_mass() const noexcept { return weights_.sum(); }

 private:
  Grid1D grid_;
  WeightFunction weight_;
  Vector weights_;
};

using SpacePtr = std::shared_ptr<const WeightedSpace>;

SpacePtr make_space(const Grid1D& grid, WeightFunction weight);

/// Sampled function u(x_i) tied to a weighted space.  All samples finite.
class WeightedField {
 public:
  WeightedField(SpacePtr space, Vector values);

  static WeightedField zero(SpacePtr space);
  static WeightedField constant(SpacePtr space, double value);

  const SpacePtr& space() const noexcept { return space_; }
  const Grid1D& grid() const noexcept { return space_->grid(); }
  const WeightFunction& weight() const noexcept { return space_->weight(); }
  const Vector& values() const noexcept { return values_; }
  std::ptrdiff_t size() const noexcept { return values_.size(); }

 private:
  SpacePtr space_;
  Vector values_;
};

void check_exponent(double p);
void check_same_space(const WeightedField& a, const WeightedField& b);

template <typename Derived>
double weighted_norm(const WeightedSpace& space, const Eigen::MatrixBase<Derived>& u, double p) {
  check_exponent(p);
  const auto& w = space.quadrature_weights();
  if (u.size() != w.size()) {
    throw Error(ErrorCode::grid_mismatch, "weighted_norm: sample count does not match grid");
  }
  if (!u.allFinite()) {
    throw Error(ErrorCode::invalid_field, "weighted_norm: non-finite samples");
  }
  if (p == 2.0) {
    return std::sqrt((w.array() * u.derived().array().abs2()).sum());
  }
  return std::pow((w.array() * u.derived().array().abs().pow(p)).sum(), 1.0 / p);
}

double weighted_norm(const WeightedField& u, double p);

/// Weighted norm restricted to nodes with |x| > radius (the exterior of B(0;R)).
double exterior_weighted_norm(const WeightedField& u, double radius, double p);

/// Centered second-order differences, one-sided at the two boundary nodes.
template <typename Derived>
Vector centered_difference(const Grid1D& grid, const Eigen::MatrixBase<Derived>& u) {
  const std::ptrdiff_t n = u.size();
  if (n < 3) {
    throw Error(ErrorCode::invalid_grid, "centered_difference: need at least 3 nodes");
  }
  const double dx = grid.spacing();
  Vector d(n);
  d(0) = (u(1) - u(0)) / dx;
  d(n - 1) = (u(n - 1) - u(n - 2)) / dx;
  d.segment(1, n - 2) = (u.segment(2, n - 2) - u.segment(0, n - 2)) / (2.0 * dx);
  return d;
}

double w1p_seminorm(const WeightedField& u, double p);

/// max |u'(x)| over nodes with |x| <= L - margin.
double interior_max_abs_derivative(const WeightedField& u, double margin = 1.0);

/// Grid estimate of the smallest K with sup{rho(x) : |x-y| <= 1} <= K rho(y).
template <typename Density>
double estimate_K(const Density& rho, const Grid1D& grid) {
  const std::ptrdiff_t n = grid.size();
  const double dx = grid.spacing();
  const auto reach = static_cast<std::ptrdiff_t>(std::floor(1.0 / dx + 1e-12));
  Vector values(n);
  for (std::ptrdiff_t i = 0; i < n; ++i) values(i) = rho(grid.node(i));
  double best = 0.0;
  for (std::ptrdiff_t j = 0; j < n; ++j) {
    const std::ptrdiff_t lo = std::max<std::ptrdiff_t>(0, j - reach);
    const std::ptrdiff_t hi = std::min<std::ptrdiff_t>(n - 1, j + reach);
    const double local_max = values.segment(lo, hi - lo + 1).maxCoeff();
    best = std::max(best, local_max / values(j));
  }
  return best;
}

/// inf{rho(y) : |y| <= 1} by sampling [-1, 1].
double rho_inf_unit_ball(const WeightFunction& rho, std::ptrdiff_t samples = 200001);

/// Mass of rho outside B(0; R).  Requires R < L.
double tail_mass(const WeightFunction& rho, double radius, const Grid1D& grid);

/// Weight mass outside [x_0, x_{n-1}] carried by the end nodes.
double truncation_tail(const WeightedSpace& space);

/// Constant C with ||u||_p <= C ||u||_q for p < q on the truncated measure.
double holder_constant(const WeightedSpace& space, double p, double q);

}  // namespace nonlocal
