#include "nonlocal/weighted_space.hpp"

#include <algorithm>
#include <limits>

namespace nonlocal {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::invalid_grid: return "invalid-grid";
    case ErrorCode::invalid_field: return "invalid-field";
    case ErrorCode::invalid_argument: return "invalid-argument";
    case ErrorCode::grid_mismatch: return "grid-mismatch";
    case ErrorCode::grid_too_coarse: return "grid-too-coarse";
    case ErrorCode::domain_too_small: return "domain-too-small";
    case ErrorCode::time_order: return "time-order";
    case ErrorCode::blow_up: return "blow-up";
    case ErrorCode::not_bistable: return "family-not-bistable";
    case ErrorCode::empty_set: return "empty-set";
    case ErrorCode::unknown_check: return "unknown-check";
    case ErrorCode::config: return "config";
  }
  return "unknown";
}

Grid1D::Grid1D(double half_length, std::ptrdiff_t n_points)
    : half_length_(half_length), n_(n_points), dx_(2.0 * half_length / static_cast<double>(n_points)) {
  if (!std::isfinite(half_length) || half_length < 4.0) {
    throw Error(ErrorCode::invalid_grid, "grid half_length must be >= 4");
  }
  if (n_points < 16) {
    throw Error(ErrorCode::invalid_grid, "grid n_points must be >= 16");
  }
}

Vector Grid1D::nodes() const {
  Vector x(n_);
  for (std::ptrdiff_t i = 0; i < n_; ++i) x(i) = node(i);
  return x;
}

std::ptrdiff_t Grid1D::interior_first(double margin) const {
  const double bound = half_length_ - margin;
  std::ptrdiff_t i = 0;
  while (i < n_ && node(i) < -bound - 1e-12) ++i;
  return i;
}

std::ptrdiff_t Grid1D::interior_last(double margin) const {
  const double bound = half_length_ - margin;
  std::ptrdiff_t i = n_ - 1;
  while (i >= 0 && node(i) > bound + 1e-12) --i;
  return i;
}

std::string WeightFunction::name() const {
  switch (kind_) {
    case WeightKind::cauchy: return "cauchy";
    case WeightKind::gaussian: return "gaussian";
  }
  return "unknown";
}

double WeightFunction::upper_tail(double x) const noexcept {
  switch (kind_) {
    case WeightKind::cauchy:
      // 1/2 - arctan(x)/pi, written to keep relative accuracy for large x.
      return x > 0.0 ? std::atan(1.0 / x) / M_PI : 0.5 - std::atan(x) / M_PI;
    case WeightKind::gaussian:
      return 0.5 * std::erfc(x / std::sqrt(2.0));
  }
  return 0.0;
}

WeightedSpace::WeightedSpace(Grid1D grid, WeightFunction weight)
    : grid_(grid), weight_(weight), weights_(grid.size()) {
  const std::ptrdiff_t n = grid_.size();
  const double dx = grid_.spacing();
  for (std::ptrdiff_t i = 0; i < n; ++i) weights_(i) = weight_(grid_.node(i)) * dx;
  weights_(0) *= 0.5;
  weights_(n - 1) *= 0.5;
  // Fold the mass of (-inf, x_0] and [x_{n-1}, inf) into the end nodes.
  weights_(0) += weight_.upper_tail(-grid_.node(0));
  weights_(n - 1) += weight_.upper_tail(grid_.node(n - 1));
}

SpacePtr make_space(const Grid1D& grid, WeightFunction weight) {
  return std::make_shared<const WeightedSpace>(grid, weight);
}

WeightedField::WeightedField(SpacePtr space, Vector values)
    : space_(std::move(space)), values_(std::move(values)) {
  if (!space_) throw Error(ErrorCode::invalid_field, "field without a space");
  if (values_.size() != space_->grid().size()) {
    throw Error(ErrorCode::invalid_field, "field length does not match grid n_points");
  }
  if (!values_.allFinite()) {
    throw Error(ErrorCode::invalid_field, "field has non-finite samples");
  }
}

WeightedField WeightedField::zero(SpacePtr space) {
  const auto n = space->grid().size();
  return WeightedField(std::move(space), Vector::Zero(n));
}

WeightedField WeightedField::constant(SpacePtr space, double value) {
  const auto n = space->grid().size();
  return WeightedField(std::move(space), Vector::Constant(n, value));
}

void check_exponent(double p) {
  if (!std::isfinite(p) || p < 1.0) {
    throw Error(ErrorCode::invalid_argument, "exponent p must be finite and >= 1");
  }
}

void check_same_space(const WeightedField& a, const WeightedField& b) {
  if (a.space() != b.space() &&
      !(a.grid() == b.grid() && a.weight() == b.weight())) {
    throw Error(ErrorCode::grid_mismatch, "fields live on different grids or weights");
  }
}

double weighted_norm(const WeightedField& u, double p) {
  return weighted_norm(*u.space(), u.values(), p);
}

double exterior_weighted_norm(const WeightedField& u, double radius, double p) {
  check_exponent(p);
  const auto& w = u.space()->quadrature_weights();
  const auto& grid = u.grid();
  double sum = 0.0;
  for (std::ptrdiff_t i = 0; i < u.size(); ++i) {
    if (std::abs(grid.node(i)) > radius) sum += w(i) * std::pow(std::abs(u.values()(i)), p);
  }
  return std::pow(sum, 1.0 / p);
}

double w1p_seminorm(const WeightedField& u, double p) {
  return weighted_norm(*u.space(), centered_difference(u.grid(), u.values()), p);
}

double interior_max_abs_derivative(const WeightedField& u, double margin) {
  const Vector d = centered_difference(u.grid(), u.values());
  const auto first = u.grid().interior_first(margin);
  const auto last = u.grid().interior_last(margin);
  if (last < first) return 0.0;
  return d.segment(first, last - first + 1).cwiseAbs().maxCoeff();
}

double rho_inf_unit_ball(const WeightFunction& rho, std::ptrdiff_t samples) {
  double best = std::numeric_limits<double>::infinity();
  for (std::ptrdiff_t i = 0; i < samples; ++i) {
    const double y = -1.0 + 2.0 * static_cast<double>(i) / static_cast<double>(samples - 1);
    best = std::min(best, rho(y));
  }
  return best;
}

double tail_mass(const WeightFunction& rho, double radius, const Grid1D& grid) {
  if (!(radius >= 0.0)) {
    throw Error(ErrorCode::invalid_argument, "tail_mass: radius must be nonnegative");
  }
  if (radius >= grid.half_length()) {
    throw Error(ErrorCode::domain_too_small, "tail_mass: radius must be smaller than the grid half length");
  }
  return 2.0 * rho.upper_tail(radius);
}

double truncation_tail(const WeightedSpace& space) {
  const auto& grid = space.grid();
  return space.weight().upper_tail(-grid.node(0)) + space.weight().upper_tail(grid.node(grid.size() - 1));
}

double holder_constant(const WeightedSpace& space, double p, double q) {
  check_exponent(p);
  check_exponent(q);
  return std::pow(space.total_mass(), 1.0 / p - 1.0 / q);
}

}  // namespace nonlocal
