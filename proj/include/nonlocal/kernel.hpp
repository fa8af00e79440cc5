#pragma once

// Interaction kernel J and the convolutions J*u and J'*u on a grid.
//
// J is sampled at the offsets k*dx, |k*dx| < 1, so (J*u)(x_i) is the
// finite sum  sum_k J(k dx) u(x_i - k dx) dx.  Samples needed beyond the
// grid come from the extension rule: `edge` repeats the end values (the
// reading used by the weighted quadrature), `zero` pads with zeros.

#include <complex>
#include <cstddef>
#include <memory>
#include <vector>

#include "nonlocal/weighted_space.hpp"

namespace nonlocal {

enum class Extension { edge, zero };
enum class KernelPart { value, derivative };

/// Unnormalized mollifier exp(-1/(1-x^2)) on (-1, 1), zero outside.
double bump_profile(double x) noexcept;
/// Derivative of bump_profile.
double bump_profile_derivative(double x) noexcept;

class Kernel {
 public:
  Kernel(const Grid1D& grid, Vector samples, Vector derivative_samples, Extension extension);

  const Grid1D& grid() const noexcept { return grid_; }
  Extension extension() const noexcept { return extension_; }
  /// Number of samples on each side of the origin.
  std::ptrdiff_t half_width() const noexcept { return half_width_; }
  /// J(k dx) for k = -half_width .. half_width.
  const Vector& samples() const noexcept { return samples_; }
  const Vector& derivative_samples() const noexcept { return derivative_; }
  /// J evaluated at offset index k (zero outside the support).
  double at(std::ptrdiff_t k) const noexcept;

  double l1_norm() const noexcept { return l1_; }
  double sup_norm() const noexcept { return sup_; }
  double derivative_l1_norm() const noexcept { return dl1_; }
  double derivative_sup_norm() const noexcept { return dsup_; }

  /// Reference O(n * width) summation.
  Vector apply_direct(const Vector& u, KernelPart part = KernelPart::value) const;
  /// Zero-padded FFT path, O(n log n).
  Vector apply_fast(const Vector& u, KernelPart part = KernelPart::value) const;

 private:
  std::vector<double> extended(const Vector& u) const;

  Grid1D grid_;
  Extension extension_;
  std::ptrdiff_t half_width_;
  Vector samples_;
  Vector derivative_;
  double l1_ = 0.0;
  double sup_ = 0.0;
  double dl1_ = 0.0;
  double dsup_ = 0.0;
  std::size_t fft_size_ = 0;
  std::vector<std::complex<double>> spectrum_;
  std::vector<std::complex<double>> derivative_spectrum_;
};

using KernelPtr = std::shared_ptr<const Kernel>;

/// Standard mollifier c exp(-1/(1-x^2)), c fixed so the discrete mass is 1.
/// Requires dx < 0.1.
KernelPtr make_bump_kernel(const Grid1D& grid, Extension extension = Extension::edge);

WeightedField convolve_direct(const Kernel& kernel, const WeightedField& u);
WeightedField convolve_fast(const Kernel& kernel, const WeightedField& u);
/// J' * u, which equals (J * u)'.
WeightedField convolve_derivative(const Kernel& kernel, const WeightedField& u);
WeightedField convolve_derivative_direct(const Kernel& kernel, const WeightedField& u);

}  // namespace nonlocal
