#include "nonlocal/kernel.hpp"

#include <algorithm>
#include <cmath>

#include <unsupported/Eigen/FFT>

namespace nonlocal {

namespace {

// Smallest even 2^a 3^b 5^c >= n; these lengths keep kissfft on its fast radices.
std::size_t fft_length(std::size_t n) {
  std::size_t best = 2;
  while (best < n) best <<= 1;
  for (std::size_t p5 = 1; p5 < best; p5 *= 5) {
    for (std::size_t p35 = p5; p35 < best; p35 *= 3) {
      std::size_t len = p35 * 2;
      while (len < n) len <<= 1;
      best = std::min(best, len);
    }
  }
  return best;
}

Eigen::FFT<double>& thread_fft() {
  // Eigen's FFT caches twiddle tables per instance; one instance per thread.
  thread_local Eigen::FFT<double> fft = [] {
    Eigen::FFT<double> f;
    f.SetFlag(Eigen::FFT<double>::HalfSpectrum);
    return f;
  }();
  return fft;
}

std::vector<std::complex<double>> kernel_spectrum(const Vector& taps, double dx, std::size_t size) {
  // Taps are laid out so that linear convolution index i + 2m lands on output i.
  std::vector<double> padded(size, 0.0);
  for (Eigen::Index k = 0; k < taps.size(); ++k) padded[static_cast<std::size_t>(k)] = taps(k) * dx;
  std::vector<std::complex<double>> out;
  thread_fft().fwd(out, padded);
  return out;
}

}  // namespace

double bump_profile(double x) noexcept {
  const double s = 1.0 - x * x;
  return s > 0.0 ? std::exp(-1.0 / s) : 0.0;
}

double bump_profile_derivative(double x) noexcept {
  const double s = 1.0 - x * x;
  return s > 0.0 ? std::exp(-1.0 / s) * (-2.0 * x / (s * s)) : 0.0;
}

Kernel::Kernel(const Grid1D& grid, Vector samples, Vector derivative_samples, Extension extension)
    : grid_(grid),
      extension_(extension),
      half_width_((samples.size() - 1) / 2),
      samples_(std::move(samples)),
      derivative_(std::move(derivative_samples)) {
  if (samples_.size() % 2 != 1 || derivative_.size() != samples_.size()) {
    throw Error(ErrorCode::invalid_argument, "kernel samples must be symmetric about the origin");
  }
  const double dx = grid_.spacing();
  l1_ = samples_.cwiseAbs().sum() * dx;
  sup_ = samples_.cwiseAbs().maxCoeff();
  // Total variation of the sampled profile; exact for piecewise monotone J.
  double variation = std::abs(samples_(0)) + std::abs(samples_(samples_.size() - 1));
  for (Eigen::Index k = 0; k + 1 < samples_.size(); ++k) variation += std::abs(samples_(k + 1) - samples_(k));
  dl1_ = variation;
  dsup_ = derivative_.cwiseAbs().maxCoeff();

  const auto n = static_cast<std::size_t>(grid_.size());
  const auto m = static_cast<std::size_t>(half_width_);
  // Circular wrap-around only reaches the first 2m outputs, which are discarded.
  fft_size_ = fft_length(n + 2 * m);
  spectrum_ = kernel_spectrum(samples_, dx, fft_size_);
  derivative_spectrum_ = kernel_spectrum(derivative_, dx, fft_size_);
}

double Kernel::at(std::ptrdiff_t k) const noexcept {
  if (k < -half_width_ || k > half_width_) return 0.0;
  return samples_(k + half_width_);
}

std::vector<double> Kernel::extended(const Vector& u) const {
  const std::ptrdiff_t n = u.size();
  const std::ptrdiff_t m = half_width_;
  std::vector<double> ext(static_cast<std::size_t>(n + 2 * m));
  const double left = extension_ == Extension::edge ? u(0) : 0.0;
  const double right = extension_ == Extension::edge ? u(n - 1) : 0.0;
  for (std::ptrdiff_t j = 0; j < m; ++j) ext[static_cast<std::size_t>(j)] = left;
  for (std::ptrdiff_t j = 0; j < n; ++j) ext[static_cast<std::size_t>(m + j)] = u(j);
  for (std::ptrdiff_t j = 0; j < m; ++j) ext[static_cast<std::size_t>(m + n + j)] = right;
  return ext;
}

Vector Kernel::apply_direct(const Vector& u, KernelPart part) const {
  if (u.size() != grid_.size()) throw Error(ErrorCode::grid_mismatch, "convolution: grid mismatch");
  const Vector& taps = part == KernelPart::value ? samples_ : derivative_;
  const std::ptrdiff_t n = u.size();
  const std::ptrdiff_t m = half_width_;
  const std::vector<double> ext = extended(u);
  const double dx = grid_.spacing();
  Vector out(n);
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    // (J*u)(x_i) = sum_k J(k dx) u(x_{i-k}) dx; ext index of x_{i-k} is m + i - k.
    double acc = 0.0;
    for (std::ptrdiff_t k = -m; k <= m; ++k) {
      acc += taps(k + m) * ext[static_cast<std::size_t>(m + i - k)];
    }
    out(i) = acc * dx;
  }
  return out;
}

Vector Kernel::apply_fast(const Vector& u, KernelPart part) const {
  if (u.size() != grid_.size()) throw Error(ErrorCode::grid_mismatch, "convolution: grid mismatch");
  const auto& spectrum = part == KernelPart::value ? spectrum_ : derivative_spectrum_;
  std::vector<double> ext = extended(u);
  ext.resize(fft_size_, 0.0);
  auto& fft = thread_fft();
  std::vector<std::complex<double>> freq;
  fft.fwd(freq, ext);
  for (std::size_t k = 0; k < freq.size(); ++k) freq[k] *= spectrum[k];
  std::vector<double> conv;
  fft.inv(conv, freq);
  // Linear convolution index (m + i) + m corresponds to output node i.
  const std::ptrdiff_t n = u.size();
  const std::ptrdiff_t m = half_width_;
  Vector out(n);
  for (std::ptrdiff_t i = 0; i < n; ++i) out(i) = conv[static_cast<std::size_t>(i + 2 * m)];
  return out;
}

KernelPtr make_bump_kernel(const Grid1D& grid, Extension extension) {
  const double dx = grid.spacing();
  if (!(dx < 0.1)) {
    throw Error(ErrorCode::grid_too_coarse, "bump kernel needs grid spacing < 0.1 to resolve its support");
  }
  // Offsets strictly inside the open support (-1, 1).
  auto m = static_cast<std::ptrdiff_t>(std::ceil(1.0 / dx)) - 1;
  while (static_cast<double>(m + 1) * dx < 1.0) ++m;
  while (m > 0 && static_cast<double>(m) * dx >= 1.0) --m;
  Vector j(2 * m + 1);
  Vector dj(2 * m + 1);
  for (std::ptrdiff_t k = -m; k <= m; ++k) {
    const double x = static_cast<double>(k) * dx;
    j(k + m) = bump_profile(std::abs(x));
    dj(k + m) = (k < 0 ? -1.0 : 1.0) * bump_profile_derivative(std::abs(x));
  }
  const double c = 1.0 / (j.sum() * dx);
  return std::make_shared<const Kernel>(grid, j * c, dj * c, extension);
}

namespace {

void check_kernel_grid(const Kernel& kernel, const WeightedField& u) {
  if (!(kernel.grid() == u.grid())) throw Error(ErrorCode::grid_mismatch, "kernel and field grids differ");
}

}  // namespace

WeightedField convolve_direct(const Kernel& kernel, const WeightedField& u) {
  check_kernel_grid(kernel, u);
  return WeightedField(u.space(), kernel.apply_direct(u.values(), KernelPart::value));
}

WeightedField convolve_fast(const Kernel& kernel, const WeightedField& u) {
  check_kernel_grid(kernel, u);
  return WeightedField(u.space(), kernel.apply_fast(u.values(), KernelPart::value));
}

WeightedField convolve_derivative(const Kernel& kernel, const WeightedField& u) {
  check_kernel_grid(kernel, u);
  return WeightedField(u.space(), kernel.apply_fast(u.values(), KernelPart::derivative));
}

WeightedField convolve_derivative_direct(const Kernel& kernel, const WeightedField& u) {
  check_kernel_grid(kernel, u);
  return WeightedField(u.space(), kernel.apply_direct(u.values(), KernelPart::derivative));
}

}  // namespace nonlocal
