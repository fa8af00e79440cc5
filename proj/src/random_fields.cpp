#include "nonlocal/random_fields.hpp"

#include <cmath>

namespace nonlocal {

WeightedField random_smooth_field(const SpacePtr& space, Rng& rng, const RandomFieldSpec& spec) {
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const auto& grid = space->grid();
  const Vector x = grid.nodes();
  Vector u = Vector::Constant(grid.size(), spec.offset_sigma * normal(rng));
  const double scale = 1.0 / std::sqrt(static_cast<double>(std::max(spec.modes, 1)));
  for (int k = 0; k < spec.modes; ++k) {
    const double amplitude = normal(rng) * scale;
    const double wavenumber = spec.max_wavenumber * unit(rng);
    const double phase = 2.0 * M_PI * unit(rng);
    u.array() += amplitude * (wavenumber * x.array() + phase).cos();
  }
  return WeightedField(space, std::move(u));
}

WeightedField random_field_with_norm(const SpacePtr& space, Rng& rng, double norm, double p,
                                     const RandomFieldSpec& spec) {
  WeightedField u = random_smooth_field(space, rng, spec);
  double current = weighted_norm(u, p);
  while (current < 1e-12) {
    u = random_smooth_field(space, rng, spec);
    current = weighted_norm(u, p);
  }
  return WeightedField(space, u.values() * (norm / current));
}

Rng stream(std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  return Rng(seq);
}

}  // namespace nonlocal
