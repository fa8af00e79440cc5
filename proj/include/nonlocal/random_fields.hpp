#pragma once

#include <cstdint>
#include <random>

#include "nonlocal/weighted_space.hpp"

namespace nonlocal {

using Rng = std::mt19937_64;

/// Smooth random field: c0 + sum_k a_k cos(kappa_k x + phi_k) / sqrt(modes),
/// with a_k, c0 normal, kappa_k uniform on [0, max_wavenumber].
struct RandomFieldSpec {
  int modes = 6;
  double max_wavenumber = 4.0;
  double offset_sigma = 0.5;
};

WeightedField random_smooth_field(const SpacePtr& space, Rng& rng, const RandomFieldSpec& spec = {});

/// Random smooth field rescaled to the given weighted p-norm.
WeightedField random_field_with_norm(const SpacePtr& space, Rng& rng, double norm, double p,
                                     const RandomFieldSpec& spec = {});

/// Deterministic per-index stream derived from a base seed.
Rng stream(std::uint64_t seed, std::uint64_t index);

}  // namespace nonlocal
