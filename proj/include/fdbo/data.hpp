#pragma once

#include <cstdint>

#include "fdbo/spectral_core.hpp"

namespace fdbo {

// Real field with coefficients ~ e^{-k²/2}·(complex normal), no mean, scaled
// to the requested L² norm.
SpectralField random_smooth_datum(const Grid& g, double l2_norm, std::uint64_t seed);

// Real field with i.i.d. complex normal coefficients on 1 <= |j| <= band,
// scaled to unit L² norm.
SpectralField random_band_limited(const Grid& g, int band, std::uint64_t seed);

// i.i.d. complex normal coefficients on every non-Nyquist mode, unit variance per mode.
SpectralField white_noise(const Grid& g, std::uint64_t seed);

// 2 cos(j0 x)-type field: unit coefficients on modes ±j0.
SpectralField single_mode(const Grid& g, int j0, double amplitude = 1.0);

}  // namespace fdbo
