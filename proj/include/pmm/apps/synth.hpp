#pragma once

#include <cstdint>

#include "pmm/field.hpp"

namespace pmm::apps {

// Modified Shepp-Logan head phantom (10 ellipses, higher-contrast intensities),
// sampled on [-1, 1]^2 with rows running top to bottom. Values are clamped to
// [0, 1]. Requires m, n >= 8.
DenseField shepp_logan(std::size_t m, std::size_t n);

// Blocky test image: background 0.1 with a few rectangles and a disc at
// intensities between 0.3 and 0.9. Requires m, n >= 8.
DenseField piecewise_constant_image(std::size_t m, std::size_t n);

// clip(u + N(0, variance), 0, 1), deterministic in seed.
DenseField add_gaussian_noise(const DenseField& u, double variance, std::uint64_t seed);

// Binary mask with round(fraction * m * n) ones drawn uniformly without
// replacement; the zero frequency is always included.
DenseField random_mask(std::size_t m, std::size_t n, double fraction, std::uint64_t seed);

// mask * (F u + noise), noise complex Gaussian with E|noise|^2 = sigma^2.
ComplexField cs_data(const DenseField& u, const DenseField& mask, double sigma,
                     std::uint64_t seed);

}  // namespace pmm::apps
