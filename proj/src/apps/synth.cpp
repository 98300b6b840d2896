#include "pmm/apps/synth.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>
#include <string>

#include "pmm/error.hpp"
#include "pmm/fft.hpp"

namespace pmm::apps {
namespace {

struct Ellipse {
  double value, a, b, x0, y0, phi_deg;
};

constexpr std::array<Ellipse, 10> kModifiedSheppLogan{{
    {1.0, 0.69, 0.92, 0.0, 0.0, 0.0},
    {-0.8, 0.6624, 0.874, 0.0, -0.0184, 0.0},
    {-0.2, 0.11, 0.31, 0.22, 0.0, -18.0},
    {-0.2, 0.16, 0.41, -0.22, 0.0, 18.0},
    {0.1, 0.21, 0.25, 0.0, 0.35, 0.0},
    {0.1, 0.046, 0.046, 0.0, 0.1, 0.0},
    {0.1, 0.046, 0.046, 0.0, -0.1, 0.0},
    {0.1, 0.046, 0.023, -0.08, -0.605, 0.0},
    {0.1, 0.023, 0.023, 0.0, -0.606, 0.0},
    {0.1, 0.023, 0.046, 0.06, -0.605, 0.0},
}};

double grid_coord(std::size_t i, std::size_t count) {
  return -1.0 + 2.0 * static_cast<double>(i) / static_cast<double>(count - 1);
}

void require_size(std::size_t m, std::size_t n, const char* what) {
  if (m < 8 || n < 8) {
    throw InvalidArgument(std::string(what) + ": size must be at least 8x8, got " +
                          std::to_string(m) + "x" + std::to_string(n));
  }
}

}  // namespace

DenseField shepp_logan(std::size_t m, std::size_t n) {
  require_size(m, n, "shepp_logan");
  DenseField out(m, n);
  for (std::size_t i = 0; i < m; ++i) {
    const double y = -grid_coord(i, m);
    for (std::size_t j = 0; j < n; ++j) {
      const double x = grid_coord(j, n);
      double v = 0.0;
      for (const Ellipse& e : kModifiedSheppLogan) {
        const double phi = e.phi_deg * std::numbers::pi / 180.0;
        const double c = std::cos(phi);
        const double s = std::sin(phi);
        const double xr = (x - e.x0) * c + (y - e.y0) * s;
        const double yr = -(x - e.x0) * s + (y - e.y0) * c;
        if ((xr * xr) / (e.a * e.a) + (yr * yr) / (e.b * e.b) <= 1.0) v += e.value;
      }
      out(i, j) = std::clamp(v, 0.0, 1.0);
    }
  }
  return out;
}

DenseField piecewise_constant_image(std::size_t m, std::size_t n) {
  require_size(m, n, "piecewise_constant_image");
  DenseField out(m, n, 0.1);
  const auto fm = static_cast<double>(m);
  const auto fn = static_cast<double>(n);
  auto rect = [&](double r0, double r1, double c0, double c1, double value) {
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        const double r = (static_cast<double>(i) + 0.5) / fm;
        const double c = (static_cast<double>(j) + 0.5) / fn;
        if (r >= r0 && r < r1 && c >= c0 && c < c1) out(i, j) = value;
      }
    }
  };
  rect(0.125, 0.5, 0.125, 0.4375, 0.8);
  rect(0.5625, 0.875, 0.1875, 0.625, 0.5);
  rect(0.25, 0.4375, 0.5625, 0.875, 0.3);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double r = (static_cast<double>(i) + 0.5) / fm - 0.7;
      const double c = (static_cast<double>(j) + 0.5) / fn - 0.75;
      if (r * r + c * c <= 0.015) out(i, j) = 0.9;
    }
  }
  return out;
}

DenseField add_gaussian_noise(const DenseField& u, double variance, std::uint64_t seed) {
  if (!(variance >= 0.0)) throw InvalidArgument("add_gaussian_noise: variance must be >= 0");
  if (variance == 0.0) return u;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> noise(0.0, std::sqrt(variance));
  DenseField out = u;
  for (double& x : out.span()) x = std::clamp(x + noise(rng), 0.0, 1.0);
  return out;
}

DenseField random_mask(std::size_t m, std::size_t n, double fraction, std::uint64_t seed) {
  if (!(fraction > 0.0 && fraction <= 1.0)) {
    throw InvalidArgument("random_mask: fraction must lie in (0, 1]");
  }
  if (m == 0 || n == 0) throw InvalidArgument("random_mask: empty shape");
  const std::size_t total = m * n;
  const auto target = std::max<std::size_t>(
      1, static_cast<std::size_t>(std::llround(fraction * static_cast<double>(total))));
  DenseField mask(m, n);
  mask[0] = 1.0;
  std::vector<std::size_t> rest(total - 1);
  std::iota(rest.begin(), rest.end(), std::size_t{1});
  std::mt19937_64 rng(seed);
  std::vector<std::size_t> picked;
  std::sample(rest.begin(), rest.end(), std::back_inserter(picked), target - 1, rng);
  for (std::size_t k : picked) mask[k] = 1.0;
  return mask;
}

ComplexField cs_data(const DenseField& u, const DenseField& mask, double sigma,
                     std::uint64_t seed) {
  if (!(sigma >= 0.0)) throw InvalidArgument("cs_data: sigma must be >= 0");
  ComplexField spec = dft2(u);
  if (sigma > 0.0) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> noise(0.0, sigma / std::numbers::sqrt2);
    for (std::size_t k = 0; k < spec.size(); ++k) {
      const double re = noise(rng);
      const double im = noise(rng);
      spec[k] += std::complex<double>(re, im);
    }
  }
  return apply_mask(spec, mask);
}

}  // namespace pmm::apps
