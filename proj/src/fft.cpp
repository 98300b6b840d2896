#include "pmm/fft.hpp"

#include <cmath>
#include <numbers>
#include <vector>

#include "pmm/kernels.hpp"

namespace pmm {
namespace {

using cplx = std::complex<double>;

bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

std::size_t next_pow2(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

// In-place iterative radix-2 transform, sign -1 forward, +1 inverse, no scaling.
void radix2(std::vector<cplx>& a, int sign) {
  const std::size_t n = a.size();
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  std::vector<cplx> twiddle(n / 2);
  for (std::size_t k = 0; k < n / 2; ++k) {
    twiddle[k] = std::polar(1.0, sign * 2.0 * std::numbers::pi * static_cast<double>(k) /
                                     static_cast<double>(n));
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const std::size_t half = len / 2;
    const std::size_t stride = n / len;
    for (std::size_t i = 0; i < n; i += len) {
      for (std::size_t k = 0; k < half; ++k) {
        const cplx t = a[i + k + half] * twiddle[k * stride];
        a[i + k + half] = a[i + k] - t;
        a[i + k] += t;
      }
    }
  }
}

// Precomputed data for one transform length.
class Plan1d {
 public:
  Plan1d(std::size_t n, int sign) : n_(n), sign_(sign) {
    if (is_pow2(n_)) return;
    // Bluestein: x_k w_k, convolved with conj(w), with w_k = exp(sign*i*pi*k^2/n)
    m_ = next_pow2(2 * n_ - 1);
    chirp_.resize(n_);
    for (std::size_t k = 0; k < n_; ++k) {
      // k^2 mod 2n avoids precision loss in the angle for large k
      const auto k2 = static_cast<double>((k * k) % (2 * n_));
      chirp_[k] = std::polar(1.0, sign_ * std::numbers::pi * k2 / static_cast<double>(n_));
    }
    kernel_.assign(m_, cplx{});
    kernel_[0] = std::conj(chirp_[0]);
    for (std::size_t k = 1; k < n_; ++k) {
      kernel_[k] = std::conj(chirp_[k]);
      kernel_[m_ - k] = std::conj(chirp_[k]);
    }
    radix2(kernel_, -1);
  }

  // Unscaled transform in place.
  void run(std::vector<cplx>& x) const {
    if (is_pow2(n_)) {
      radix2(x, sign_);
      return;
    }
    std::vector<cplx> a(m_, cplx{});
    for (std::size_t k = 0; k < n_; ++k) a[k] = x[k] * chirp_[k];
    radix2(a, -1);
    for (std::size_t k = 0; k < m_; ++k) a[k] *= kernel_[k];
    radix2(a, +1);
    const double inv_m = 1.0 / static_cast<double>(m_);
    for (std::size_t k = 0; k < n_; ++k) x[k] = a[k] * inv_m * chirp_[k];
  }

 private:
  std::size_t n_;
  int sign_;
  std::size_t m_ = 0;
  std::vector<cplx> chirp_;
  std::vector<cplx> kernel_;
};

ComplexField transform(const ComplexField& in, int sign) {
  const std::size_t rows = in.rows();
  const std::size_t cols = in.cols();
  ComplexField out = in;
  if (rows == 0 || cols == 0) return out;

  const Plan1d row_plan(cols, sign);
  const Plan1d col_plan(rows, sign);
  const bool par = in.size() >= kernels::kParallelThreshold;

#pragma omp parallel for schedule(static) if (par)
  for (long li = 0; li < static_cast<long>(rows); ++li) {
    const auto i = static_cast<std::size_t>(li);
    std::vector<cplx> buf(cols);
    for (std::size_t j = 0; j < cols; ++j) buf[j] = out(i, j);
    row_plan.run(buf);
    for (std::size_t j = 0; j < cols; ++j) out(i, j) = buf[j];
  }
#pragma omp parallel for schedule(static) if (par)
  for (long lj = 0; lj < static_cast<long>(cols); ++lj) {
    const auto j = static_cast<std::size_t>(lj);
    std::vector<cplx> buf(rows);
    for (std::size_t i = 0; i < rows; ++i) buf[i] = out(i, j);
    col_plan.run(buf);
    for (std::size_t i = 0; i < rows; ++i) out(i, j) = buf[i];
  }

  const double s = 1.0 / std::sqrt(static_cast<double>(rows * cols));
  for (auto& v : out.span()) v *= s;
  return out;
}

}  // namespace

ComplexField dft2(const ComplexField& u) { return transform(u, -1); }
ComplexField dft2(const DenseField& u) { return transform(ComplexField(u), -1); }
ComplexField idft2(const ComplexField& uhat) { return transform(uhat, +1); }

void require_binary_mask(const DenseField& mask) {
  for (std::size_t k = 0; k < mask.size(); ++k) {
    if (mask[k] != 0.0 && mask[k] != 1.0) {
      throw InvalidArgument("mask entry " + std::to_string(k) + " is " +
                            std::to_string(mask[k]) + ", expected 0 or 1");
    }
  }
}

ComplexField apply_mask(const ComplexField& uhat, const DenseField& mask) {
  if (uhat.shape() != mask.shape()) {
    throw InvalidArgument("apply_mask: shape mismatch " + to_string(uhat.shape()) + " vs " +
                          to_string(mask.shape()));
  }
  require_binary_mask(mask);
  ComplexField out = uhat;
  for (std::size_t k = 0; k < out.size(); ++k) {
    if (mask[k] == 0.0) out[k] = 0.0;
  }
  return out;
}

}  // namespace pmm
