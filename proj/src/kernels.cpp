#include "pmm/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace pmm::kernels {
namespace {

inline double soft(double z, double mu) {
  const double a = std::fabs(z) - mu;
  if (a <= 0.0) return 0.0;
  return z > 0.0 ? a : -a;
}

inline long as_long(std::size_t n) { return static_cast<long>(n); }

}  // namespace

double dot(std::span<const double> a, std::span<const double> b) {
  const std::size_t n = a.size();
  const std::size_t blocks = (n + kReductionBlock - 1) / kReductionBlock;
  if (blocks <= 1) return serial::dot(a, b);

  std::vector<double> partial(blocks, 0.0);
#pragma omp parallel for schedule(static) if (n >= kParallelThreshold)
  for (long blk = 0; blk < as_long(blocks); ++blk) {
    const std::size_t lo = static_cast<std::size_t>(blk) * kReductionBlock;
    const std::size_t hi = std::min(n, lo + kReductionBlock);
    double s = 0.0;
    for (std::size_t k = lo; k < hi; ++k) s += a[k] * b[k];
    partial[static_cast<std::size_t>(blk)] = s;
  }
  double total = 0.0;
  for (double p : partial) total += p;
  return total;
}

void axpy(double alpha, std::span<const double> x, std::span<double> y) {
  const long n = as_long(x.size());
#pragma omp parallel for schedule(static) if (x.size() >= kParallelThreshold)
  for (long k = 0; k < n; ++k) y[k] += alpha * x[k];
}

void lincomb(double alpha, std::span<const double> x, double beta, std::span<const double> y,
             std::span<double> out) {
  const long n = as_long(x.size());
#pragma omp parallel for schedule(static) if (x.size() >= kParallelThreshold)
  for (long k = 0; k < n; ++k) out[k] = alpha * x[k] + beta * y[k];
}

void scale(double alpha, std::span<double> x) {
  const long n = as_long(x.size());
#pragma omp parallel for schedule(static) if (x.size() >= kParallelThreshold)
  for (long k = 0; k < n; ++k) x[k] *= alpha;
}

void shrink(std::span<const double> z, double mu, std::span<double> out) {
  const long n = as_long(z.size());
#pragma omp parallel for schedule(static) if (z.size() >= kParallelThreshold)
  for (long k = 0; k < n; ++k) out[k] = soft(z[k], mu);
}

void grad2(std::span<const double> u, std::size_t rows, std::size_t cols, Boundary bc,
           std::span<double> out) {
  const std::size_t plane = rows * cols;
  const bool periodic = bc == Boundary::periodic;
  double* d1 = out.data();
  double* d2 = out.data() + plane;
#pragma omp parallel for schedule(static) if (plane >= kParallelThreshold)
  for (long li = 0; li < as_long(rows); ++li) {
    const auto i = static_cast<std::size_t>(li);
    const double* row = u.data() + i * cols;
    const bool last_row = i + 1 == rows;
    const double* below = last_row ? (periodic ? u.data() : nullptr) : row + cols;
    for (std::size_t j = 0; j < cols; ++j) {
      d1[i * cols + j] = below ? below[j] - row[j] : 0.0;
    }
    for (std::size_t j = 0; j + 1 < cols; ++j) d2[i * cols + j] = row[j + 1] - row[j];
    d2[i * cols + cols - 1] = periodic ? row[0] - row[cols - 1] : 0.0;
  }
}

void grad2_adjoint(std::span<const double> pq, std::size_t rows, std::size_t cols, Boundary bc,
                   std::span<double> out) {
  const std::size_t plane = rows * cols;
  const bool periodic = bc == Boundary::periodic;
  const double* p = pq.data();
  const double* q = pq.data() + plane;
#pragma omp parallel for schedule(static) if (plane >= kParallelThreshold)
  for (long li = 0; li < as_long(rows); ++li) {
    const auto i = static_cast<std::size_t>(li);
    // row-direction part: p[i-1] - p[i], with the boundary terms dropped
    const double* prow = p + i * cols;
    const double* pprev = nullptr;
    if (i > 0) {
      pprev = prow - cols;
    } else if (periodic) {
      pprev = p + (rows - 1) * cols;
    }
    const bool keep_self = periodic || i + 1 < rows;
    double* o = out.data() + i * cols;
    for (std::size_t j = 0; j < cols; ++j) {
      o[j] = (pprev ? pprev[j] : 0.0) - (keep_self ? prow[j] : 0.0);
    }
    const double* qrow = q + i * cols;
    for (std::size_t j = 0; j < cols; ++j) {
      double prev = 0.0;
      if (j > 0) {
        prev = qrow[j - 1];
      } else if (periodic) {
        prev = qrow[cols - 1];
      }
      const double self = (periodic || j + 1 < cols) ? qrow[j] : 0.0;
      o[j] += prev - self;
    }
  }
}

}  // namespace pmm::kernels
