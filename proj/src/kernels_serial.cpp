#include <algorithm>
#include <cmath>

#include "pmm/kernels.hpp"

namespace pmm::kernels::serial {

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
  return s;
}

void axpy(double alpha, std::span<const double> x, std::span<double> y) {
  for (std::size_t k = 0; k < x.size(); ++k) y[k] += alpha * x[k];
}

void lincomb(double alpha, std::span<const double> x, double beta, std::span<const double> y,
             std::span<double> out) {
  for (std::size_t k = 0; k < x.size(); ++k) out[k] = alpha * x[k] + beta * y[k];
}

void scale(double alpha, std::span<double> x) {
  for (double& v : x) v *= alpha;
}

void shrink(std::span<const double> z, double mu, std::span<double> out) {
  for (std::size_t k = 0; k < z.size(); ++k) {
    const double mag = std::max(std::fabs(z[k]) - mu, 0.0);
    const double sgn = z[k] > 0.0 ? 1.0 : (z[k] < 0.0 ? -1.0 : 0.0);
    out[k] = mag * sgn;
  }
}

void grad2(std::span<const double> u, std::size_t rows, std::size_t cols, Boundary bc,
           std::span<double> out) {
  const std::size_t plane = rows * cols;
  const bool periodic = bc == Boundary::periodic;
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      const std::size_t k = i * cols + j;
      if (i + 1 < rows) {
        out[k] = u[k + cols] - u[k];
      } else {
        out[k] = periodic ? u[j] - u[k] : 0.0;
      }
      if (j + 1 < cols) {
        out[plane + k] = u[k + 1] - u[k];
      } else {
        out[plane + k] = periodic ? u[i * cols] - u[k] : 0.0;
      }
    }
  }
}

void grad2_adjoint(std::span<const double> pq, std::size_t rows, std::size_t cols, Boundary bc,
                   std::span<double> out) {
  // Scatter form: each difference term contributes +1 at its forward index and
  // -1 at its own index.
  const std::size_t plane = rows * cols;
  const bool periodic = bc == Boundary::periodic;
  for (std::size_t k = 0; k < plane; ++k) out[k] = 0.0;
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      const std::size_t k = i * cols + j;
      if (i + 1 < rows || periodic) {
        const std::size_t fwd = ((i + 1) % rows) * cols + j;
        out[fwd] += pq[k];
        out[k] -= pq[k];
      }
      if (j + 1 < cols || periodic) {
        const std::size_t fwd = i * cols + (j + 1) % cols;
        out[fwd] += pq[plane + k];
        out[k] -= pq[plane + k];
      }
    }
  }
}

}  // namespace pmm::kernels::serial
