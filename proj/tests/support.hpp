#pragma once

// Independent oracles for the tests: dense matrices built from the stencil
// definitions, a brute-force minimizer for two-pixel TV, and a history-based
// evaluation of the ergodic quantities.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <random>
#include <vector>

#include "pmm/core.hpp"
#include "pmm/field.hpp"
#include "pmm/linops.hpp"

namespace testing_support {

using pmm::Boundary;
using pmm::DenseField;

inline DenseField random_field(std::size_t m, std::size_t n, std::mt19937_64& rng,
                               double lo = -1.0, double hi = 1.0) {
  std::uniform_real_distribution<double> dist(lo, hi);
  DenseField f(m, n);
  for (double& x : f.span()) x = dist(rng);
  return f;
}

inline Eigen::VectorXd to_vec(const DenseField& f) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(f.size()));
  for (std::size_t k = 0; k < f.size(); ++k) v(static_cast<Eigen::Index>(k)) = f[k];
  return v;
}

inline DenseField from_vec(const Eigen::VectorXd& v, pmm::Shape s) {
  DenseField f(s);
  for (std::size_t k = 0; k < f.size(); ++k) f[k] = v(static_cast<Eigen::Index>(k));
  return f;
}

// Forward-difference gradient, rows 0..m-1 of the output hold the vertical
// differences u(i+1,j) - u(i,j), rows m..2m-1 the horizontal ones.
inline Eigen::MatrixXd dense_grad(std::size_t m, std::size_t n, Boundary bc) {
  const auto N = static_cast<Eigen::Index>(m * n);
  Eigen::MatrixXd G = Eigen::MatrixXd::Zero(2 * N, N);
  auto idx = [n](std::size_t i, std::size_t j) { return static_cast<Eigen::Index>(i * n + j); };
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const Eigen::Index r1 = idx(i, j);
      const Eigen::Index r2 = N + idx(i, j);
      if (i + 1 < m) {
        G(r1, idx(i + 1, j)) += 1.0;
        G(r1, idx(i, j)) -= 1.0;
      } else if (bc == Boundary::periodic) {
        G(r1, idx(0, j)) += 1.0;
        G(r1, idx(i, j)) -= 1.0;
      }
      if (j + 1 < n) {
        G(r2, idx(i, j + 1)) += 1.0;
        G(r2, idx(i, j)) -= 1.0;
      } else if (bc == Boundary::periodic) {
        G(r2, idx(i, 0)) += 1.0;
        G(r2, idx(i, j)) -= 1.0;
      }
    }
  }
  return G;
}

// Matrix of a linear map by applying it to the unit vectors.
inline Eigen::MatrixXd materialize(const pmm::LinearMap& a) {
  const auto cols = static_cast<Eigen::Index>(a.in_shape.size());
  const auto rows = static_cast<Eigen::Index>(a.out_shape.size());
  Eigen::MatrixXd A(rows, cols);
  for (Eigen::Index c = 0; c < cols; ++c) {
    DenseField e(a.in_shape);
    e[static_cast<std::size_t>(c)] = 1.0;
    A.col(c) = to_vec(a.apply(e));
  }
  return A;
}

// Unitary 2-D DFT as a dense (mn x mn) matrix from the exponential sum.
inline Eigen::MatrixXcd dense_dft(std::size_t m, std::size_t n) {
  const auto N = static_cast<Eigen::Index>(m * n);
  Eigen::MatrixXcd F(N, N);
  const double s = 1.0 / std::sqrt(static_cast<double>(m * n));
  for (std::size_t p = 0; p < m; ++p) {
    for (std::size_t q = 0; q < n; ++q) {
      for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          const double angle = -2.0 * std::numbers::pi *
                               (static_cast<double>(p * i) / static_cast<double>(m) +
                                static_cast<double>(q * j) / static_cast<double>(n));
          F(static_cast<Eigen::Index>(p * n + q), static_cast<Eigen::Index>(i * n + j)) =
              s * std::complex<double>(std::cos(angle), std::sin(angle));
        }
      }
    }
  }
  return F;
}

// Closed-form minimizer of zeta |u2 - u1| + 1/2 |u - b|^2.
inline std::pair<double, double> two_pixel_closed_form(double b1, double b2, double zeta) {
  const double gap = b2 - b1;
  if (std::fabs(gap) > 2.0 * zeta) {
    const double s = gap > 0 ? 1.0 : -1.0;
    return {b1 + zeta * s, b2 - zeta * s};
  }
  const double mean = 0.5 * (b1 + b2);
  return {mean, mean};
}

struct GridMinimum {
  double u1 = 0.0;
  double u2 = 0.0;
  double value = 0.0;
};

// Exhaustive search over a uniform grid on [lo, hi]^2.
inline GridMinimum two_pixel_grid_search(double b1, double b2, double zeta, double step,
                                         double lo = -1.0, double hi = 2.0) {
  const auto count = static_cast<std::size_t>(std::llround((hi - lo) / step)) + 1;
  std::vector<double> grid(count);
  std::vector<double> fit2(count);
  for (std::size_t j = 0; j < count; ++j) {
    grid[j] = lo + static_cast<double>(j) * step;
    fit2[j] = 0.5 * (grid[j] - b2) * (grid[j] - b2);
  }
  std::vector<double> row(count);
  GridMinimum best{0.0, 0.0, std::numeric_limits<double>::infinity()};
  for (std::size_t i = 0; i < count; ++i) {
    const double u1 = grid[i];
    const double d1 = 0.5 * (u1 - b1) * (u1 - b1);
    double row_min = std::numeric_limits<double>::infinity();
#pragma omp simd reduction(min : row_min)
    for (std::size_t j = 0; j < count; ++j) {
      row[j] = zeta * std::fabs(grid[j] - u1) + d1 + fit2[j];
      row_min = row[j] < row_min ? row[j] : row_min;
    }
    if (row_min < best.value) {
      const auto j = static_cast<std::size_t>(std::find(row.begin(), row.end(), row_min) - row.begin());
      best = {u1, grid[j], row_min};
    }
  }
  return best;
}

// Ergodic quantities straight from their definitions over a stored history.
struct HistoryErgodic {
  double Gamma = 0.0;
  DenseField u_bar, v_bar, x_bar, y_bar;
  double eps_u = 0.0;
  double eps_v = 0.0;
  double r_primal_norm = 0.0;
  double r_dual_norm = 0.0;
};

inline HistoryErgodic history_ergodic(const std::vector<pmm::IterationRecord>& hist,
                                      const pmm::ProblemSpec& problem) {
  HistoryErgodic h;
  const auto& first = hist.front();
  h.u_bar = DenseField(first.u.shape());
  h.v_bar = DenseField(first.v.shape());
  h.x_bar = DenseField(first.x.shape());
  h.y_bar = DenseField(first.y.shape());
  for (const auto& r : hist) h.Gamma += r.rho * r.gamma;
  for (const auto& r : hist) {
    const double wt = r.rho * r.gamma / h.Gamma;
    for (std::size_t k = 0; k < r.u.size(); ++k) h.u_bar[k] += wt * r.u[k];
    for (std::size_t k = 0; k < r.v.size(); ++k) h.v_bar[k] += wt * r.v[k];
    for (std::size_t k = 0; k < r.x.size(); ++k) h.x_bar[k] += wt * r.x[k];
    for (std::size_t k = 0; k < r.y.size(); ++k) h.y_bar[k] += wt * r.y[k];
  }
  for (const auto& r : hist) {
    const double wt = r.rho * r.gamma / h.Gamma;
    const DenseField mty = problem.M.apply_adjoint(r.y);
    const DenseField ctx = problem.C.apply_adjoint(r.x);
    for (std::size_t k = 0; k < r.u.size(); ++k) h.eps_u += wt * (r.u[k] - h.u_bar[k]) * -mty[k];
    for (std::size_t k = 0; k < r.v.size(); ++k) h.eps_v += wt * (r.v[k] - h.v_bar[k]) * -ctx[k];
  }
  DenseField rp = problem.M.apply(h.u_bar) + problem.C.apply(h.v_bar) - problem.d;
  h.r_primal_norm = pmm::norm(rp);
  h.r_dual_norm = pmm::norm(h.x_bar - h.y_bar);
  return h;
}

}  // namespace testing_support
