#pragma once

// Data-parallel inner loops shared by the operator layer and both solvers.
//
// pmm::kernels holds the OpenMP versions; pmm::kernels::serial holds plain
// loops with identical signatures, kept as the reference the parallel code
// is tested against and as the baseline for bench/.
//
// Reductions are deterministic: the parallel dot product sums fixed-size
// blocks independently and then adds the block partials in index order, so
// the result does not depend on the thread count.
//
// Gradient pairs are stored stacked: for an m x n image the output span
// holds 2*m*n values, the first m*n are the row-direction differences
// (u[i+1][j] - u[i][j]) and the next m*n the column-direction differences.

#include <cstddef>
#include <span>

namespace pmm::kernels {

enum class Boundary { reflexive, periodic };

inline constexpr std::size_t kReductionBlock = 2048;
inline constexpr std::size_t kParallelThreshold = 16384;

double dot(std::span<const double> a, std::span<const double> b);
// y += alpha * x
void axpy(double alpha, std::span<const double> x, std::span<double> y);
// out = alpha * x + beta * y; out may alias x or y
void lincomb(double alpha, std::span<const double> x, double beta, std::span<const double> y,
             std::span<double> out);
void scale(double alpha, std::span<double> x);
// Entrywise soft threshold, sign(0) = 0.
void shrink(std::span<const double> z, double mu, std::span<double> out);
void grad2(std::span<const double> u, std::size_t rows, std::size_t cols, Boundary bc,
           std::span<double> out);
// Adjoint of grad2 (minus the discrete divergence).
void grad2_adjoint(std::span<const double> pq, std::size_t rows, std::size_t cols, Boundary bc,
                   std::span<double> out);

namespace serial {

double dot(std::span<const double> a, std::span<const double> b);
void axpy(double alpha, std::span<const double> x, std::span<double> y);
void lincomb(double alpha, std::span<const double> x, double beta, std::span<const double> y,
             std::span<double> out);
void scale(double alpha, std::span<double> x);
void shrink(std::span<const double> z, double mu, std::span<double> out);
void grad2(std::span<const double> u, std::size_t rows, std::size_t cols, Boundary bc,
           std::span<double> out);
void grad2_adjoint(std::span<const double> pq, std::size_t rows, std::size_t cols, Boundary bc,
                   std::span<double> out);

}  // namespace serial
}  // namespace pmm::kernels
