#pragma once

#include <functional>

#include "pmm/field.hpp"
#include "pmm/linops.hpp"

namespace pmm {

enum class CgMode { to_tolerance, fixed_iterations };

struct CgConfig {
  CgMode mode = CgMode::to_tolerance;
  double tolerance = 1e-5;   // relative residual |Ax - b| / |b|
  int max_iterations = 1000;
  int fixed_count = 1;       // used when mode == fixed_iterations

  static CgConfig to_tolerance(double tol, int max_iter = 1000);
  static CgConfig fixed(int iterations);

  void validate() const;
};

struct CgResult {
  DenseField x;
  int iterations = 0;
  double relative_residual = 0.0;
  bool converged = false;   // tolerance met (to_tolerance) or k steps done (fixed)
};

// Called after every iteration with the iteration count and current iterate.
using CgObserver = std::function<void(int, const DenseField&)>;

// Plain conjugate gradients for a self-adjoint positive definite map.
// Throws NumericalAnomaly when p'Ap <= 1e-14 |p|^2 (naming the operator).
CgResult cg_solve(const LinearMap& a, const DenseField& rhs, const CgConfig& cfg,
                  const CgObserver& observer = {});
CgResult cg_solve(const LinearMap& a, const DenseField& rhs, const CgConfig& cfg,
                  const DenseField& warm_start, const CgObserver& observer = {});

}  // namespace pmm
