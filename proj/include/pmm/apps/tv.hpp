#pragma once

#include "pmm/cg.hpp"
#include "pmm/core.hpp"
#include "pmm/field.hpp"

namespace pmm::apps {

/// Anisotropic TV denoising, posed as
///
///   min zeta |v|_1 + 1/2 |u - b|_F^2   subject to   grad u - v = 0.
struct TvProblem {
  DenseField b;
  double zeta = 20.0;
  Boundary bc = Boundary::reflexive;

  void validate() const;
};

// M = grad (stacked 2m x n), C = -I, d = 0. The g-oracle is the closed-form
// shrink; the f-oracle runs CG on (I + lambda grad^* grad) u = b - grad^* carrier.
ProblemSpec build_tv_problem(const TvProblem& tv, const CgConfig& cg);

QuadraticModel tv_quadratic_model(const TvProblem& tv);

double tv_objective(const TvProblem& tv, const DenseField& u);

}  // namespace pmm::apps
