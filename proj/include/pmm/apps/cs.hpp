#pragma once

#include "pmm/cg.hpp"
#include "pmm/core.hpp"
#include "pmm/field.hpp"

namespace pmm::apps {

/// Fourier-sampled reconstruction
///
///   min TV(u) + zeta/2 |R F u - b|_F^2,
///
/// split as f(u) = zeta/2 |R F u - b|^2, g(v) = |v|_1, M = grad, C = -I, d = 0.
///
/// u is real, so the data term's Hessian is zeta Re(F^* R F), which equals
/// F^* diag((R + R~)/2) F with R~(p) = R(-p). The Fourier-diagonal solve uses
/// that symmetrized mask; it coincides with R for conjugate-symmetric masks.
struct CsProblem {
  ComplexField data;  // measured coefficients b, zero off the mask
  DenseField mask;    // diagonal of R, entries in {0, 1}
  double zeta = 500.0;
  Boundary bc = Boundary::periodic;

  void validate() const;
};

// Periodic bc: exact Fourier-diagonal u-solve. Reflexive bc: CG on the
// normal equations with the given configuration.
ProblemSpec build_cs_problem(const CsProblem& cs, const CgConfig& cg);

QuadraticModel cs_quadratic_model(const CsProblem& cs);

// Solves (zeta Re(F^* R F) + lambda grad^* grad) u = zeta Re(F^* R b) - grad^* carrier
// under periodic boundaries. Where the diagonal symbol vanishes (the DC term
// when the mask misses it) the minimum-norm solution is returned.
DenseField cs_fourier_solve(const CsProblem& cs, const DenseField& carrier, double lambda);

// zeta/2 |R F u - b|^2
double cs_data_term(const CsProblem& cs, const DenseField& u);
double cs_objective(const CsProblem& cs, const DenseField& u);

}  // namespace pmm::apps
