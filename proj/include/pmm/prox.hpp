#pragma once

#include <functional>
#include <string>

#include "pmm/cg.hpp"
#include "pmm/field.hpp"
#include "pmm/linops.hpp"

namespace pmm {

/// Output of one subproblem solve: the minimizer and its image under A.
struct OracleResult {
  DenseField nu;
  DenseField image;              // A nu
  int inner_iterations = 0;      // CG steps, 0 for closed-form oracles
  double inner_residual = 0.0;   // relative CG residual, 0 for closed-form oracles
};

/// Evaluates the minimizer of
///
///   theta(nu) + <carrier, A nu - c> + (lambda/2) |A nu - c|^2
///
/// for a fixed (theta, A, c). By the resolvent lemma the point
/// carrier + lambda (A nu - c) is then the resolvent of the dual operator
/// (theta^* o -A^*) + <c, .> at the carrier, so the solver never forms the
/// conjugate functions.
///
/// warm_start, when non-null, is the caller's previous minimizer; iterative
/// oracles may start from it, closed-form ones ignore it.
struct SubproblemOracle {
  using Solve =
      std::function<OracleResult(const DenseField& carrier, double lambda, const DenseField* warm_start)>;

  Solve solve;
  LinearMap op;        // A
  DenseField offset;   // c
  std::string name;

  OracleResult operator()(const DenseField& carrier, double lambda,
                          const DenseField* warm_start = nullptr) const;
};

// max(|z_i| - mu, 0) sign(z_i), sign(0) = 0. Throws for mu <= 0.
DenseField shrink(const DenseField& z, double mu);

// g = zeta |.|_1, C = -I, d = 0: v = shrink(carrier / lambda, zeta / lambda), image -v.
OracleResult l1_g_oracle(const DenseField& carrier, double lambda, double zeta);
SubproblemOracle make_l1_g_oracle(Shape v_shape, double zeta);

/// f(u) = 1/2 <u, Q u> - <q, u> + const, with Q self-adjoint positive
/// semidefinite, paired with the coupling operator M (offset 0). The
/// subproblem reduces to (Q + lambda M^* M) u = q - M^* carrier.
struct QuadraticModel {
  LinearMap hessian;   // Q
  DenseField linear;   // q
  LinearMap coupling;  // M
};

LinearMap quadratic_system(const QuadraticModel& model, double lambda);

OracleResult quad_f_oracle(const DenseField& carrier, double lambda, const QuadraticModel& model,
                           const CgConfig& cg, const DenseField* warm_start = nullptr);
SubproblemOracle make_quadratic_f_oracle(QuadraticModel model, CgConfig cg);

// Largest violation of 0 in zeta d|.|_1(v) + s, entrywise (s = C^* x).
double l1_inclusion_residual(const DenseField& v, const DenseField& s, double zeta);
// |Q u - q + s| with s = M^* y.
double quadratic_inclusion_residual(const QuadraticModel& model, const DenseField& u,
                                    const DenseField& s);

}  // namespace pmm
