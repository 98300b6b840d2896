#include "pmm/apps/admm.hpp"

#include <utility>

namespace pmm::apps {

void AdmmConfig::validate() const {
  if (!(lambda > 0.0)) throw InvalidArgument("ADMM penalty must be positive");
  if (!(rho > 0.0 && rho < 2.0)) throw InvalidArgument("ADMM relaxation must lie in (0, 2)");
  if (max_iterations < 1) throw InvalidArgument("ADMM max_iterations must be >= 1");
}

AdmmResult admm_run(const ProblemSpec& problem, const AdmmConfig& cfg,
                    const AdmmObserver& observer) {
  problem.validate();
  cfg.validate();
  const double lambda = cfg.lambda;
  const double rho = cfg.rho;

  DenseField z(problem.dual_shape());
  DenseField v(problem.C.in_shape);
  DenseField cv = problem.C.apply(v);
  std::optional<DenseField> prev_u;

  AdmmResult out;
  while (out.iterations < cfg.max_iterations) {
    AdmmRecord rec;
    rec.k = out.iterations + 1;

    const DenseField cv_prev_minus_d = cv - problem.d;
    OracleResult f = problem.f_oracle(lincomb(1.0, z, lambda, cv_prev_minus_d), lambda,
                                      prev_u ? &*prev_u : nullptr);
    const DenseField h = lincomb(rho, f.image, rho - 1.0, cv_prev_minus_d);
    OracleResult g = problem.g_oracle(lincomb(1.0, z, lambda, h), lambda);
    const DenseField cv_minus_d = g.image - problem.d;
    axpy(lambda, h + cv_minus_d, z);

    rec.inner_iterations = f.inner_iterations + g.inner_iterations;
    rec.r_primal = f.image + cv_minus_d;
    rec.r_dual = problem.M.apply_adjoint(g.image - cv);
    rec.r_dual *= lambda;
    rec.r_primal_norm = norm(rec.r_primal);
    rec.r_dual_norm = norm(rec.r_dual);
    rec.u = std::move(f.nu);
    rec.Mu = std::move(f.image);
    rec.v = std::move(g.nu);
    rec.Cv = std::move(g.image);
    rec.z = z;
    cv = rec.Cv;
    ++out.iterations;

    if (observer) observer(rec);

    // check_stop only reads u and the residual norms
    IterationRecord view;
    view.u = rec.u;
    view.r_primal_norm = rec.r_primal_norm;
    view.r_dual_norm = rec.r_dual_norm;
    const StopDecision decision =
        check_stop(view, prev_u ? &*prev_u : nullptr, cfg.stopping, problem.residual_scale);
    prev_u = rec.u;
    out.last = std::move(rec);
    if (decision.converged) {
      out.reason = decision.reason;
      return out;
    }
  }
  out.reason = StopReason::max_iterations;
  return out;
}

}  // namespace pmm::apps
