#include "pmm/core.hpp"

#include <cmath>
#include <utility>
#include <vector>

namespace pmm {

double ProblemSpec::objective(const DenseField& u, const DenseField& v) const {
  if (!has_objective()) return std::nan("");
  return f_value(u) + g_value(v);
}

void ProblemSpec::validate() const {
  if (!g_oracle.solve || !f_oracle.solve) throw InvalidArgument(name + ": missing oracle");
  if (M.out_shape != d.shape() || C.out_shape != d.shape()) {
    throw InvalidArgument(name + ": M maps to " + to_string(M.out_shape) + ", C maps to " +
                          to_string(C.out_shape) + ", d has shape " + to_string(d.shape()));
  }
  if (!(residual_scale > 0.0)) throw InvalidArgument(name + ": residual_scale must be positive");
}

RhoSchedule constant_rho(double rho) {
  return [rho](int) { return rho; };
}

RhoSchedule list_rho(std::vector<double> values) {
  if (values.empty()) throw InvalidArgument("list_rho: empty schedule");
  return [values = std::move(values)](int k) {
    const auto idx = static_cast<std::size_t>(k > 0 ? k - 1 : 0);
    return values[std::min(idx, values.size() - 1)];
  };
}

void SolverConfig::validate() const {
  if (!(lambda > 0.0)) throw InvalidArgument("lambda must be positive");
  if (!(rho_bar >= 0.0 && rho_bar < 1.0)) throw InvalidArgument("rho_bar must lie in [0, 1)");
  if (!rho) throw InvalidArgument("missing rho schedule");
  if (max_iterations < 1) throw InvalidArgument("max_iterations must be >= 1");
  if (stopping.relative_change && !(*stopping.relative_change > 0.0)) {
    throw InvalidArgument("relative_change tolerance must be positive");
  }
  if (stopping.dual_scaled && !(*stopping.dual_scaled > 0.0)) {
    throw InvalidArgument("dual_scaled tolerance must be positive");
  }
}

SolverState SolverState::zeros(Shape dual) { return {DenseField(dual), DenseField(dual), 0}; }

GammaTerms compute_gamma(const DenseField& Mu, const DenseField& Cv_minus_d,
                         const DenseField& w_prev, double lambda, double floor) {
  const DenseField cvdw = Cv_minus_d + w_prev;        // C v - d + w
  const DenseField rp = Mu + Cv_minus_d;              // M u + C v - d
  const DenseField wmu = w_prev - Mu;                 // w - M u
  GammaTerms t;
  t.numerator = lambda * norm_sq(cvdw) - lambda * dot(rp, wmu);
  t.denominator = norm_sq(rp) + lambda * lambda * norm_sq(wmu);
  if (!(t.denominator > floor)) {
    throw NumericalAnomaly("compute_gamma: denominator " + std::to_string(t.denominator) +
                           " at or below floor without the KKT stop firing");
  }
  t.gamma = t.numerator / t.denominator;
  return t;
}

double phi(const IterationRecord& rec, const DenseField& z, const DenseField& w) {
  return dot(z - rec.x, rec.b - w) + dot(z - rec.y, rec.a + w);
}

StepOutcome pmm_step(const SolverState& state, const ProblemSpec& problem,
                     const SolverConfig& config, const DenseField* warm_u) {
  const Shape n = problem.dual_shape();
  if (state.z.shape() != n || state.w.shape() != n) {
    throw InvalidArgument("pmm_step: state shape does not match dual dimension " + to_string(n));
  }
  const double lambda = config.lambda;

  IterationRecord rec;
  rec.k = state.k + 1;
  rec.rho = config.rho(rec.k);
  if (rec.rho < 1.0 - config.rho_bar - 1e-15 || rec.rho > 1.0 + config.rho_bar + 1e-15) {
    throw InvalidArgument("rho_" + std::to_string(rec.k) + " = " + std::to_string(rec.rho) +
                          " outside [1 - rho_bar, 1 + rho_bar]");
  }

  // step 1: g-subproblem, then f-subproblem
  const DenseField g_carrier = lincomb(1.0, state.z, lambda, state.w);
  OracleResult g = problem.g_oracle(g_carrier, lambda);
  const DenseField cv_minus_d = g.image - problem.d;
  const DenseField f_carrier = lincomb(1.0, state.z, lambda, cv_minus_d);
  OracleResult f = problem.f_oracle(f_carrier, lambda, warm_u);

  rec.inner_iterations = g.inner_iterations + f.inner_iterations;
  rec.v = std::move(g.nu);
  rec.Cv = std::move(g.image);
  rec.u = std::move(f.nu);
  rec.Mu = std::move(f.image);

  rec.x = lincomb(1.0, g_carrier, lambda, cv_minus_d);
  const DenseField w_minus_mu = state.w - rec.Mu;
  rec.y = lincomb(1.0, rec.x, -lambda, w_minus_mu);
  rec.a = -1.0 * rec.Mu;
  rec.b = -1.0 * cv_minus_d;
  rec.r_primal = rec.Mu + cv_minus_d;
  rec.r_dual = rec.x - rec.y;
  rec.r_primal_norm = norm(rec.r_primal);
  rec.r_dual_norm = norm(rec.r_dual);
  rec.Mty = problem.M.apply_adjoint(rec.y);
  rec.Ctx = problem.C.apply_adjoint(rec.x);

  // step 2
  const double floor = config.stop_floor_factor * (1.0 + norm(problem.d));
  if (rec.r_primal_norm + norm(w_minus_mu) <= floor) {
    rec.rho = 0.0;
    return Stopped{std::move(rec)};
  }
  const GammaTerms gt =
      compute_gamma(rec.Mu, cv_minus_d, state.w, lambda, config.gamma_denominator_floor);
  rec.gamma = gt.gamma;
  rec.grad_phi_sq = gt.denominator;
  rec.phi_value = gt.numerator;

  // step 3
  const double step = rec.rho * rec.gamma;
  SolverState next;
  next.k = rec.k;
  next.z = lincomb(1.0, state.z, step, rec.r_primal);
  next.w = lincomb(1.0, state.w, -step * lambda, w_minus_mu);
  return Advanced{std::move(next), std::move(rec)};
}

std::string to_string(StopReason r) {
  switch (r) {
    case StopReason::none: return "none";
    case StopReason::kkt_exact: return "kkt_exact";
    case StopReason::kkt: return "kkt";
    case StopReason::relative_change: return "relative_change";
    case StopReason::dual_scaled: return "dual_scaled";
    case StopReason::max_iterations: return "max_iterations";
  }
  return "unknown";
}

StopDecision check_stop(const IterationRecord& rec, const DenseField* prev_u,
                        const StoppingRule& rule, double residual_scale) {
  if (rule.kkt && rec.r_primal_norm <= rule.kkt->primal && rec.r_dual_norm <= rule.kkt->dual) {
    return {true, StopReason::kkt};
  }
  if (rule.relative_change && prev_u != nullptr) {
    const double change = norm(rec.u - *prev_u);
    const double size = norm(rec.u);
    const bool met = size > 0.0 ? change / size <= *rule.relative_change : change == 0.0;
    if (met) return {true, StopReason::relative_change};
  }
  if (rule.dual_scaled && rec.r_dual_norm / residual_scale <= *rule.dual_scaled) {
    return {true, StopReason::dual_scaled};
  }
  return {};
}

double fejer_gap(const SolverState& prev, const SolverState& next, const IterationRecord& rec,
                 const DenseField& z_ref, const DenseField& w_ref) {
  const double after = norm_sq(next.z - z_ref) + norm_sq(next.w - w_ref);
  const double before = norm_sq(prev.z - z_ref) + norm_sq(prev.w - w_ref);
  const double decrease =
      rec.rho * (2.0 - rec.rho) * rec.gamma * rec.gamma * rec.grad_phi_sq;
  return after - before + decrease;
}

RunResult run_pmm(const ProblemSpec& problem, const SolverConfig& config,
                  const PmmObserver& observer) {
  return run_pmm(problem, config, SolverState::zeros(problem.dual_shape()), observer);
}

RunResult run_pmm(const ProblemSpec& problem, const SolverConfig& config, SolverState initial,
                  const PmmObserver& observer) {
  problem.validate();
  config.validate();

  RunResult out;
  out.state = std::move(initial);
  std::optional<DenseField> prev_u;

  while (out.iterations < config.max_iterations) {
    StepOutcome step = pmm_step(out.state, problem, config, prev_u ? &*prev_u : nullptr);
    ++out.iterations;

    if (auto* stopped = std::get_if<Stopped>(&step)) {
      if (observer) observer(stopped->record, out.state, out.state);
      out.last = std::move(stopped->record);
      out.reason = StopReason::kkt_exact;
      return out;
    }

    auto& adv = std::get<Advanced>(step);
    if (observer) observer(adv.record, out.state, adv.state);
    const StopDecision decision = check_stop(adv.record, prev_u ? &*prev_u : nullptr,
                                             config.stopping, problem.residual_scale);
    out.state = std::move(adv.state);
    prev_u = adv.record.u;
    out.last = std::move(adv.record);
    if (decision.converged) {
      out.reason = decision.reason;
      return out;
    }
  }
  out.reason = StopReason::max_iterations;
  return out;
}

}  // namespace pmm
