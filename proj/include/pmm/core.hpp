#pragma once

// Projective method of multipliers for
//
//   min f(u) + g(v)   subject to   M u + C v = d.
//
// The method works on the dual pair (z, w) in R^n x R^n. Each step solves the
// g-subproblem at carrier z + lambda w, then the f-subproblem at carrier
// z + lambda (C v - d), builds the separating affine function
//
//   phi_k(z, w) = <z - x_k, b_k - w> + <z - y_k, a_k + w>
//
// with x_k = z + lambda w + lambda (C v_k - d), y_k = x_k - lambda (w - M u_k),
// a_k = -M u_k, b_k = d - C v_k, and moves (z, w) by a relaxed projection onto
// {phi_k <= 0}. Only the instance with equal resolvent step sizes for both
// dual operators and unit extrapolation is implemented.

#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "pmm/field.hpp"
#include "pmm/linops.hpp"
#include "pmm/prox.hpp"

namespace pmm {

struct ProblemSpec {
  SubproblemOracle g_oracle;  // (g, C, d)
  SubproblemOracle f_oracle;  // (f, M, 0)
  LinearMap M;
  LinearMap C;
  DenseField d;

  // Optional objective pieces, used only for reporting.
  std::function<double(const DenseField&)> f_value;
  std::function<double(const DenseField&)> g_value;

  // Divisor of the dual-scaled stopping rule (pixel count m*n for images).
  double residual_scale = 1.0;
  std::string name;

  Shape dual_shape() const { return d.shape(); }
  bool has_objective() const { return f_value && g_value; }
  double objective(const DenseField& u, const DenseField& v) const;
  void validate() const;
};

using RhoSchedule = std::function<double(int k)>;

RhoSchedule constant_rho(double rho);
// Cycles through the list; the last value repeats after the list is exhausted.
RhoSchedule list_rho(std::vector<double> values);

struct KktTolerance {
  double primal = 1e-6;
  double dual = 1e-6;
};

// Any combination may be enabled; the first one satisfied stops the run.
struct StoppingRule {
  std::optional<KktTolerance> kkt;
  std::optional<double> relative_change;  // |u_k - u_{k-1}| / |u_k|
  std::optional<double> dual_scaled;      // |r_dual| / residual_scale
};

struct SolverConfig {
  double lambda = 1.0;
  double rho_bar = 0.0;
  RhoSchedule rho = constant_rho(1.0);
  int max_iterations = 500;
  StoppingRule stopping;
  double gamma_denominator_floor = 1e-30;
  // The exact-KKT test fires when |r_primal| + |M u - w| <= factor (1 + |d|).
  double stop_floor_factor = 1e-14;

  void validate() const;
};

struct SolverState {
  DenseField z;
  DenseField w;
  int k = 0;

  static SolverState zeros(Shape dual);
};

struct IterationRecord {
  int k = 0;
  DenseField u, v;
  DenseField Mu, Cv;
  DenseField x, y;
  DenseField a, b;
  DenseField Mty, Ctx;       // M^* y_k and C^* x_k
  DenseField r_primal;       // M u + C v - d
  DenseField r_dual;         // x - y
  double r_primal_norm = 0.0;
  double r_dual_norm = 0.0;
  double gamma = 0.0;
  double rho = 0.0;
  double phi_value = 0.0;    // phi_k(z_{k-1}, w_{k-1})
  double grad_phi_sq = 0.0;  // |a + b|^2 + |x - y|^2
  int inner_iterations = 0;  // f- plus g-oracle inner steps
};

struct Advanced {
  SolverState state;
  IterationRecord record;
};

// Both residuals vanished: (u_k, v_k, x_k) satisfies the KKT conditions.
struct Stopped {
  IterationRecord record;
};

using StepOutcome = std::variant<Advanced, Stopped>;

struct GammaTerms {
  double gamma = 0.0;
  double numerator = 0.0;
  double denominator = 0.0;  // |grad phi_k|^2
};

/// Step size of the relaxed projection, from the closed form in terms of the
/// operator images:
///
///   gamma = [lambda |Cv-d+w|^2 + lambda <d-Cv-Mu, w-Mu>]
///         / [|Mu+Cv-d|^2 + lambda^2 |Mu-w|^2].
///
/// Throws NumericalAnomaly when the denominator is at or below floor.
GammaTerms compute_gamma(const DenseField& Mu, const DenseField& Cv_minus_d,
                         const DenseField& w_prev, double lambda, double floor);

// phi_k evaluated at an arbitrary (z, w), from the record's x, y, a, b.
double phi(const IterationRecord& rec, const DenseField& z, const DenseField& w);

StepOutcome pmm_step(const SolverState& state, const ProblemSpec& problem,
                     const SolverConfig& config, const DenseField* warm_u = nullptr);

enum class StopReason { none, kkt_exact, kkt, relative_change, dual_scaled, max_iterations };

std::string to_string(StopReason r);

struct StopDecision {
  bool converged = false;
  StopReason reason = StopReason::none;
};

// prev_u is u_{k-1}, or null on the first iteration.
StopDecision check_stop(const IterationRecord& rec, const DenseField* prev_u,
                        const StoppingRule& rule, double residual_scale);

/// |(z_k,w_k) - ref|^2 - |(z_{k-1},w_{k-1}) - ref|^2
///   + rho_k (2 - rho_k) gamma_k^2 |(r_primal, lambda (w_{k-1} - M u_k))|^2
///
/// Nonpositive (up to rounding) whenever ref lies in the extended solution set.
double fejer_gap(const SolverState& prev, const SolverState& next, const IterationRecord& rec,
                 const DenseField& z_ref, const DenseField& w_ref);

struct RunResult {
  SolverState state;
  std::optional<IterationRecord> last;
  StopReason reason = StopReason::none;
  int iterations = 0;
};

// Called once per emitted record with the state before and after the update
// (identical when the exact-KKT stop fired).
using PmmObserver =
    std::function<void(const IterationRecord&, const SolverState& prev, const SolverState& next)>;

RunResult run_pmm(const ProblemSpec& problem, const SolverConfig& config,
                  const PmmObserver& observer = {});
RunResult run_pmm(const ProblemSpec& problem, const SolverConfig& config, SolverState initial,
                  const PmmObserver& observer = {});

}  // namespace pmm
