#pragma once

#include <functional>
#include <optional>

#include "pmm/core.hpp"

namespace pmm::apps {

// Relaxed ADMM baseline (scaled form, over/under-relaxation on the M u term),
// driven by the same subproblem oracles as the PMM so both methods share the
// shrink step and the linear solves.
struct AdmmConfig {
  double lambda = 1.0;  // penalty
  double rho = 1.0;     // relaxation, in (0, 2)
  int max_iterations = 500;
  StoppingRule stopping;

  void validate() const;
};

struct AdmmRecord {
  int k = 0;
  DenseField u, v;
  DenseField Mu, Cv;
  DenseField z;                  // multiplier after the update
  DenseField r_primal;           // M u + C v - d
  DenseField r_dual;             // lambda M^* C (v_k - v_{k-1})
  double r_primal_norm = 0.0;
  double r_dual_norm = 0.0;
  int inner_iterations = 0;
};

struct AdmmResult {
  std::optional<AdmmRecord> last;
  StopReason reason = StopReason::none;
  int iterations = 0;
};

using AdmmObserver = std::function<void(const AdmmRecord&)>;

// Iteration, with carriers in the oracle convention:
//   u_k = f-oracle at z + lambda (C v_{k-1} - d)
//   h   = rho M u_k - (1 - rho)(C v_{k-1} - d)
//   v_k = g-oracle at z + lambda h
//   z   = z + lambda (h + C v_k - d)
// starting from z = 0, v = 0.
AdmmResult admm_run(const ProblemSpec& problem, const AdmmConfig& cfg,
                    const AdmmObserver& observer = {});

}  // namespace pmm::apps
