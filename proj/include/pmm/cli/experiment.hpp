#pragma once

#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "pmm/cli/config.hpp"
#include "pmm/core.hpp"

namespace pmm::cli {

inline constexpr int kMetricsSchemaVersion = 1;

// Column names of metrics_<solver>.csv; identical for both solvers.
const std::vector<std::string>& metrics_header();

// Columns a solver does not produce (ADMM has no gamma or ergodic stream,
// bounds need a d0 bound) are written empty.
struct MetricsRow {
  int k = 0;
  std::optional<double> gamma;
  std::optional<double> rho;
  double r_primal = 0.0;
  double r_dual = 0.0;
  std::optional<double> r_primal_erg;
  std::optional<double> r_dual_erg;
  std::optional<double> eps_sum;
  std::optional<double> Gamma;
  std::optional<double> objective;
  std::optional<double> pointwise_bound;
  std::optional<double> ergodic_bound;
  double elapsed_s = 0.0;

  std::vector<std::string> cells() const;
};

struct Instance {
  ProblemSpec problem;
  std::function<double(const DenseField&)> objective;
  DenseField input;                 // noisy image, or zero-filled reconstruction for cs
  std::optional<DenseField> truth;  // ground truth when synthetic
  double intensity_scale = 1.0;     // solver units per [0, 1] display unit
};

Instance build_instance(const ExperimentConfig& cfg);

struct ArmSummary {
  std::string solver;
  bool anomaly = false;
  std::string anomaly_message;
  StopReason reason = StopReason::none;
  int iterations = 0;
  double r_primal = 0.0;
  double r_dual = 0.0;
  std::optional<double> objective;
  std::optional<double> relative_error;
  std::optional<bool> pointwise_pass;
  std::optional<bool> ergodic_pass;
  std::optional<DenseField> u;

  bool converged() const;
};

struct ExperimentResult {
  std::vector<ArmSummary> arms;
  std::optional<double> d0_bound;
  int exit_code = 0;  // 0 ok, 2 solver anomaly
};

/// Writes into cfg.out: metrics_<solver>.csv, u_<solver>.pgm, input.pgm,
/// truth.pgm (synthetic instances) and summary.txt. Images are written
/// divided by the intensity scale. Configuration problems
/// throw ConfigError, file problems IoError; solver anomalies are recorded in
/// the summary and reflected in exit_code. Progress goes to log when given.
ExperimentResult run_experiment(const ExperimentConfig& cfg, std::ostream* log = nullptr);

}  // namespace pmm::cli
