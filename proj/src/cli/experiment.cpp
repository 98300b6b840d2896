#include "pmm/cli/experiment.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <future>
#include <mutex>
#include <ostream>
#include <sstream>

#include "pmm/apps/admm.hpp"
#include "pmm/apps/cs.hpp"
#include "pmm/apps/synth.hpp"
#include "pmm/apps/tv.hpp"
#include "pmm/cli/csv.hpp"
#include "pmm/cli/pgm.hpp"
#include "pmm/ergodic.hpp"
#include "pmm/fft.hpp"

namespace pmm::cli {
namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

DenseField phantom(const ExperimentConfig& cfg) {
  return cfg.phantom == PhantomKind::shepp_logan ? apps::shepp_logan(cfg.rows, cfg.cols)
                                                 : apps::piecewise_constant_image(cfg.rows, cfg.cols);
}

std::string yes_no(bool b) { return b ? "true" : "false"; }

std::string certificate_text(const std::optional<bool>& pass) {
  if (!pass) return "not evaluated";
  return *pass ? "pass" : "fail";
}

class Progress {
 public:
  explicit Progress(std::ostream* log) : log_(log) {}
  void line(const std::string& s) {
    if (!log_) return;
    std::lock_guard lock(mu_);
    *log_ << s << '\n';
  }

 private:
  std::ostream* log_;
  std::mutex mu_;
};

SolverConfig pmm_config(const ExperimentConfig& cfg) {
  SolverConfig sc;
  sc.lambda = cfg.lambda;
  sc.rho_bar = cfg.effective_rho_bar();
  sc.rho = cfg.rho.schedule();
  sc.max_iterations = cfg.max_iterations;
  sc.stopping = cfg.stopping;
  return sc;
}

// Norm of (z*, w*) from a long tight run; an upper bound on the distance from
// the zero start to the extended solution set up to the reference's accuracy.
double reference_d0(const Instance& inst, const ExperimentConfig& cfg) {
  SolverConfig sc = pmm_config(cfg);
  sc.rho = constant_rho(1.0);
  sc.rho_bar = 0.0;
  sc.stopping = StoppingRule{};
  sc.stopping.kkt = KktTolerance{1e-10, 1e-10};
  sc.max_iterations = std::max(20000, 20 * cfg.max_iterations);
  const RunResult ref = run_pmm(inst.problem, sc);
  return std::sqrt(norm_sq(ref.state.z) + norm_sq(ref.state.w));
}

ArmSummary finish_summary(ArmSummary s, const Instance& inst, const DenseField& u) {
  if (inst.objective) s.objective = inst.objective(u);
  if (inst.truth) s.relative_error = norm(u - *inst.truth) / norm(*inst.truth);
  s.u = u;
  return s;
}

ArmSummary run_pmm_arm(const Instance& inst, const ExperimentConfig& cfg,
                       const std::optional<BoundCertificate>& cert, Progress& progress) {
  ArmSummary s;
  s.solver = "pmm";
  CsvWriter csv(cfg.out / "metrics_pmm.csv", metrics_header());
  ErgodicState erg(inst.problem.d);
  PointwiseHistory history;
  bool pointwise_ok = true;
  bool ergodic_ok = true;
  const auto t0 = Clock::now();

  auto observer = [&](const IterationRecord& rec, const SolverState&, const SolverState&) {
    erg.accumulate(rec);
    history.add(rec.r_primal_norm, rec.r_dual_norm);
    MetricsRow row;
    row.k = rec.k;
    row.gamma = rec.gamma;
    row.rho = rec.rho;
    row.r_primal = rec.r_primal_norm;
    row.r_dual = rec.r_dual_norm;
    if (erg.Gamma() > 0.0) {
      const ErgodicReport rep = ergodic_report(erg);
      row.r_primal_erg = rep.r_primal_norm;
      row.r_dual_erg = rep.r_dual_norm;
      row.eps_sum = rep.eps_u + rep.eps_v;
      row.Gamma = rep.Gamma;
      if (cert) {
        row.pointwise_bound = cert->pointwise_bound(rec.k);
        row.ergodic_bound = cert->ergodic_residual_bound(rec.k);
        pointwise_ok = pointwise_ok && pointwise_certificate(history, *cert).pass;
        ergodic_ok = ergodic_ok && ergodic_certificate(rep, *cert).pass;
      }
    }
    if (inst.objective) row.objective = inst.objective(rec.u);
    row.elapsed_s = seconds_since(t0);
    csv.write_row(row.cells());
  };

  try {
    const RunResult run = run_pmm(inst.problem, pmm_config(cfg), observer);
    s.reason = run.reason;
    s.iterations = run.iterations;
    if (run.last) {
      s.r_primal = run.last->r_primal_norm;
      s.r_dual = run.last->r_dual_norm;
      s = finish_summary(std::move(s), inst, run.last->u);
    }
    if (cert) {
      s.pointwise_pass = pointwise_ok;
      s.ergodic_pass = ergodic_ok;
    }
  } catch (const NumericalAnomaly& e) {
    s.anomaly = true;
    s.anomaly_message = e.what();
    s.iterations = history.k;
  }
  csv.flush();
  progress.line("pmm: " + (s.anomaly ? "anomaly: " + s.anomaly_message
                                     : to_string(s.reason) + " after " +
                                           std::to_string(s.iterations) + " iterations"));
  return s;
}

ArmSummary run_admm_arm(const Instance& inst, const ExperimentConfig& cfg, Progress& progress) {
  ArmSummary s;
  s.solver = "admm";
  CsvWriter csv(cfg.out / "metrics_admm.csv", metrics_header());
  apps::AdmmConfig ac;
  ac.lambda = cfg.lambda;
  ac.rho = cfg.effective_admm_rho();
  ac.max_iterations = cfg.max_iterations;
  ac.stopping = cfg.stopping;
  const auto t0 = Clock::now();

  auto observer = [&](const apps::AdmmRecord& rec) {
    MetricsRow row;
    row.k = rec.k;
    row.rho = ac.rho;
    row.r_primal = rec.r_primal_norm;
    row.r_dual = rec.r_dual_norm;
    if (inst.objective) row.objective = inst.objective(rec.u);
    row.elapsed_s = seconds_since(t0);
    csv.write_row(row.cells());
  };

  try {
    const apps::AdmmResult run = apps::admm_run(inst.problem, ac, observer);
    s.reason = run.reason;
    s.iterations = run.iterations;
    if (run.last) {
      s.r_primal = run.last->r_primal_norm;
      s.r_dual = run.last->r_dual_norm;
      s = finish_summary(std::move(s), inst, run.last->u);
    }
  } catch (const NumericalAnomaly& e) {
    s.anomaly = true;
    s.anomaly_message = e.what();
  }
  csv.flush();
  progress.line("admm: " + (s.anomaly ? "anomaly: " + s.anomaly_message
                                      : to_string(s.reason) + " after " +
                                            std::to_string(s.iterations) + " iterations"));
  return s;
}

void write_summary(const ExperimentConfig& cfg, const ExperimentResult& result,
                   const Instance& inst) {
  std::ostringstream o;
  const Shape img = inst.input.shape();
  o << "schema_version: " << kMetricsSchemaVersion << '\n';
  o << "problem: " << to_string(cfg.problem) << '\n';
  o << "size: " << img.rows << "x" << img.cols << '\n';
  o << "seed: " << cfg.seed << '\n';
  o << "intensity_scale: " << format_number(inst.intensity_scale) << '\n';
  o << "zeta: " << format_number(cfg.effective_zeta()) << '\n';
  o << "lambda: " << format_number(cfg.lambda) << '\n';
  o << "rho: " << cfg.rho.to_string() << '\n';
  o << "rho_bar: " << format_number(cfg.effective_rho_bar()) << '\n';
  o << "d0_bound: " << (result.d0_bound ? format_number(*result.d0_bound) : "none") << '\n';
  for (const ArmSummary& a : result.arms) {
    o << '\n' << '[' << a.solver << "]\n";
    if (a.anomaly) {
      o << "status: anomaly\n";
      o << "message: " << a.anomaly_message << '\n';
      o << "iterations: " << a.iterations << '\n';
      continue;
    }
    o << "status: ok\n";
    o << "stop_reason: " << to_string(a.reason) << '\n';
    o << "converged: " << yes_no(a.converged()) << '\n';
    o << "iterations: " << a.iterations << '\n';
    o << "r_primal: " << format_number(a.r_primal) << '\n';
    o << "r_dual: " << format_number(a.r_dual) << '\n';
    o << "objective: " << format_number(a.objective) << '\n';
    if (a.relative_error) o << "relative_error: " << format_number(*a.relative_error) << '\n';
    if (a.solver == "pmm") {
      o << "certificate_pointwise: " << certificate_text(a.pointwise_pass) << '\n';
      o << "certificate_ergodic: " << certificate_text(a.ergodic_pass) << '\n';
    }
    if (a.u && a.u->size() <= 16) {
      o << "u:";
      for (std::size_t k = 0; k < a.u->size(); ++k) {
        o << (k == 0 ? " " : ",") << format_number((*a.u)[k]);
      }
      o << '\n';
    }
  }
  const auto path = cfg.out / "summary.txt";
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << o.str();
  if (!out) throw IoError("write failed for " + path.string());
}

}  // namespace

const std::vector<std::string>& metrics_header() {
  static const std::vector<std::string> header{
      "k",           "gamma_k",       "rho_k",           "r_primal", "r_dual",
      "r_primal_erg", "r_dual_erg",   "eps_sum",         "Gamma_k",  "objective",
      "pointwise_bound", "ergodic_bound", "elapsed_s"};
  return header;
}

std::vector<std::string> MetricsRow::cells() const {
  return {std::to_string(k),          format_number(gamma),        format_number(rho),
          format_number(r_primal),    format_number(r_dual),       format_number(r_primal_erg),
          format_number(r_dual_erg),  format_number(eps_sum),      format_number(Gamma),
          format_number(objective),   format_number(pointwise_bound),
          format_number(ergodic_bound), format_number(elapsed_s)};
}

bool ArmSummary::converged() const {
  return !anomaly && reason != StopReason::none && reason != StopReason::max_iterations;
}

Instance build_instance(const ExperimentConfig& cfg) {
  Instance inst;
  const double zeta = cfg.effective_zeta();
  const Boundary bc = cfg.effective_bc();
  const double scale = cfg.effective_intensity_scale();
  inst.intensity_scale = scale;
  switch (cfg.problem) {
    case ProblemKind::tv: {
      DenseField clean = cfg.image ? read_pgm(*cfg.image) : phantom(cfg);
      DenseField noisy = apps::add_gaussian_noise(clean, cfg.noise_variance, cfg.seed);
      clean *= scale;
      noisy *= scale;
      apps::TvProblem tv{std::move(noisy), zeta, bc};
      inst.problem = apps::build_tv_problem(tv, cfg.cg);
      inst.objective = [tv](const DenseField& u) { return apps::tv_objective(tv, u); };
      inst.input = tv.b;
      inst.truth = std::move(clean);
      break;
    }
    case ProblemKind::cs: {
      DenseField truth = phantom(cfg);
      truth *= scale;
      DenseField mask = apps::random_mask(cfg.rows, cfg.cols, cfg.fraction, cfg.seed);
      apps::CsProblem cs{apps::cs_data(truth, mask, cfg.noise_sigma, cfg.seed + 1),
                         std::move(mask), zeta, bc};
      inst.problem = apps::build_cs_problem(cs, cfg.cg);
      inst.objective = [cs](const DenseField& u) { return apps::cs_objective(cs, u); };
      inst.input = idft2(cs.data).real();
      inst.truth = std::move(truth);
      break;
    }
    case ProblemKind::custom_tiny: {
      DenseField b(cfg.rows, cfg.cols, cfg.values);
      b *= scale;
      apps::TvProblem tv{std::move(b), zeta, bc};
      inst.problem = apps::build_tv_problem(tv, cfg.cg);
      inst.objective = [tv](const DenseField& u) { return apps::tv_objective(tv, u); };
      inst.input = tv.b;
      break;
    }
  }
  return inst;
}

ExperimentResult run_experiment(const ExperimentConfig& cfg, std::ostream* log) {
  cfg.validate();
  Instance inst = build_instance(cfg);

  std::error_code ec;
  std::filesystem::create_directories(cfg.out, ec);
  if (ec) throw IoError("cannot create " + cfg.out.string() + ": " + ec.message());

  const double display = 1.0 / inst.intensity_scale;
  write_pgm(cfg.out / "input.pgm", display * inst.input);
  if (inst.truth) write_pgm(cfg.out / "truth.pgm", display * *inst.truth);

  ExperimentResult result;
  Progress progress(log);
  const bool want_pmm = cfg.solver != SolverChoice::admm;
  const bool want_admm = cfg.solver != SolverChoice::pmm;

  std::optional<BoundCertificate> cert;
  if (want_pmm && (cfg.d0_bound || cfg.certify)) {
    try {
      result.d0_bound = cfg.d0_bound ? *cfg.d0_bound : reference_d0(inst, cfg);
      cert = BoundCertificate{*result.d0_bound, cfg.lambda, cfg.effective_rho_bar()};
    } catch (const NumericalAnomaly& e) {
      progress.line(std::string("certificate reference run failed: ") + e.what());
    }
  }

  std::future<ArmSummary> admm;
  if (want_admm) {
    admm = std::async(std::launch::async, [&] { return run_admm_arm(inst, cfg, progress); });
  }
  if (want_pmm) result.arms.push_back(run_pmm_arm(inst, cfg, cert, progress));
  if (want_admm) result.arms.push_back(admm.get());

  for (const ArmSummary& a : result.arms) {
    if (a.anomaly) result.exit_code = 2;
    if (a.u) write_pgm(cfg.out / ("u_" + a.solver + ".pgm"), display * *a.u);
  }
  write_summary(cfg, result, inst);
  return result;
}

}  // namespace pmm::cli
