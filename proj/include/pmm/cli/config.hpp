#pragma once

#include <cstdint>
#include <filesystem>
#include <istream>
#include <optional>
#include <string>
#include <vector>

#include "pmm/cg.hpp"
#include "pmm/core.hpp"
#include "pmm/linops.hpp"

namespace pmm::cli {

struct ConfigError : InvalidArgument {
  using InvalidArgument::InvalidArgument;
};

enum class ProblemKind { tv, cs, custom_tiny };
enum class SolverChoice { pmm, admm, both };
enum class PhantomKind { piecewise, shepp_logan };

// "const:1.5" or "list:1,1.5,1.2"; the last list value repeats.
struct RhoDescriptor {
  std::vector<double> values{1.0};
  bool is_list = false;

  static RhoDescriptor parse(const std::string& text);
  RhoSchedule schedule() const;
  double max_deviation() const;  // max |rho - 1|
  std::string to_string() const;
};

/// Flat key = value file, '#' starts a comment. Keys:
///
///   problem      tv | cs | custom-tiny
///   image        PGM path (tv), replaces the phantom
///   phantom      piecewise | shepp-logan
///   rows, cols   phantom size (size sets both)
///   values       comma list, row-major image for custom-tiny
///   zeta         default 20 (tv), 500 (cs), 0.2 (custom-tiny)
///   noise_variance   Gaussian noise added to the tv image (on [0, 1])
///   intensity_scale  images are multiplied by this before solving;
///                    default 255 for tv, 1 otherwise
///   fraction     sampled share of Fourier coefficients (cs)
///   noise_sigma  complex noise on the cs data
///   bc           reflexive | periodic
///   seed
///   solver       pmm | admm | both
///   lambda, rho, rho_bar, admm_rho
///   stop         comma list of kkt, relative_change, dual_scaled
///   kkt_primal, kkt_dual, rel_tol, dual_scaled_tol
///   max_iter
///   cg_mode      tolerance | fixed
///   cg_tol, cg_max_iter, cg_fixed
///   certify      true | false
///   d0_bound
///   out          output directory
struct ExperimentConfig {
  ProblemKind problem = ProblemKind::tv;
  std::optional<std::filesystem::path> image;
  PhantomKind phantom = PhantomKind::piecewise;
  bool phantom_set = false;
  std::size_t rows = 64;
  std::size_t cols = 64;
  std::vector<double> values;
  std::optional<double> zeta;
  double noise_variance = 0.0;
  std::optional<double> intensity_scale;
  double fraction = 0.5;
  double noise_sigma = 0.0;
  std::optional<Boundary> bc;
  std::uint64_t seed = 0;

  SolverChoice solver = SolverChoice::pmm;
  double lambda = 1.0;
  RhoDescriptor rho;
  std::optional<double> rho_bar;
  std::optional<double> admm_rho;
  StoppingRule stopping;
  int max_iterations = 500;
  CgConfig cg = CgConfig::to_tolerance(1e-5, 1000);

  bool certify = false;
  std::optional<double> d0_bound;
  std::filesystem::path out = "out";

  double effective_zeta() const;
  Boundary effective_bc() const;
  double effective_intensity_scale() const;
  // Given rho_bar, else the largest deviation of the schedule from 1.
  double effective_rho_bar() const;
  // Given admm_rho, else the first value of the rho schedule.
  double effective_admm_rho() const;

  // Throws ConfigError.
  void validate() const;
};

ExperimentConfig parse_config(std::istream& in, const std::string& source = "<config>");
ExperimentConfig load_config(const std::filesystem::path& path);

std::string to_string(ProblemKind k);
std::string to_string(SolverChoice s);

}  // namespace pmm::cli
