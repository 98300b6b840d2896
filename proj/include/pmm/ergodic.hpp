#pragma once

// Weighted (ergodic) means of the PMM iterates with weights rho_j gamma_j,
// their epsilon-subgradient error terms, and checkers for the pointwise and
// ergodic iteration-complexity bounds.
//
// Everything is kept as running sums so memory does not grow with k. The
// error terms use the expansion
//
//   eps_u = (1/G) sum_j rho_j gamma_j <u_j - u_bar, -M^* y_j>
//         = -(1/G) sum_j rho_j gamma_j <M u_j, y_j> + <M u_bar, y_bar>
//
// (and the same with (C v_j, x_j) for eps_v), where G = sum_j rho_j gamma_j.

#include "pmm/core.hpp"
#include "pmm/field.hpp"

namespace pmm {

class ErgodicState {
 public:
  ErgodicState() = default;
  explicit ErgodicState(DenseField d) : d_(std::move(d)) {}

  void accumulate(const IterationRecord& rec);

  int count() const { return count_; }
  double Gamma() const { return gamma_sum_; }

  const DenseField& sum_u() const { return su_; }
  const DenseField& sum_v() const { return sv_; }
  const DenseField& sum_x() const { return sx_; }
  const DenseField& sum_y() const { return sy_; }
  const DenseField& sum_Mu() const { return smu_; }
  const DenseField& sum_Cv() const { return scv_; }
  const DenseField& sum_Mty() const { return smty_; }
  const DenseField& sum_Ctx() const { return sctx_; }
  double sum_uy() const { return s_uy_; }  // sum rho gamma <M u_j, y_j>
  double sum_vx() const { return s_vx_; }  // sum rho gamma <C v_j, x_j>
  const DenseField& d() const { return d_; }

 private:
  DenseField d_;
  int count_ = 0;
  double gamma_sum_ = 0.0;
  DenseField su_, sv_, sx_, sy_;
  DenseField smu_, scv_, smty_, sctx_;
  double s_uy_ = 0.0;
  double s_vx_ = 0.0;
};

ErgodicState accumulate(ErgodicState es, const IterationRecord& rec);

struct ErgodicReport {
  DenseField u_bar, v_bar, x_bar, y_bar;
  DenseField Mty_bar, Ctx_bar;  // M^* y_bar, C^* x_bar
  DenseField r_primal;          // M u_bar + C v_bar - d
  DenseField r_dual;            // x_bar - y_bar
  double r_primal_norm = 0.0;
  double r_dual_norm = 0.0;
  // Values in [-1e-10, 0) are clamped to 0; anything more negative is
  // reported unchanged so the certificate can flag it.
  double eps_u = 0.0;
  double eps_v = 0.0;
  double eps_u_raw = 0.0;
  double eps_v_raw = 0.0;
  double Gamma = 0.0;
  int k = 0;
};

inline constexpr double kEpsClampTolerance = 1e-10;

// Throws InvalidArgument when no iteration has been accumulated.
ErgodicReport ergodic_report(const ErgodicState& es);

/// Constants of the complexity bounds for one run.
///
/// d0_bound must be an upper bound on the distance from (z_0, w_0) to the
/// extended solution set; the distance to any known member of the set is
/// one. A looser bound only weakens the checks, so passing is a necessary
/// condition, not a proof of tightness.
struct BoundCertificate {
  double d0_bound = 0.0;
  double lambda = 1.0;
  double rho_bar = 0.0;
  // Absolute slack added to every bound to absorb rounding.
  double slack = 1e-12;

  double tau() const;    // min(lambda, 1/lambda)
  double theta() const;  // 1/(tau^2 (1-rho_bar)^2) + 1
  double pointwise_bound(int k) const;          // 2 d0 / ((1-rho_bar) tau sqrt(k))
  double ergodic_residual_bound(int k) const;   // 4 d0 / (k (1-rho_bar) tau)
  double ergodic_eps_bound(int k) const;        // 8 d0^2 theta / (k (1-rho_bar) tau)
  double gamma_sum_lower_bound(int k) const;    // (1-rho_bar) (tau/2) k
};

struct CertificateCheck {
  bool pass = false;
  double bound = 0.0;
  double primal_margin = 0.0;  // bound - observed
  double dual_margin = 0.0;
  double eps_bound = 0.0;      // ergodic only
  double eps_margin = 0.0;
};

/// Running minima of the pointwise residual norms.
struct PointwiseHistory {
  int k = 0;
  double min_primal = 0.0;
  double min_dual = 0.0;

  void add(double primal_norm, double dual_norm);
};

CertificateCheck pointwise_certificate(const PointwiseHistory& history,
                                       const BoundCertificate& cert);
CertificateCheck ergodic_certificate(const ErgodicReport& report, const BoundCertificate& cert);

}  // namespace pmm
