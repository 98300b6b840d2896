#include "pmm/ergodic.hpp"

#include <algorithm>
#include <cmath>

namespace pmm {
namespace {

void add_weighted(DenseField& sum, double weight, const DenseField& x) {
  if (sum.empty() && !x.empty()) sum = DenseField(x.shape());
  axpy(weight, x, sum);
}

double clamp_eps(double raw) {
  return (raw < 0.0 && raw >= -kEpsClampTolerance) ? 0.0 : raw;
}

}  // namespace

void ErgodicState::accumulate(const IterationRecord& rec) {
  const double weight = rec.rho * rec.gamma;
  if (d_.empty()) d_ = rec.b + rec.Cv;
  ++count_;
  gamma_sum_ += weight;
  add_weighted(su_, weight, rec.u);
  add_weighted(sv_, weight, rec.v);
  add_weighted(sx_, weight, rec.x);
  add_weighted(sy_, weight, rec.y);
  add_weighted(smu_, weight, rec.Mu);
  add_weighted(scv_, weight, rec.Cv);
  add_weighted(smty_, weight, rec.Mty);
  add_weighted(sctx_, weight, rec.Ctx);
  s_uy_ += weight * dot(rec.Mu, rec.y);
  s_vx_ += weight * dot(rec.Cv, rec.x);
}

ErgodicState accumulate(ErgodicState es, const IterationRecord& rec) {
  es.accumulate(rec);
  return es;
}

ErgodicReport ergodic_report(const ErgodicState& es) {
  if (es.count() == 0 || !(es.Gamma() > 0.0)) {
    throw InvalidArgument("ergodic_report: no weighted iterations accumulated");
  }
  const double inv = 1.0 / es.Gamma();
  ErgodicReport r;
  r.k = es.count();
  r.Gamma = es.Gamma();
  r.u_bar = inv * es.sum_u();
  r.v_bar = inv * es.sum_v();
  r.x_bar = inv * es.sum_x();
  r.y_bar = inv * es.sum_y();
  r.Mty_bar = inv * es.sum_Mty();
  r.Ctx_bar = inv * es.sum_Ctx();
  const DenseField mu_bar = inv * es.sum_Mu();
  const DenseField cv_bar = inv * es.sum_Cv();

  r.r_primal = mu_bar + cv_bar;
  r.r_primal -= es.d();
  r.r_dual = r.x_bar - r.y_bar;
  r.r_primal_norm = norm(r.r_primal);
  r.r_dual_norm = norm(r.r_dual);

  r.eps_u_raw = -inv * es.sum_uy() + dot(mu_bar, r.y_bar);
  r.eps_v_raw = -inv * es.sum_vx() + dot(cv_bar, r.x_bar);
  r.eps_u = clamp_eps(r.eps_u_raw);
  r.eps_v = clamp_eps(r.eps_v_raw);
  return r;
}

double BoundCertificate::tau() const { return std::min(lambda, 1.0 / lambda); }

double BoundCertificate::theta() const {
  const double t = tau() * (1.0 - rho_bar);
  return 1.0 / (t * t) + 1.0;
}

double BoundCertificate::pointwise_bound(int k) const {
  return 2.0 * d0_bound / ((1.0 - rho_bar) * tau() * std::sqrt(static_cast<double>(k)));
}

double BoundCertificate::ergodic_residual_bound(int k) const {
  return 4.0 * d0_bound / (static_cast<double>(k) * (1.0 - rho_bar) * tau());
}

double BoundCertificate::ergodic_eps_bound(int k) const {
  return 8.0 * d0_bound * d0_bound * theta() / (static_cast<double>(k) * (1.0 - rho_bar) * tau());
}

double BoundCertificate::gamma_sum_lower_bound(int k) const {
  return (1.0 - rho_bar) * 0.5 * tau() * static_cast<double>(k);
}

void PointwiseHistory::add(double primal_norm, double dual_norm) {
  if (k == 0) {
    min_primal = primal_norm;
    min_dual = dual_norm;
  } else {
    min_primal = std::min(min_primal, primal_norm);
    min_dual = std::min(min_dual, dual_norm);
  }
  ++k;
}

CertificateCheck pointwise_certificate(const PointwiseHistory& history,
                                       const BoundCertificate& cert) {
  CertificateCheck c;
  if (history.k == 0) return c;
  c.bound = cert.pointwise_bound(history.k);
  c.primal_margin = c.bound + cert.slack - history.min_primal;
  c.dual_margin = c.bound + cert.slack - history.min_dual;
  c.pass = c.primal_margin >= 0.0 && c.dual_margin >= 0.0;
  return c;
}

CertificateCheck ergodic_certificate(const ErgodicReport& report, const BoundCertificate& cert) {
  CertificateCheck c;
  c.bound = cert.ergodic_residual_bound(report.k);
  c.eps_bound = cert.ergodic_eps_bound(report.k);
  c.primal_margin = c.bound + cert.slack - report.r_primal_norm;
  c.dual_margin = c.bound + cert.slack - report.r_dual_norm;
  c.eps_margin = c.eps_bound + cert.slack - (report.eps_u + report.eps_v);
  const bool eps_nonnegative =
      report.eps_u >= -kEpsClampTolerance && report.eps_v >= -kEpsClampTolerance;
  c.pass = c.primal_margin >= 0.0 && c.dual_margin >= 0.0 && c.eps_margin >= 0.0 &&
           eps_nonnegative;
  return c;
}

}  // namespace pmm
