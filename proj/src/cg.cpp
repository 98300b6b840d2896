#include "pmm/cg.hpp"

#include <cmath>
#include <string>

namespace pmm {

CgConfig CgConfig::to_tolerance(double tol, int max_iter) {
  CgConfig c;
  c.mode = CgMode::to_tolerance;
  c.tolerance = tol;
  c.max_iterations = max_iter;
  return c;
}

CgConfig CgConfig::fixed(int iterations) {
  CgConfig c;
  c.mode = CgMode::fixed_iterations;
  c.fixed_count = iterations;
  c.max_iterations = iterations;
  return c;
}

void CgConfig::validate() const {
  if (!(tolerance > 0.0)) throw InvalidArgument("CG tolerance must be positive");
  if (max_iterations < 1) throw InvalidArgument("CG max_iterations must be >= 1");
  if (mode == CgMode::fixed_iterations && fixed_count < 1) {
    throw InvalidArgument("CG fixed iteration count must be >= 1");
  }
}

CgResult cg_solve(const LinearMap& a, const DenseField& rhs, const CgConfig& cfg,
                  const CgObserver& observer) {
  return cg_solve(a, rhs, cfg, DenseField(rhs.shape()), observer);
}

CgResult cg_solve(const LinearMap& a, const DenseField& rhs, const CgConfig& cfg,
                  const DenseField& warm_start, const CgObserver& observer) {
  cfg.validate();
  require_same_shape(rhs, warm_start, "cg_solve warm start");

  CgResult res;
  res.x = warm_start;
  const double rhs_norm = norm(rhs);
  DenseField r = rhs - a.apply(res.x);
  double rr = norm_sq(r);
  const double scale = rhs_norm > 0.0 ? rhs_norm : 1.0;
  res.relative_residual = std::sqrt(rr) / scale;

  const bool fixed = cfg.mode == CgMode::fixed_iterations;
  const int limit = fixed ? cfg.fixed_count : cfg.max_iterations;
  const double target = fixed ? 0.0 : cfg.tolerance;

  if (rr == 0.0 || (!fixed && res.relative_residual <= target)) {
    res.converged = true;
    return res;
  }

  DenseField p = r;
  while (res.iterations < limit) {
    const DenseField ap = a.apply(p);
    const double pap = dot(p, ap);
    const double pp = norm_sq(p);
    if (pap <= 1e-14 * pp) {
      throw NumericalAnomaly("cg_solve: operator '" + a.name +
                             "' is not positive definite (p'Ap = " + std::to_string(pap) + ")");
    }
    const double alpha = rr / pap;
    axpy(alpha, p, res.x);
    axpy(-alpha, ap, r);
    const double rr_next = norm_sq(r);
    ++res.iterations;
    res.relative_residual = std::sqrt(rr_next) / scale;
    if (observer) observer(res.iterations, res.x);
    if (rr_next == 0.0 || (!fixed && res.relative_residual <= target)) break;
    const double beta = rr_next / rr;
    rr = rr_next;
    p = lincomb(1.0, r, beta, p);
  }
  res.converged = fixed || res.relative_residual <= target;
  return res;
}

}  // namespace pmm
