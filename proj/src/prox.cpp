#include "pmm/prox.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "pmm/kernels.hpp"

namespace pmm {

OracleResult SubproblemOracle::operator()(const DenseField& carrier, double lambda,
                                          const DenseField* warm_start) const {
  if (!(lambda > 0.0)) throw InvalidArgument(name + ": lambda must be positive");
  if (carrier.shape() != op.out_shape) {
    throw InvalidArgument(name + ": carrier shape " + to_string(carrier.shape()) +
                          " does not match operator range " + to_string(op.out_shape));
  }
  return solve(carrier, lambda, warm_start);
}

DenseField shrink(const DenseField& z, double mu) {
  if (!(mu > 0.0)) throw InvalidArgument("shrink: threshold must be positive");
  DenseField out(z.shape());
  kernels::shrink(z.span(), mu, out.span());
  return out;
}

OracleResult l1_g_oracle(const DenseField& carrier, double lambda, double zeta) {
  if (!(lambda > 0.0)) throw InvalidArgument("l1_g_oracle: lambda must be positive");
  if (!(zeta > 0.0)) throw InvalidArgument("l1_g_oracle: zeta must be positive");
  OracleResult r;
  r.nu = shrink((1.0 / lambda) * carrier, zeta / lambda);
  r.image = -1.0 * r.nu;
  return r;
}

SubproblemOracle make_l1_g_oracle(Shape v_shape, double zeta) {
  if (!(zeta > 0.0)) throw InvalidArgument("make_l1_g_oracle: zeta must be positive");
  SubproblemOracle o;
  o.solve = [zeta](const DenseField& carrier, double lambda, const DenseField*) {
    return l1_g_oracle(carrier, lambda, zeta);
  };
  o.op = scaled_identity(v_shape, -1.0);
  o.offset = DenseField(v_shape);
  o.name = "l1_g_oracle";
  return o;
}

LinearMap quadratic_system(const QuadraticModel& model, double lambda) {
  const LinearMap q = model.hessian;
  const LinearMap m = model.coupling;
  return self_adjoint_map(
      model.hessian.in_shape,
      [q, m, lambda](const DenseField& u) {
        DenseField out = q.apply(u);
        axpy(lambda, m.apply_adjoint(m.apply(u)), out);
        return out;
      },
      "Q + lambda M*M [" + q.name + ", " + m.name + "]");
}

OracleResult quad_f_oracle(const DenseField& carrier, double lambda, const QuadraticModel& model,
                           const CgConfig& cg, const DenseField* warm_start) {
  if (!(lambda > 0.0)) throw InvalidArgument("quad_f_oracle: lambda must be positive");
  const LinearMap system = quadratic_system(model, lambda);
  const DenseField rhs = model.linear - model.coupling.apply_adjoint(carrier);
  CgResult sol = warm_start ? cg_solve(system, rhs, cg, *warm_start) : cg_solve(system, rhs, cg);
  OracleResult r;
  r.image = model.coupling.apply(sol.x);
  r.nu = std::move(sol.x);
  r.inner_iterations = sol.iterations;
  r.inner_residual = sol.relative_residual;
  return r;
}

SubproblemOracle make_quadratic_f_oracle(QuadraticModel model, CgConfig cg) {
  cg.validate();
  SubproblemOracle o;
  o.op = model.coupling;
  o.offset = DenseField(model.coupling.out_shape);
  o.name = "quad_f_oracle";
  o.solve = [model = std::move(model), cg](const DenseField& carrier, double lambda,
                                           const DenseField* warm) {
    return quad_f_oracle(carrier, lambda, model, cg, warm);
  };
  return o;
}

double l1_inclusion_residual(const DenseField& v, const DenseField& s, double zeta) {
  require_same_shape(v, s, "l1_inclusion_residual");
  // need -s_i = zeta sign(v_i) where v_i != 0, |s_i| <= zeta where v_i == 0
  double worst = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    double viol;
    if (v[i] > 0.0) {
      viol = std::fabs(s[i] + zeta);
    } else if (v[i] < 0.0) {
      viol = std::fabs(s[i] - zeta);
    } else {
      viol = std::max(std::fabs(s[i]) - zeta, 0.0);
    }
    worst = std::max(worst, viol);
  }
  return worst;
}

double quadratic_inclusion_residual(const QuadraticModel& model, const DenseField& u,
                                    const DenseField& s) {
  DenseField r = model.hessian.apply(u) - model.linear;
  r += s;
  return norm(r);
}

}  // namespace pmm
