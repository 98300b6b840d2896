#include "pmm/apps/cs.hpp"

#include <cmath>
#include <numbers>

#include "pmm/fft.hpp"

namespace pmm::apps {
namespace {

// (R + R~)/2 with R~(p, q) = R(-p mod m, -q mod n)
DenseField symmetrized_mask(const DenseField& mask) {
  const std::size_t m = mask.rows();
  const std::size_t n = mask.cols();
  DenseField out(m, n);
  for (std::size_t p = 0; p < m; ++p) {
    for (std::size_t q = 0; q < n; ++q) {
      out(p, q) = 0.5 * (mask(p, q) + mask((m - p) % m, (n - q) % n));
    }
  }
  return out;
}

// Eigenvalues of grad^* grad under periodic boundaries.
DenseField laplacian_symbol(Shape s) {
  DenseField out(s);
  for (std::size_t p = 0; p < s.rows; ++p) {
    const double sp = std::sin(std::numbers::pi * static_cast<double>(p) / static_cast<double>(s.rows));
    for (std::size_t q = 0; q < s.cols; ++q) {
      const double sq =
          std::sin(std::numbers::pi * static_cast<double>(q) / static_cast<double>(s.cols));
      out(p, q) = 4.0 * sp * sp + 4.0 * sq * sq;
    }
  }
  return out;
}

}  // namespace

void CsProblem::validate() const {
  if (!(zeta > 0.0)) throw InvalidArgument("CsProblem: zeta must be positive");
  if (data.shape() != mask.shape()) {
    throw InvalidArgument("CsProblem: data " + to_string(data.shape()) + " and mask " +
                          to_string(mask.shape()) + " differ in shape");
  }
  if (mask.empty()) throw InvalidArgument("CsProblem: empty mask");
  require_binary_mask(mask);
  for (std::size_t k = 0; k < mask.size(); ++k) {
    if (mask[k] == 0.0 && data[k] != std::complex<double>{}) {
      throw InvalidArgument("CsProblem: nonzero data at unmeasured coefficient " +
                            std::to_string(k));
    }
  }
}

QuadraticModel cs_quadratic_model(const CsProblem& cs) {
  const Shape s = cs.mask.shape();
  const DenseField mask = cs.mask;
  const double zeta = cs.zeta;
  LinearMap hessian = self_adjoint_map(
      s,
      [mask, zeta](const DenseField& u) {
        DenseField out = idft2(apply_mask(dft2(u), mask)).real();
        out *= zeta;
        return out;
      },
      "zeta Re(F*RF)");
  DenseField linear = idft2(apply_mask(cs.data, cs.mask)).real();
  linear *= cs.zeta;
  return {std::move(hessian), std::move(linear), gradient_map(s, cs.bc)};
}

DenseField cs_fourier_solve(const CsProblem& cs, const DenseField& carrier, double lambda) {
  if (cs.bc != Boundary::periodic) {
    throw InvalidArgument("cs_fourier_solve: requires periodic boundaries");
  }
  const Shape s = cs.mask.shape();
  const DenseField rsym = symmetrized_mask(cs.mask);
  const DenseField lap = laplacian_symbol(s);

  DenseField rhs = idft2(apply_mask(cs.data, cs.mask)).real();
  rhs *= cs.zeta;
  rhs -= div2_stacked(carrier, Boundary::periodic);

  ComplexField spec = dft2(rhs);
  for (std::size_t k = 0; k < spec.size(); ++k) {
    const double denom = cs.zeta * rsym[k] + lambda * lap[k];
    spec[k] = denom > 0.0 ? spec[k] / denom : std::complex<double>{};
  }
  return idft2(spec).real();
}

ProblemSpec build_cs_problem(const CsProblem& cs, const CgConfig& cg) {
  cs.validate();
  const Shape image = cs.mask.shape();
  const Shape dual{2 * image.rows, image.cols};

  ProblemSpec p;
  p.name = "cs";
  p.M = gradient_map(image, cs.bc);
  p.C = scaled_identity(dual, -1.0);
  p.d = DenseField(dual);
  p.g_oracle = make_l1_g_oracle(dual, 1.0);

  if (cs.bc == Boundary::periodic) {
    SubproblemOracle f;
    f.op = p.M;
    f.offset = DenseField(dual);
    f.name = "cs_fourier_oracle";
    f.solve = [cs, grad = p.M](const DenseField& carrier, double lambda, const DenseField*) {
      OracleResult r;
      r.nu = cs_fourier_solve(cs, carrier, lambda);
      r.image = grad.apply(r.nu);
      return r;
    };
    p.f_oracle = std::move(f);
  } else {
    p.f_oracle = make_quadratic_f_oracle(cs_quadratic_model(cs), cg);
  }

  p.f_value = [cs](const DenseField& u) { return cs_data_term(cs, u); };
  p.g_value = [](const DenseField& v) {
    double s = 0.0;
    for (double x : v.span()) s += std::fabs(x);
    return s;
  };
  p.residual_scale = static_cast<double>(image.size());
  return p;
}

double cs_data_term(const CsProblem& cs, const DenseField& u) {
  const ComplexField fu = apply_mask(dft2(u), cs.mask);
  double misfit = 0.0;
  for (std::size_t k = 0; k < fu.size(); ++k) misfit += std::norm(fu[k] - cs.data[k]);
  return 0.5 * cs.zeta * misfit;
}

double cs_objective(const CsProblem& cs, const DenseField& u) {
  return total_variation(u, cs.bc) + cs_data_term(cs, u);
}

}  // namespace pmm::apps
