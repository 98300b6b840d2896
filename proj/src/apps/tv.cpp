#include "pmm/apps/tv.hpp"

#include <cmath>

namespace pmm::apps {

void TvProblem::validate() const {
  if (!(zeta > 0.0)) throw InvalidArgument("TvProblem: zeta must be positive");
  if (b.empty()) throw InvalidArgument("TvProblem: empty image");
  if (!b.all_finite()) throw InvalidArgument("TvProblem: image has non-finite entries");
}

QuadraticModel tv_quadratic_model(const TvProblem& tv) {
  return {identity_map(tv.b.shape()), tv.b, gradient_map(tv.b.shape(), tv.bc)};
}

ProblemSpec build_tv_problem(const TvProblem& tv, const CgConfig& cg) {
  tv.validate();
  const Shape image = tv.b.shape();
  const Shape dual{2 * image.rows, image.cols};

  ProblemSpec p;
  p.name = "tv";
  p.M = gradient_map(image, tv.bc);
  p.C = scaled_identity(dual, -1.0);
  p.d = DenseField(dual);
  p.f_oracle = make_quadratic_f_oracle(tv_quadratic_model(tv), cg);
  p.g_oracle = make_l1_g_oracle(dual, tv.zeta);
  p.f_value = [b = tv.b](const DenseField& u) { return 0.5 * norm_sq(u - b); };
  p.g_value = [zeta = tv.zeta](const DenseField& v) {
    double s = 0.0;
    for (double x : v.span()) s += std::fabs(x);
    return zeta * s;
  };
  p.residual_scale = static_cast<double>(image.size());
  return p;
}

double tv_objective(const TvProblem& tv, const DenseField& u) {
  return tv.zeta * total_variation(u, tv.bc) + 0.5 * norm_sq(u - tv.b);
}

}  // namespace pmm::apps
