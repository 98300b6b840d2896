#include "pmm/linops.hpp"

#include <cmath>

namespace pmm {
namespace {

void check_shape(const DenseField& x, Shape expected, const std::string& name, const char* side) {
  if (x.shape() != expected) {
    throw InvalidArgument(name + ": " + side + " expects " + to_string(expected) + ", got " +
                          to_string(x.shape()));
  }
}

}  // namespace

DenseField LinearMap::apply(const DenseField& x) const {
  check_shape(x, in_shape, name, "forward");
  return forward(x);
}

DenseField LinearMap::apply_adjoint(const DenseField& y) const {
  check_shape(y, out_shape, name, "adjoint");
  return adjoint(y);
}

LinearMap identity_map(Shape shape) {
  auto id = [](const DenseField& x) { return x; };
  return {shape, shape, id, id, "identity"};
}

LinearMap scaled_identity(Shape shape, double s) {
  auto act = [s](const DenseField& x) { return s * x; };
  return {shape, shape, act, act, "scaled_identity(" + std::to_string(s) + ")"};
}

LinearMap gradient_map(Shape image, Boundary bc) {
  const Shape stacked{2 * image.rows, image.cols};
  return {image, stacked,
          [bc](const DenseField& u) { return grad2_stacked(u, bc); },
          [bc](const DenseField& pq) { return div2_stacked(pq, bc); },
          bc == Boundary::periodic ? "gradient(periodic)" : "gradient(reflexive)"};
}

LinearMap self_adjoint_map(Shape shape, LinearMap::Action action, std::string name) {
  return {shape, shape, action, action, std::move(name)};
}

DenseField grad2_stacked(const DenseField& u, Boundary bc) {
  if (u.rows() == 0 || u.cols() == 0) throw InvalidArgument("grad2: empty field");
  DenseField out(2 * u.rows(), u.cols());
  kernels::grad2(u.span(), u.rows(), u.cols(), bc, out.span());
  return out;
}

DenseField div2_stacked(const DenseField& pq, Boundary bc) {
  if (pq.rows() % 2 != 0) {
    throw InvalidArgument("div2: stacked field needs an even row count, got " +
                          to_string(pq.shape()));
  }
  DenseField out(pq.rows() / 2, pq.cols());
  kernels::grad2_adjoint(pq.span(), out.rows(), out.cols(), bc, out.span());
  return out;
}

std::pair<DenseField, DenseField> grad2(const DenseField& u, Boundary bc) {
  const DenseField g = grad2_stacked(u, bc);
  const std::size_t plane = u.size();
  std::vector<double> first(g.values().begin(), g.values().begin() + static_cast<long>(plane));
  std::vector<double> second(g.values().begin() + static_cast<long>(plane), g.values().end());
  return {DenseField(u.rows(), u.cols(), std::move(first)),
          DenseField(u.rows(), u.cols(), std::move(second))};
}

DenseField div2(const DenseField& p, const DenseField& q, Boundary bc) {
  require_same_shape(p, q, "div2");
  std::vector<double> stacked(p.values());
  stacked.insert(stacked.end(), q.values().begin(), q.values().end());
  return div2_stacked(DenseField(2 * p.rows(), p.cols(), std::move(stacked)), bc);
}

double total_variation(const DenseField& u, Boundary bc) {
  const DenseField g = grad2_stacked(u, bc);
  double s = 0.0;
  for (double v : g.span()) s += std::fabs(v);
  return s;
}

}  // namespace pmm
