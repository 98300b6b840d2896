#pragma once

#include <functional>
#include <string>
#include <utility>

#include "pmm/field.hpp"
#include "pmm/kernels.hpp"

namespace pmm {

using kernels::Boundary;

/// Matrix-free linear operator: a forward action and its adjoint.
///
/// Both actions take a field of the declared input shape and return a field
/// of the declared output shape (and vice versa for the adjoint). apply()
/// and apply_adjoint() check shapes before dispatching.
struct LinearMap {
  using Action = std::function<DenseField(const DenseField&)>;

  Shape in_shape;
  Shape out_shape;
  Action forward;
  Action adjoint;
  std::string name;

  DenseField apply(const DenseField& x) const;
  DenseField apply_adjoint(const DenseField& y) const;
};

LinearMap identity_map(Shape shape);
// s * I
LinearMap scaled_identity(Shape shape, double s);
// Stacked forward-difference gradient, image m x n -> field 2m x n.
LinearMap gradient_map(Shape image, Boundary bc);
// Self-adjoint map given by a single action (forward == adjoint).
LinearMap self_adjoint_map(Shape shape, LinearMap::Action action, std::string name);

/// Forward differences of an m x n image.
///
/// first: u[i+1][j] - u[i][j]; second: u[i][j+1] - u[i][j]. The last row
/// (column) is zero under reflexive boundaries and wraps under periodic ones.
std::pair<DenseField, DenseField> grad2(const DenseField& u, Boundary bc);
/// Exact adjoint of grad2 under the same boundary condition.
DenseField div2(const DenseField& p, const DenseField& q, Boundary bc);

// Stacked variants used by the solvers: pq has shape 2m x n.
DenseField grad2_stacked(const DenseField& u, Boundary bc);
DenseField div2_stacked(const DenseField& pq, Boundary bc);

// Anisotropic total variation |grad_1 u|_1 + |grad_2 u|_1.
double total_variation(const DenseField& u, Boundary bc);

}  // namespace pmm
