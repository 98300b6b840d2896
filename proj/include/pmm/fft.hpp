#pragma once

#include "pmm/field.hpp"

namespace pmm {

// Unitary 2-D DFT (1/sqrt(mn) in both directions), so the adjoint equals the
// inverse. Any m x n is accepted: power-of-two lengths use an iterative
// radix-2 transform, other lengths go through Bluestein's chirp-z.
ComplexField dft2(const ComplexField& u);
ComplexField dft2(const DenseField& u);
ComplexField idft2(const ComplexField& uhat);

// Entrywise product with a binary mask (the sampling operator R). Throws if
// the mask has an entry other than 0 or 1 or the shapes differ.
ComplexField apply_mask(const ComplexField& uhat, const DenseField& mask);

void require_binary_mask(const DenseField& mask);

}  // namespace pmm
