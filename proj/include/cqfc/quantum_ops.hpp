#pragma once

#include <vector>

#include "cqfc/complex_matrix.hpp"

namespace cqfc {

// All entropies in this library are base-2 (bits).

// -sum_i lambda_i log2 lambda_i over the spectrum. Eigenvalues in [-1e-9, 0)
// clamp to zero; anything more negative is a validation error. The result is
// clamped to [0, log2 dim].
double von_neumann_entropy(const DensityOperator& rho);

// Kronecker product of states. Dimension products beyond `dim_cap` raise a
// resource error before any allocation.
inline constexpr int kDefaultDimCap = 4096;
DensityOperator tensor_product(const DensityOperator& a, const DensityOperator& b,
                               int dim_cap = kDefaultDimCap);

// Convex combination sum_i w_i rho_i. Weights must lie on the simplex within
// 1e-10 and all states must share a dimension.
DensityOperator mix(const std::vector<double>& weights,
                    const std::vector<DensityOperator>& states);

}  // namespace cqfc
