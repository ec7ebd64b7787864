#pragma once

#include <vector>

#include "cqfc/complex_matrix.hpp"

namespace cqfc {

struct EigResult {
  std::vector<double> values;  // descending
  ComplexMatrix vectors;       // column k is the eigenvector for values[k]
};

// Cyclic Jacobi for complex Hermitian matrices. Sweeps visit (p,q) pairs in
// fixed row-major order; convergence when the off-diagonal Frobenius mass
// drops below 1e-12. Rejects non-Hermitian input (defect > 1e-10) with the
// measured asymmetry in the message.
EigResult hermitian_eigensystem(const ComplexMatrix& m);
std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m);

}  // namespace cqfc
