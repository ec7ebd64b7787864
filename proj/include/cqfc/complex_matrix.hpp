#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace cqfc {

using cd = std::complex<double>;

// Dense square complex matrix, row-major.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  explicit ComplexMatrix(int dim) : dim_(dim), a_(static_cast<std::size_t>(dim) * dim) {}
  ComplexMatrix(int dim, std::vector<cd> entries);

  static ComplexMatrix identity(int dim);

  int dim() const { return dim_; }
  cd& at(int i, int j) { return a_[static_cast<std::size_t>(i) * dim_ + j]; }
  const cd& at(int i, int j) const { return a_[static_cast<std::size_t>(i) * dim_ + j]; }
  cd* row(int i) { return a_.data() + static_cast<std::size_t>(i) * dim_; }
  const cd* row(int i) const { return a_.data() + static_cast<std::size_t>(i) * dim_; }
  cd* data() { return a_.data(); }
  const cd* data() const { return a_.data(); }
  std::size_t size() const { return a_.size(); }

  cd trace() const;
  ComplexMatrix adjoint() const;

  // Largest |a(i,j) - conj(a(j,i))| over all entries.
  double hermitian_defect() const;
  // Largest |a(i,j) - other(i,j)|.
  double max_abs_diff(const ComplexMatrix& other) const;

  void add_scaled(cd w, const ComplexMatrix& m);  // *this += w * m
  ComplexMatrix scaled(cd w) const;

  friend ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b);
  friend ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b);
  friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);

 private:
  int dim_ = 0;
  std::vector<cd> a_;
};

// Kronecker product; result dimension is a.dim()*b.dim(). The caller is
// responsible for any dimension cap (see tensor_product in quantum_ops).
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

// Tr(a*b) without forming the product.
cd trace_product(const ComplexMatrix& a, const ComplexMatrix& b);

// Density operator: Hermitian within 1e-10, unit trace within 1e-10, spectrum
// above -1e-10. `validated` enforces all three; the library's closed operations
// (mixing, tensoring, channel averaging) preserve them and use the fast path.
class DensityOperator {
 public:
  DensityOperator() = default;

  // Full check, including an eigensolve for positivity.
  static DensityOperator validated(ComplexMatrix m);
  // Hermiticity/trace check only; for outputs of operations that preserve
  // positivity by construction.
  static DensityOperator trusted(ComplexMatrix m);

  int dim() const { return mat_.dim(); }
  const ComplexMatrix& mat() const { return mat_; }

 private:
  explicit DensityOperator(ComplexMatrix m) : mat_(std::move(m)) {}
  ComplexMatrix mat_;
};

}  // namespace cqfc
