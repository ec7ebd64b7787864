#include "cqfc/complex_matrix.hpp"

#include <cmath>
#include <sstream>
#include <utility>

#include "cqfc/errors.hpp"
#include "cqfc/hermitian_eig.hpp"
#include "cqfc/kernels.hpp"

namespace cqfc {

ComplexMatrix::ComplexMatrix(int dim, std::vector<cd> entries)
    : dim_(dim), a_(std::move(entries)) {
  if (a_.size() != static_cast<std::size_t>(dim) * dim) {
    throw validation_error("matrix entry count does not match dimension " + std::to_string(dim));
  }
}

ComplexMatrix ComplexMatrix::identity(int dim) {
  ComplexMatrix m(dim);
  for (int i = 0; i < dim; ++i) m.at(i, i) = 1.0;
  return m;
}

cd ComplexMatrix::trace() const {
  cd t = 0.0;
  for (int i = 0; i < dim_; ++i) t += at(i, i);
  return t;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix m(dim_);
  for (int i = 0; i < dim_; ++i) {
    for (int j = 0; j < dim_; ++j) m.at(i, j) = std::conj(at(j, i));
  }
  return m;
}

double ComplexMatrix::hermitian_defect() const {
  double worst = 0.0;
  for (int i = 0; i < dim_; ++i) {
    for (int j = i; j < dim_; ++j) {
      worst = std::max(worst, std::abs(at(i, j) - std::conj(at(j, i))));
    }
  }
  return worst;
}

double ComplexMatrix::max_abs_diff(const ComplexMatrix& other) const {
  if (other.dim_ != dim_) throw precondition_error("dimension mismatch in matrix comparison");
  double worst = 0.0;
  for (std::size_t k = 0; k < a_.size(); ++k) {
    worst = std::max(worst, std::abs(a_[k] - other.a_[k]));
  }
  return worst;
}

void ComplexMatrix::add_scaled(cd w, const ComplexMatrix& m) {
  if (m.dim_ != dim_) throw precondition_error("dimension mismatch in matrix accumulate");
  kernels::active().axpy(w, m.a_.data(), a_.data(), a_.size());
}

ComplexMatrix ComplexMatrix::scaled(cd w) const {
  ComplexMatrix out(dim_);
  kernels::active().scale(w, a_.data(), out.a_.data(), a_.size());
  return out;
}

ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out = a;
  out.add_scaled(1.0, b);
  return out;
}

ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out = a;
  out.add_scaled(-1.0, b);
  return out;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.dim_ != b.dim_) throw precondition_error("dimension mismatch in matrix product");
  const int n = a.dim_;
  ComplexMatrix out(n);
  for (int i = 0; i < n; ++i) {
    cd* dst = out.row(i);
    for (int k = 0; k < n; ++k) {
      const cd aik = a.at(i, k);
      if (aik == cd{0.0, 0.0}) continue;
      kernels::active().axpy(aik, b.row(k), dst, static_cast<std::size_t>(n));
    }
  }
  return out;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  const int da = a.dim();
  const int db = b.dim();
  ComplexMatrix out(da * db);
  for (int i = 0; i < da; ++i) {
    for (int k = 0; k < db; ++k) {
      cd* dst = out.row(i * db + k);
      const cd* src = b.row(k);
      for (int j = 0; j < da; ++j) {
        kernels::active().scale(a.at(i, j), src, dst + j * db, static_cast<std::size_t>(db));
      }
    }
  }
  return out;
}

cd trace_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.dim() != b.dim()) throw precondition_error("dimension mismatch in trace product");
  // Tr(ab) = sum_{ij} a(i,j) b(j,i); for Hermitian b this is <b, a> entrywise.
  cd t = 0.0;
  for (int i = 0; i < a.dim(); ++i) {
    for (int j = 0; j < a.dim(); ++j) t += a.at(i, j) * b.at(j, i);
  }
  return t;
}

namespace {
constexpr double kHermitianTol = 1e-10;
constexpr double kTraceTol = 1e-10;
constexpr double kEigenFloor = -1e-10;
}  // namespace

DensityOperator DensityOperator::validated(ComplexMatrix m) {
  if (m.dim() <= 0) throw validation_error("density operator needs positive dimension");
  const double defect = m.hermitian_defect();
  if (defect > kHermitianTol) {
    std::ostringstream os;
    os << "density operator not Hermitian: max asymmetry " << defect;
    throw validation_error(os.str());
  }
  const cd tr = m.trace();
  if (std::abs(tr - cd{1.0, 0.0}) > kTraceTol) {
    std::ostringstream os;
    os << "density operator trace " << tr.real();
    if (tr.imag() != 0.0) os << "+" << tr.imag() << "i";
    os << " deviates from 1";
    throw validation_error(os.str());
  }
  const std::vector<double> ev = hermitian_eigenvalues(m);
  for (double l : ev) {
    if (l < kEigenFloor) {
      std::ostringstream os;
      os << "density operator has negative eigenvalue " << l;
      throw validation_error(os.str());
    }
  }
  return DensityOperator(std::move(m));
}

DensityOperator DensityOperator::trusted(ComplexMatrix m) {
  if (m.dim() <= 0) throw validation_error("density operator needs positive dimension");
  const double defect = m.hermitian_defect();
  if (defect > kHermitianTol) {
    std::ostringstream os;
    os << "density operator not Hermitian: max asymmetry " << defect;
    throw validation_error(os.str());
  }
  if (std::abs(m.trace() - cd{1.0, 0.0}) > kTraceTol) {
    throw validation_error("density operator trace deviates from 1");
  }
  return DensityOperator(std::move(m));
}

}  // namespace cqfc
