#include "cqfc/hermitian_eig.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "cqfc/errors.hpp"
#include "cqfc/kernels.hpp"

namespace cqfc {

namespace {

constexpr double kOffDiagTol = 1e-12;
constexpr double kDefectTol = 1e-10;
constexpr int kMaxSweeps = 64;

double offdiag_frobenius(const ComplexMatrix& a) {
  double mass = 0.0;
  const int n = a.dim();
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      mass += std::norm(a.at(i, j));
    }
  }
  return std::sqrt(mass);
}

// Applies the strided column version of the row kernel: for each row index i,
//   a(i,p)' = c*a(i,p) + s*a(i,q)
//   a(i,q)' = -conj(s)*a(i,p) + conj(c)*a(i,q)
void rotate_columns(ComplexMatrix& a, int p, int q, cd c, cd s) {
  const int n = a.dim();
  for (int i = 0; i < n; ++i) {
    const cd u = a.at(i, p);
    const cd v = a.at(i, q);
    a.at(i, p) = c * u + s * v;
    a.at(i, q) = -std::conj(s) * u + std::conj(c) * v;
  }
}

}  // namespace

EigResult hermitian_eigensystem(const ComplexMatrix& m) {
  const double defect = m.hermitian_defect();
  if (defect > kDefectTol) {
    std::ostringstream os;
    os << "eigensolve needs a Hermitian matrix: max asymmetry " << defect;
    throw validation_error(os.str());
  }
  const int n = m.dim();
  ComplexMatrix a = m;
  // Accumulate W = V^dagger through row operations; eigenvectors are W^dagger.
  ComplexMatrix w = ComplexMatrix::identity(n);
  const kernels::KernelTable& k = kernels::active();

  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    if (offdiag_frobenius(a) < kOffDiagTol) break;
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const cd apq = a.at(p, q);
        const double beta = std::abs(apq);
        if (beta == 0.0) continue;
        const cd phase = apq / beta;  // e^{i phi}
        const double app = a.at(p, p).real();
        const double aqq = a.at(q, q).real();
        // Zero the (p,q) entry with the rotation angle of least magnitude.
        const double tau = (aqq - app) / (2.0 * beta);
        double t;
        if (std::abs(tau) > 1e15) {
          t = 1.0 / (2.0 * tau);
        } else {
          t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(tau * tau + 1.0));
        }
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        const cd s_row = -s * phase;

        // a <- J^dagger a J with J mixing coordinates p and q.
        k.rotate_pair(cd{c, 0.0}, s_row, a.row(p), a.row(q), static_cast<std::size_t>(n));
        rotate_columns(a, p, q, cd{c, 0.0}, std::conj(s_row));
        // Same row mix keeps W = (J1 J2 ...)^dagger in sync.
        k.rotate_pair(cd{c, 0.0}, s_row, w.row(p), w.row(q), static_cast<std::size_t>(n));

        // Clean up roundoff on the entries the rotation targets.
        a.at(p, q) = 0.0;
        a.at(q, p) = 0.0;
        a.at(p, p) = a.at(p, p).real();
        a.at(q, q) = a.at(q, q).real();
      }
    }
  }

  if (offdiag_frobenius(a) >= kOffDiagTol) {
    throw validation_error("eigensolve failed to converge");
  }

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int i, int j) { return a.at(i, i).real() > a.at(j, j).real(); });

  EigResult out;
  out.values.resize(n);
  out.vectors = ComplexMatrix(n);
  for (int col = 0; col < n; ++col) {
    const int src = order[col];
    out.values[col] = a.at(src, src).real();
    // Column col of V = W^dagger is the conjugate of row src of W.
    for (int i = 0; i < n; ++i) out.vectors.at(i, col) = std::conj(w.at(src, i));
  }
  return out;
}

std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m) {
  return hermitian_eigensystem(m).values;
}

}  // namespace cqfc
