#include "cqfc/quantum_ops.hpp"

#include <cmath>
#include <sstream>

#include "cqfc/errors.hpp"
#include "cqfc/hermitian_eig.hpp"

namespace cqfc {

namespace {
constexpr double kEigenClampWindow = -1e-9;
constexpr double kSimplexTol = 1e-10;
}  // namespace

double von_neumann_entropy(const DensityOperator& rho) {
  double h = 0.0;
  for (double l : hermitian_eigenvalues(rho.mat())) {
    if (l < kEigenClampWindow) {
      std::ostringstream os;
      os << "entropy of a non-positive operator: eigenvalue " << l;
      throw validation_error(os.str());
    }
    if (l <= 0.0) continue;
    h -= l * std::log2(l);
  }
  const double cap = std::log2(static_cast<double>(rho.dim()));
  if (h < 0.0) h = 0.0;
  if (h > cap) h = cap;
  return h;
}

DensityOperator tensor_product(const DensityOperator& a, const DensityOperator& b,
                               int dim_cap) {
  const long long prod = static_cast<long long>(a.dim()) * b.dim();
  if (prod > dim_cap) {
    std::ostringstream os;
    os << "tensor product dimension " << prod << " exceeds cap " << dim_cap;
    throw resource_error(os.str());
  }
  return DensityOperator::trusted(kron(a.mat(), b.mat()));
}

DensityOperator mix(const std::vector<double>& weights,
                    const std::vector<DensityOperator>& states) {
  if (weights.empty() || weights.size() != states.size()) {
    throw precondition_error("mix needs matching, nonempty weights and states");
  }
  double total = 0.0;
  for (double w : weights) {
    if (w < -kSimplexTol) throw validation_error("mix weight is negative");
    total += w;
  }
  if (std::abs(total - 1.0) > kSimplexTol) {
    std::ostringstream os;
    os << "mix weights sum to " << total << ", not 1";
    throw validation_error(os.str());
  }
  const int dim = states.front().dim();
  ComplexMatrix acc(dim);
  for (std::size_t i = 0; i < states.size(); ++i) {
    if (states[i].dim() != dim) throw precondition_error("mix states differ in dimension");
    if (weights[i] <= 0.0) continue;
    acc.add_scaled(weights[i], states[i].mat());
  }
  return DensityOperator::trusted(std::move(acc));
}

}  // namespace cqfc
