#include "cqfc/rng.hpp"

#include <cmath>

#include "cqfc/errors.hpp"

namespace cqfc {

namespace {
// First `count` primes by trial division; the sequence uses one base per axis.
std::vector<int> first_primes(int count) {
  std::vector<int> primes;
  for (int n = 2; static_cast<int>(primes.size()) < count; ++n) {
    bool composite = false;
    for (int p : primes) {
      if (p * p > n) break;
      if (n % p == 0) {
        composite = true;
        break;
      }
    }
    if (!composite) primes.push_back(n);
  }
  return primes;
}
}  // namespace

Halton::Halton(int dims) {
  if (dims < 1 || dims > 4096) {
    throw precondition_error("halton dimension out of range: " + std::to_string(dims));
  }
  bases_ = first_primes(dims);
}

std::vector<double> Halton::next() {
  ++index_;
  std::vector<double> out(bases_.size());
  for (std::size_t d = 0; d < bases_.size(); ++d) {
    const int b = bases_[d];
    double f = 1.0;
    double r = 0.0;
    std::uint64_t i = index_;
    while (i > 0) {
      f /= b;
      r += f * static_cast<double>(i % b);
      i /= b;
    }
    out[d] = r;
  }
  return out;
}

}  // namespace cqfc
