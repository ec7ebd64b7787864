#pragma once

#include <vector>

#include "cqfc/classical_info.hpp"
#include "cqfc/errors.hpp"

namespace cqfc::gf {

// Table-backed arithmetic for a prime field. Sizes are capped at 7 (so the
// supported fields are 2, 3, 5, and 7); larger or composite sizes are
// rejected up front. All element arguments are range-checked.
class PrimeField {
 public:
  explicit PrimeField(int q) : q_(q) {
    if (!classical::is_prime(q) || q > 7) {
      throw precondition_error("field size must be a prime at most 7");
    }
    sum_.resize(static_cast<std::size_t>(q) * q);
    prod_.resize(static_cast<std::size_t>(q) * q);
    neg_.resize(static_cast<std::size_t>(q));
    inv_.assign(static_cast<std::size_t>(q), 0);
    for (int a = 0; a < q; ++a) {
      neg_[a] = (q - a) % q;
      for (int b = 0; b < q; ++b) {
        sum_[static_cast<std::size_t>(a) * q + b] = (a + b) % q;
        const int p = (a * b) % q;
        prod_[static_cast<std::size_t>(a) * q + b] = p;
        if (p == 1) inv_[a] = b;
      }
    }
  }

  int size() const { return q_; }
  int add(int a, int b) const { return sum_[pair_index(a, b)]; }
  int sub(int a, int b) const { return add(a, neg(b)); }
  int mul(int a, int b) const { return prod_[pair_index(a, b)]; }
  int neg(int a) const { return neg_[checked(a)]; }
  int inv(int a) const {
    if (checked(a) == 0) throw precondition_error("zero has no multiplicative inverse");
    return inv_[a];
  }

 private:
  int checked(int a) const {
    if (a < 0 || a >= q_) throw precondition_error("field element out of range");
    return a;
  }
  std::size_t pair_index(int a, int b) const {
    return static_cast<std::size_t>(checked(a)) * q_ + checked(b);
  }

  int q_;
  std::vector<int> sum_, prod_, neg_, inv_;
};

}  // namespace cqfc::gf
