#pragma once

#include <cstddef>
#include <optional>
#include <vector>

namespace cqfc::classical {

// All entropies in bits.

bool is_prime(int q);

// -sum p log2 p for a plain probability vector (validated to the simplex
// within 1e-10).
double pmf_entropy(const std::vector<double>& p);

// Joint PMF over a tuple of finite registers, stored as a flat row-major
// table. Registers are addressed by index into `shape`.
class JointPmf {
 public:
  JointPmf(std::vector<int> shape, std::vector<double> mass);

  int registers() const { return static_cast<int>(shape_.size()); }
  const std::vector<int>& shape() const { return shape_; }
  std::size_t table_size() const { return mass_.size(); }

  double mass_at(std::size_t flat) const { return mass_[flat]; }
  double mass(const std::vector<int>& idx) const { return mass_[flat_index(idx)]; }
  std::size_t flat_index(const std::vector<int>& idx) const;
  std::vector<int> unflatten(std::size_t flat) const;

  // Marginal over the listed registers, in the listed order.
  JointPmf marginal(const std::vector<int>& keep) const;

  // H(over | given) = H(over ∪ given) - H(given). Overlap is allowed and
  // behaves as the identity implies (fully overlapping sets give 0).
  double entropy(const std::vector<int>& over, const std::vector<int>& given = {}) const;

  // I(a ; b | given) = H(a|given) - H(a|b,given), floored at 0.
  double mutual_information(const std::vector<int>& a, const std::vector<int>& b,
                            const std::vector<int>& given = {}) const;

 private:
  std::vector<int> shape_;
  std::vector<std::size_t> strides_;
  std::vector<double> mass_;
};

// Representation f(s1,s2) = g(h1(s1) + h2(s2) mod q) over a prime field.
struct Embedding {
  int q = 0;
  std::vector<int> h1;  // per symbol of the first source
  std::vector<int> h2;  // per symbol of the second source
  std::vector<int> g;   // per field value
};

// Two correlated sources, a target function, and an optional field embedding.
// Construction verifies the embedding identity on every positive-mass pair.
class SourceModel {
 public:
  SourceModel(JointPmf pmf, std::vector<std::vector<int>> f,
              std::optional<Embedding> embedding = std::nullopt);

  const JointPmf& pmf() const { return pmf_; }
  int f(int s1, int s2) const { return f_[s1][s2]; }
  const std::vector<std::vector<int>>& f_table() const { return f_; }
  const std::optional<Embedding>& embedding() const { return embedding_; }

 private:
  JointPmf pmf_;
  std::vector<std::vector<int>> f_;
  std::optional<Embedding> embedding_;
};

// Pushforward of the source PMF under h1(s1) + h2(s2) mod q: the distribution
// of the field-sum variable. Requires an embedding.
JointPmf sum_variable_pmf(const SourceModel& source);

// Smallest prime q <= q_max admitting an embedding of f. Exhaustive search
// over (h1, h2) runs only for alphabets up to 4 symbols and q <= 7; beyond
// that, only the generic injective construction (h1 = index, h2 = index *
// |S1|, feasible once q >= |S1|*|S2|) is attempted. Ties broken by smallest
// q, then lexicographic (h1, h2). Returns nullopt when nothing fits the cap.
std::optional<Embedding> embed_search(const std::vector<std::vector<int>>& f,
                                      const JointPmf& pmf, int q_max);

// First prime where the generic injective construction exists; used by
// callers to report how far past a cap the fallback would have to go.
int generic_embedding_prime(int s1_size, int s2_size);

// Binning-rate floor for recovering a field sum: log2 q - min{H(V1),H(V2)} +
// delta, floored at 0.
double min_bin_rate(const std::vector<double>& p_v1, const std::vector<double>& p_v2, int q,
                    double delta);

}  // namespace cqfc::classical
