#include <cmath>
#include <map>
#include <vector>

#include "cqfc/classical_info.hpp"
#include "cqfc/errors.hpp"
#include "cqfc/rng.hpp"
#include "doctest.h"
#include "oracle_helpers.hpp"

using cqfc::Rng;
using cqfc::classical::Embedding;
using cqfc::classical::JointPmf;
using cqfc::classical::SourceModel;

namespace {

// Brute-force subset entropy: accumulate a marginal in a map keyed by the
// projected tuple, then apply the entropy formula. Independent of the
// library's stride bookkeeping.
double slow_subset_entropy(const JointPmf& p, const std::vector<int>& regs) {
  std::map<std::vector<int>, double> marg;
  for (std::size_t flat = 0; flat < p.table_size(); ++flat) {
    const auto idx = p.unflatten(flat);
    std::vector<int> key;
    for (int r : regs) key.push_back(idx[r]);
    marg[key] += p.mass_at(flat);
  }
  double h = 0.0;
  for (const auto& [key, mass] : marg) {
    if (mass > 0.0) h -= mass * std::log2(mass);
  }
  return h;
}

double slow_conditional_entropy(const JointPmf& p, std::vector<int> over,
                                const std::vector<int>& given) {
  std::vector<int> joint = over;
  for (int r : given) joint.push_back(r);
  return slow_subset_entropy(p, joint) - slow_subset_entropy(p, given);
}

// The highly skewed correlated binary pair used throughout the demo presets.
JointPmf skewed_pair() {
  return JointPmf({2, 2}, {0.003920, 0.976080, 0.019920, 0.000080});
}

JointPmf random_pmf(Rng& rng, std::vector<int> shape) {
  std::size_t n = 1;
  for (int s : shape) n *= static_cast<std::size_t>(s);
  return JointPmf(std::move(shape), rng.simplex(static_cast<int>(n)));
}

}  // namespace

TEST_CASE("joint entropy matches a brute-force marginal accumulation") {
  Rng rng(1001);
  for (int it = 0; it < 25; ++it) {
    const JointPmf p = random_pmf(rng, {2, 3, 2});
    for (const auto& regs : std::vector<std::vector<int>>{{0}, {1}, {2}, {0, 1}, {1, 2}, {0, 2}}) {
      CHECK(std::abs(p.entropy(regs) - slow_subset_entropy(p, regs)) <= 1e-12);
    }
    CHECK(std::abs(p.entropy({0}, {1, 2}) - slow_conditional_entropy(p, {0}, {1, 2})) <= 1e-12);
    CHECK(std::abs(p.entropy({0, 2}, {1}) - slow_conditional_entropy(p, {0, 2}, {1})) <= 1e-12);
  }
}

TEST_CASE("entropy endpoints and self-conditioning") {
  const JointPmf uniform({2, 2}, {0.25, 0.25, 0.25, 0.25});
  CHECK(std::abs(uniform.entropy({0, 1}) - 2.0) <= 1e-12);
  CHECK(uniform.entropy({0}, {0}) <= 1e-12);

  // Direct four-term evaluation of the skewed pair's joint entropy.
  const double direct = oracle::shannon_entropy({0.003920, 0.976080, 0.019920, 0.000080});
  CHECK(std::abs(skewed_pair().entropy({0, 1}) - direct) <= 1e-12);
  CHECK(std::abs(direct - 0.17906290286) <= 1e-9);
}

TEST_CASE("entropy is invariant under register permutation and relabeling") {
  Rng rng(1002);
  const JointPmf p = random_pmf(rng, {2, 3});

  // Permutation: swap the two registers in the table.
  std::vector<double> swapped(6);
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 3; ++b) swapped[static_cast<std::size_t>(b) * 2 + a] = p.mass({a, b});
  }
  const JointPmf q({3, 2}, swapped);
  CHECK(std::abs(p.entropy({0, 1}) - q.entropy({0, 1})) <= 1e-12);
  CHECK(std::abs(p.entropy({0}, {1}) - q.entropy({1}, {0})) <= 1e-12);
  CHECK(std::abs(p.mutual_information({0}, {1}) - q.mutual_information({1}, {0})) <= 1e-12);

  // Relabeling: reverse the symbols of register 1.
  std::vector<double> relabeled(6);
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 3; ++b) relabeled[static_cast<std::size_t>(a) * 3 + (2 - b)] = p.mass({a, b});
  }
  const JointPmf r({2, 3}, relabeled);
  CHECK(std::abs(p.entropy({0, 1}) - r.entropy({0, 1})) <= 1e-12);
  CHECK(std::abs(p.entropy({1}, {0}) - r.entropy({1}, {0})) <= 1e-12);
}

TEST_CASE("mutual information basics") {
  // Independent registers.
  const JointPmf indep({2, 2}, {0.06, 0.14, 0.24, 0.56});
  CHECK(indep.mutual_information({0}, {1}) <= 1e-12);

  // V = V1 xor V2 as a three-register PMF (V1, V2, V); V2 uniform hides V1.
  std::vector<double> mass(8, 0.0);
  const double p1 = 0.3;
  for (int v1 = 0; v1 < 2; ++v1) {
    for (int v2 = 0; v2 < 2; ++v2) {
      const double w = (v1 == 1 ? p1 : 1.0 - p1) * 0.5;
      mass[static_cast<std::size_t>(v1) * 4 + static_cast<std::size_t>(v2) * 2 + (v1 ^ v2)] = w;
    }
  }
  const JointPmf pad({2, 2, 2}, mass);
  CHECK(pad.mutual_information({0}, {2}) <= 1e-12);

  // V2 deterministic zero: V carries V1 exactly.
  std::vector<double> det(8, 0.0);
  det[0 * 4 + 0 * 2 + 0] = 1.0 - p1;
  det[1 * 4 + 0 * 2 + 1] = p1;
  const JointPmf copy({2, 2, 2}, det);
  CHECK(std::abs(copy.mutual_information({0}, {2}) - oracle::binary_entropy(p1)) <= 1e-12);

  // Symmetry on random instances.
  Rng rng(1003);
  for (int it = 0; it < 20; ++it) {
    const JointPmf p = random_pmf(rng, {2, 2, 3});
    CHECK(std::abs(p.mutual_information({0}, {1}, {2}) - p.mutual_information({1}, {0}, {2})) <=
          1e-10);
    CHECK(p.mutual_information({0}, {1}, {2}) >= 0.0);
  }
}

TEST_CASE("joint PMF validation") {
  CHECK_THROWS_AS(JointPmf({2}, {0.5, 0.6}), cqfc::validation_error);
  CHECK_THROWS_AS(JointPmf({2}, {1.5, -0.5}), cqfc::validation_error);
  CHECK_THROWS_AS(JointPmf({2, 2}, {1.0, 0.0}), cqfc::validation_error);
  const JointPmf p({2, 2}, {0.25, 0.25, 0.25, 0.25});
  CHECK_THROWS_AS(p.entropy({0, 0}), cqfc::validation_error);
  CHECK_THROWS_AS(p.entropy({2}), cqfc::validation_error);
  CHECK_THROWS_AS(p.mutual_information({0}, {0}), cqfc::validation_error);
  CHECK_THROWS_AS(p.mutual_information({0}, {1}, {1}), cqfc::validation_error);
}

TEST_CASE("sum-variable distribution of the skewed pair") {
  const SourceModel source(skewed_pair(), {{0, 1}, {1, 0}},
                           Embedding{2, {0, 1}, {0, 1}, {0, 1}});
  const JointPmf s = cqfc::classical::sum_variable_pmf(source);
  REQUIRE(s.shape() == std::vector<int>{2});
  // Mass at zero collects the equal pairs: 0.003920 + 0.000080.
  CHECK(std::abs(s.mass({0}) - 0.004) <= 1e-12);
  CHECK(std::abs(s.mass({1}) - 0.996) <= 1e-12);
  const double h = s.entropy({0});
  CHECK(std::abs(h - oracle::binary_entropy(0.004)) <= 1e-12);
  CHECK(std::abs(h - 0.0376223) <= 5e-7);

  // Independent uniform bits sum to a uniform bit.
  const SourceModel fair(JointPmf({2, 2}, {0.25, 0.25, 0.25, 0.25}), {{0, 1}, {1, 0}},
                         Embedding{2, {0, 1}, {0, 1}, {0, 1}});
  const JointPmf fs = cqfc::classical::sum_variable_pmf(fair);
  CHECK(std::abs(fs.mass({0}) - 0.5) <= 1e-12);

  // Point mass stays a point mass.
  const SourceModel point(JointPmf({2, 2}, {0.0, 1.0, 0.0, 0.0}), {{0, 1}, {1, 0}},
                          Embedding{2, {0, 1}, {0, 1}, {0, 1}});
  CHECK(std::abs(cqfc::classical::sum_variable_pmf(point).mass({1}) - 1.0) <= 1e-12);

  // No embedding: precondition, not validation.
  const SourceModel bare(skewed_pair(), {{0, 1}, {1, 0}});
  CHECK_THROWS_AS(cqfc::classical::sum_variable_pmf(bare), cqfc::precondition_error);
}

TEST_CASE("source model validates the embedding identity") {
  // g misdeclared: claims the sum maps straight through but f is OR.
  CHECK_THROWS_AS(SourceModel(JointPmf({2, 2}, {0.25, 0.25, 0.25, 0.25}), {{0, 1}, {1, 1}},
                              Embedding{2, {0, 1}, {0, 1}, {0, 1}}),
                  cqfc::validation_error);
  // Same maps pass once the offending pair has zero mass.
  CHECK_NOTHROW(SourceModel(JointPmf({2, 2}, {0.5, 0.25, 0.25, 0.0}), {{0, 1}, {1, 1}},
                            Embedding{2, {0, 1}, {0, 1}, {0, 1}}));
  // Non-prime field.
  CHECK_THROWS_AS(SourceModel(JointPmf({2, 2}, {0.25, 0.25, 0.25, 0.25}), {{0, 1}, {1, 0}},
                              Embedding{4, {0, 1}, {0, 1}, {0, 1, 0, 1}}),
                  cqfc::validation_error);
}

TEST_CASE("embedding search on small functions") {
  const JointPmf full({2, 2}, {0.25, 0.25, 0.25, 0.25});

  // Binary OR: no two-element field works; the ternary field does, with
  // identity maps and g collapsing 1 and 2.
  const auto or_embed = cqfc::classical::embed_search({{0, 1}, {1, 1}}, full, 7);
  REQUIRE(or_embed.has_value());
  CHECK(or_embed->q == 3);
  CHECK(or_embed->h1 == std::vector<int>{0, 1});
  CHECK(or_embed->h2 == std::vector<int>{0, 1});
  CHECK(or_embed->g == std::vector<int>{0, 1, 1});

  // Binary XOR is already a field sum.
  const auto xor_embed = cqfc::classical::embed_search({{0, 1}, {1, 0}}, full, 7);
  REQUIRE(xor_embed.has_value());
  CHECK(xor_embed->q == 2);
  CHECK(xor_embed->h1 == std::vector<int>{0, 1});
  CHECK(xor_embed->h2 == std::vector<int>{0, 1});

  // Injective function on 2x2 needs four classes: first fit is q=5 with the
  // second map stretched by the first alphabet's size.
  const auto inj = cqfc::classical::embed_search({{0, 1}, {2, 3}}, full, 5);
  REQUIRE(inj.has_value());
  CHECK(inj->q == 5);
  CHECK(inj->h2 == std::vector<int>{0, 2});

  // Injective on 3x3 needs at least nine classes; nothing fits under 7.
  std::vector<std::vector<int>> inj9{{0, 1, 2}, {3, 4, 5}, {6, 7, 8}};
  const JointPmf full9({3, 3}, std::vector<double>(9, 1.0 / 9.0));
  CHECK(!cqfc::classical::embed_search(inj9, full9, 7).has_value());
  CHECK(cqfc::classical::generic_embedding_prime(3, 3) == 11);

  // Whatever comes back satisfies the identity everywhere it must.
  Rng rng(1004);
  for (int it = 0; it < 20; ++it) {
    std::vector<std::vector<int>> f(2, std::vector<int>(2));
    for (auto& row : f) {
      for (int& v : row) v = static_cast<int>(rng.below(3));
    }
    const JointPmf pmf = random_pmf(rng, {2, 2});
    const auto e = cqfc::classical::embed_search(f, pmf, 7);
    REQUIRE(e.has_value());
    CHECK_NOTHROW(SourceModel(pmf, f, e));
  }
}

TEST_CASE("binning rate floor") {
  CHECK(cqfc::classical::min_bin_rate({0.5, 0.5}, {0.5, 0.5}, 2, 0.0) == 0.0);
  CHECK(std::abs(cqfc::classical::min_bin_rate({1.0, 0.0}, {0.5, 0.5}, 2, 0.0) - 1.0) <= 1e-12);
  const double want = 1.0 - oracle::binary_entropy(0.1) + 0.01;
  CHECK(std::abs(cqfc::classical::min_bin_rate({0.9, 0.1}, {0.9, 0.1}, 2, 0.01) - want) <= 1e-12);
  CHECK(std::abs(want - 0.5410044) <= 1e-7);
  CHECK_THROWS_AS(cqfc::classical::min_bin_rate({0.5, 0.5}, {0.5, 0.5}, 4, 0.0),
                  cqfc::validation_error);
}
