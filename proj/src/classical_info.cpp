#include "cqfc/classical_info.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "cqfc/errors.hpp"

namespace cqfc::classical {

namespace {
constexpr double kSimplexTol = 1e-10;
constexpr double kNegativeMassTol = -1e-12;
}  // namespace

bool is_prime(int q) {
  if (q < 2) return false;
  for (int d = 2; d * d <= q; ++d) {
    if (q % d == 0) return false;
  }
  return true;
}

double pmf_entropy(const std::vector<double>& p) {
  double total = 0.0;
  for (double x : p) {
    if (x < kNegativeMassTol) throw validation_error("probability vector has a negative entry");
    total += x;
  }
  if (std::abs(total - 1.0) > kSimplexTol) {
    std::ostringstream os;
    os << "probability vector sums to " << total << ", not 1";
    throw validation_error(os.str());
  }
  double h = 0.0;
  for (double x : p) {
    if (x > 0.0) h -= x * std::log2(x);
  }
  return h;
}

JointPmf::JointPmf(std::vector<int> shape, std::vector<double> mass)
    : shape_(std::move(shape)), mass_(std::move(mass)) {
  if (shape_.empty()) throw validation_error("joint PMF needs at least one register");
  std::size_t total_size = 1;
  for (int s : shape_) {
    if (s < 1) throw validation_error("joint PMF register needs a positive alphabet");
    total_size *= static_cast<std::size_t>(s);
  }
  if (mass_.size() != total_size) {
    throw validation_error("joint PMF table size does not match its shape");
  }
  strides_.assign(shape_.size(), 1);
  for (int r = static_cast<int>(shape_.size()) - 2; r >= 0; --r) {
    strides_[r] = strides_[r + 1] * static_cast<std::size_t>(shape_[r + 1]);
  }
  double total = 0.0;
  for (double& x : mass_) {
    if (x < kNegativeMassTol) throw validation_error("joint PMF has a negative mass");
    if (x < 0.0) x = 0.0;
    total += x;
  }
  if (std::abs(total - 1.0) > kSimplexTol) {
    std::ostringstream os;
    os << "joint PMF masses sum to " << total << ", not 1";
    throw validation_error(os.str());
  }
}

std::size_t JointPmf::flat_index(const std::vector<int>& idx) const {
  if (idx.size() != shape_.size()) throw validation_error("joint PMF index has the wrong arity");
  std::size_t flat = 0;
  for (std::size_t r = 0; r < idx.size(); ++r) {
    if (idx[r] < 0 || idx[r] >= shape_[r]) {
      throw validation_error("joint PMF index out of range");
    }
    flat += strides_[r] * static_cast<std::size_t>(idx[r]);
  }
  return flat;
}

std::vector<int> JointPmf::unflatten(std::size_t flat) const {
  std::vector<int> idx(shape_.size());
  for (std::size_t r = 0; r < shape_.size(); ++r) {
    idx[r] = static_cast<int>(flat / strides_[r]);
    flat %= strides_[r];
  }
  return idx;
}

namespace {

void check_registers(const std::vector<int>& regs, int arity, const char* label) {
  std::set<int> seen;
  for (int r : regs) {
    if (r < 0 || r >= arity) {
      std::ostringstream os;
      os << label << " register " << r << " out of range";
      throw validation_error(os.str());
    }
    if (!seen.insert(r).second) {
      std::ostringstream os;
      os << label << " lists register " << r << " twice";
      throw validation_error(os.str());
    }
  }
}

void check_disjoint(const std::vector<int>& a, const std::vector<int>& b, const char* label) {
  for (int r : a) {
    if (std::find(b.begin(), b.end(), r) != b.end()) {
      std::ostringstream os;
      os << label << " register sets overlap at " << r;
      throw validation_error(os.str());
    }
  }
}

}  // namespace

JointPmf JointPmf::marginal(const std::vector<int>& keep) const {
  check_registers(keep, registers(), "marginal");
  if (keep.empty()) throw validation_error("marginal needs at least one register");
  std::vector<int> new_shape(keep.size());
  for (std::size_t i = 0; i < keep.size(); ++i) new_shape[i] = shape_[keep[i]];
  std::size_t out_size = 1;
  for (int s : new_shape) out_size *= static_cast<std::size_t>(s);
  std::vector<double> out(out_size, 0.0);
  for (std::size_t flat = 0; flat < mass_.size(); ++flat) {
    if (mass_[flat] == 0.0) continue;
    std::size_t pos = 0;
    for (std::size_t i = 0; i < keep.size(); ++i) {
      const int sym = static_cast<int>(flat / strides_[keep[i]]) % shape_[keep[i]];
      pos = pos * static_cast<std::size_t>(new_shape[i]) + static_cast<std::size_t>(sym);
    }
    out[pos] += mass_[flat];
  }
  return JointPmf(std::move(new_shape), std::move(out));
}

double JointPmf::entropy(const std::vector<int>& over, const std::vector<int>& given) const {
  check_registers(over, registers(), "entropy target");
  check_registers(given, registers(), "entropy condition");
  // H(over | given) = H(over u given) - H(given); the union form makes
  // self-conditioning H(A|A) = 0 rather than an error.
  auto subset_entropy = [&](const std::vector<int>& regs) {
    if (regs.empty()) return 0.0;
    const JointPmf m = marginal(regs);
    double h = 0.0;
    for (std::size_t i = 0; i < m.table_size(); ++i) {
      const double p = m.mass_at(i);
      if (p > 0.0) h -= p * std::log2(p);
    }
    return h;
  };
  std::vector<int> joint = over;
  for (int r : given) {
    if (std::find(joint.begin(), joint.end(), r) == joint.end()) joint.push_back(r);
  }
  const double h = subset_entropy(joint) - subset_entropy(given);
  return h < 0.0 ? 0.0 : h;
}

double JointPmf::mutual_information(const std::vector<int>& a, const std::vector<int>& b,
                                    const std::vector<int>& given) const {
  check_registers(a, registers(), "mutual information");
  check_registers(b, registers(), "mutual information");
  check_registers(given, registers(), "mutual information condition");
  check_disjoint(a, b, "mutual information");
  check_disjoint(a, given, "mutual information");
  check_disjoint(b, given, "mutual information");
  std::vector<int> b_and_given = b;
  b_and_given.insert(b_and_given.end(), given.begin(), given.end());
  const double value = entropy(a, given) - entropy(a, b_and_given);
  return value < 0.0 ? 0.0 : value;
}

SourceModel::SourceModel(JointPmf pmf, std::vector<std::vector<int>> f,
                         std::optional<Embedding> embedding)
    : pmf_(std::move(pmf)), f_(std::move(f)), embedding_(std::move(embedding)) {
  if (pmf_.registers() != 2) throw validation_error("source model needs exactly two registers");
  const int s1 = pmf_.shape()[0];
  const int s2 = pmf_.shape()[1];
  if (static_cast<int>(f_.size()) != s1) {
    throw validation_error("function table rows do not match the first alphabet");
  }
  for (const auto& row : f_) {
    if (static_cast<int>(row.size()) != s2) {
      throw validation_error("function table columns do not match the second alphabet");
    }
  }
  if (!embedding_) return;
  const Embedding& e = *embedding_;
  if (!is_prime(e.q)) throw validation_error("embedding field size must be prime");
  if (static_cast<int>(e.h1.size()) != s1 || static_cast<int>(e.h2.size()) != s2 ||
      static_cast<int>(e.g.size()) != e.q) {
    throw validation_error("embedding map sizes do not match the alphabets");
  }
  for (int v : e.h1) {
    if (v < 0 || v >= e.q) throw validation_error("embedding h1 value out of the field");
  }
  for (int v : e.h2) {
    if (v < 0 || v >= e.q) throw validation_error("embedding h2 value out of the field");
  }
  for (int a = 0; a < s1; ++a) {
    for (int b = 0; b < s2; ++b) {
      if (pmf_.mass({a, b}) <= 0.0) continue;
      const int v = (e.h1[a] + e.h2[b]) % e.q;
      if (e.g[v] != f_[a][b]) {
        std::ostringstream os;
        os << "embedding identity fails at source pair (" << a << "," << b << ")";
        throw validation_error(os.str());
      }
    }
  }
}

JointPmf sum_variable_pmf(const SourceModel& source) {
  if (!source.embedding()) {
    throw precondition_error("sum-variable PMF needs a field embedding");
  }
  const Embedding& e = *source.embedding();
  const JointPmf& w = source.pmf();
  std::vector<double> out(static_cast<std::size_t>(e.q), 0.0);
  for (int a = 0; a < w.shape()[0]; ++a) {
    for (int b = 0; b < w.shape()[1]; ++b) {
      out[static_cast<std::size_t>((e.h1[a] + e.h2[b]) % e.q)] += w.mass({a, b});
    }
  }
  return JointPmf({e.q}, std::move(out));
}

namespace {

// Checks one (h1, h2) pair: every positive-mass source pair in the same
// field-sum class must share a function value. On success fills g.
bool consistent_embedding(const std::vector<std::vector<int>>& f, const JointPmf& pmf, int q,
                          const std::vector<int>& h1, const std::vector<int>& h2,
                          std::vector<int>& g_out) {
  std::vector<int> cls(static_cast<std::size_t>(q), -1);
  const int s1 = static_cast<int>(h1.size());
  const int s2 = static_cast<int>(h2.size());
  for (int a = 0; a < s1; ++a) {
    for (int b = 0; b < s2; ++b) {
      if (pmf.mass({a, b}) <= 0.0) continue;
      const int v = (h1[a] + h2[b]) % q;
      if (cls[v] == -1) {
        cls[v] = f[a][b];
      } else if (cls[v] != f[a][b]) {
        return false;
      }
    }
  }
  g_out.assign(cls.begin(), cls.end());
  for (int& v : g_out) {
    if (v == -1) v = 0;
  }
  return true;
}

// Advances a base-q digit vector in lexicographic order; false on wraparound.
bool next_map(std::vector<int>& h, int q) {
  for (int i = static_cast<int>(h.size()) - 1; i >= 0; --i) {
    if (++h[i] < q) return true;
    h[i] = 0;
  }
  return false;
}

}  // namespace

int generic_embedding_prime(int s1_size, int s2_size) {
  int q = s1_size * s2_size;
  if (q < 2) q = 2;
  while (!is_prime(q)) ++q;
  return q;
}

std::optional<Embedding> embed_search(const std::vector<std::vector<int>>& f,
                                      const JointPmf& pmf, int q_max) {
  if (q_max < 2) throw validation_error("embedding search cap must be at least 2");
  if (pmf.registers() != 2) throw validation_error("embedding search needs a two-register PMF");
  const int s1 = pmf.shape()[0];
  const int s2 = pmf.shape()[1];
  if (static_cast<int>(f.size()) != s1) {
    throw validation_error("function table does not match the PMF shape");
  }
  const bool small = s1 <= 4 && s2 <= 4;
  for (int q = 2; q <= q_max; ++q) {
    if (!is_prime(q)) continue;
    if (small && q <= 7) {
      std::vector<int> h1(static_cast<std::size_t>(s1), 0);
      do {
        std::vector<int> h2(static_cast<std::size_t>(s2), 0);
        do {
          std::vector<int> g;
          if (consistent_embedding(f, pmf, q, h1, h2, g)) {
            return Embedding{q, h1, h2, std::move(g)};
          }
        } while (next_map(h2, q));
      } while (next_map(h1, q));
    } else if (q >= s1 * s2) {
      // Generic injective construction: field value = s1-index + s2-index*|S1|.
      std::vector<int> h1(static_cast<std::size_t>(s1));
      std::vector<int> h2(static_cast<std::size_t>(s2));
      for (int a = 0; a < s1; ++a) h1[a] = a;
      for (int b = 0; b < s2; ++b) h2[b] = b * s1;
      std::vector<int> g;
      if (consistent_embedding(f, pmf, q, h1, h2, g)) {
        return Embedding{q, std::move(h1), std::move(h2), std::move(g)};
      }
    }
  }
  return std::nullopt;
}

double min_bin_rate(const std::vector<double>& p_v1, const std::vector<double>& p_v2, int q,
                    double delta) {
  if (!is_prime(q)) throw validation_error("binning rate needs a prime field size");
  const double h1 = pmf_entropy(p_v1);
  const double h2 = pmf_entropy(p_v2);
  const double rate = std::log2(static_cast<double>(q)) - std::min(h1, h2) + delta;
  return rate < 0.0 ? 0.0 : rate;
}

}  // namespace cqfc::classical
