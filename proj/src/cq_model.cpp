#include "cqfc/cq_model.hpp"

#include <cmath>
#include <map>
#include <sstream>

#include "cqfc/errors.hpp"
#include "cqfc/quantum_ops.hpp"

namespace cqfc::cq {

namespace {

constexpr double kSimplexTol = 1e-10;

void check_simplex(const std::vector<double>& p, const char* label) {
  if (p.empty()) {
    std::ostringstream os;
    os << label << " PMF is empty";
    throw validation_error(os.str());
  }
  double total = 0.0;
  for (double x : p) {
    if (x < -kSimplexTol) {
      std::ostringstream os;
      os << label << " PMF has a negative entry";
      throw validation_error(os.str());
    }
    total += x;
  }
  if (std::abs(total - 1.0) > kSimplexTol) {
    std::ostringstream os;
    os << label << " PMF sums to " << total << ", not 1";
    throw validation_error(os.str());
  }
}

void check_equal_dims(const std::vector<DensityOperator>& table, const char* label) {
  if (table.empty()) {
    std::ostringstream os;
    os << label << " has no states";
    throw validation_error(os.str());
  }
  const int dim = table.front().dim();
  for (const auto& s : table) {
    if (s.dim() != dim) {
      std::ostringstream os;
      os << label << " mixes state dimensions " << dim << " and " << s.dim();
      throw validation_error(os.str());
    }
  }
}

}  // namespace

Cq2Channel::Cq2Channel(int alphabet1, int alphabet2, std::vector<DensityOperator> table)
    : a1_(alphabet1), a2_(alphabet2), table_(std::move(table)) {
  if (a1_ < 1 || a2_ < 1) throw validation_error("channel alphabets must be nonempty");
  if (table_.size() != static_cast<std::size_t>(a1_) * a2_) {
    throw validation_error("channel table is incomplete");
  }
  check_equal_dims(table_, "two-sender channel");
}

const DensityOperator& Cq2Channel::at(int x1, int x2) const {
  if (x1 < 0 || x1 >= a1_ || x2 < 0 || x2 >= a2_) {
    throw validation_error("channel input out of range");
  }
  return table_[static_cast<std::size_t>(x1) * a2_ + x2];
}

Cq4Channel::Cq4Channel(int q, int u1_size, int u2_size, std::vector<DensityOperator> table)
    : q_(q), u1_(u1_size), u2_(u2_size), table_(std::move(table)) {
  if (!classical::is_prime(q_)) {
    throw validation_error("four-sender channel needs a prime field alphabet");
  }
  if (u1_ < 1 || u2_ < 1) throw validation_error("channel alphabets must be nonempty");
  if (table_.size() != static_cast<std::size_t>(q_) * q_ * u1_ * u2_) {
    throw validation_error("channel table is incomplete");
  }
  check_equal_dims(table_, "four-sender channel");
}

const DensityOperator& Cq4Channel::at(int v1, int v2, int u1, int u2) const {
  if (v1 < 0 || v1 >= q_ || v2 < 0 || v2 >= q_ || u1 < 0 || u1 >= u1_ || u2 < 0 || u2 >= u2_) {
    throw validation_error("channel input out of range");
  }
  return table_[((static_cast<std::size_t>(v1) * q_ + v2) * u1_ + u1) * u2_ + u2];
}

ConditionalPmf::ConditionalPmf(int u_size, int v_size, int x_size, std::vector<double> probs)
    : u_(u_size), v_(v_size), x_(x_size), probs_(std::move(probs)) {
  if (u_ < 1 || v_ < 1 || x_ < 1) throw validation_error("conditional PMF needs nonempty alphabets");
  if (probs_.size() != static_cast<std::size_t>(u_) * v_ * x_) {
    throw validation_error("conditional PMF table size mismatch");
  }
  for (int u = 0; u < u_; ++u) {
    for (int v = 0; v < v_; ++v) {
      double total = 0.0;
      for (int x = 0; x < x_; ++x) {
        const double p = prob(u, v, x);
        if (p < -kSimplexTol) throw validation_error("conditional PMF has a negative entry");
        total += p;
      }
      if (std::abs(total - 1.0) > kSimplexTol) {
        std::ostringstream os;
        os << "conditional PMF row (u=" << u << ", v=" << v << ") sums to " << total;
        throw validation_error(os.str());
      }
    }
  }
}

ConditionalPmf ConditionalPmf::pass_through(int u_size, int v_size) {
  std::vector<double> probs(static_cast<std::size_t>(u_size) * v_size * v_size, 0.0);
  for (int u = 0; u < u_size; ++u) {
    for (int v = 0; v < v_size; ++v) {
      probs[(static_cast<std::size_t>(u) * v_size + v) * v_size + v] = 1.0;
    }
  }
  return ConditionalPmf(u_size, v_size, v_size, std::move(probs));
}

ConditionalPmf ConditionalPmf::constant(int u_size, int v_size, int x_size, int x0) {
  if (x0 < 0 || x0 >= x_size) throw validation_error("constant conditional output out of range");
  std::vector<double> probs(static_cast<std::size_t>(u_size) * v_size * x_size, 0.0);
  for (int u = 0; u < u_size; ++u) {
    for (int v = 0; v < v_size; ++v) {
      probs[(static_cast<std::size_t>(u) * v_size + v) * x_size + x0] = 1.0;
    }
  }
  return ConditionalPmf(u_size, v_size, x_size, std::move(probs));
}

CqEnsemble::CqEnsemble(std::vector<double> weights, std::vector<DensityOperator> states)
    : weights_(std::move(weights)), states_(std::move(states)) {
  if (weights_.size() != states_.size()) {
    throw validation_error("ensemble weights and states differ in count");
  }
  check_simplex(weights_, "ensemble");
  check_equal_dims(states_, "ensemble");
}

double holevo_information(const CqEnsemble& e) {
  const int dim = e.state(0).dim();
  ComplexMatrix avg(dim);
  double mean_entropy = 0.0;
  for (std::size_t i = 0; i < e.size(); ++i) {
    const double w = e.weight(i);
    if (w <= 0.0) continue;
    avg.add_scaled(w, e.state(i).mat());
    mean_entropy += w * von_neumann_entropy(e.state(i));
  }
  return von_neumann_entropy(DensityOperator::trusted(std::move(avg))) - mean_entropy;
}

double conditional_qmi(const ClassicalQuantumState& s, const std::vector<int>& a,
                       const std::vector<int>& b) {
  if (s.states.size() != s.pmf.table_size()) {
    throw validation_error("classical-quantum state table size mismatch");
  }
  check_equal_dims(s.states, "classical-quantum state");
  if (a.empty()) throw validation_error("conditional information needs a target register set");
  for (int r : a) {
    for (int rb : b) {
      if (r == rb) throw validation_error("conditional information register sets overlap");
    }
  }
  const int dim = s.states.front().dim();

  // Group masses and mass-weighted state sums by the (b, a) projections.
  struct Group {
    double mass = 0.0;
    ComplexMatrix sum;
  };
  std::map<std::vector<int>, std::map<std::vector<int>, Group>> by_b;
  for (std::size_t flat = 0; flat < s.pmf.table_size(); ++flat) {
    const double w = s.pmf.mass_at(flat);
    if (w <= 0.0) continue;
    const auto idx = s.pmf.unflatten(flat);
    std::vector<int> key_b, key_a;
    for (int r : b) key_b.push_back(idx[r]);
    for (int r : a) key_a.push_back(idx[r]);
    Group& g = by_b[key_b][key_a];
    if (g.sum.dim() == 0) g.sum = ComplexMatrix(dim);
    g.mass += w;
    g.sum.add_scaled(w, s.states[flat].mat());
  }

  double total = 0.0;
  for (auto& [key_b, groups] : by_b) {
    double p_b = 0.0;
    for (const auto& [key_a, g] : groups) p_b += g.mass;
    if (p_b <= 0.0) continue;
    std::vector<double> weights;
    std::vector<DensityOperator> states;
    weights.reserve(groups.size());
    for (auto& [key_a, g] : groups) {
      weights.push_back(g.mass / p_b);
      states.push_back(DensityOperator::trusted(g.sum.scaled(1.0 / g.mass)));
    }
    total += p_b * holevo_information(CqEnsemble(std::move(weights), std::move(states)));
  }
  return total;
}

Cq4Channel induce_cq4(const Cq2Channel& n2, const ConditionalPmf& x1_given_u1v1,
                      const ConditionalPmf& x2_given_u2v2) {
  if (x1_given_u1v1.x_size() != n2.alphabet1() || x2_given_u2v2.x_size() != n2.alphabet2()) {
    throw validation_error("randomization maps do not match the channel alphabets");
  }
  if (x1_given_u1v1.v_size() != x2_given_u2v2.v_size()) {
    throw validation_error("field inputs of the two senders differ in size");
  }
  const int q = x1_given_u1v1.v_size();
  const int u1 = x1_given_u1v1.u_size();
  const int u2 = x2_given_u2v2.u_size();
  std::vector<DensityOperator> table;
  table.reserve(static_cast<std::size_t>(q) * q * u1 * u2);
  for (int v1 = 0; v1 < q; ++v1) {
    for (int v2 = 0; v2 < q; ++v2) {
      for (int a = 0; a < u1; ++a) {
        for (int c = 0; c < u2; ++c) {
          ComplexMatrix acc(n2.dim());
          for (int x1 = 0; x1 < n2.alphabet1(); ++x1) {
            const double w1 = x1_given_u1v1.prob(a, v1, x1);
            if (w1 <= 0.0) continue;
            for (int x2 = 0; x2 < n2.alphabet2(); ++x2) {
              const double w = w1 * x2_given_u2v2.prob(c, v2, x2);
              if (w <= 0.0) continue;
              acc.add_scaled(w, n2.at(x1, x2).mat());
            }
          }
          table.push_back(DensityOperator::trusted(std::move(acc)));
        }
      }
    }
  }
  return Cq4Channel(q, u1, u2, std::move(table));
}

ClassicalQuantumState build_sigma(const Cq4Channel& n4, const ProductInputPmf& p) {
  check_simplex(p.v1, "first field input");
  check_simplex(p.v2, "second field input");
  check_simplex(p.u1, "first free input");
  check_simplex(p.u2, "second free input");
  const int q = n4.q();
  if (static_cast<int>(p.v1.size()) != q || static_cast<int>(p.v2.size()) != q ||
      static_cast<int>(p.u1.size()) != n4.u1_size() ||
      static_cast<int>(p.u2.size()) != n4.u2_size()) {
    throw validation_error("input PMF sizes do not match the channel");
  }
  const int nu1 = n4.u1_size();
  const int nu2 = n4.u2_size();
  std::vector<double> mass(static_cast<std::size_t>(q) * q * q * nu1 * nu2, 0.0);
  std::vector<DensityOperator> states(mass.size());
  for (int v = 0; v < q; ++v) {
    for (int v1 = 0; v1 < q; ++v1) {
      for (int v2 = 0; v2 < q; ++v2) {
        for (int u1 = 0; u1 < nu1; ++u1) {
          for (int u2 = 0; u2 < nu2; ++u2) {
            const std::size_t flat =
                (((static_cast<std::size_t>(v) * q + v1) * q + v2) * nu1 + u1) * nu2 + u2;
            states[flat] = n4.at(v1, v2, u1, u2);
            if (v == (v1 + v2) % q) {
              mass[flat] = p.v1[v1] * p.v2[v2] * p.u1[u1] * p.u2[u2];
            }
          }
        }
      }
    }
  }
  return ClassicalQuantumState{classical::JointPmf({q, q, q, nu1, nu2}, std::move(mass)),
                               std::move(states)};
}

Cq2Channel parity_qubit_channel(double eta) {
  if (!(eta >= 0.0 && eta <= 0.5)) {
    std::ostringstream os;
    os << "mixing parameter " << eta << " outside [0, 0.5]";
    throw validation_error(os.str());
  }
  ComplexMatrix m0(2);
  m0.at(0, 0) = 0.9545;
  m0.at(0, 1) = cd{0.0, 0.0455};
  m0.at(1, 0) = cd{0.0, -0.0455};
  m0.at(1, 1) = 0.0455;
  ComplexMatrix m1(2);
  m1.at(0, 0) = 0.0455;
  m1.at(0, 1) = cd{0.0, 0.0455};
  m1.at(1, 0) = cd{0.0, -0.0455};
  m1.at(1, 1) = 0.9545;
  const auto s0 = DensityOperator::validated(std::move(m0));
  const auto s1 = DensityOperator::validated(std::move(m1));
  const auto even = mix({1.0 - eta, eta}, {s0, s1});
  const auto odd = mix({1.0 - eta, eta}, {s1, s0});
  return Cq2Channel(2, 2, {even, odd, odd, even});
}

}  // namespace cqfc::cq
