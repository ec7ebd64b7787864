#pragma once

#include <vector>

#include "cqfc/classical_info.hpp"
#include "cqfc/complex_matrix.hpp"

namespace cqfc::cq {

// Two-sender channel with classical inputs and a quantum output: a complete
// table (x1, x2) -> density operator, all of one dimension.
class Cq2Channel {
 public:
  Cq2Channel(int alphabet1, int alphabet2, std::vector<DensityOperator> table);

  int alphabet1() const { return a1_; }
  int alphabet2() const { return a2_; }
  int dim() const { return table_.front().dim(); }
  const DensityOperator& at(int x1, int x2) const;

 private:
  int a1_;
  int a2_;
  std::vector<DensityOperator> table_;
};

// Four-sender channel: two field-valued inputs v1, v2 over a prime alphabet q
// and two free inputs u1, u2.
class Cq4Channel {
 public:
  Cq4Channel(int q, int u1_size, int u2_size, std::vector<DensityOperator> table);

  int q() const { return q_; }
  int u1_size() const { return u1_; }
  int u2_size() const { return u2_; }
  int dim() const { return table_.front().dim(); }
  const DensityOperator& at(int v1, int v2, int u1, int u2) const;

 private:
  int q_;
  int u1_;
  int u2_;
  std::vector<DensityOperator> table_;
};

// Row-stochastic conditional p(x | u, v), rows indexed by (u, v).
class ConditionalPmf {
 public:
  ConditionalPmf(int u_size, int v_size, int x_size, std::vector<double> probs);

  // p(x | u, v) = 1{x == v}; x and v share an alphabet.
  static ConditionalPmf pass_through(int u_size, int v_size);
  // p(x | u, v) = 1{x == x0} regardless of (u, v).
  static ConditionalPmf constant(int u_size, int v_size, int x_size, int x0);

  int u_size() const { return u_; }
  int v_size() const { return v_; }
  int x_size() const { return x_; }
  double prob(int u, int v, int x) const {
    return probs_[(static_cast<std::size_t>(u) * v_ + v) * x_ + x];
  }

 private:
  int u_;
  int v_;
  int x_;
  std::vector<double> probs_;
};

// Four independent input PMFs, one per sender register.
struct ProductInputPmf {
  std::vector<double> v1;
  std::vector<double> v2;
  std::vector<double> u1;
  std::vector<double> u2;
};

// Finite ensemble of states under a classical PMF.
class CqEnsemble {
 public:
  CqEnsemble(std::vector<double> weights, std::vector<DensityOperator> states);

  std::size_t size() const { return weights_.size(); }
  double weight(std::size_t i) const { return weights_[i]; }
  const DensityOperator& state(std::size_t i) const { return states_[i]; }

 private:
  std::vector<double> weights_;
  std::vector<DensityOperator> states_;
};

// Entropy of the average state minus the average entropy, in bits.
double holevo_information(const CqEnsemble& e);

// Classical registers with one attached state per joint symbol. The classical
// side stays symbolic: no tensor embedding of the index registers.
struct ClassicalQuantumState {
  classical::JointPmf pmf;
  std::vector<DensityOperator> states;  // one per pmf flat index
};

// I(A ; Z | B) with A, B disjoint classical register subsets: the B-weighted
// Holevo information of the conditional ensembles. Zero-mass conditioning
// values are skipped. An empty B gives plain I(A ; Z).
double conditional_qmi(const ClassicalQuantumState& s, const std::vector<int>& a,
                       const std::vector<int>& b = {});

// Four-input channel induced by per-sender randomization maps:
// rho_{v1 v2 u1 u2} = sum_{x1 x2} p(x1|u1 v1) p(x2|u2 v2) rho_{x1 x2}.
Cq4Channel induce_cq4(const Cq2Channel& n2, const ConditionalPmf& x1_given_u1v1,
                      const ConditionalPmf& x2_given_u2v2);

// The evaluation state for the four-input rate bounds: classical registers
// (V, V1, V2, U1, U2) with V pinned to V1 + V2 over F_q, each symbol carrying
// the channel output for (v1, v2, u1, u2).
ClassicalQuantumState build_sigma(const Cq4Channel& n4, const ProductInputPmf& p);

// Demo channel family: binary x binary inputs, qubit output depending only on
// x1 xor x2. At eta = 0 parity 0 emits a fixed nearly pure state; eta mixes in
// the mirrored state, washing out at eta = 0.5.
Cq2Channel parity_qubit_channel(double eta);

}  // namespace cqfc::cq
