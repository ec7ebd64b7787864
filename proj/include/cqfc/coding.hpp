#pragma once

#include <vector>

#include "cqfc/complex_matrix.hpp"
#include "cqfc/cq_model.hpp"

namespace cqfc::coding {

// Conversions between an integer index and its fixed-length base-q digit
// string, most significant digit first. `to_digits` rejects indices outside
// [0, q^len); `from_digits` rejects digits outside [0, q).
std::vector<int> to_digits(long long index, int q, int len);
long long from_digits(const std::vector<int>& digits, int q);

// A nested coset code over a prime field: an inner generator whose cosets
// quantize the typical set, an outer generator carrying the message, and an
// additive dither. Row-major generators, k and l rows of n symbols each.
// The codebook size q^(k+l) is capped at 2^20.
class NestedCosetCode {
 public:
  NestedCosetCode(int q, int n, std::vector<int> inner_rows, std::vector<int> outer_rows,
                  std::vector<int> dither);

  int q() const { return q_; }
  int n() const { return n_; }
  int k() const { return k_; }
  int l() const { return l_; }
  const std::vector<int>& inner() const { return inner_; }
  const std::vector<int>& outer() const { return outer_; }
  const std::vector<int>& dither() const { return dither_; }
  long long coset_size() const;  // q^k
  long long messages() const;    // q^l

 private:
  int q_, n_, k_, l_;
  std::vector<int> inner_, outer_, dither_;
};

// Codeword for quantization digits `a` (length k) and message digits `m`
// (length l): a * inner + m * outer + dither over the field.
std::vector<int> ncc_encode(const NestedCosetCode& code, const std::vector<int>& a,
                            const std::vector<int>& m);

// One chosen codeword per message. `typical[m]` records whether the word
// meets the empirical-frequency criterion; when no word in the coset does,
// the all-zero quantization digits are used as a deterministic fallback.
struct CosetReps {
  std::vector<std::vector<int>> words;
  std::vector<char> typical;
};

// Scans each message's coset for codewords whose symbol frequencies all sit
// within `slack` of `target_pmf` and keeps the lexicographically smallest
// such word.
CosetReps select_coset_reps(const NestedCosetCode& code, const std::vector<double>& target_pmf,
                            double slack);

// The block-coded decoding problem for the sum of two messages: both senders
// use the same generators (dithers may differ), transmit their selected
// codewords letterwise through the two-input channel, and the receiver must
// identify the digitwise field sum of the messages. `gamma[t]` is the
// prior-weighted average output state of sum class t. The per-block output
// dimension dim^n is capped at 4096 and the class-operator storage at 2^26
// matrix entries.
struct SumDecodeSetup {
  int q = 0;
  int n = 0;
  int l = 0;
  int letter_dim = 0;
  long long block_dim = 0;
  long long classes = 0;                   // q^l
  std::vector<std::vector<int>> words1;    // per-message codewords, sender 1
  std::vector<std::vector<int>> words2;    // per-message codewords, sender 2
  std::vector<double> prior;               // joint message prior, m1-major
  std::vector<ComplexMatrix> letters;      // per-letter output states, x1-major
  std::vector<ComplexMatrix> gamma;        // per sum class
};

// An empty `prior` means uniform over message pairs.
SumDecodeSetup build_channel_state(const NestedCosetCode& code1, const NestedCosetCode& code2,
                                   const cq::Cq2Channel& channel, const CosetReps& reps1,
                                   const CosetReps& reps2,
                                   const std::vector<double>& prior = {});

// Square-root ("pretty good") measurement for the sum classes: with
// G = sum_t gamma[t], the class elements are G^(-1/2) gamma[t] G^(-1/2)
// using the inverse square root on the support of G, and `failure` absorbs
// the rest of the identity.
struct SumMeasurement {
  std::vector<ComplexMatrix> elements;
  ComplexMatrix failure;
};

SumMeasurement srm_decoder(const std::vector<ComplexMatrix>& gamma);

// Outcome distribution for a transmitted message pair: one probability per
// sum class followed by the failure-outcome probability.
std::vector<double> outcome_distribution(const SumDecodeSetup& setup, const SumMeasurement& meas,
                                         long long m1, long long m2);

// Probability of decoding the correct sum class for one message pair.
double pair_success_probability(const SumDecodeSetup& setup, const SumMeasurement& meas,
                                long long m1, long long m2);

// Prior-weighted probability of not decoding the correct sum class.
double exact_error_probability(const SumDecodeSetup& setup, const SumMeasurement& meas);

// 95% Wilson score interval for `hits` out of `trials`.
struct WilsonInterval {
  double low = 0.0;
  double high = 1.0;
};
WilsonInterval wilson95(long long hits, long long trials);

// Samples message pairs from the prior and decode outcomes from the exact
// outcome distribution. `confusion` is classes x (classes + 1), row-major by
// true sum class, with the failure outcome in the last column.
struct DecodeStats {
  long long trials = 0;
  long long errors = 0;
  double error_rate = 0.0;
  WilsonInterval error_interval;
  std::vector<long long> confusion;
};

DecodeStats monte_carlo_error(const SumDecodeSetup& setup, const SumMeasurement& meas,
                              long long trials, unsigned long long seed);

}  // namespace cqfc::coding
