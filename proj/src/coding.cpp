#include "cqfc/coding.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>

#include "cqfc/errors.hpp"
#include "cqfc/gf.hpp"
#include "cqfc/hermitian_eig.hpp"
#include "cqfc/rng.hpp"

namespace cqfc::coding {

namespace {

constexpr long long kCodebookCap = 1LL << 20;
constexpr long long kBlockDimCap = 4096;
constexpr long long kGammaEntryCap = 1LL << 26;
constexpr long long kPairCap = 1LL << 22;
constexpr double kSimplexTol = 1e-10;

long long checked_pow(int q, int e, long long cap, const char* what) {
  long long r = 1;
  for (int i = 0; i < e; ++i) {
    r *= q;
    if (r > cap) throw resource_error(std::string(what) + " exceeds the supported size");
  }
  return r;
}

void check_prior(const std::vector<double>& prior, std::size_t want) {
  if (prior.size() != want) {
    throw precondition_error("message prior has the wrong number of entries");
  }
  double total = 0.0;
  for (double w : prior) {
    if (w < 0.0) throw precondition_error("message prior has a negative entry");
    total += w;
  }
  if (std::abs(total - 1.0) > kSimplexTol) {
    throw precondition_error("message prior does not sum to one");
  }
}

ComplexMatrix hermitized(const ComplexMatrix& m) {
  ComplexMatrix out = m;
  const ComplexMatrix adj = m.adjoint();
  out.add_scaled(1.0, adj);
  return out.scaled(0.5);
}

// Tensor chain of the per-letter output states along two codewords.
ComplexMatrix block_state(const SumDecodeSetup& setup, const std::vector<int>& w1,
                          const std::vector<int>& w2) {
  ComplexMatrix acc(1);
  acc.at(0, 0) = 1.0;
  for (int j = 0; j < setup.n; ++j) {
    acc = kron(acc, setup.letters[static_cast<std::size_t>(w1[j]) * setup.q + w2[j]]);
  }
  return acc;
}

long long sum_class(int q, int l, long long m1, long long m2) {
  const std::vector<int> d1 = to_digits(m1, q, l);
  const std::vector<int> d2 = to_digits(m2, q, l);
  std::vector<int> t(d1.size());
  for (std::size_t i = 0; i < t.size(); ++i) t[i] = (d1[i] + d2[i]) % q;
  return from_digits(t, q);
}

}  // namespace

std::vector<int> to_digits(long long index, int q, int len) {
  if (q < 2) throw precondition_error("digit base must be at least 2");
  if (len < 0) throw precondition_error("digit count must be nonnegative");
  if (index < 0) throw precondition_error("digit conversion needs a nonnegative index");
  std::vector<int> digits(static_cast<std::size_t>(len), 0);
  long long rest = index;
  for (int i = len; i-- > 0;) {
    digits[i] = static_cast<int>(rest % q);
    rest /= q;
  }
  if (rest != 0) throw precondition_error("index does not fit in the requested digit count");
  return digits;
}

long long from_digits(const std::vector<int>& digits, int q) {
  if (q < 2) throw precondition_error("digit base must be at least 2");
  long long index = 0;
  for (int d : digits) {
    if (d < 0 || d >= q) throw precondition_error("digit out of range for its base");
    index = index * q + d;
  }
  return index;
}

NestedCosetCode::NestedCosetCode(int q, int n, std::vector<int> inner_rows,
                                 std::vector<int> outer_rows, std::vector<int> dither)
    : q_(q), n_(n), inner_(std::move(inner_rows)), outer_(std::move(outer_rows)),
      dither_(std::move(dither)) {
  gf::PrimeField field(q);  // validates the field size
  if (n_ < 1) throw precondition_error("block length must be at least 1");
  if (inner_.size() % static_cast<std::size_t>(n_) != 0 ||
      outer_.size() % static_cast<std::size_t>(n_) != 0) {
    throw precondition_error("generator rows must have the block length");
  }
  k_ = static_cast<int>(inner_.size()) / n_;
  l_ = static_cast<int>(outer_.size()) / n_;
  if (dither_.size() != static_cast<std::size_t>(n_)) {
    throw precondition_error("dither must have the block length");
  }
  auto check_symbols = [&](const std::vector<int>& v) {
    for (int s : v) {
      if (s < 0 || s >= q_) throw precondition_error("code symbol out of field range");
    }
  };
  check_symbols(inner_);
  check_symbols(outer_);
  check_symbols(dither_);
  checked_pow(q_, k_ + l_, kCodebookCap, "codebook");
}

long long NestedCosetCode::coset_size() const { return checked_pow(q_, k_, kCodebookCap, "coset"); }

long long NestedCosetCode::messages() const {
  return checked_pow(q_, l_, kCodebookCap, "message set");
}

std::vector<int> ncc_encode(const NestedCosetCode& code, const std::vector<int>& a,
                            const std::vector<int>& m) {
  if (a.size() != static_cast<std::size_t>(code.k()) ||
      m.size() != static_cast<std::size_t>(code.l())) {
    throw precondition_error("digit vectors must match the generator row counts");
  }
  const int q = code.q();
  const int n = code.n();
  for (int d : a) {
    if (d < 0 || d >= q) throw precondition_error("quantization digit out of field range");
  }
  for (int d : m) {
    if (d < 0 || d >= q) throw precondition_error("message digit out of field range");
  }
  std::vector<int> word(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    int acc = code.dither()[j];
    for (int i = 0; i < code.k(); ++i) {
      acc = (acc + a[i] * code.inner()[static_cast<std::size_t>(i) * n + j]) % q;
    }
    for (int r = 0; r < code.l(); ++r) {
      acc = (acc + m[r] * code.outer()[static_cast<std::size_t>(r) * n + j]) % q;
    }
    word[j] = acc;
  }
  return word;
}

CosetReps select_coset_reps(const NestedCosetCode& code, const std::vector<double>& target_pmf,
                            double slack) {
  if (target_pmf.size() != static_cast<std::size_t>(code.q())) {
    throw precondition_error("target frequencies must have one entry per field symbol");
  }
  double total = 0.0;
  for (double p : target_pmf) {
    if (p < 0.0) throw precondition_error("target frequencies must be nonnegative");
    total += p;
  }
  if (std::abs(total - 1.0) > kSimplexTol) {
    throw precondition_error("target frequencies must sum to one");
  }
  if (slack < 0.0) throw precondition_error("typicality slack must be nonnegative");

  const int q = code.q();
  const int n = code.n();
  const long long shifts = code.coset_size();
  const long long msgs = code.messages();
  CosetReps reps;
  reps.words.reserve(static_cast<std::size_t>(msgs));
  reps.typical.reserve(static_cast<std::size_t>(msgs));

  std::vector<int> counts(static_cast<std::size_t>(q));
  for (long long msg = 0; msg < msgs; ++msg) {
    const std::vector<int> m = to_digits(msg, q, code.l());
    std::vector<int> best;
    for (long long shift = 0; shift < shifts; ++shift) {
      const std::vector<int> word = ncc_encode(code, to_digits(shift, q, code.k()), m);
      std::fill(counts.begin(), counts.end(), 0);
      for (int s : word) ++counts[s];
      bool typical = true;
      for (int s = 0; s < q && typical; ++s) {
        typical = std::abs(static_cast<double>(counts[s]) / n - target_pmf[s]) <= slack + 1e-12;
      }
      if (typical && (best.empty() || word < best)) best = word;
    }
    if (best.empty()) {
      reps.words.push_back(ncc_encode(code, std::vector<int>(code.k(), 0), m));
      reps.typical.push_back(0);
    } else {
      reps.words.push_back(std::move(best));
      reps.typical.push_back(1);
    }
  }
  return reps;
}

SumDecodeSetup build_channel_state(const NestedCosetCode& code1, const NestedCosetCode& code2,
                                   const cq::Cq2Channel& channel, const CosetReps& reps1,
                                   const CosetReps& reps2, const std::vector<double>& prior) {
  if (code1.q() != code2.q() || code1.n() != code2.n() || code1.inner() != code2.inner() ||
      code1.outer() != code2.outer()) {
    throw precondition_error("both senders must share the same coset generators");
  }
  const int q = code1.q();
  const int n = code1.n();
  if (channel.alphabet1() != q || channel.alphabet2() != q) {
    throw precondition_error("channel alphabets must match the code field");
  }
  const long long msgs = code1.messages();
  auto check_reps = [&](const CosetReps& reps) {
    if (reps.words.size() != static_cast<std::size_t>(msgs) ||
        reps.typical.size() != static_cast<std::size_t>(msgs)) {
      throw precondition_error("coset representatives do not match the message set");
    }
    for (const std::vector<int>& w : reps.words) {
      if (w.size() != static_cast<std::size_t>(n)) {
        throw precondition_error("coset representative has the wrong block length");
      }
      for (int s : w) {
        if (s < 0 || s >= q) throw precondition_error("coset representative symbol out of range");
      }
    }
  };
  check_reps(reps1);
  check_reps(reps2);

  SumDecodeSetup setup;
  setup.q = q;
  setup.n = n;
  setup.l = code1.l();
  setup.letter_dim = channel.dim();
  setup.block_dim = checked_pow(channel.dim(), n, kBlockDimCap, "block output dimension");
  setup.classes = msgs;
  if (msgs * msgs > kPairCap) {
    throw resource_error("message-pair count exceeds the simulation budget");
  }
  if (msgs * setup.block_dim * setup.block_dim > kGammaEntryCap) {
    throw resource_error("sum-class operator storage exceeds the memory budget");
  }
  setup.words1 = reps1.words;
  setup.words2 = reps2.words;
  if (prior.empty()) {
    setup.prior.assign(static_cast<std::size_t>(msgs) * msgs,
                       1.0 / static_cast<double>(msgs * msgs));
  } else {
    check_prior(prior, static_cast<std::size_t>(msgs) * msgs);
    setup.prior = prior;
  }
  setup.letters.reserve(static_cast<std::size_t>(q) * q);
  for (int x1 = 0; x1 < q; ++x1) {
    for (int x2 = 0; x2 < q; ++x2) setup.letters.push_back(channel.at(x1, x2).mat());
  }
  setup.gamma.assign(static_cast<std::size_t>(msgs), ComplexMatrix(static_cast<int>(setup.block_dim)));
  for (long long m1 = 0; m1 < msgs; ++m1) {
    for (long long m2 = 0; m2 < msgs; ++m2) {
      const double w = setup.prior[static_cast<std::size_t>(m1) * msgs + m2];
      if (w == 0.0) continue;
      const ComplexMatrix rho = block_state(setup, setup.words1[m1], setup.words2[m2]);
      setup.gamma[sum_class(q, setup.l, m1, m2)].add_scaled(w, rho);
    }
  }
  return setup;
}

SumMeasurement srm_decoder(const std::vector<ComplexMatrix>& gamma) {
  if (gamma.empty()) throw precondition_error("square-root measurement needs at least one class");
  const int dim = gamma.front().dim();
  if (dim < 1) throw precondition_error("square-root measurement needs a positive dimension");
  ComplexMatrix total(dim);
  for (const ComplexMatrix& g : gamma) {
    if (g.dim() != dim) {
      throw precondition_error("sum-class operators must share one dimension");
    }
    total.add_scaled(1.0, g);
  }
  const ComplexMatrix g_herm = hermitized(total);
  if (g_herm.trace().real() <= 1e-12) {
    throw precondition_error("square-root measurement needs positive class mass");
  }

  const EigResult eig = hermitian_eigensystem(g_herm);
  const double thresh = 1e-12 * std::max(eig.values.front(), 1.0);
  ComplexMatrix scaled_vecs(dim);
  for (int c = 0; c < dim; ++c) {
    const double v = eig.values[c];
    const double s = v > thresh ? 1.0 / std::sqrt(v) : 0.0;
    for (int r = 0; r < dim; ++r) scaled_vecs.at(r, c) = eig.vectors.at(r, c) * s;
  }
  const ComplexMatrix root_inv = scaled_vecs * eig.vectors.adjoint();

  SumMeasurement meas;
  meas.elements.reserve(gamma.size());
  ComplexMatrix acc(dim);
  for (const ComplexMatrix& g : gamma) {
    ComplexMatrix el = hermitized(root_inv * hermitized(g) * root_inv);
    acc.add_scaled(1.0, el);
    meas.elements.push_back(std::move(el));
  }
  meas.failure = ComplexMatrix::identity(dim);
  meas.failure.add_scaled(-1.0, acc);
  return meas;
}

std::vector<double> outcome_distribution(const SumDecodeSetup& setup, const SumMeasurement& meas,
                                         long long m1, long long m2) {
  if (m1 < 0 || m1 >= setup.classes || m2 < 0 || m2 >= setup.classes) {
    throw precondition_error("message index out of range");
  }
  if (meas.elements.size() != static_cast<std::size_t>(setup.classes)) {
    throw precondition_error("measurement does not match the sum classes");
  }
  const ComplexMatrix rho = block_state(setup, setup.words1[m1], setup.words2[m2]);
  std::vector<double> probs(static_cast<std::size_t>(setup.classes) + 1, 0.0);
  double total = 0.0;
  for (long long t = 0; t < setup.classes; ++t) {
    const double p = std::max(0.0, trace_product(meas.elements[t], rho).real());
    probs[t] = p;
    total += p;
  }
  probs.back() = std::max(0.0, trace_product(meas.failure, rho).real());
  total += probs.back();
  if (total <= 0.0) throw precondition_error("outcome distribution has no mass");
  for (double& p : probs) p /= total;
  return probs;
}

double pair_success_probability(const SumDecodeSetup& setup, const SumMeasurement& meas,
                                long long m1, long long m2) {
  const std::vector<double> probs = outcome_distribution(setup, meas, m1, m2);
  return probs[sum_class(setup.q, setup.l, m1, m2)];
}

double exact_error_probability(const SumDecodeSetup& setup, const SumMeasurement& meas) {
  double err = 0.0;
  for (long long m1 = 0; m1 < setup.classes; ++m1) {
    for (long long m2 = 0; m2 < setup.classes; ++m2) {
      const double w = setup.prior[static_cast<std::size_t>(m1) * setup.classes + m2];
      if (w == 0.0) continue;
      err += w * (1.0 - pair_success_probability(setup, meas, m1, m2));
    }
  }
  return err;
}

WilsonInterval wilson95(long long hits, long long trials) {
  if (trials < 1) throw precondition_error("Wilson interval needs at least one trial");
  if (hits < 0 || hits > trials) throw precondition_error("hit count out of range");
  const double z = 1.959963984540054;
  const double nt = static_cast<double>(trials);
  const double p = static_cast<double>(hits) / nt;
  const double denom = 1.0 + z * z / nt;
  const double center = (p + z * z / (2.0 * nt)) / denom;
  const double half = z * std::sqrt(p * (1.0 - p) / nt + z * z / (4.0 * nt * nt)) / denom;
  WilsonInterval w;
  w.low = std::max(0.0, center - half);
  w.high = std::min(1.0, center + half);
  return w;
}

DecodeStats monte_carlo_error(const SumDecodeSetup& setup, const SumMeasurement& meas,
                              long long trials, unsigned long long seed) {
  if (trials < 1) throw precondition_error("simulation needs at least one trial");
  const long long classes = setup.classes;
  DecodeStats stats;
  stats.trials = trials;
  stats.confusion.assign(static_cast<std::size_t>(classes) * (classes + 1), 0);

  std::vector<std::vector<double>> cache(setup.prior.size());
  Rng rng(seed);
  for (long long trial = 0; trial < trials; ++trial) {
    const int pair = rng.draw(setup.prior);
    const long long m1 = pair / classes;
    const long long m2 = pair % classes;
    std::vector<double>& dist = cache[pair];
    if (dist.empty()) dist = outcome_distribution(setup, meas, m1, m2);
    const int outcome = rng.draw(dist);
    const long long truth = sum_class(setup.q, setup.l, m1, m2);
    ++stats.confusion[static_cast<std::size_t>(truth) * (classes + 1) + outcome];
    if (outcome != truth) ++stats.errors;
  }
  stats.error_rate = static_cast<double>(stats.errors) / static_cast<double>(stats.trials);
  stats.error_interval = wilson95(stats.errors, stats.trials);
  return stats;
}

}  // namespace cqfc::coding
