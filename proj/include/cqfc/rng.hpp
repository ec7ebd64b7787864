#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace cqfc {

// Deterministic random source. Sampling helpers are hand-rolled so a fixed seed
// yields the same stream on every standard library.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next_u64() { return gen_(); }

  // Uniform in [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  // Uniform integer in [0, n). n must be positive.
  std::uint64_t below(std::uint64_t n) {
    // Rejection sampling keeps the draw unbiased.
    std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t x;
    do {
      x = gen_();
    } while (x >= limit);
    return x % n;
  }

  // Random point on the probability simplex of the given size.
  std::vector<double> simplex(int size) {
    // Exponential spacings normalized; deterministic given the stream.
    std::vector<double> p(size);
    double total = 0.0;
    for (int i = 0; i < size; ++i) {
      double u = uniform01();
      if (u <= 0.0) u = 0x1.0p-53;
      p[i] = -std::log(u);
      total += p[i];
    }
    for (double& x : p) x /= total;
    return p;
  }

  // Draw an index from a PMF (inverse CDF walk).
  int draw(const std::vector<double>& pmf) {
    double u = uniform01();
    double acc = 0.0;
    for (std::size_t i = 0; i < pmf.size(); ++i) {
      acc += pmf[i];
      if (u < acc) return static_cast<int>(i);
    }
    return static_cast<int>(pmf.size()) - 1;
  }

 private:
  std::mt19937_64 gen_;
};

// Halton low-discrepancy sequence over [0,1)^dims, index starts at 1.
class Halton {
 public:
  explicit Halton(int dims);
  std::vector<double> next();

 private:
  std::vector<int> bases_;
  std::uint64_t index_ = 0;
};

}  // namespace cqfc
