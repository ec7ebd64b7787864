#pragma once

#include <functional>
#include <optional>
#include <vector>

namespace cqfc::opt {

// Linear constraint on the first simplex: sum_i weights[i] * p[i] <= bound.
struct CostConstraint {
  std::vector<double> weights;
  double bound = 0.0;
};

struct OptimizeResult {
  std::vector<std::vector<double>> argmax;  // one PMF per simplex
  double value = 0.0;
  long long evaluations = 0;  // objective calls made
};

struct OptimizeConfig {
  int grid_binary = 200;  // grid denominator for two-point simplices
  int grid_coarse = 40;   // grid denominator for larger simplices
  double refine_step_min = 1e-6;
};

using Objective = std::function<double(const std::vector<std::vector<double>>&)>;

// Best-found maximization over a product of probability simplices: full grid
// scan (the uniform point always included), then coordinate ascent with step
// halving. Deterministic; ties resolved toward the lexicographically smallest
// argmax. Not a certificate of global optimality.
OptimizeResult maximize(const Objective& objective, const std::vector<int>& dims,
                        const std::optional<CostConstraint>& cost = std::nullopt,
                        const OptimizeConfig& cfg = {});

}  // namespace cqfc::opt
