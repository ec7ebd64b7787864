#include "cqfc/optimizer.hpp"

#include <cmath>
#include <limits>

#include "cqfc/errors.hpp"

namespace cqfc::opt {

namespace {

constexpr double kFeasibilitySlack = 1e-12;

// All compositions of `total` into `parts` nonnegative integers, lexicographic.
void compositions(int total, int parts, std::vector<int>& prefix,
                  std::vector<std::vector<int>>& out) {
  if (parts == 1) {
    prefix.push_back(total);
    out.push_back(prefix);
    prefix.pop_back();
    return;
  }
  for (int first = 0; first <= total; ++first) {
    prefix.push_back(first);
    compositions(total - first, parts - 1, prefix, out);
    prefix.pop_back();
  }
}

bool feasible(const std::optional<CostConstraint>& cost,
              const std::vector<std::vector<double>>& point) {
  if (!cost) return true;
  double mean = 0.0;
  for (std::size_t i = 0; i < cost->weights.size(); ++i) {
    mean += cost->weights[i] * point[0][i];
  }
  return mean <= cost->bound + kFeasibilitySlack;
}

}  // namespace

OptimizeResult maximize(const Objective& objective, const std::vector<int>& dims,
                        const std::optional<CostConstraint>& cost, const OptimizeConfig& cfg) {
  if (dims.empty()) throw precondition_error("maximize needs at least one simplex");
  for (int d : dims) {
    if (d < 2) throw precondition_error("maximize needs simplices of dimension at least 2");
  }
  if (cost) {
    if (cost->bound < 0.0) throw precondition_error("cost bound below zero is infeasible");
    if (cost->weights.size() != static_cast<std::size_t>(dims[0])) {
      throw precondition_error("cost weights do not match the first simplex");
    }
  }

  OptimizeResult best;
  best.value = -std::numeric_limits<double>::infinity();
  bool found = false;

  auto consider = [&](const std::vector<std::vector<double>>& point) {
    if (!feasible(cost, point)) return;
    const double value = objective(point);
    ++best.evaluations;
    if (!found || value > best.value) {
      found = true;
      best.value = value;
      best.argmax = point;
    }
  };

  // Grid scan, lexicographic over the concatenated coordinates so the first
  // of any set of ties is the lexicographically smallest.
  std::vector<std::vector<std::vector<double>>> grids(dims.size());
  for (std::size_t s = 0; s < dims.size(); ++s) {
    const int denom = dims[s] == 2 ? cfg.grid_binary : cfg.grid_coarse;
    std::vector<std::vector<int>> integer_points;
    std::vector<int> prefix;
    compositions(denom, dims[s], prefix, integer_points);
    for (const auto& ip : integer_points) {
      std::vector<double> p(ip.size());
      for (std::size_t i = 0; i < ip.size(); ++i) p[i] = static_cast<double>(ip[i]) / denom;
      grids[s].push_back(std::move(p));
    }
  }
  std::vector<std::size_t> cursor(dims.size(), 0);
  std::vector<std::vector<double>> point(dims.size());
  while (true) {
    for (std::size_t s = 0; s < dims.size(); ++s) point[s] = grids[s][cursor[s]];
    consider(point);
    bool wrapped = true;
    for (std::size_t s = dims.size(); s-- > 0;) {
      if (++cursor[s] < grids[s].size()) {
        wrapped = false;
        break;
      }
      cursor[s] = 0;
    }
    if (wrapped) break;
  }

  // The uniform point is not always on the coarse grid; include it so the
  // result is never below it.
  std::vector<std::vector<double>> uniform(dims.size());
  for (std::size_t s = 0; s < dims.size(); ++s) {
    uniform[s].assign(static_cast<std::size_t>(dims[s]), 1.0 / dims[s]);
  }
  consider(uniform);

  if (!found) throw precondition_error("no grid point satisfies the cost constraint");

  // Coordinate ascent from the best grid point, halving the step until it
  // drops below the configured floor. Mass moves pairwise between
  // coordinates, which keeps the point on the simplex.
  double step = 1.0 / cfg.grid_coarse;
  while (step >= cfg.refine_step_min) {
    bool improved = false;
    for (std::size_t s = 0; s < dims.size(); ++s) {
      for (int from = 0; from < dims[s]; ++from) {
        for (int to = 0; to < dims[s]; ++to) {
          if (from == to) continue;
          if (best.argmax[s][from] < step) continue;
          auto candidate = best.argmax;
          candidate[s][from] -= step;
          candidate[s][to] += step;
          if (!feasible(cost, candidate)) continue;
          const double value = objective(candidate);
          ++best.evaluations;
          if (value > best.value) {
            best.value = value;
            best.argmax = std::move(candidate);
            improved = true;
          }
        }
      }
    }
    if (!improved) step *= 0.5;
  }

  return best;
}

}  // namespace cqfc::opt
