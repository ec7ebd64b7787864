#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "cqfc/classical_info.hpp"
#include "cqfc/cq_model.hpp"
#include "cqfc/optimizer.hpp"

namespace cqfc::regions {

// One operating point: bits per channel use for the function layer (r) and
// the two private layers (r1, r2). Always nonnegative and finite.
struct RateTriple {
  double r = 0.0;
  double r1 = 0.0;
  double r2 = 0.0;
};

enum class Sense { kLe, kGe };

// coeffs . (r, r1, r2) <= bound (or >=), with a human-readable tag naming the
// information quantity behind the bound.
struct Halfspace {
  std::array<double, 3> coeffs{};
  double bound = 0.0;
  Sense sense = Sense::kLe;
  std::string tag;
};

struct HalfspaceRegion {
  std::vector<Halfspace> faces;
  // True when some rate bound came out negative before flooring at zero; the
  // polytope then has no usable positive-rate interior for that input choice.
  bool raw_infeasible = false;
};

enum class Closure { kDownSet, kUpSet };

// Point cloud description of a rate region: `points` are the emitted
// polytope vertices (or corner points), `hull` the extreme points of their
// convex closure after discarding dominated ones. Down-sets extend toward
// the origin from the cloud, up-sets away from it.
struct SampledRegion {
  Closure closure = Closure::kDownSet;
  std::vector<RateTriple> points;
  std::vector<RateTriple> hull;
  long long sampled_pmfs = 0;
};

struct RegionConfig {
  int u1_size = 2;  // transmitter-side auxiliary alphabets
  int u2_size = 2;
  int q_alphabet = 2;  // source-side time-sharing alphabet
  int w1_size = 3;     // source-side test-channel alphabets
  int w2_size = 3;
  int samples = 2000;
  unsigned long long seed = 1;
  // Optional mean-symbol-value cap E[X1] <= cost_bound applied when sampling
  // transmitter randomization maps; draws violating it are discarded.
  std::optional<double> cost_bound;
};

struct IntersectReport {
  bool intersects = false;
  RateTriple witness;  // meaningful only when intersects is true
};

// Result of a scalar sufficiency test: lhs the source requirement, rhs the
// best channel-side value found, holds = (lhs < rhs) strictly.
struct ConditionReport {
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds = false;
  std::vector<std::vector<double>> argmax;  // input PMFs achieving rhs
  long long evaluations = 0;
};

// The seven rate bounds for a four-input channel under a product input PMF,
// plus the three nonnegativity faces, in a fixed order:
//   [0] r   <= I(V;Z|U1,U2) - Imax      [4] r+r2    <= I(V,U2;Z|U1) - Imax
//   [1] r1  <= I(U1;Z|V,U2)             [5] r1+r2   <= I(U1,U2;Z|V)
//   [2] r2  <= I(U2;Z|V,U1)             [6] r+r1+r2 <= I(V,U1,U2;Z) - Imax
//   [3] r+r1 <= I(V,U1;Z|U2) - Imax     [7..9] r, r1, r2 >= 0
// where Imax = max{I(V1;V), I(V2;V)} over the classical input law. Negative
// bounds are floored at zero and flagged via raw_infeasible.
HalfspaceRegion rate_polytope(const cq::Cq4Channel& n4, const cq::ProductInputPmf& p, int q);

// All vertices of the (bounded) region: every feasible intersection of three
// faces, feasibility within 1e-9, deduplicated within 1e-8. An empty list
// means the region has no feasible point.
std::vector<RateTriple> polytope_vertices(const HalfspaceRegion& h);

// Extreme points of the convex hull of a cloud (tolerance 1e-9), with exact
// handling of degenerate clouds: coplanar sets fall back to a planar hull,
// collinear sets to their endpoints, and smaller sets to themselves.
// Output is sorted lexicographically.
std::vector<RateTriple> convex_hull_points(const std::vector<RateTriple>& cloud);

// Points not componentwise-dominated by another point of the cloud
// (maximal: nothing >= them; minimal: nothing <= them). Sorted output.
std::vector<RateTriple> pareto_maximal(const std::vector<RateTriple>& cloud);
std::vector<RateTriple> pareto_minimal(const std::vector<RateTriple>& cloud);

// True when some convex combination h of `pts` satisfies m <= h + 1e-9
// componentwise, i.e. m lies in the down-set closure of the hull of pts.
bool dominated_by_hull(const RateTriple& m, const std::vector<RateTriple>& pts);

// Mirror test: some convex combination h of `pts` satisfies h <= m + 1e-9,
// i.e. m lies in the up-set closure of the hull of pts.
bool hull_reaches_below(const RateTriple& m, const std::vector<RateTriple>& pts);

// Transmission region of a two-sender channel with a sum layer over F_q:
// union over sampled per-sender randomization maps and product input PMFs of
// the rate-polytope vertices, closed downward. The sample stream is
// deterministic given cfg: structured anchor maps first, then snapped and
// raw low-discrepancy draws, then seeded random draws.
SampledRegion channel_region(const cq::Cq2Channel& n2, int q, const RegionConfig& cfg);

// Compression region of a two-source model with a field embedding: union
// over sampled test channels p(q') p(w1|s1,q') p(w2|s2,q') of the corner
// points of {r >= H(V|W1 W2 Q'), r1 >= I(S1;W1|Q' W2), r2 >= I(S2;W2|Q' W1),
// r1+r2 >= I(S1 S2; W1 W2 | Q')}, closed upward. V is the embedded field sum.
SampledRegion source_region(const classical::SourceModel& source, int q,
                            const RegionConfig& cfg);

// True when the two regions share a point: some minimal point of the up-set
// is dominated by the down-set hull (within 1e-9). The witness is that
// common point. Both regions must be nonempty and correctly oriented.
IntersectReport regions_intersect(const SampledRegion& up, const SampledRegion& down);

// Joint-entropy sufficiency test: lhs = H(S1,S2); rhs = max over product
// input PMFs (optionally cost-constrained on the first input) of the Holevo
// information of the induced output ensemble.
ConditionReport unstructured_condition(const classical::SourceModel& source,
                                       const cq::Cq2Channel& n2,
                                       const std::optional<opt::CostConstraint>& cost = std::nullopt,
                                       const opt::OptimizeConfig& ocfg = {});

// Sum-entropy sufficiency test for channels whose output depends on the
// F_q sum of the inputs only (checked): lhs = H of the embedded source sum;
// rhs = max over product inputs of min{H(X1),H(X2)} - H(X1+X2) + Holevo of
// the sum ensemble.
ConditionReport structured_condition(const classical::SourceModel& source,
                                     const cq::Cq2Channel& n2, int q,
                                     const std::optional<opt::CostConstraint>& cost = std::nullopt,
                                     const opt::OptimizeConfig& ocfg = {});

}  // namespace cqfc::regions
