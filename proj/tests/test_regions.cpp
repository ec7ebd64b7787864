#include <cmath>
#include <complex>
#include <vector>

#include "cqfc/classical_info.hpp"
#include "cqfc/cq_model.hpp"
#include "cqfc/errors.hpp"
#include "cqfc/regions.hpp"
#include "cqfc/rng.hpp"
#include "doctest.h"
#include "oracle_helpers.hpp"
#include "test_support.hpp"

using cqfc::DensityOperator;
using cqfc::precondition_error;
using cqfc::Rng;
using namespace cqfc::regions;
namespace classical = cqfc::classical;
namespace cq = cqfc::cq;
namespace opt = cqfc::opt;

namespace {

// Closed-form Holevo information of the uniform two-state parity ensemble at
// mixing level eta, from the printed matrix entries only.
double oracle_parity_chi(double eta) {
  const std::complex<double> off{0.0, 0.0455};
  const double top = (1.0 - eta) * 0.9545 + eta * 0.0455;
  const auto even = oracle::eig2x2(top, 1.0 - top, off);
  const auto odd = oracle::eig2x2(1.0 - top, top, off);
  const auto avg = oracle::eig2x2(0.5, 0.5, off);
  const double h_avg = oracle::shannon_entropy({avg[0], avg[1]});
  const double h_even = oracle::shannon_entropy({even[0], even[1]});
  const double h_odd = oracle::shannon_entropy({odd[0], odd[1]});
  return h_avg - 0.5 * h_even - 0.5 * h_odd;
}

classical::SourceModel skewed_xor_source() {
  classical::JointPmf pmf({2, 2}, support::skewed_pair_masses());
  std::vector<std::vector<int>> f = {{0, 1}, {1, 0}};
  classical::Embedding emb;
  emb.q = 2;
  emb.h1 = {0, 1};
  emb.h2 = {0, 1};
  emb.g = {0, 1};
  return {std::move(pmf), std::move(f), emb};
}

cq::Cq2Channel constant_channel() {
  const DensityOperator s = DensityOperator::validated(support::bright_qubit());
  return {2, 2, {s, s, s, s}};
}

cq::Cq2Channel classical_parity_channel() {
  cqfc::ComplexMatrix p0(2);
  p0.at(0, 0) = 1.0;
  cqfc::ComplexMatrix p1(2);
  p1.at(1, 1) = 1.0;
  const DensityOperator d0 = DensityOperator::validated(p0);
  const DensityOperator d1 = DensityOperator::validated(p1);
  return {2, 2, {d0, d1, d1, d0}};
}

bool contains_point(const std::vector<RateTriple>& cloud, const RateTriple& t, double tol) {
  for (const RateTriple& p : cloud) {
    if (std::abs(p.r - t.r) <= tol && std::abs(p.r1 - t.r1) <= tol &&
        std::abs(p.r2 - t.r2) <= tol) {
      return true;
    }
  }
  return false;
}

double face_violation(const Halfspace& f, const RateTriple& t) {
  const double lhs = f.coeffs[0] * t.r + f.coeffs[1] * t.r1 + f.coeffs[2] * t.r2;
  return f.sense == Sense::kLe ? lhs - f.bound : f.bound - lhs;
}

HalfspaceRegion box_region(double cap0, double cap1, double cap2) {
  HalfspaceRegion h;
  h.faces.push_back({{1, 0, 0}, cap0, Sense::kLe, "r cap"});
  h.faces.push_back({{0, 1, 0}, cap1, Sense::kLe, "r1 cap"});
  h.faces.push_back({{0, 0, 1}, cap2, Sense::kLe, "r2 cap"});
  h.faces.push_back({{1, 0, 0}, 0.0, Sense::kGe, "r >= 0"});
  h.faces.push_back({{0, 1, 0}, 0.0, Sense::kGe, "r1 >= 0"});
  h.faces.push_back({{0, 0, 1}, 0.0, Sense::kGe, "r2 >= 0"});
  return h;
}

SampledRegion manual_region(Closure closure, std::vector<RateTriple> pts) {
  SampledRegion r;
  r.closure = closure;
  r.points = std::move(pts);
  r.hull = r.points;
  r.sampled_pmfs = 1;
  return r;
}

RegionConfig small_cfg(int samples, unsigned long long seed = 11) {
  RegionConfig cfg;
  cfg.samples = samples;
  cfg.seed = seed;
  return cfg;
}

}  // namespace

TEST_CASE("sum-layer bound matches the closed-form ensemble information at zero mixing") {
  const auto n2 = cq::parity_qubit_channel(0.0);
  const auto n4 = cq::induce_cq4(n2, cq::ConditionalPmf::pass_through(1, 2),
                                 cq::ConditionalPmf::pass_through(1, 2));
  cq::ProductInputPmf p{{0.5, 0.5}, {0.5, 0.5}, {1.0}, {1.0}};
  const HalfspaceRegion h = rate_polytope(n4, p, 2);
  REQUIRE(h.faces.size() == 10);
  CHECK(!h.raw_infeasible);
  // Uniform summands make the sum-layer penalty vanish, so the first bound is
  // exactly the unconditional ensemble information.
  CHECK(h.faces[0].bound == doctest::Approx(oracle_parity_chi(0.0)).epsilon(1e-9));
  CHECK(h.faces[0].bound == doctest::Approx(0.7371159078).epsilon(1e-9));
  // Trivial auxiliaries carry nothing.
  CHECK(h.faces[1].bound <= 1e-9);
  CHECK(h.faces[2].bound <= 1e-9);
  CHECK(h.faces[6].bound == doctest::Approx(h.faces[0].bound).epsilon(1e-9));
  CHECK(h.faces[0].sense == Sense::kLe);
  CHECK(h.faces[7].sense == Sense::kGe);
}

TEST_CASE("conditioning on idle auxiliaries equals the unconditional quantity") {
  const auto n2 = cq::parity_qubit_channel(0.15);
  // Auxiliaries of size two that the randomization maps ignore completely.
  const auto n4 = cq::induce_cq4(n2, cq::ConditionalPmf::pass_through(2, 2),
                                 cq::ConditionalPmf::pass_through(2, 2));
  cq::ProductInputPmf p{{0.5, 0.5}, {0.5, 0.5}, {0.3, 0.7}, {0.6, 0.4}};
  const HalfspaceRegion h = rate_polytope(n4, p, 2);
  const auto sigma = cq::build_sigma(n4, p);
  const double unconditional = cq::conditional_qmi(sigma, {0});
  CHECK(h.faces[0].bound == doctest::Approx(unconditional).epsilon(1e-8));
}

TEST_CASE("a deterministic first summand turns the penalty into the second's entropy") {
  const auto n2 = cq::parity_qubit_channel(0.1);
  const auto n4 = cq::induce_cq4(n2, cq::ConditionalPmf::pass_through(1, 2),
                                 cq::ConditionalPmf::pass_through(1, 2));
  cq::ProductInputPmf p{{1.0, 0.0}, {0.9, 0.1}, {1.0}, {1.0}};
  const HalfspaceRegion h = rate_polytope(n4, p, 2);
  const auto sigma = cq::build_sigma(n4, p);
  // The sum variable is a copy of the second summand here.
  const auto v_marginal = sigma.pmf.marginal({0});
  CHECK(v_marginal.mass({0}) == doctest::Approx(0.9).epsilon(1e-12));
  CHECK(v_marginal.mass({1}) == doctest::Approx(0.1).epsilon(1e-12));
  const double i_v = cq::conditional_qmi(sigma, {0}, {3, 4});
  const double expected = std::max(0.0, i_v - oracle::binary_entropy(0.1));
  CHECK(h.faces[0].bound == doctest::Approx(expected).epsilon(1e-9));
}

TEST_CASE("negative rate bounds floor at zero and raise the infeasibility flag") {
  const auto n2 = cq::parity_qubit_channel(0.25);
  const auto n4 = cq::induce_cq4(n2, cq::ConditionalPmf::pass_through(1, 2),
                                 cq::ConditionalPmf::pass_through(1, 2));
  // Deterministic first summand with a uniform second: the penalty is a full
  // bit while the channel carries far less.
  cq::ProductInputPmf p{{1.0, 0.0}, {0.5, 0.5}, {1.0}, {1.0}};
  const HalfspaceRegion h = rate_polytope(n4, p, 2);
  CHECK(h.raw_infeasible);
  CHECK(h.faces[0].bound == 0.0);
  CHECK(h.faces[6].bound == 0.0);
}

TEST_CASE("field size must match the channel") {
  const auto n2 = cq::parity_qubit_channel(0.1);
  const auto n4 = cq::induce_cq4(n2, cq::ConditionalPmf::pass_through(1, 2),
                                 cq::ConditionalPmf::pass_through(1, 2));
  cq::ProductInputPmf p{{0.5, 0.5}, {0.5, 0.5}, {1.0}, {1.0}};
  CHECK_THROWS_AS(rate_polytope(n4, p, 3), precondition_error);
}

TEST_CASE("vertex enumeration recovers the unit cube") {
  const auto verts = polytope_vertices(box_region(1.0, 1.0, 1.0));
  CHECK(verts.size() == 8);
  for (const RateTriple& v : verts) {
    for (double c : {v.r, v.r1, v.r2}) {
      CHECK((std::abs(c) <= 1e-12 || std::abs(c - 1.0) <= 1e-12));
    }
  }
}

TEST_CASE("vertex enumeration recovers the simplex") {
  HalfspaceRegion h;
  h.faces.push_back({{1, 1, 1}, 1.0, Sense::kLe, "sum cap"});
  h.faces.push_back({{1, 0, 0}, 0.0, Sense::kGe, "r >= 0"});
  h.faces.push_back({{0, 1, 0}, 0.0, Sense::kGe, "r1 >= 0"});
  h.faces.push_back({{0, 0, 1}, 0.0, Sense::kGe, "r2 >= 0"});
  const auto verts = polytope_vertices(h);
  CHECK(verts.size() == 4);
  CHECK(contains_point(verts, {0, 0, 0}, 1e-12));
  CHECK(contains_point(verts, {1, 0, 0}, 1e-12));
  CHECK(contains_point(verts, {0, 1, 0}, 1e-12));
  CHECK(contains_point(verts, {0, 0, 1}, 1e-12));
}

TEST_CASE("a zero cap collapses that direction instead of emptying the region") {
  const auto verts = polytope_vertices(box_region(0.0, 1.0, 1.0));
  CHECK(verts.size() == 4);
  for (const RateTriple& v : verts) CHECK(v.r == 0.0);
}

TEST_CASE("sampled polytope vertices satisfy their generating inequalities") {
  const auto n2 = cq::parity_qubit_channel(0.12);
  Rng rng(404);
  int total_vertices = 0;
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> rows1, rows2;
    for (int r = 0; r < 2 * 2; ++r) {
      const auto row = rng.simplex(2);
      rows1.insert(rows1.end(), row.begin(), row.end());
    }
    for (int r = 0; r < 2 * 2; ++r) {
      const auto row = rng.simplex(2);
      rows2.insert(rows2.end(), row.begin(), row.end());
    }
    const cq::ConditionalPmf c1(2, 2, 2, rows1);
    const cq::ConditionalPmf c2(2, 2, 2, rows2);
    const auto n4 = cq::induce_cq4(n2, c1, c2);
    cq::ProductInputPmf p{rng.simplex(2), rng.simplex(2), rng.simplex(2), rng.simplex(2)};
    const HalfspaceRegion h = rate_polytope(n4, p, 2);
    for (const RateTriple& v : polytope_vertices(h)) {
      ++total_vertices;
      for (const Halfspace& f : h.faces) CHECK(face_violation(f, v) <= 1e-9);
    }
  }
  CHECK(total_vertices > 0);
}

TEST_CASE("hull of a box cloud is its corner set") {
  std::vector<RateTriple> cloud;
  for (int a = 0; a <= 1; ++a) {
    for (int b = 0; b <= 1; ++b) {
      for (int c = 0; c <= 1; ++c) cloud.push_back({double(a), double(b), double(c)});
    }
  }
  cloud.push_back({0.5, 0.5, 0.5});
  cloud.push_back({0.5, 0.5, 0.0});
  cloud.push_back({1.0, 0.5, 0.5});
  const auto hull = convex_hull_points(cloud);
  CHECK(hull.size() == 8);
  for (int a = 0; a <= 1; ++a) {
    for (int b = 0; b <= 1; ++b) {
      for (int c = 0; c <= 1; ++c) {
        CHECK(contains_point(hull, {double(a), double(b), double(c)}, 1e-12));
      }
    }
  }
}

TEST_CASE("hull handles flat, collinear, and single-point clouds") {
  std::vector<RateTriple> flat = {{0, 0, 0.3}, {1, 0, 0.3}, {0, 1, 0.3}, {1, 1, 0.3},
                                  {0.5, 0.5, 0.3}, {0.25, 0.5, 0.3}};
  const auto flat_hull = convex_hull_points(flat);
  CHECK(flat_hull.size() == 4);
  CHECK(contains_point(flat_hull, {1, 1, 0.3}, 1e-12));
  CHECK(!contains_point(flat_hull, {0.5, 0.5, 0.3}, 1e-12));

  std::vector<RateTriple> line = {{0, 0, 0}, {0.25, 0.25, 0.25}, {0.5, 0.5, 0.5}, {1, 1, 1}};
  const auto line_hull = convex_hull_points(line);
  CHECK(line_hull.size() == 2);
  CHECK(contains_point(line_hull, {0, 0, 0}, 1e-12));
  CHECK(contains_point(line_hull, {1, 1, 1}, 1e-12));

  std::vector<RateTriple> dup = {{0.3, 0.4, 0.5}, {0.3, 0.4, 0.5}, {0.3, 0.4, 0.5}};
  CHECK(convex_hull_points(dup).size() == 1);
}

TEST_CASE("hull supports every linear functional as well as its cloud") {
  Rng rng(777);
  std::vector<RateTriple> cloud;
  for (int i = 0; i < 40; ++i) {
    cloud.push_back({rng.uniform01(), rng.uniform01(), rng.uniform01()});
  }
  const auto hull = convex_hull_points(cloud);
  for (const RateTriple& hp : hull) CHECK(contains_point(cloud, hp, 1e-12));
  for (int trial = 0; trial < 25; ++trial) {
    const double d0 = 2.0 * rng.uniform01() - 1.0;
    const double d1 = 2.0 * rng.uniform01() - 1.0;
    const double d2 = 2.0 * rng.uniform01() - 1.0;
    auto score = [&](const RateTriple& t) { return d0 * t.r + d1 * t.r1 + d2 * t.r2; };
    double best_cloud = -1e300, best_hull = -1e300;
    for (const RateTriple& t : cloud) best_cloud = std::max(best_cloud, score(t));
    for (const RateTriple& t : hull) best_hull = std::max(best_hull, score(t));
    CHECK(best_cloud - best_hull <= 1e-9);
  }
}

TEST_CASE("pareto filters keep exactly the undominated points") {
  std::vector<RateTriple> cloud = {{1, 0, 0}, {0.5, 0.5, 0}, {0.4, 0.4, 0}, {0, 0, 0}, {1, 1, 1}};
  const auto maxs = pareto_maximal(cloud);
  CHECK(maxs.size() == 1);
  CHECK(contains_point(maxs, {1, 1, 1}, 1e-12));
  const auto mins = pareto_minimal(cloud);
  CHECK(mins.size() == 1);
  CHECK(contains_point(mins, {0, 0, 0}, 1e-12));

  Rng rng(31);
  std::vector<RateTriple> rnd;
  for (int i = 0; i < 60; ++i) rnd.push_back({rng.uniform01(), rng.uniform01(), rng.uniform01()});
  const auto frontier = pareto_maximal(rnd);
  for (const RateTriple& p : frontier) CHECK(contains_point(rnd, p, 1e-12));
  // Nothing on the frontier dominates anything else on it.
  for (const RateTriple& a : frontier) {
    for (const RateTriple& b : frontier) {
      if (&a == &b) continue;
      const bool dominates = a.r >= b.r && a.r1 >= b.r1 && a.r2 >= b.r2 &&
                             (a.r + a.r1 + a.r2 > b.r + b.r1 + b.r2 + 1e-12);
      CHECK(!dominates);
    }
  }
  // Every dropped point is dominated by a kept one.
  for (const RateTriple& p : rnd) {
    if (contains_point(frontier, p, 1e-12)) continue;
    bool covered = false;
    for (const RateTriple& q : frontier) {
      if (q.r >= p.r - 1e-12 && q.r1 >= p.r1 - 1e-12 && q.r2 >= p.r2 - 1e-12) {
        covered = true;
        break;
      }
    }
    CHECK(covered);
  }
}

TEST_CASE("dominance testing sees convex combinations, not just cloud points") {
  const std::vector<RateTriple> pts = {{1, 0, 0}, {0, 1, 0}};
  CHECK(dominated_by_hull({0.5, 0.5, 0.0}, pts));
  CHECK(!dominated_by_hull({0.6, 0.5, 0.0}, pts));
  CHECK(dominated_by_hull({0, 0, 0}, pts));
  CHECK(!dominated_by_hull({2, 0, 0}, {{1, 3, 3}, {1, 0, 0}}));
  // The mirrored test reaches downward.
  CHECK(hull_reaches_below({0.5, 0.5, 1.0}, pts));
  CHECK(!hull_reaches_below({0.4, 0.4, 1.0}, pts));
  CHECK(!dominated_by_hull({0.1, 0.1, 0.1}, {}));
}

TEST_CASE("channel region of a constant channel is the origin") {
  const auto region = channel_region(constant_channel(), 2, small_cfg(60));
  CHECK(region.closure == Closure::kDownSet);
  CHECK(region.sampled_pmfs == 60);
  REQUIRE(!region.points.empty());
  for (const RateTriple& p : region.points) {
    CHECK(p.r <= 1e-9);
    CHECK(p.r1 <= 1e-9);
    CHECK(p.r2 <= 1e-9);
  }
  CHECK(region.hull.size() == 1);
}

TEST_CASE("channel region of a noiseless parity channel reaches a full sum bit") {
  const auto region = channel_region(classical_parity_channel(), 2, small_cfg(250));
  CHECK(dominated_by_hull({1.0, 0.0, 0.0}, region.hull));
  CHECK(contains_point(region.points, {1.0, 0.0, 0.0}, 1e-9));
}

TEST_CASE("channel region rejects an empty budget and a negative cost") {
  CHECK_THROWS_AS(channel_region(constant_channel(), 2, small_cfg(0)), precondition_error);
  RegionConfig cfg = small_cfg(10);
  cfg.cost_bound = -0.5;
  CHECK_THROWS_AS(channel_region(constant_channel(), 2, cfg), precondition_error);
}

TEST_CASE("cost filtering only removes points") {
  const auto n2 = cq::parity_qubit_channel(0.2);
  RegionConfig free_cfg = small_cfg(120, 7);
  const auto free_region = channel_region(n2, 2, free_cfg);
  RegionConfig cost_cfg = free_cfg;
  cost_cfg.cost_bound = 0.1;
  const auto cost_region = channel_region(n2, 2, cost_cfg);
  CHECK(cost_region.sampled_pmfs == free_region.sampled_pmfs);
  CHECK(cost_region.points.size() <= free_region.points.size());
  for (const RateTriple& p : cost_region.points) {
    CHECK(contains_point(free_region.points, p, 5e-9));
  }
}

TEST_CASE("growing the sampling budget never shrinks the transmission region") {
  const auto n2 = cq::parity_qubit_channel(0.2);
  const auto small_region = channel_region(n2, 2, small_cfg(60, 5));
  const auto big_region = channel_region(n2, 2, small_cfg(200, 5));
  const auto big_frontier = pareto_maximal(big_region.points);
  for (const RateTriple& p : small_region.hull) {
    CHECK(dominated_by_hull(p, big_frontier));
  }
}

TEST_CASE("source region contains the no-description corner") {
  const auto region = source_region(skewed_xor_source(), 2, small_cfg(60));
  CHECK(region.closure == Closure::kUpSet);
  const double h_sum = oracle::binary_entropy(0.004);
  CHECK(contains_point(region.points, {h_sum, 0.0, 0.0}, 1e-9));
  CHECK(contains_point(region.points, {0.0376223, 0.0, 0.0}, 5e-7));
}

TEST_CASE("source region contains both full-description corners") {
  const auto region = source_region(skewed_xor_source(), 2, small_cfg(60));
  const auto masses = support::skewed_pair_masses();
  const double h12 = oracle::shannon_entropy(masses);
  const double h1 = oracle::binary_entropy(masses[0] + masses[1]);
  const double h2 = oracle::binary_entropy(masses[0] + masses[2]);
  // Describing each source fully splits the sum bound into the two classic
  // corners; the frontier midpoint rides along.
  CHECK(contains_point(region.points, {0.0, h12 - h2, h2}, 1e-9));
  CHECK(contains_point(region.points, {0.0, h1, h12 - h1}, 1e-9));
  const double mid1 = (h12 - h2 + h1) / 2.0;
  const double mid2 = (h12 - h1 + h2) / 2.0;
  CHECK(contains_point(region.points, {0.0, mid1, mid2}, 1e-9));
}

TEST_CASE("source region needs an embedding and a budget") {
  classical::JointPmf pmf({2, 2}, support::skewed_pair_masses());
  const classical::SourceModel bare(pmf, {{0, 1}, {1, 0}});
  CHECK_THROWS_AS(source_region(bare, 2, small_cfg(10)), precondition_error);
  CHECK_THROWS_AS(source_region(skewed_xor_source(), 2, small_cfg(0)), precondition_error);
  CHECK_THROWS_AS(source_region(skewed_xor_source(), 3, small_cfg(10)), precondition_error);
}

TEST_CASE("growing the sampling budget never shrinks the compression region") {
  const auto small_region = source_region(skewed_xor_source(), 2, small_cfg(40, 9));
  const auto big_region = source_region(skewed_xor_source(), 2, small_cfg(150, 9));
  const auto big_frontier = pareto_minimal(big_region.points);
  for (const RateTriple& p : small_region.hull) {
    CHECK(hull_reaches_below(p, big_frontier));
  }
}

TEST_CASE("region intersection finds common points and honors orientation") {
  const auto up_origin = manual_region(Closure::kUpSet, {{0, 0, 0}});
  const auto down_unit = manual_region(Closure::kDownSet, {{1, 1, 1}});
  const auto hit = regions_intersect(up_origin, down_unit);
  CHECK(hit.intersects);
  CHECK(hit.witness.r == 0.0);
  CHECK(hit.witness.r1 == 0.0);
  CHECK(hit.witness.r2 == 0.0);

  const auto up_far = manual_region(Closure::kUpSet, {{2, 0, 0}});
  const auto down_capped = manual_region(Closure::kDownSet, {{1, 5, 5}});
  CHECK(!regions_intersect(up_far, down_capped).intersects);

  CHECK_THROWS_AS(regions_intersect(down_unit, up_origin), precondition_error);
  CHECK_THROWS_AS(regions_intersect(manual_region(Closure::kUpSet, {}), down_unit),
                  precondition_error);
}

TEST_CASE("region intersection is stable when the down-set grows") {
  const auto up = manual_region(Closure::kUpSet, {{1, 1, 0}});
  CHECK(regions_intersect(up, manual_region(Closure::kDownSet, {{1, 1, 0}})).intersects);
  // The old corner becomes a convex combination of the new extremes; the
  // verdict must survive that.
  const auto grown = manual_region(Closure::kDownSet, {{2, 0, 0}, {0, 2, 0}});
  CHECK(regions_intersect(up, grown).intersects);
  const auto grown_more =
      manual_region(Closure::kDownSet, {{2, 0, 0}, {0, 2, 0}, {0.1, 0.1, 0.1}});
  CHECK(regions_intersect(up, grown_more).intersects);
}

TEST_CASE("demo source and channel regions overlap at moderate mixing") {
  const auto source = source_region(skewed_xor_source(), 2, small_cfg(80));
  const auto channel = channel_region(cq::parity_qubit_channel(0.20), 2, small_cfg(250));
  const auto hit = regions_intersect(source, channel);
  CHECK(hit.intersects);
  // The witness really lies in the transmission region.
  CHECK(dominated_by_hull(hit.witness, pareto_maximal(channel.points)));
}

TEST_CASE("no overlap against a constant channel") {
  const auto source = source_region(skewed_xor_source(), 2, small_cfg(80));
  const auto channel = channel_region(constant_channel(), 2, small_cfg(80));
  CHECK(!regions_intersect(source, channel).intersects);
}

TEST_CASE("joint-entropy test against a constant channel always fails") {
  const auto rep = unstructured_condition(skewed_xor_source(), constant_channel());
  CHECK(rep.lhs > 0.1);
  CHECK(rep.rhs <= 1e-9);
  CHECK(!rep.holds);
}

TEST_CASE("joint-entropy test at zero mixing reaches the closed-form maximum") {
  const auto rep = unstructured_condition(skewed_xor_source(), cq::parity_qubit_channel(0.0));
  const auto masses = support::skewed_pair_masses();
  CHECK(rep.lhs == doctest::Approx(oracle::shannon_entropy(masses)).epsilon(1e-12));
  CHECK(rep.rhs == doctest::Approx(oracle_parity_chi(0.0)).epsilon(1e-9));
  CHECK(rep.holds);
  CHECK(rep.evaluations > 0);
}

TEST_CASE("joint-entropy test flips between low and high mixing under a cost cap") {
  opt::CostConstraint cost;
  cost.weights = {0.0, 1.0};
  cost.bound = 0.1;
  const auto low = unstructured_condition(skewed_xor_source(), cq::parity_qubit_channel(0.10), cost);
  CHECK(low.holds);
  const auto high =
      unstructured_condition(skewed_xor_source(), cq::parity_qubit_channel(0.30), cost);
  CHECK(!high.holds);
  CHECK(low.rhs > high.rhs);
}

TEST_CASE("sum-entropy test flips between low and high mixing under a cost cap") {
  opt::CostConstraint cost;
  cost.weights = {0.0, 1.0};
  cost.bound = 0.1;
  const auto low =
      structured_condition(skewed_xor_source(), cq::parity_qubit_channel(0.05), 2, cost);
  CHECK(low.lhs == doctest::Approx(0.0376223).epsilon(2e-5));
  CHECK(std::abs(low.lhs - 0.0376223) <= 5e-7);
  CHECK(low.lhs == doctest::Approx(oracle::binary_entropy(0.004)).epsilon(1e-12));
  CHECK(low.holds);
  const auto high =
      structured_condition(skewed_xor_source(), cq::parity_qubit_channel(0.20), 2, cost);
  CHECK(!high.holds);
}

TEST_CASE("sum-entropy test at zero mixing is at least the ensemble information") {
  const auto rep = structured_condition(skewed_xor_source(), cq::parity_qubit_channel(0.0), 2);
  CHECK(rep.rhs >= oracle_parity_chi(0.0) - 1e-9);
  CHECK(rep.rhs <= 1.0 + 1e-9);
  CHECK(rep.holds);
}

TEST_CASE("sum-entropy test rejects channels that are not sum-determined") {
  const auto base = cq::parity_qubit_channel(0.1);
  const cq::Cq2Channel bad(2, 2, {base.at(0, 0), base.at(0, 0), base.at(0, 1), base.at(0, 0)});
  CHECK_THROWS_WITH_AS(structured_condition(skewed_xor_source(), bad, 2),
                       doctest::Contains("not determined by the input sum"), precondition_error);
  CHECK_THROWS_AS(structured_condition(skewed_xor_source(), base, 3), precondition_error);
  classical::JointPmf pmf({2, 2}, support::skewed_pair_masses());
  const classical::SourceModel bare(pmf, {{0, 1}, {1, 0}});
  CHECK_THROWS_AS(structured_condition(bare, base, 2), precondition_error);
}
