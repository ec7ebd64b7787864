#include "cqfc/regions.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <set>
#include <sstream>
#include <utility>

#include "cqfc/errors.hpp"
#include "cqfc/rng.hpp"

namespace cqfc::regions {

namespace {

constexpr double kGeomTol = 1e-9;        // hull / feasibility tolerance
constexpr double kVertexDedupTol = 1e-8; // vertex deduplication radius
constexpr double kDominanceTol = 1e-9;   // componentwise dominance slack

using Vec3 = std::array<double, 3>;

Vec3 to_vec(const RateTriple& t) { return {t.r, t.r1, t.r2}; }
RateTriple to_triple(const Vec3& v) { return {v[0], v[1], v[2]}; }

Vec3 sub(const Vec3& a, const Vec3& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }
Vec3 scale(const Vec3& a, double w) { return {a[0] * w, a[1] * w, a[2] * w}; }
double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }
Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}
double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }

bool lex_less(const RateTriple& a, const RateTriple& b) {
  if (a.r != b.r) return a.r < b.r;
  if (a.r1 != b.r1) return a.r1 < b.r1;
  return a.r2 < b.r2;
}

double max_abs_gap(const RateTriple& a, const RateTriple& b) {
  return std::max({std::abs(a.r - b.r), std::abs(a.r1 - b.r1), std::abs(a.r2 - b.r2)});
}

// Lexicographic sort, then merge points within `tol`. The backward scan can
// stop once the first coordinate alone exceeds the tolerance.
std::vector<RateTriple> sort_dedup(std::vector<RateTriple> pts, double tol) {
  std::sort(pts.begin(), pts.end(), lex_less);
  std::vector<RateTriple> out;
  out.reserve(pts.size());
  for (const RateTriple& p : pts) {
    bool dup = false;
    for (auto it = out.rbegin(); it != out.rend() && p.r - it->r <= tol; ++it) {
      if (max_abs_gap(p, *it) <= tol) {
        dup = true;
        break;
      }
    }
    if (!dup) out.push_back(p);
  }
  return out;
}

bool ge_all(const RateTriple& a, const RateTriple& b) {
  return a.r >= b.r - 1e-12 && a.r1 >= b.r1 - 1e-12 && a.r2 >= b.r2 - 1e-12;
}

double coord_sum(const RateTriple& a) { return a.r + a.r1 + a.r2; }

std::vector<RateTriple> pareto_filter(const std::vector<RateTriple>& cloud, bool maximal) {
  std::vector<RateTriple> pts = sort_dedup(cloud, kGeomTol);
  std::vector<RateTriple> out;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    bool beaten = false;
    for (std::size_t j = 0; j < pts.size() && !beaten; ++j) {
      if (i == j) continue;
      const bool covers = maximal ? ge_all(pts[j], pts[i]) : ge_all(pts[i], pts[j]);
      const double gap = maximal ? coord_sum(pts[j]) - coord_sum(pts[i])
                                 : coord_sum(pts[i]) - coord_sum(pts[j]);
      if (covers && gap > 1e-12) beaten = true;
    }
    if (!beaten) out.push_back(pts[i]);
  }
  return out;
}

bool solve3(const std::array<Vec3, 3>& a, const Vec3& b, Vec3& x) {
  const double det = a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) -
                     a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0]) +
                     a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
  if (std::abs(det) < 1e-9) return false;
  auto det_with = [&](int col) {
    std::array<Vec3, 3> m = a;
    for (int r = 0; r < 3; ++r) m[r][col] = b[r];
    return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
           m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
           m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
  };
  for (int c = 0; c < 3; ++c) x[c] = det_with(c) / det;
  return true;
}

// Runs phase-1 simplex (Bland's rule, so it terminates) on a 4-row tableau
// and returns the residual infeasibility. `basis` holds the starting basic
// column per row; columns past nvar are the artificials, which never
// re-enter because the objective row only scans structural columns.
double phase1_residual(std::vector<std::vector<double>>& row, std::array<double, 4>& rhs,
                       std::array<int, 4>& basis, const std::vector<int>& art_rows, int nvar) {
  std::vector<double> w(nvar, 0.0);
  double w_rhs = 0.0;
  for (int r : art_rows) {
    for (int c = 0; c < nvar; ++c) w[c] += row[r][c];
    w_rhs += rhs[r];
  }

  const int max_iters = 500 + 20 * nvar;
  for (int iter = 0; iter < max_iters; ++iter) {
    int enter = -1;
    for (int c = 0; c < nvar; ++c) {
      if (w[c] > 1e-9) {
        enter = c;
        break;
      }
    }
    if (enter < 0) break;
    int leave = -1;
    double best_ratio = 0.0;
    for (int r = 0; r < 4; ++r) {
      if (row[r][enter] > 1e-11) {
        const double ratio = rhs[r] / row[r][enter];
        if (leave < 0 || ratio < best_ratio - 1e-15 ||
            (std::abs(ratio - best_ratio) <= 1e-15 && basis[r] < basis[leave])) {
          leave = r;
          best_ratio = ratio;
        }
      }
    }
    if (leave < 0) break;  // unbounded direction cannot occur here; bail out
    const double piv = row[leave][enter];
    for (int c = 0; c < nvar; ++c) row[leave][c] /= piv;
    rhs[leave] /= piv;
    for (int r = 0; r < 4; ++r) {
      if (r == leave) continue;
      const double f = row[r][enter];
      if (f == 0.0) continue;
      for (int c = 0; c < nvar; ++c) row[r][c] -= f * row[leave][c];
      rhs[r] -= f * rhs[leave];
    }
    const double fw = w[enter];
    if (fw != 0.0) {
      for (int c = 0; c < nvar; ++c) w[c] -= fw * row[leave][c];
      w_rhs -= fw * rhs[leave];
    }
    basis[leave] = enter;
  }
  return w_rhs;
}

// Phase-1 simplex feasibility for { lambda on the simplex over `pts` :
// sum_i lambda_i * dir * p_i >= dir * m - tol (componentwise) }.
bool hull_side_feasible(const RateTriple& mt, const std::vector<RateTriple>& pts, double dir) {
  if (pts.empty()) return false;
  const Vec3 m = to_vec(mt);

  // Cheap pass: a single cloud point already on the right side.
  for (const RateTriple& pt : pts) {
    const Vec3 p = to_vec(pt);
    bool good = true;
    for (int j = 0; j < 3 && good; ++j) good = dir * p[j] >= dir * m[j] - kDominanceTol;
    if (good) return true;
  }
  const int k = static_cast<int>(pts.size());
  if (k == 1) return false;

  // Tableau rows: three dominance rows (with surplus variables) and the
  // simplex-weight normalization, each given an artificial when its natural
  // slack cannot start basic.
  const int nvar = k + 3;
  std::vector<std::vector<double>> row(4, std::vector<double>(nvar, 0.0));
  std::array<double, 4> rhs{};
  std::array<int, 4> basis{-1, -1, -1, -1};
  std::vector<int> art_rows;

  for (int j = 0; j < 3; ++j) {
    double bj = dir * m[j] - kDominanceTol;
    const double sign = bj < 0.0 ? -1.0 : 1.0;
    for (int i = 0; i < k; ++i) row[j][i] = sign * dir * to_vec(pts[i])[j];
    row[j][k + j] = -sign;  // surplus
    rhs[j] = sign * bj;
    if (sign < 0.0) {
      basis[j] = k + j;  // slack starts basic
    } else {
      art_rows.push_back(j);
    }
  }
  for (int i = 0; i < k; ++i) row[3][i] = 1.0;
  rhs[3] = 1.0;
  art_rows.push_back(3);

  for (std::size_t t = 0; t < art_rows.size(); ++t) {
    basis[art_rows[t]] = nvar + static_cast<int>(t);
  }

  return phase1_residual(row, rhs, basis, art_rows, nvar) <= 1e-9;
}

// Whether `mt` is (within roughly the geometry tolerance) a convex
// combination of `pts`: three equality rows plus the weight normalization,
// every row backed by an artificial.
bool in_convex_hull(const RateTriple& mt, const std::vector<RateTriple>& pts) {
  if (pts.empty()) return false;
  const Vec3 m = to_vec(mt);
  const int nvar = static_cast<int>(pts.size());
  std::vector<std::vector<double>> row(4, std::vector<double>(nvar, 0.0));
  std::array<double, 4> rhs{};
  std::array<int, 4> basis{-1, -1, -1, -1};
  const std::vector<int> art_rows = {0, 1, 2, 3};

  for (int j = 0; j < 3; ++j) {
    const double sign = m[j] < 0.0 ? -1.0 : 1.0;
    for (int i = 0; i < nvar; ++i) row[j][i] = sign * to_vec(pts[i])[j];
    rhs[j] = sign * m[j];
  }
  for (int i = 0; i < nvar; ++i) row[3][i] = 1.0;
  rhs[3] = 1.0;
  for (std::size_t t = 0; t < art_rows.size(); ++t) {
    basis[art_rows[t]] = nvar + static_cast<int>(t);
  }

  return phase1_residual(row, rhs, basis, art_rows, nvar) <= 5e-9;
}

// Drops every point that is a convex combination of the other kept points.
// Extreme points are never combinations of anything else, so they all
// survive; a non-extreme point always finds its certificate among points
// not yet removed, because the extremes are still there when it is tested.
std::vector<RateTriple> extreme_points_only(const std::vector<RateTriple>& pts) {
  const std::size_t n = pts.size();
  if (n <= 2) return pts;
  std::vector<bool> removed(n, false);
  std::vector<RateTriple> others;
  for (std::size_t i = 0; i < n; ++i) {
    others.clear();
    for (std::size_t j = 0; j < n; ++j) {
      if (j != i && !removed[j]) others.push_back(pts[j]);
    }
    removed[i] = in_convex_hull(pts[i], others);
  }
  std::vector<RateTriple> kept;
  for (std::size_t i = 0; i < n; ++i) {
    if (!removed[i]) kept.push_back(pts[i]);
  }
  return kept;
}

double clamp0(double x) { return x < 0.0 ? 0.0 : x; }

std::vector<double> uniform_pmf(int n) { return std::vector<double>(n, 1.0 / n); }

void snap_quarters(std::vector<double>& row) {
  for (double& x : row) x = std::round(x * 4.0) / 4.0;
}

void normalize_pmf(std::vector<double>& row) {
  double total = 0.0;
  for (double x : row) total += x;
  if (total < 1e-12) {
    std::fill(row.begin(), row.end(), 1.0 / static_cast<double>(row.size()));
    return;
  }
  for (double& x : row) x /= total;
}

// ---------- transmitter-side sampling ----------

struct ChannelDraw {
  cq::ConditionalPmf c1;
  cq::ConditionalPmf c2;
  cq::ProductInputPmf in;
};

cq::ConditionalPmf one_hot_conditional(int u_size, int v_size, int x_size,
                                       const std::function<int(int, int, int)>& pick) {
  std::vector<double> probs(static_cast<std::size_t>(u_size) * v_size * x_size, 0.0);
  for (int u = 0; u < u_size; ++u) {
    for (int v = 0; v < v_size; ++v) {
      const int x = pick(u, v, x_size);
      probs[(static_cast<std::size_t>(u) * v_size + v) * x_size + x] = 1.0;
    }
  }
  return {u_size, v_size, x_size, std::move(probs)};
}

const std::vector<std::function<int(int, int, int)>>& anchor_maps() {
  static const std::vector<std::function<int(int, int, int)>> maps = {
      [](int, int v, int xs) { return v % xs; },
      [](int u, int, int xs) { return u % xs; },
      [](int u, int v, int xs) { return (u + v) % xs; },
      [](int u, int v, int xs) { return (u * v) % xs; },
      [](int, int, int) { return 0; },
  };
  return maps;
}

std::vector<std::vector<double>> skew_pmfs(int n) {
  std::vector<std::vector<double>> out;
  out.push_back(uniform_pmf(n));
  if (n > 1) {
    std::vector<double> first(n, 0.2 / (n - 1));
    first[0] = 0.8;
    std::vector<double> last(n, 0.2 / (n - 1));
    last[n - 1] = 0.8;
    out.push_back(std::move(first));
    out.push_back(std::move(last));
  }
  return out;
}

std::vector<ChannelDraw> channel_draws(const cq::Cq2Channel& n2, int q, const RegionConfig& cfg) {
  const int a1 = n2.alphabet1();
  const int a2 = n2.alphabet2();
  const int u1 = cfg.u1_size;
  const int u2 = cfg.u2_size;

  std::vector<ChannelDraw> draws;
  draws.reserve(static_cast<std::size_t>(cfg.samples));

  // Structured anchors: deterministic randomization maps under a few input
  // skews. These hit the polytope corners that matter in practice.
  const auto& maps = anchor_maps();
  const auto pu1s = skew_pmfs(u1);
  const auto pu2s = skew_pmfs(u2);
  for (const auto& m1 : maps) {
    for (const auto& m2 : maps) {
      for (const auto& p1 : pu1s) {
        for (const auto& p2 : pu2s) {
          if (static_cast<int>(draws.size()) >= cfg.samples) return draws;
          draws.push_back({one_hot_conditional(u1, q, a1, m1), one_hot_conditional(u2, q, a2, m2),
                           {uniform_pmf(q), uniform_pmf(q), p1, p2}});
        }
      }
    }
  }

  const int remaining = cfg.samples - static_cast<int>(draws.size());
  const int snapped = remaining / 3;
  const int raw = remaining / 3;
  const int random = remaining - snapped - raw;

  const int dims = u1 * q * a1 + u2 * q * a2 + 2 * q + u1 + u2;
  Halton halton(dims);
  auto from_params = [&](const std::vector<double>& x, bool snap) {
    std::size_t off = 0;
    auto take_row = [&](int len) {
      std::vector<double> row(x.begin() + off, x.begin() + off + len);
      off += len;
      if (snap) snap_quarters(row);
      normalize_pmf(row);
      return row;
    };
    std::vector<double> probs1;
    probs1.reserve(static_cast<std::size_t>(u1) * q * a1);
    for (int r = 0; r < u1 * q; ++r) {
      const auto row = take_row(a1);
      probs1.insert(probs1.end(), row.begin(), row.end());
    }
    std::vector<double> probs2;
    probs2.reserve(static_cast<std::size_t>(u2) * q * a2);
    for (int r = 0; r < u2 * q; ++r) {
      const auto row = take_row(a2);
      probs2.insert(probs2.end(), row.begin(), row.end());
    }
    cq::ProductInputPmf in;
    in.v1 = take_row(q);
    in.v2 = take_row(q);
    in.u1 = take_row(u1);
    in.u2 = take_row(u2);
    return ChannelDraw{{u1, q, a1, std::move(probs1)}, {u2, q, a2, std::move(probs2)}, std::move(in)};
  };

  for (int i = 0; i < snapped; ++i) draws.push_back(from_params(halton.next(), true));
  for (int i = 0; i < raw; ++i) draws.push_back(from_params(halton.next(), false));

  Rng rng(cfg.seed);
  for (int i = 0; i < random; ++i) {
    std::vector<double> probs1;
    for (int r = 0; r < u1 * q; ++r) {
      const auto row = rng.simplex(a1);
      probs1.insert(probs1.end(), row.begin(), row.end());
    }
    std::vector<double> probs2;
    for (int r = 0; r < u2 * q; ++r) {
      const auto row = rng.simplex(a2);
      probs2.insert(probs2.end(), row.begin(), row.end());
    }
    cq::ProductInputPmf in;
    in.v1 = rng.simplex(q);
    in.v2 = rng.simplex(q);
    in.u1 = rng.simplex(u1);
    in.u2 = rng.simplex(u2);
    draws.push_back({{u1, q, a1, std::move(probs1)}, {u2, q, a2, std::move(probs2)}, std::move(in)});
  }
  return draws;
}

double mean_symbol_value(const cq::ConditionalPmf& c, const std::vector<double>& pu,
                         const std::vector<double>& pv) {
  double mean = 0.0;
  for (int u = 0; u < c.u_size(); ++u) {
    for (int v = 0; v < c.v_size(); ++v) {
      for (int x = 0; x < c.x_size(); ++x) {
        mean += pu[u] * pv[v] * c.prob(u, v, x) * x;
      }
    }
  }
  return mean;
}

// ---------- source-side sampling ----------

struct SourceDraw {
  std::vector<double> pq;     // over the time-sharing alphabet
  std::vector<double> rows1;  // p(w1 | s1, q'), row-major over (s1, q')
  std::vector<double> rows2;
};

std::vector<SourceDraw> source_draws(int s1n, int s2n, const RegionConfig& cfg) {
  const int qn = cfg.q_alphabet;
  const int w1 = cfg.w1_size;
  const int w2 = cfg.w2_size;

  std::vector<SourceDraw> draws;
  draws.reserve(static_cast<std::size_t>(cfg.samples));

  // Anchors: nothing / everything / first-slot-gated descriptions.
  using WMap = std::function<int(int, int)>;
  const std::vector<WMap> wmaps = {
      [](int, int) { return 0; },
      [](int s, int) { return s; },
      [](int s, int qq) { return qq == 0 ? s : 0; },
  };
  auto one_hot_rows = [](int s_size, int q_size, int w_size, const WMap& pick) {
    std::vector<double> rows(static_cast<std::size_t>(s_size) * q_size * w_size, 0.0);
    for (int s = 0; s < s_size; ++s) {
      for (int qq = 0; qq < q_size; ++qq) {
        const int w = pick(s, qq) % w_size;
        rows[(static_cast<std::size_t>(s) * q_size + qq) * w_size + w] = 1.0;
      }
    }
    return rows;
  };
  std::vector<std::vector<double>> pqs;
  {
    std::vector<double> point(qn, 0.0);
    point[0] = 1.0;
    pqs.push_back(std::move(point));
    pqs.push_back(uniform_pmf(qn));
  }
  for (const auto& m1 : wmaps) {
    for (const auto& m2 : wmaps) {
      for (const auto& pq : pqs) {
        if (static_cast<int>(draws.size()) >= cfg.samples) return draws;
        draws.push_back({pq, one_hot_rows(s1n, qn, w1, m1), one_hot_rows(s2n, qn, w2, m2)});
      }
    }
  }

  const int remaining = cfg.samples - static_cast<int>(draws.size());
  const int snapped = remaining / 3;
  const int raw = remaining / 3;
  const int random = remaining - snapped - raw;

  const int dims = qn + s1n * qn * w1 + s2n * qn * w2;
  Halton halton(dims);
  auto from_params = [&](const std::vector<double>& x, bool snap) {
    std::size_t off = 0;
    auto take_row = [&](int len) {
      std::vector<double> row(x.begin() + off, x.begin() + off + len);
      off += len;
      if (snap) snap_quarters(row);
      normalize_pmf(row);
      return row;
    };
    SourceDraw d;
    d.pq = take_row(qn);
    for (int r = 0; r < s1n * qn; ++r) {
      const auto row = take_row(w1);
      d.rows1.insert(d.rows1.end(), row.begin(), row.end());
    }
    for (int r = 0; r < s2n * qn; ++r) {
      const auto row = take_row(w2);
      d.rows2.insert(d.rows2.end(), row.begin(), row.end());
    }
    return d;
  };

  for (int i = 0; i < snapped; ++i) draws.push_back(from_params(halton.next(), true));
  for (int i = 0; i < raw; ++i) draws.push_back(from_params(halton.next(), false));

  Rng rng(cfg.seed);
  for (int i = 0; i < random; ++i) {
    SourceDraw d;
    d.pq = rng.simplex(qn);
    for (int r = 0; r < s1n * qn; ++r) {
      const auto row = rng.simplex(w1);
      d.rows1.insert(d.rows1.end(), row.begin(), row.end());
    }
    for (int r = 0; r < s2n * qn; ++r) {
      const auto row = rng.simplex(w2);
      d.rows2.insert(d.rows2.end(), row.begin(), row.end());
    }
    draws.push_back(std::move(d));
  }
  return draws;
}

}  // namespace

HalfspaceRegion rate_polytope(const cq::Cq4Channel& n4, const cq::ProductInputPmf& p, int q) {
  if (q != n4.q()) {
    throw precondition_error("rate polytope: field size does not match the channel");
  }
  const cq::ClassicalQuantumState sigma = cq::build_sigma(n4, p);
  // Classical registers of sigma: V=0, V1=1, V2=2, U1=3, U2=4.
  const double i_v = cq::conditional_qmi(sigma, {0}, {3, 4});
  const double i_u1 = cq::conditional_qmi(sigma, {3}, {0, 4});
  const double i_u2 = cq::conditional_qmi(sigma, {4}, {0, 3});
  const double i_vu1 = cq::conditional_qmi(sigma, {0, 3}, {4});
  const double i_vu2 = cq::conditional_qmi(sigma, {0, 4}, {3});
  const double i_u12 = cq::conditional_qmi(sigma, {3, 4}, {0});
  const double i_all = cq::conditional_qmi(sigma, {0, 3, 4});
  const double i_max = std::max(sigma.pmf.mutual_information({1}, {0}),
                                sigma.pmf.mutual_information({2}, {0}));

  HalfspaceRegion h;
  auto push = [&](Vec3 c, double raw, const char* tag) {
    if (raw < -kGeomTol) h.raw_infeasible = true;
    h.faces.push_back({{c[0], c[1], c[2]}, clamp0(raw), Sense::kLe, tag});
  };
  push({1, 0, 0}, i_v - i_max, "r <= I(V;Z|U1,U2) - Imax");
  push({0, 1, 0}, i_u1, "r1 <= I(U1;Z|V,U2)");
  push({0, 0, 1}, i_u2, "r2 <= I(U2;Z|V,U1)");
  push({1, 1, 0}, i_vu1 - i_max, "r+r1 <= I(V,U1;Z|U2) - Imax");
  push({1, 0, 1}, i_vu2 - i_max, "r+r2 <= I(V,U2;Z|U1) - Imax");
  push({0, 1, 1}, i_u12, "r1+r2 <= I(U1,U2;Z|V)");
  push({1, 1, 1}, i_all - i_max, "r+r1+r2 <= I(V,U1,U2;Z) - Imax");
  h.faces.push_back({{1, 0, 0}, 0.0, Sense::kGe, "r >= 0"});
  h.faces.push_back({{0, 1, 0}, 0.0, Sense::kGe, "r1 >= 0"});
  h.faces.push_back({{0, 0, 1}, 0.0, Sense::kGe, "r2 >= 0"});
  return h;
}

std::vector<RateTriple> polytope_vertices(const HalfspaceRegion& h) {
  struct Row {
    Vec3 a;
    double b;
  };
  std::vector<Row> rows;
  rows.reserve(h.faces.size());
  for (const Halfspace& f : h.faces) {
    Vec3 a = {f.coeffs[0], f.coeffs[1], f.coeffs[2]};
    double b = f.bound;
    if (f.sense == Sense::kGe) {
      a = scale(a, -1.0);
      b = -b;
    }
    rows.push_back({a, b});
  }
  const int n = static_cast<int>(rows.size());
  std::vector<RateTriple> verts;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      for (int k = j + 1; k < n; ++k) {
        Vec3 x;
        if (!solve3({rows[i].a, rows[j].a, rows[k].a}, {rows[i].b, rows[j].b, rows[k].b}, x)) {
          continue;
        }
        // Rates live in the nonnegative orthant; tiny negative solutions are
        // rounding residue and get clamped before the feasibility check.
        bool in_orthant = true;
        for (double& c : x) {
          if (c < -1e-12) {
            in_orthant = false;
            break;
          }
          c = clamp0(c);
        }
        if (!in_orthant) continue;
        bool feasible = true;
        for (const Row& row : rows) {
          if (dot(row.a, x) > row.b + kGeomTol) {
            feasible = false;
            break;
          }
        }
        if (!feasible) continue;
        const RateTriple t = to_triple(x);
        bool dup = false;
        for (const RateTriple& v : verts) {
          if (max_abs_gap(t, v) <= kVertexDedupTol) {
            dup = true;
            break;
          }
        }
        if (!dup) verts.push_back(t);
      }
    }
  }
  return verts;
}

std::vector<RateTriple> pareto_maximal(const std::vector<RateTriple>& cloud) {
  return pareto_filter(cloud, true);
}

std::vector<RateTriple> pareto_minimal(const std::vector<RateTriple>& cloud) {
  return pareto_filter(cloud, false);
}

bool dominated_by_hull(const RateTriple& m, const std::vector<RateTriple>& pts) {
  return hull_side_feasible(m, pts, 1.0);
}

bool hull_reaches_below(const RateTriple& m, const std::vector<RateTriple>& pts) {
  return hull_side_feasible(m, pts, -1.0);
}

std::vector<RateTriple> convex_hull_points(const std::vector<RateTriple>& cloud) {
  std::vector<RateTriple> pts = sort_dedup(cloud, kGeomTol);
  const int n = static_cast<int>(pts.size());
  if (n <= 2) return pts;
  std::vector<Vec3> v(n);
  for (int i = 0; i < n; ++i) v[i] = to_vec(pts[i]);

  // Build a frame from the cloud's extent: a farthest point, then the point
  // farthest from that line, then from that plane. Failures at each step
  // drop the hull to the corresponding lower-dimensional case.
  int i1 = -1;
  double best = kGeomTol;
  for (int i = 1; i < n; ++i) {
    const double d = norm(sub(v[i], v[0]));
    if (d > best) {
      best = d;
      i1 = i;
    }
  }
  if (i1 < 0) return {pts[0]};
  const Vec3 e1 = scale(sub(v[i1], v[0]), 1.0 / best);

  int i2 = -1;
  best = kGeomTol;
  for (int i = 0; i < n; ++i) {
    const Vec3 w = sub(v[i], v[0]);
    const Vec3 perp = sub(w, scale(e1, dot(w, e1)));
    const double d = norm(perp);
    if (d > best) {
      best = d;
      i2 = i;
    }
  }
  if (i2 < 0) {
    // Collinear: the two extremes along the line.
    int lo = 0, hi = 0;
    double tlo = 0.0, thi = 0.0;
    for (int i = 0; i < n; ++i) {
      const double t = dot(sub(v[i], v[0]), e1);
      if (t < tlo) {
        tlo = t;
        lo = i;
      }
      if (t > thi) {
        thi = t;
        hi = i;
      }
    }
    std::vector<RateTriple> out = {pts[lo], pts[hi]};
    return sort_dedup(std::move(out), 0.0);
  }
  const Vec3 w2 = sub(v[i2], v[0]);
  const Vec3 perp2 = sub(w2, scale(e1, dot(w2, e1)));
  const Vec3 e2 = scale(perp2, 1.0 / norm(perp2));
  const Vec3 nrm = cross(e1, e2);

  int i3 = -1;
  best = kGeomTol;
  for (int i = 0; i < n; ++i) {
    const double d = std::abs(dot(sub(v[i], v[0]), nrm));
    if (d > best) {
      best = d;
      i3 = i;
    }
  }
  if (i3 < 0) {
    // Coplanar: planar hull via a monotone chain in the (e1, e2) frame.
    struct P2 {
      double x, y;
      int idx;
    };
    std::vector<P2> q(n);
    for (int i = 0; i < n; ++i) {
      const Vec3 w = sub(v[i], v[0]);
      q[i] = {dot(w, e1), dot(w, e2), i};
    }
    std::sort(q.begin(), q.end(), [](const P2& a, const P2& b) {
      return a.x != b.x ? a.x < b.x : a.y < b.y;
    });
    auto turn = [](const P2& o, const P2& a, const P2& b) {
      return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
    };
    auto chain = [&](auto begin, auto end) {
      std::vector<P2> hull;
      for (auto it = begin; it != end; ++it) {
        while (hull.size() >= 2 && turn(hull[hull.size() - 2], hull.back(), *it) <= kGeomTol) {
          hull.pop_back();
        }
        hull.push_back(*it);
      }
      return hull;
    };
    const auto lower = chain(q.begin(), q.end());
    const auto upper = chain(q.rbegin(), q.rend());
    std::set<int> ids;
    for (const P2& p : lower) ids.insert(p.idx);
    for (const P2& p : upper) ids.insert(p.idx);
    std::vector<RateTriple> out;
    out.reserve(ids.size());
    for (int id : ids) out.push_back(pts[id]);
    std::sort(out.begin(), out.end(), lex_less);
    return out;
  }

  // Full-dimensional cloud: incremental hull seeded with the frame
  // tetrahedron; every face keeps an outward unit normal, oriented against a
  // fixed interior point.
  struct Face {
    int a, b, c;
    Vec3 n;
    double d;
  };
  const Vec3 interior = scale(
      {v[0][0] + v[i1][0] + v[i2][0] + v[i3][0], v[0][1] + v[i1][1] + v[i2][1] + v[i3][1],
       v[0][2] + v[i1][2] + v[i2][2] + v[i3][2]},
      0.25);
  auto make_face = [&](int a, int b, int c, Face& f) {
    Vec3 nr = cross(sub(v[b], v[a]), sub(v[c], v[a]));
    const double ln = norm(nr);
    if (ln < 1e-12) return false;
    nr = scale(nr, 1.0 / ln);
    double d = dot(nr, v[a]);
    if (dot(nr, interior) - d > 0.0) {
      std::swap(b, c);
      nr = scale(nr, -1.0);
      d = -d;
    }
    f = {a, b, c, nr, d};
    return true;
  };
  std::vector<Face> faces;
  {
    const std::array<std::array<int, 3>, 4> seed = {{{0, i1, i2}, {0, i1, i3}, {0, i2, i3}, {i1, i2, i3}}};
    for (const auto& s : seed) {
      Face f;
      if (make_face(s[0], s[1], s[2], f)) faces.push_back(f);
    }
  }
  for (int idx = 0; idx < n; ++idx) {
    if (idx == 0 || idx == i1 || idx == i2 || idx == i3) continue;
    std::vector<char> visible(faces.size(), 0);
    bool any = false;
    for (std::size_t fi = 0; fi < faces.size(); ++fi) {
      if (dot(faces[fi].n, v[idx]) - faces[fi].d > kGeomTol) {
        visible[fi] = 1;
        any = true;
      }
    }
    if (!any) continue;
    std::set<std::pair<int, int>> edges;
    for (std::size_t fi = 0; fi < faces.size(); ++fi) {
      if (!visible[fi]) continue;
      const Face& f = faces[fi];
      edges.insert({f.a, f.b});
      edges.insert({f.b, f.c});
      edges.insert({f.c, f.a});
    }
    std::vector<Face> kept;
    kept.reserve(faces.size());
    for (std::size_t fi = 0; fi < faces.size(); ++fi) {
      if (!visible[fi]) kept.push_back(faces[fi]);
    }
    faces.swap(kept);
    for (const auto& e : edges) {
      if (edges.count({e.second, e.first}) > 0) continue;  // interior to the visible patch
      Face f;
      if (make_face(e.first, e.second, idx, f)) faces.push_back(f);
    }
  }
  std::set<int> ids;
  for (const Face& f : faces) {
    ids.insert(f.a);
    ids.insert(f.b);
    ids.insert(f.c);
  }
  std::vector<RateTriple> out;
  out.reserve(ids.size());
  for (int id : ids) out.push_back(pts[id]);
  // Incremental insertion can leave fan vertices sitting inside a facet
  // (points that were extreme for an early prefix of the cloud and became
  // coplanar later); keep genuinely extreme points only.
  out = extreme_points_only(out);
  std::sort(out.begin(), out.end(), lex_less);
  return out;
}

SampledRegion channel_region(const cq::Cq2Channel& n2, int q, const RegionConfig& cfg) {
  if (!classical::is_prime(q)) {
    throw precondition_error("channel region needs a prime field size");
  }
  if (cfg.samples < 1) {
    throw precondition_error("channel region needs a positive sample budget");
  }
  if (cfg.u1_size < 1 || cfg.u2_size < 1) {
    throw precondition_error("channel region needs nonempty auxiliary alphabets");
  }
  if (cfg.cost_bound && *cfg.cost_bound < 0.0) {
    throw precondition_error("cost bound below zero is infeasible");
  }

  SampledRegion region;
  region.closure = Closure::kDownSet;
  for (const ChannelDraw& draw : channel_draws(n2, q, cfg)) {
    ++region.sampled_pmfs;
    if (cfg.cost_bound &&
        mean_symbol_value(draw.c1, draw.in.u1, draw.in.v1) > *cfg.cost_bound + 1e-12) {
      continue;
    }
    const cq::Cq4Channel n4 = cq::induce_cq4(n2, draw.c1, draw.c2);
    const HalfspaceRegion h = rate_polytope(n4, draw.in, q);
    if (h.raw_infeasible) continue;  // no positive-rate point for this draw
    for (const RateTriple& vtx : polytope_vertices(h)) region.points.push_back(vtx);
  }
  region.points = sort_dedup(std::move(region.points), kGeomTol);
  region.hull = convex_hull_points(pareto_maximal(region.points));
  return region;
}

SampledRegion source_region(const classical::SourceModel& source, int q, const RegionConfig& cfg) {
  if (!source.embedding()) {
    throw precondition_error("source region needs a field embedding");
  }
  const classical::Embedding& emb = *source.embedding();
  if (q != emb.q) {
    throw precondition_error("source region: field size does not match the embedding");
  }
  if (cfg.samples < 1) {
    throw precondition_error("source region needs a positive sample budget");
  }
  if (cfg.q_alphabet < 1 || cfg.w1_size < 1 || cfg.w2_size < 1) {
    throw precondition_error("source region needs nonempty test-channel alphabets");
  }

  const classical::JointPmf& joint = source.pmf();
  const int s1n = joint.shape()[0];
  const int s2n = joint.shape()[1];
  const int qn = cfg.q_alphabet;
  const int w1n = cfg.w1_size;
  const int w2n = cfg.w2_size;

  SampledRegion region;
  region.closure = Closure::kUpSet;
  for (const SourceDraw& draw : source_draws(s1n, s2n, cfg)) {
    ++region.sampled_pmfs;
    // Joint law over (S1, S2, V, Q', W1, W2) with V the embedded field sum
    // and W1 - S1 Q' - S2 Q' - W2 a Markov chain by construction.
    std::vector<double> mass;
    mass.reserve(static_cast<std::size_t>(s1n) * s2n * q * qn * w1n * w2n);
    for (int s1 = 0; s1 < s1n; ++s1) {
      for (int s2 = 0; s2 < s2n; ++s2) {
        const double base = joint.mass({s1, s2});
        const int sum = (emb.h1[s1] + emb.h2[s2]) % q;
        for (int vv = 0; vv < q; ++vv) {
          for (int qq = 0; qq < qn; ++qq) {
            for (int w1 = 0; w1 < w1n; ++w1) {
              const double pw1 = draw.rows1[(static_cast<std::size_t>(s1) * qn + qq) * w1n + w1];
              for (int w2 = 0; w2 < w2n; ++w2) {
                const double pw2 = draw.rows2[(static_cast<std::size_t>(s2) * qn + qq) * w2n + w2];
                mass.push_back(vv == sum ? base * draw.pq[qq] * pw1 * pw2 : 0.0);
              }
            }
          }
        }
      }
    }
    const classical::JointPmf jp({s1n, s2n, q, qn, w1n, w2n}, std::move(mass));
    const double a = clamp0(jp.entropy({2}, {3, 4, 5}));
    const double b = clamp0(jp.mutual_information({0}, {4}, {3, 5}));
    const double c = clamp0(jp.mutual_information({1}, {5}, {3, 4}));
    const double d = clamp0(jp.mutual_information({0, 1}, {4, 5}, {3}));
    if (d <= b + c + 1e-12) {
      region.points.push_back({a, b, c});
    } else {
      // The sum bound cuts the corner: two ends of the frontier segment plus
      // its midpoint, so dominance tests see the segment's interior too.
      region.points.push_back({a, b, clamp0(d - b)});
      region.points.push_back({a, clamp0(d - c), c});
      region.points.push_back({a, clamp0((b + d - c) / 2.0), clamp0((c + d - b) / 2.0)});
    }
  }
  region.points = sort_dedup(std::move(region.points), kGeomTol);
  region.hull = convex_hull_points(pareto_minimal(region.points));
  return region;
}

IntersectReport regions_intersect(const SampledRegion& up, const SampledRegion& down) {
  if (up.closure != Closure::kUpSet || down.closure != Closure::kDownSet) {
    throw precondition_error("regions_intersect needs an up-set first and a down-set second");
  }
  if (up.points.empty() || down.points.empty()) {
    throw precondition_error("regions_intersect needs nonempty regions");
  }
  const std::vector<RateTriple> mins = pareto_minimal(up.points);
  const std::vector<RateTriple> maxs = pareto_maximal(down.points);
  RateTriple cap;
  for (const RateTriple& p : maxs) {
    cap.r = std::max(cap.r, p.r);
    cap.r1 = std::max(cap.r1, p.r1);
    cap.r2 = std::max(cap.r2, p.r2);
  }
  for (const RateTriple& m : mins) {
    if (m.r > cap.r + kDominanceTol || m.r1 > cap.r1 + kDominanceTol ||
        m.r2 > cap.r2 + kDominanceTol) {
      continue;
    }
    if (dominated_by_hull(m, maxs)) return {true, m};
  }
  return {false, {}};
}

ConditionReport unstructured_condition(const classical::SourceModel& source,
                                       const cq::Cq2Channel& n2,
                                       const std::optional<opt::CostConstraint>& cost,
                                       const opt::OptimizeConfig& ocfg) {
  ConditionReport rep;
  rep.lhs = source.pmf().entropy({0, 1});
  const int a1 = n2.alphabet1();
  const int a2 = n2.alphabet2();
  std::vector<DensityOperator> states;
  states.reserve(static_cast<std::size_t>(a1) * a2);
  for (int x1 = 0; x1 < a1; ++x1) {
    for (int x2 = 0; x2 < a2; ++x2) states.push_back(n2.at(x1, x2));
  }
  const opt::Objective objective = [&](const std::vector<std::vector<double>>& point) {
    std::vector<double> weights(static_cast<std::size_t>(a1) * a2);
    for (int x1 = 0; x1 < a1; ++x1) {
      for (int x2 = 0; x2 < a2; ++x2) {
        weights[static_cast<std::size_t>(x1) * a2 + x2] = point[0][x1] * point[1][x2];
      }
    }
    return cq::holevo_information(cq::CqEnsemble(std::move(weights), states));
  };
  const opt::OptimizeResult res = opt::maximize(objective, {a1, a2}, cost, ocfg);
  rep.rhs = res.value;
  rep.argmax = res.argmax;
  rep.evaluations = res.evaluations;
  rep.holds = rep.lhs < rep.rhs;
  return rep;
}

ConditionReport structured_condition(const classical::SourceModel& source,
                                     const cq::Cq2Channel& n2, int q,
                                     const std::optional<opt::CostConstraint>& cost,
                                     const opt::OptimizeConfig& ocfg) {
  if (!classical::is_prime(q)) {
    throw precondition_error("structured test needs a prime field size");
  }
  if (n2.alphabet1() != q || n2.alphabet2() != q) {
    throw precondition_error("structured test needs both channel alphabets of size q");
  }
  if (!source.embedding() || source.embedding()->q != q) {
    throw precondition_error("structured test: source embedding field does not match q");
  }
  for (int x1 = 0; x1 < q; ++x1) {
    for (int x2 = 0; x2 < q; ++x2) {
      const int s = (x1 + x2) % q;
      if (n2.at(x1, x2).mat().max_abs_diff(n2.at(0, s).mat()) > 1e-12) {
        std::ostringstream os;
        os << "channel output is not determined by the input sum: inputs (" << x1 << "," << x2
           << ") and (0," << s << ") share a sum but differ";
        throw precondition_error(os.str());
      }
    }
  }

  ConditionReport rep;
  rep.lhs = classical::sum_variable_pmf(source).entropy({0});
  std::vector<DensityOperator> sum_states;
  sum_states.reserve(static_cast<std::size_t>(q));
  for (int x = 0; x < q; ++x) sum_states.push_back(n2.at(0, x));
  const opt::Objective objective = [&](const std::vector<std::vector<double>>& point) {
    const std::vector<double>& p1 = point[0];
    const std::vector<double>& p2 = point[1];
    std::vector<double> px(static_cast<std::size_t>(q), 0.0);
    for (int x1 = 0; x1 < q; ++x1) {
      for (int x2 = 0; x2 < q; ++x2) px[(x1 + x2) % q] += p1[x1] * p2[x2];
    }
    const double slack = std::min(classical::pmf_entropy(p1), classical::pmf_entropy(p2)) -
                         classical::pmf_entropy(px);
    return slack + cq::holevo_information(cq::CqEnsemble(std::move(px), sum_states));
  };
  const opt::OptimizeResult res = opt::maximize(objective, {q, q}, cost, ocfg);
  rep.rhs = res.value;
  rep.argmax = res.argmax;
  rep.evaluations = res.evaluations;
  rep.holds = rep.lhs < rep.rhs;
  return rep;
}

}  // namespace cqfc::regions
