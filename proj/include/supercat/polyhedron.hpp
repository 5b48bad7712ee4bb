#pragma once

// Exact polyhedra over catalyst parameters: halfspace systems with per-row
// provenance, feasibility with relative-interior witnesses, implicit-equality
// detection, exact dimension, membership, intersection, and vertex
// enumeration in low ambient dimension.
//
// Dimension is computed as ambient dimension minus the rank of the normals of
// all equality rows (explicit ones and inequalities that hold with equality
// on the whole feasible set).  This is exact even for flats that span a full
// coordinate box, where per-coordinate extents would overstate the dimension.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "supercat/errors.hpp"
#include "supercat/linear_program.hpp"
#include "supercat/rational.hpp"

namespace supercat {

enum class RowKind { Ordering, Majorization, Simplex, Other };
enum class OrderingSide { Source, Target };

struct RowProvenance {
  RowKind kind = RowKind::Other;
  OrderingSide side = OrderingSide::Source;  // meaningful for Ordering rows
  std::size_t position = 0;  // Ordering: sort step; Majorization: prefix m; Simplex: bound index

  static RowProvenance ordering(OrderingSide side, std::size_t position) {
    return {RowKind::Ordering, side, position};
  }
  static RowProvenance majorization(std::size_t prefix) {
    return {RowKind::Majorization, OrderingSide::Source, prefix};
  }
  static RowProvenance simplex(std::size_t bound) {
    return {RowKind::Simplex, OrderingSide::Source, bound};
  }
  static RowProvenance other() { return {}; }
};

struct Halfspace {
  std::vector<Rat> coeffs;
  LpRelation relation = LpRelation::LessEq;
  Rat rhs;
  RowProvenance provenance;
};

struct HalfspaceSystem {
  std::size_t ambient_dim = 0;
  std::vector<Halfspace> rows;
};

inline std::vector<LpRow> to_lp_rows(const HalfspaceSystem& sys) {
  std::vector<LpRow> rows;
  rows.reserve(sys.rows.size());
  for (const Halfspace& h : sys.rows) rows.push_back({h.coeffs, h.relation, h.rhs});
  return rows;
}

// Row concatenation; provenance is preserved.
inline HalfspaceSystem intersect(const HalfspaceSystem& a, const HalfspaceSystem& b) {
  if (a.ambient_dim != b.ambient_dim)
    raise(ErrorCode::DimensionMismatch, "cannot intersect systems of different ambient dimension");
  HalfspaceSystem out = a;
  out.rows.insert(out.rows.end(), b.rows.begin(), b.rows.end());
  return out;
}

inline Rat row_value(const Halfspace& h, const std::vector<Rat>& point) {
  Rat acc(0);
  for (std::size_t j = 0; j < h.coeffs.size(); ++j) acc += h.coeffs[j] * point[j];
  return acc;
}

inline bool satisfies(const HalfspaceSystem& sys, const std::vector<Rat>& point) {
  if (point.size() != sys.ambient_dim)
    raise(ErrorCode::DimensionMismatch, "membership test with point of wrong dimension");
  for (const Halfspace& h : sys.rows) {
    const Rat v = row_value(h, point);
    if (h.relation == LpRelation::Eq ? v != h.rhs : v > h.rhs) return false;
  }
  return true;
}

inline LpResult maximize_over(const HalfspaceSystem& sys, const std::vector<Rat>& objective) {
  return lp_maximize(objective, to_lp_rows(sys));
}

namespace detail {

// Rank of a set of rational row vectors, by Gaussian elimination.
inline std::size_t rank_of(std::vector<std::vector<Rat>> m) {
  if (m.empty()) return 0;
  const std::size_t cols = m[0].size();
  std::size_t rank = 0;
  for (std::size_t col = 0; col < cols && rank < m.size(); ++col) {
    std::size_t pivot = m.size();
    for (std::size_t i = rank; i < m.size(); ++i) {
      if (m[i][col] != 0) { pivot = i; break; }
    }
    if (pivot == m.size()) continue;
    std::swap(m[rank], m[pivot]);
    for (std::size_t i = rank + 1; i < m.size(); ++i) {
      if (m[i][col] == 0) continue;
      const Rat f = Rat(m[i][col] / m[rank][col]);
      for (std::size_t j = col; j < cols; ++j) m[i][j] -= f * m[rank][j];
    }
    ++rank;
  }
  return rank;
}

// Unique solution of a square system, or nullopt when singular.
inline std::optional<std::vector<Rat>> solve_square(std::vector<std::vector<Rat>> m,
                                                    std::vector<Rat> rhs) {
  const std::size_t n = m.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = n;
    for (std::size_t i = col; i < n; ++i) {
      if (m[i][col] != 0) { pivot = i; break; }
    }
    if (pivot == n) return std::nullopt;
    std::swap(m[col], m[pivot]);
    std::swap(rhs[col], rhs[pivot]);
    for (std::size_t i = 0; i < n; ++i) {
      if (i == col || m[i][col] == 0) continue;
      const Rat f = Rat(m[i][col] / m[col][col]);
      for (std::size_t j = col; j < n; ++j) m[i][j] -= f * m[col][j];
      rhs[i] -= f * rhs[col];
    }
  }
  std::vector<Rat> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = Rat(rhs[i] / m[i][i]);
  return x;
}

struct InteriorAnalysis {
  bool feasible = false;
  std::vector<Rat> point;                  // relative interior point when feasible
  std::vector<std::size_t> implicit_rows;  // <= rows that hold with equality everywhere
};

// Two-stage relative-interior computation.  Stage one maximizes a common
// slack variable across all inequalities; a positive optimum certifies a
// point strictly inside every inequality.  At optimum zero the tight-
// everywhere inequalities are identified row by row and pinned to equality,
// and the slack maximization is repeated over the remaining ones.
inline InteriorAnalysis analyze_interior(const HalfspaceSystem& sys) {
  const std::size_t d = sys.ambient_dim;
  InteriorAnalysis out;

  auto slack_lp = [&](const std::vector<std::size_t>& pinned) -> LpResult {
    std::vector<LpRow> rows;
    rows.reserve(sys.rows.size() + 1);
    for (std::size_t i = 0; i < sys.rows.size(); ++i) {
      const Halfspace& h = sys.rows[i];
      std::vector<Rat> c = h.coeffs;
      const bool is_pinned =
          std::find(pinned.begin(), pinned.end(), i) != pinned.end();
      if (h.relation == LpRelation::Eq || is_pinned) {
        c.push_back(Rat(0));
        rows.push_back({std::move(c), LpRelation::Eq, h.rhs});
      } else {
        c.push_back(Rat(1));
        rows.push_back({std::move(c), LpRelation::LessEq, h.rhs});
      }
    }
    std::vector<Rat> cap(d + 1, Rat(0));
    cap[d] = 1;
    rows.push_back({cap, LpRelation::LessEq, Rat(1)});
    std::vector<Rat> objective(d + 1, Rat(0));
    objective[d] = 1;
    return lp_maximize(objective, rows);
  };

  LpResult first = slack_lp({});
  if (first.status == LpStatus::Infeasible || first.value < 0) return out;

  out.feasible = true;
  if (first.value > 0) {
    out.point.assign(first.point.begin(), first.point.begin() + static_cast<long>(d));
    return out;
  }

  // Slack optimum is exactly zero: find which inequalities are forced tight.
  const std::vector<LpRow> plain = to_lp_rows(sys);
  for (std::size_t i = 0; i < sys.rows.size(); ++i) {
    const Halfspace& h = sys.rows[i];
    if (h.relation == LpRelation::Eq) continue;
    std::vector<Rat> objective(d, Rat(0));
    for (std::size_t j = 0; j < d; ++j) objective[j] = Rat(-h.coeffs[j]);
    const LpResult r = lp_maximize(objective, plain);  // maximize -(a.x), slack = rhs + value
    if (r.status == LpStatus::Optimal && r.value + h.rhs == 0) out.implicit_rows.push_back(i);
  }

  const LpResult second = slack_lp(out.implicit_rows);
  // The relative interior of a nonempty polyhedron is nonempty.
  out.point.assign(second.point.begin(), second.point.begin() + static_cast<long>(d));
  return out;
}

} // namespace detail

struct FeasibilityResult {
  bool feasible = false;
  std::optional<std::vector<Rat>> witness;  // relative interior point
};

inline FeasibilityResult feasibility(const HalfspaceSystem& sys) {
  const detail::InteriorAnalysis a = detail::analyze_interior(sys);
  FeasibilityResult out;
  out.feasible = a.feasible;
  if (a.feasible) out.witness = a.point;
  return out;
}

struct Polyhedron {
  HalfspaceSystem system;
  bool feasible = false;
  int dim = -1;  // -1 for the empty set
  std::optional<std::vector<std::vector<Rat>>> vertices;  // ambient <= 4 and bounded
  std::optional<std::vector<Rat>> interior_point;  // strict on every <= row
  std::optional<std::vector<Rat>> witness;         // relative interior point
  std::vector<std::size_t> implicit_equalities;    // <= rows tight on the whole set
};

namespace detail {

// All vertices of a feasible bounded system in ambient dimension <= 4:
// solve every d-subset of tight-row candidates and keep solutions that
// satisfy the whole system.
inline std::vector<std::vector<Rat>> enumerate_vertices(const HalfspaceSystem& sys) {
  const std::size_t d = sys.ambient_dim;
  if (d == 0) return {std::vector<Rat>{}};

  if (d == 1) {
    const LpResult hi = maximize_over(sys, {Rat(1)});
    const LpResult lo = maximize_over(sys, {Rat(-1)});
    std::vector<std::vector<Rat>> out;
    if (lo.status == LpStatus::Optimal) out.push_back({Rat(-lo.value)});
    if (hi.status == LpStatus::Optimal && (out.empty() || hi.value != out[0][0]))
      out.push_back({hi.value});
    std::sort(out.begin(), out.end());
    return out;
  }

  // Deduplicate hyperplanes up to positive scaling to cut the subset count.
  std::vector<std::pair<std::vector<Rat>, Rat>> planes;
  for (const Halfspace& h : sys.rows) {
    std::size_t lead = d;
    for (std::size_t j = 0; j < d; ++j) {
      if (h.coeffs[j] != 0) { lead = j; break; }
    }
    if (lead == d) continue;  // constant row: no hyperplane
    const Rat scale = Rat(abs(h.coeffs[lead]));
    std::vector<Rat> c(d);
    for (std::size_t j = 0; j < d; ++j) c[j] = Rat(h.coeffs[j] / scale);
    std::pair<std::vector<Rat>, Rat> key(std::move(c), Rat(h.rhs / scale));
    if (std::find(planes.begin(), planes.end(), key) == planes.end())
      planes.push_back(std::move(key));
  }

  std::vector<std::vector<Rat>> found;
  std::vector<std::size_t> pick(d, 0);
  const std::size_t m = planes.size();
  if (m < d) return found;

  // Iterate over all d-subsets of the m planes.
  for (std::size_t i = 0; i < d; ++i) pick[i] = i;
  for (;;) {
    std::vector<std::vector<Rat>> mat(d);
    std::vector<Rat> rhs(d);
    for (std::size_t i = 0; i < d; ++i) {
      mat[i] = planes[pick[i]].first;
      rhs[i] = planes[pick[i]].second;
    }
    if (auto x = solve_square(std::move(mat), std::move(rhs))) {
      if (satisfies(sys, *x) && std::find(found.begin(), found.end(), *x) == found.end())
        found.push_back(std::move(*x));
    }
    // Advance the combination.
    std::size_t i = d;
    while (i-- > 0) {
      if (pick[i] + (d - i) < m) {
        ++pick[i];
        for (std::size_t j = i + 1; j < d; ++j) pick[j] = pick[j - 1] + 1;
        break;
      }
      if (i == 0) { i = m; break; }
    }
    if (i == m) break;
  }
  std::sort(found.begin(), found.end());
  return found;
}

// True when every coordinate has finite extent over the system.
inline bool is_bounded(const HalfspaceSystem& sys) {
  for (std::size_t j = 0; j < sys.ambient_dim; ++j) {
    std::vector<Rat> e(sys.ambient_dim, Rat(0));
    e[j] = 1;
    if (maximize_over(sys, e).status == LpStatus::Unbounded) return false;
    e[j] = -1;
    if (maximize_over(sys, e).status == LpStatus::Unbounded) return false;
  }
  return true;
}

} // namespace detail

inline Polyhedron make_polyhedron(HalfspaceSystem sys, bool with_vertices = true) {
  Polyhedron poly;
  poly.system = std::move(sys);
  const detail::InteriorAnalysis a = detail::analyze_interior(poly.system);
  if (!a.feasible) return poly;

  poly.feasible = true;
  poly.witness = a.point;
  poly.implicit_equalities = a.implicit_rows;

  // Exact dimension: ambient minus the rank of all equality normals.
  std::vector<std::vector<Rat>> normals;
  for (const Halfspace& h : poly.system.rows)
    if (h.relation == LpRelation::Eq) normals.push_back(h.coeffs);
  for (std::size_t i : a.implicit_rows) normals.push_back(poly.system.rows[i].coeffs);
  poly.dim = static_cast<int>(poly.system.ambient_dim - detail::rank_of(std::move(normals)));

  // A point strict on all inequalities exists exactly when none is an
  // implicit equality.
  bool has_implicit_eq = !a.implicit_rows.empty();
  if (!has_implicit_eq) poly.interior_point = a.point;

  if (with_vertices && poly.system.ambient_dim <= 4 && detail::is_bounded(poly.system))
    poly.vertices = detail::enumerate_vertices(poly.system);
  return poly;
}

inline bool contains(const Polyhedron& poly, const std::vector<Rat>& point) {
  if (!poly.feasible) return false;
  return satisfies(poly.system, point);
}

// The exact vertex list; raises when the polyhedron cannot support one.
inline std::vector<std::vector<Rat>> vertices(const Polyhedron& poly) {
  if (!poly.feasible) return {};
  if (poly.vertices) return *poly.vertices;
  if (poly.system.ambient_dim > 4)
    raise(ErrorCode::DimensionTooHigh, "vertex enumeration supports ambient dimension <= 4");
  if (!detail::is_bounded(poly.system))
    raise(ErrorCode::Unbounded, "vertex enumeration requires a bounded polyhedron");
  return detail::enumerate_vertices(poly.system);
}

} // namespace supercat
