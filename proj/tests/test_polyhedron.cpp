#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <vector>

#include "supercat/polyhedron.hpp"
#include "supercat/rational.hpp"

using supercat::contains;
using supercat::Error;
using supercat::ErrorCode;
using supercat::feasibility;
using supercat::Halfspace;
using supercat::HalfspaceSystem;
using supercat::intersect;
using supercat::LpRelation;
using supercat::make_polyhedron;
using supercat::Polyhedron;
using supercat::Rat;
using supercat::RowProvenance;

namespace {

Halfspace le(std::vector<Rat> coeffs, Rat rhs,
             RowProvenance prov = RowProvenance::other()) {
  return {std::move(coeffs), LpRelation::LessEq, std::move(rhs), prov};
}
Halfspace eq(std::vector<Rat> coeffs, Rat rhs,
             RowProvenance prov = RowProvenance::other()) {
  return {std::move(coeffs), LpRelation::Eq, std::move(rhs), prov};
}
Rat frac(long n, long d = 1) { return Rat(n, d); }

// One-parameter region for a two-dimensional auxiliary state: p in [1/2, 1]
// plus the given extra rows.
HalfspaceSystem interval_system(std::vector<Halfspace> extra) {
  HalfspaceSystem sys;
  sys.ambient_dim = 1;
  sys.rows = {le({frac(-1)}, frac(-1, 2), RowProvenance::simplex(0)),
              le({frac(1)}, frac(1), RowProvenance::simplex(1))};
  for (Halfspace& h : extra) sys.rows.push_back(std::move(h));
  return sys;
}

// The two hand-built regions for the running four-by-four pair with a
// two-dimensional auxiliary state.
HalfspaceSystem region_low() {  // [13/25, 10/19]
  return interval_system({le({frac(-1, 2)}, frac(-13, 50), RowProvenance::majorization(4)),
                          le({frac(19, 25)}, frac(2, 5),
                             RowProvenance::ordering(supercat::OrderingSide::Source, 3))});
}
HalfspaceSystem region_high() {  // [10/19, 25/38]
  return interval_system({le({frac(-19, 25)}, frac(-2, 5),
                             RowProvenance::ordering(supercat::OrderingSide::Source, 3)),
                          le({frac(19, 25)}, frac(1, 2), RowProvenance::majorization(2))});
}

} // namespace

TEST_CASE("feasibility produces witnesses satisfying every row") {
  const HalfspaceSystem tautology =
      interval_system({le({frac(-1, 10)}, frac(0))});  // 0.4p <= 0.5p
  const auto fr = feasibility(tautology);
  REQUIRE(fr.feasible);
  REQUIRE(fr.witness.has_value());
  CHECK(satisfies(tautology, *fr.witness));
  CHECK((*fr.witness)[0] >= frac(1, 2));
  CHECK((*fr.witness)[0] <= 1);

  HalfspaceSystem empty_interval;
  empty_interval.ambient_dim = 1;
  empty_interval.rows = {le({frac(-1)}, frac(-3, 4)), le({frac(1)}, frac(1, 4))};
  CHECK_FALSE(feasibility(empty_interval).feasible);
}

TEST_CASE("interval regions expose exact endpoints as vertices") {
  const Polyhedron low = make_polyhedron(region_low());
  REQUIRE(low.feasible);
  CHECK(low.dim == 1);
  REQUIRE(low.vertices.has_value());
  CHECK(*low.vertices ==
        std::vector<std::vector<Rat>>{{frac(13, 25)}, {frac(10, 19)}});

  const Polyhedron high = make_polyhedron(region_high());
  REQUIRE(high.feasible);
  CHECK(high.dim == 1);
  REQUIRE(high.vertices.has_value());
  CHECK(*high.vertices ==
        std::vector<std::vector<Rat>>{{frac(10, 19)}, {frac(25, 38)}});
}

TEST_CASE("membership is decided exactly against all rows") {
  const Polyhedron high = make_polyhedron(region_high());
  CHECK(contains(high, {frac(13, 20)}));   // 0.65 lies inside [10/19, 25/38]
  CHECK_FALSE(contains(high, {frac(7, 10)}));  // 0.7 exceeds 25/38
  CHECK(contains(high, {frac(10, 19)}));   // boundary points are included
  CHECK(contains(high, {frac(25, 38)}));
  REQUIRE(high.witness.has_value());
  CHECK(contains(high, *high.witness));
  try {
    contains(high, {frac(1, 2), frac(1, 2)});
    FAIL("expected an exception");
  } catch (const Error& err) {
    CHECK(err.code() == ErrorCode::DimensionMismatch);
  }
}

TEST_CASE("the ordered simplex in two parameters has the expected corners") {
  HalfspaceSystem sys;
  sys.ambient_dim = 2;
  sys.rows = {le({frac(-1), frac(1)}, frac(0), RowProvenance::simplex(0)),   // p1 >= p2
              le({frac(-1), frac(-2)}, frac(-1), RowProvenance::simplex(1)), // p2 >= 1-p1-p2
              le({frac(1), frac(1)}, frac(1), RowProvenance::simplex(2)),    // p3 >= 0
              le({frac(1), frac(0)}, frac(1), RowProvenance::simplex(3))};   // p1 <= 1
  const Polyhedron poly = make_polyhedron(sys);
  REQUIRE(poly.feasible);
  CHECK(poly.dim == 2);
  REQUIRE(poly.vertices.has_value());
  CHECK(*poly.vertices == std::vector<std::vector<Rat>>{
                              {frac(1, 3), frac(1, 3)}, {frac(1, 2), frac(1, 2)}, {frac(1), frac(0)}});
  REQUIRE(poly.interior_point.has_value());
  for (const Halfspace& h : sys.rows)
    CHECK(row_value(h, *poly.interior_point) < h.rhs);
}

TEST_CASE("intersection concatenates rows and preserves provenance") {
  HalfspaceSystem empty;
  empty.ambient_dim = 1;
  const HalfspaceSystem base = region_low();
  const HalfspaceSystem same = intersect(base, empty);
  CHECK(same.rows.size() == base.rows.size());

  HalfspaceSystem extra;
  extra.ambient_dim = 1;
  extra.rows = {le({frac(1)}, frac(21, 40), RowProvenance::majorization(2))};
  const HalfspaceSystem cut = intersect(base, extra);
  CHECK(cut.rows.size() == base.rows.size() + 1);
  CHECK(cut.rows.back().provenance.kind == supercat::RowKind::Majorization);
  CHECK(cut.rows.back().provenance.position == 2);
  const Polyhedron poly = make_polyhedron(cut);
  REQUIRE(poly.vertices.has_value());
  CHECK(*poly.vertices ==
        std::vector<std::vector<Rat>>{{frac(13, 25)}, {frac(21, 40)}});

  HalfspaceSystem wrong;
  wrong.ambient_dim = 2;
  try {
    intersect(base, wrong);
    FAIL("expected an exception");
  } catch (const Error& err) {
    CHECK(err.code() == ErrorCode::DimensionMismatch);
  }
}

TEST_CASE("flats crossing the whole box get the exact dimension") {
  // The segment x + y = 1 within a generous box spans both coordinates, yet
  // its dimension is 1.  Implicit version first:
  HalfspaceSystem implicit_line;
  implicit_line.ambient_dim = 2;
  implicit_line.rows = {le({frac(1), frac(1)}, frac(1)), le({frac(-1), frac(-1)}, frac(-1)),
                        le({frac(1), frac(0)}, frac(5)), le({frac(-1), frac(0)}, frac(5)),
                        le({frac(0), frac(1)}, frac(5)), le({frac(0), frac(-1)}, frac(5))};
  const Polyhedron a = make_polyhedron(implicit_line);
  REQUIRE(a.feasible);
  CHECK(a.dim == 1);
  CHECK(a.implicit_equalities == std::vector<std::size_t>{0, 1});
  CHECK_FALSE(a.interior_point.has_value());
  REQUIRE(a.witness.has_value());
  CHECK(satisfies(implicit_line, *a.witness));
  REQUIRE(a.vertices.has_value());
  CHECK(*a.vertices ==
        std::vector<std::vector<Rat>>{{frac(-4), frac(5)}, {frac(5), frac(-4)}});

  // Explicit equality row: same flat, and a strict interior of the box part.
  HalfspaceSystem explicit_line;
  explicit_line.ambient_dim = 2;
  explicit_line.rows = {eq({frac(1), frac(1)}, frac(1)),
                        le({frac(1), frac(0)}, frac(1)), le({frac(-1), frac(0)}, frac(0)),
                        le({frac(0), frac(1)}, frac(1)), le({frac(0), frac(-1)}, frac(0))};
  const Polyhedron b = make_polyhedron(explicit_line);
  REQUIRE(b.feasible);
  CHECK(b.dim == 1);
  CHECK(b.implicit_equalities.empty());
  REQUIRE(b.interior_point.has_value());
  CHECK(row_value(explicit_line.rows[0], *b.interior_point) == 1);
  REQUIRE(b.vertices.has_value());
  CHECK(*b.vertices == std::vector<std::vector<Rat>>{{frac(0), frac(1)}, {frac(1), frac(0)}});
}

TEST_CASE("a single point is a valid zero-dimensional polyhedron") {
  HalfspaceSystem sys;
  sys.ambient_dim = 2;
  sys.rows = {le({frac(1), frac(0)}, frac(0)), le({frac(-1), frac(0)}, frac(0)),
              le({frac(0), frac(1)}, frac(0)), le({frac(0), frac(-1)}, frac(0))};
  const Polyhedron poly = make_polyhedron(sys);
  REQUIRE(poly.feasible);
  CHECK(poly.dim == 0);
  CHECK(poly.implicit_equalities.size() == 4);
  CHECK_FALSE(poly.interior_point.has_value());
  REQUIRE(poly.vertices.has_value());
  CHECK(*poly.vertices == std::vector<std::vector<Rat>>{{frac(0), frac(0)}});
  CHECK(contains(poly, {frac(0), frac(0)}));
  CHECK_FALSE(contains(poly, {frac(0), frac(1, 1000000)}));
}

TEST_CASE("the empty polyhedron reports dimension minus one") {
  HalfspaceSystem sys;
  sys.ambient_dim = 1;
  sys.rows = {le({frac(-1)}, frac(-3, 4)), le({frac(1)}, frac(1, 4))};
  const Polyhedron poly = make_polyhedron(sys);
  CHECK_FALSE(poly.feasible);
  CHECK(poly.dim == -1);
  CHECK_FALSE(poly.vertices.has_value());
  CHECK_FALSE(poly.witness.has_value());
  CHECK_FALSE(poly.interior_point.has_value());
  CHECK_FALSE(contains(poly, {frac(1, 2)}));
  CHECK(supercat::vertices(poly).empty());
}

TEST_CASE("vertex enumeration guards its preconditions") {
  HalfspaceSystem unbounded;
  unbounded.ambient_dim = 2;
  unbounded.rows = {le({frac(-1), frac(0)}, frac(0)), le({frac(0), frac(-1)}, frac(0))};
  const Polyhedron cone = make_polyhedron(unbounded);
  REQUIRE(cone.feasible);
  CHECK_FALSE(cone.vertices.has_value());
  try {
    supercat::vertices(cone);
    FAIL("expected an exception");
  } catch (const Error& err) {
    CHECK(err.code() == ErrorCode::Unbounded);
  }

  HalfspaceSystem wide;
  wide.ambient_dim = 5;
  const Polyhedron big = make_polyhedron(wide);
  REQUIRE(big.feasible);
  CHECK_FALSE(big.vertices.has_value());
  try {
    supercat::vertices(big);
    FAIL("expected an exception");
  } catch (const Error& err) {
    CHECK(err.code() == ErrorCode::DimensionTooHigh);
  }
}

TEST_CASE("proportional duplicate rows do not produce duplicate vertices") {
  HalfspaceSystem sys;
  sys.ambient_dim = 2;
  sys.rows = {le({frac(1), frac(0)}, frac(1)), le({frac(2), frac(0)}, frac(2)),
              le({frac(-1), frac(0)}, frac(0)), le({frac(0), frac(1)}, frac(1)),
              le({frac(0), frac(-1)}, frac(0)), le({frac(3), frac(3)}, frac(6))};
  const Polyhedron poly = make_polyhedron(sys);
  REQUIRE(poly.vertices.has_value());
  CHECK(*poly.vertices == std::vector<std::vector<Rat>>{{frac(0), frac(0)},
                                                        {frac(0), frac(1)},
                                                        {frac(1), frac(0)},
                                                        {frac(1), frac(1)}});
}

TEST_CASE("every vertex is contained and any outward normal step leaves the set") {
  for (const HalfspaceSystem& sys : {region_low(), region_high()}) {
    const Polyhedron poly = make_polyhedron(sys);
    REQUIRE(poly.vertices.has_value());
    for (const auto& v : *poly.vertices) {
      CHECK(contains(poly, v));
      for (const Halfspace& h : sys.rows) {
        if (row_value(h, v) != h.rhs) continue;  // not tight at this vertex
        for (const Rat& eps : {Rat(1), Rat(1, 7919)}) {
          std::vector<Rat> out = v;
          for (std::size_t j = 0; j < out.size(); ++j) out[j] += eps * h.coeffs[j];
          CHECK_FALSE(contains(poly, out));
        }
      }
    }
  }
}

TEST_CASE("one-dimensional regions contain every rational between their endpoints") {
  const Polyhedron poly = make_polyhedron(region_high());
  const Rat lo = (*poly.vertices)[0][0];
  const Rat hi = (*poly.vertices)[1][0];
  for (int i = 1; i <= 100; ++i) {
    const Rat t(i, 101);
    CHECK(contains(poly, {Rat(lo + t * (hi - lo))}));
    CHECK_FALSE(contains(poly, {Rat(lo - t)}));
    CHECK_FALSE(contains(poly, {Rat(hi + t)}));
  }
}

TEST_CASE("feasibility agrees with dense grid scanning on random interval systems") {
  std::mt19937_64 rng(5150);
  std::uniform_int_distribution<long> num(-12, 12);
  std::uniform_int_distribution<int> rows(1, 4);
  for (int trial = 0; trial < 300; ++trial) {
    HalfspaceSystem sys;
    sys.ambient_dim = 1;
    for (int i = rows(rng); i-- > 0;)
      sys.rows.push_back(le({Rat(num(rng))}, Rat(num(rng), 4)));
    const bool feasible = feasibility(sys).feasible;
    bool grid_hit = false;
    for (int g = -60; g <= 60 && !grid_hit; ++g)
      grid_hit = satisfies(sys, {Rat(g, 4)});
    if (grid_hit) CHECK(feasible);
    if (!feasible) CHECK_FALSE(grid_hit);
  }
}
