#pragma once

// Trading a catalyst for a strictly more entangled one.  A catalyst region
// tells us where an auxiliary state chi makes psi (x) chi -> phi (x) chi
// deterministic; this header asks when the final copy can be upgraded to a
// different auxiliary state omega with strictly higher entropy while the
// conversion stays deterministic.  Every positive answer is returned as an
// exactly verified certificate, never as an estimate: floating point only
// ever seeds candidate points, and each candidate must pass the exact
// rational majorization and certified entropy checks before it is reported.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "entropy.hpp"
#include "errors.hpp"
#include "majorization.hpp"
#include "opmp.hpp"
#include "polyhedron.hpp"
#include "rational.hpp"
#include "spectrum.hpp"

namespace supercat {

// How much slack a catalyst region leaves for upgrading the auxiliary state:
//  - Strict: some catalyst in the region satisfies every prefix inequality
//    strictly, so a small enough entropy-gaining step is always available.
//  - SemiStrict: every admissible catalyst has tight prefixes, but at some
//    anchor the tight ones are benign -- a concrete in-region step keeps the
//    conversion deterministic while gaining entropy.
//  - NeitherAtPoint: the region offers no entropy-gaining step at any of the
//    probed anchors (isolated catalysts always land here).
enum class Strictness { Strict, SemiStrict, NeitherAtPoint };

inline const char* strictness_name(Strictness s) {
  switch (s) {
    case Strictness::Strict: return "Strict";
    case Strictness::SemiStrict: return "SemiStrict";
    case Strictness::NeitherAtPoint: return "NeitherAtPoint";
  }
  return "NeitherAtPoint";
}

struct StrictnessProfile {
  Strictness classification = Strictness::NeitherAtPoint;
  // Anchor catalyst parameters; for Strict anchors every prefix inequality
  // is strictly slack, for SemiStrict anchors the step below is verified.
  std::vector<Rat> point;
  // For SemiStrict: moving from the anchor to point - epsilon * direction
  // stays inside the region, keeps the conversion deterministic, and strictly
  // gains entropy.
  std::optional<std::vector<Rat>> direction;
  std::optional<Rat> epsilon;
  // Prefixes tight at the anchor that remain satisfied after the step.
  std::vector<std::size_t> benign_indices;
};

// A fully verified upgrade: psi (x) chi(p_initial) converts deterministically
// into phi (x) chi(p_final) and the auxiliary entropy strictly increases.
struct SupercatalysisCertificate {
  Spectrum psi;
  Spectrum phi;
  std::vector<Rat> p_initial;  // parameters of the catalyst chi
  std::vector<Rat> p_final;    // parameters of the upgraded state omega
  EntropyInterval delta;       // E(omega) - E(chi), delta.lower > 0
  TransformReport report;      // prefix comparison of the product spectra
};

struct BoundAttainment {
  bool attained = false;
  // The prefix comparison between the low-entropy endpoint as catalyst and
  // the high-entropy endpoint as its replacement: proof either way.
  TransformReport witness_or_refutation;
};

namespace detail {

constexpr unsigned kGapStartBits = 128;
constexpr unsigned kGapMaxBits = 1024;
constexpr int kStepHalvings = 40;

// E(omega) - E(chi) as a certified interval with strictly positive lower
// bound, refining precision until the gap separates from zero; absent when
// the precision cap cannot separate it.
inline std::optional<EntropyInterval> positive_gap(const Spectrum& omega,
                                                   const Spectrum& chi) {
  for (unsigned bits = kGapStartBits; bits <= kGapMaxBits; bits *= 2) {
    const EntropyInterval eo = entropy(omega, bits);
    const EntropyInterval ec = entropy(chi, bits);
    const Rat lo = Rat(eo.lower - ec.upper);
    if (lo > 0) return EntropyInterval{lo, Rat(eo.upper - ec.lower), bits};
  }
  return std::nullopt;
}

// The single gate every candidate parameter pair must pass: exact prefix
// majorization of the product spectra plus a certified strict entropy gain.
inline std::optional<SupercatalysisCertificate> certify(
    const Spectrum& psi, const Spectrum& phi, const std::vector<Rat>& p_initial,
    const std::vector<Rat>& p_final) {
  std::optional<Spectrum> chi, omega;
  try {
    chi = auxiliary_state(p_initial);
    omega = auxiliary_state(p_final);
  } catch (const Error&) {
    return std::nullopt;  // not valid auxiliary parameters, so no certificate
  }
  SupercatCheck check;
  try {
    check = verify_supercatalysis(psi, phi, *chi, *omega);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::IndistinguishableEntropy) return std::nullopt;
    throw;
  }
  if (!check.valid) return std::nullopt;
  const std::optional<EntropyInterval> gap = positive_gap(*omega, *chi);
  if (!gap) return std::nullopt;
  return SupercatalysisCertificate{psi,       phi,  p_initial,
                                   p_final, *gap, check.report};
}

// Anchor points of a region, ordered so that low auxiliary entropy comes
// first: vertices (entropy is concave, so its minimum over the region sits at
// one of them), then the relative-interior witness, the strict interior
// point, and finally vertex midpoints for extra coverage.
inline std::vector<std::vector<Rat>> anchor_points(const Polyhedron& poly) {
  std::vector<std::vector<Rat>> out;
  auto push = [&out](const std::vector<Rat>& p) {
    if (std::find(out.begin(), out.end(), p) == out.end()) out.push_back(p);
  };
  if (poly.vertices && !poly.vertices->empty()) {
    std::vector<std::pair<Rat, std::vector<Rat>>> scored;
    scored.reserve(poly.vertices->size());
    for (const std::vector<Rat>& v : *poly.vertices)
      scored.emplace_back(entropy(auxiliary_state(v), 192).midpoint(), v);
    std::sort(scored.begin(), scored.end());
    for (const auto& [score, v] : scored) push(v);
  }
  if (poly.witness) push(*poly.witness);
  if (poly.interior_point) push(*poly.interior_point);
  if (poly.vertices && poly.vertices->size() >= 2) {
    const auto& verts = *poly.vertices;
    for (std::size_t a = 0; a < verts.size(); ++a)
      for (std::size_t b = a + 1; b < verts.size(); ++b) {
        std::vector<Rat> mid(verts[a].size());
        for (std::size_t j = 0; j < mid.size(); ++j)
          mid[j] = Rat((verts[a][j] + verts[b][j]) / 2);
        push(mid);
      }
  }
  return out;
}

// Scales a ray so its largest coefficient has absolute value one; parallel
// candidate rays then collapse under deduplication.
inline std::vector<Rat> normalize_direction(std::vector<Rat> d) {
  Rat big(0);
  for (const Rat& c : d) {
    const Rat a = c < 0 ? Rat(-c) : c;
    if (a > big) big = a;
  }
  if (big == 0) return d;
  for (Rat& c : d) c = Rat(c / big);
  return d;
}

// Direction of steepest certified-entropy ascent inside the tangent cone at
// P1, found by an exact linear program whose objective merely approximates
// the entropy gradient in double precision -- approximation is harmless here
// because every step taken along the ray is verified exactly afterwards.
inline std::optional<std::vector<Rat>> ascent_direction(
    const HalfspaceSystem& sys, const std::vector<Rat>& P1) {
  const std::size_t d = sys.ambient_dim;
  if (d == 0) return std::nullopt;
  const Spectrum chi = auxiliary_state(P1);
  const double tail = chi[chi.size() - 1].convert_to<double>();
  if (!(tail > 0)) return std::nullopt;  // gradient blows up on the boundary
  std::vector<Rat> objective(d, Rat(0));
  bool flat = true;
  for (std::size_t j = 0; j < d; ++j) {
    const double pj = chi[j].convert_to<double>();
    if (!(pj > 0)) return std::nullopt;
    const double g = std::log(pj) - std::log(tail);  // -dE/dp_j >= 0
    objective[j] = Rat(g);
    if (g != 0.0) flat = false;
  }
  if (flat) return std::nullopt;
  std::vector<LpRow> rows;
  for (const Halfspace& h : sys.rows) {
    const bool tight =
        h.relation == LpRelation::Eq || row_value(h, P1) == h.rhs;
    if (!tight) continue;
    // Stepping to P1 - t*dir must keep the row satisfied for small t, which
    // needs h.coeffs . dir >= 0 (and exactly zero on equality rows).
    std::vector<Rat> neg(d);
    for (std::size_t j = 0; j < d; ++j) neg[j] = Rat(-h.coeffs[j]);
    rows.push_back({std::move(neg), h.relation, Rat(0)});
  }
  for (std::size_t j = 0; j < d; ++j) {
    std::vector<Rat> lo(d, Rat(0)), hi(d, Rat(0));
    hi[j] = Rat(1);
    rows.push_back({hi, LpRelation::LessEq, Rat(1)});
    lo[j] = Rat(-1);
    rows.push_back({lo, LpRelation::LessEq, Rat(1)});
  }
  const LpResult res = lp_maximize(objective, rows);
  if (res.status != LpStatus::Optimal || res.value <= 0) return std::nullopt;
  return normalize_direction(res.point);
}

// Candidate step rays at P1: toward every other vertex of the region, plus
// the entropy-ascent ray.
inline std::vector<std::vector<Rat>> direction_candidates(
    const Polyhedron& poly, const std::vector<Rat>& P1) {
  std::vector<std::vector<Rat>> out;
  auto push = [&out](std::vector<Rat> d) {
    bool zero = true;
    for (const Rat& c : d)
      if (c != 0) {
        zero = false;
        break;
      }
    if (zero) return;
    if (std::find(out.begin(), out.end(), d) == out.end())
      out.push_back(std::move(d));
  };
  if (poly.vertices) {
    for (const std::vector<Rat>& v : *poly.vertices) {
      std::vector<Rat> d(P1.size());
      for (std::size_t j = 0; j < d.size(); ++j) d[j] = Rat(P1[j] - v[j]);
      push(normalize_direction(std::move(d)));
    }
  }
  if (std::optional<std::vector<Rat>> a = ascent_direction(poly.system, P1))
    push(std::move(*a));
  return out;
}

// Largest t >= 0 such that P1 - t*d still satisfies the system; absent when
// the ray leaves immediately or crosses a pinned equality.
inline std::optional<Rat> max_step(const HalfspaceSystem& sys,
                                   const std::vector<Rat>& P1,
                                   const std::vector<Rat>& d) {
  std::optional<Rat> best;
  for (const Halfspace& h : sys.rows) {
    Rat slope(0);
    for (std::size_t j = 0; j < d.size(); ++j) slope += h.coeffs[j] * d[j];
    const Rat v = row_value(h, P1);
    if (h.relation == LpRelation::Eq) {
      if (slope != 0) return std::nullopt;
      continue;
    }
    if (slope >= 0) continue;  // the row value only shrinks along the ray
    const Rat t = Rat((h.rhs - v) / Rat(-slope));
    if (!best || t < *best) best = t;
  }
  if (best && *best <= 0) return std::nullopt;
  return best;
}

struct StepOutcome {
  SupercatalysisCertificate certificate;
  std::vector<Rat> direction;
  Rat epsilon;
};

// Walks the step ladder along the ray: the full admissible stride first so
// vertex-to-vertex upgrades are found exactly, then geometric halving, and
// accepts the first stride whose endpoint certifies.
inline std::optional<StepOutcome> step_certificate(const Spectrum& psi,
                                                   const Spectrum& phi,
                                                   const HalfspaceSystem& sys,
                                                   const std::vector<Rat>& P1,
                                                   const std::vector<Rat>& d) {
  const std::optional<Rat> tmax = max_step(sys, P1, d);
  if (!tmax) return std::nullopt;
  Rat eps = *tmax;
  for (int i = 0; i <= kStepHalvings; ++i, eps = Rat(eps / 2)) {
    std::vector<Rat> P2(P1.size());
    for (std::size_t j = 0; j < P1.size(); ++j)
      P2[j] = Rat(P1[j] - eps * d[j]);
    if (std::optional<SupercatalysisCertificate> c = certify(psi, phi, P1, P2))
      return StepOutcome{std::move(*c), d, eps};
  }
  return std::nullopt;
}

}  // namespace detail

// Classifies how much room a catalyst region leaves for entropy-gaining
// steps.  The region's polyhedron does not store the state pair, so the pair
// is passed alongside it.
inline StrictnessProfile classify_strictness(const Spectrum& psi,
                                             const Spectrum& phi,
                                             const Opmp& region) {
  const Polyhedron& poly = region.polyhedron;
  StrictnessProfile out;
  if (!poly.feasible) return out;
  const std::vector<std::vector<Rat>> anchors = detail::anchor_points(poly);
  if (!anchors.empty()) out.point = anchors.front();
  if (poly.dim < 1) return out;  // an isolated catalyst cannot move
  for (const std::vector<Rat>& P : anchors) {
    const TransformReport rep = verify_catalysis(psi, phi, auxiliary_state(P));
    if (rep.result && rep.tight_indices.empty()) {
      out.classification = Strictness::Strict;
      out.point = P;
      return out;
    }
  }
  for (const std::vector<Rat>& P : anchors) {
    const TransformReport base =
        verify_catalysis(psi, phi, auxiliary_state(P));
    if (!base.result) continue;
    for (const std::vector<Rat>& d : detail::direction_candidates(poly, P)) {
      if (std::optional<detail::StepOutcome> st =
              detail::step_certificate(psi, phi, poly.system, P, d)) {
        out.classification = Strictness::SemiStrict;
        out.point = P;
        out.direction = st->direction;
        out.epsilon = st->epsilon;
        out.benign_indices = base.tight_indices;
        return out;
      }
    }
  }
  return out;
}

// Builds a certificate whose initial and final parameters both lie in the
// given region, preferring low-entropy anchors so the verified gain is as
// large as the region allows along a single ray.  Pairs with the final
// parameters outside the region are the full search's job.
inline std::optional<SupercatalysisCertificate> supercat_from_opmp(
    const Spectrum& psi, const Spectrum& phi, const Opmp& region) {
  const StrictnessProfile profile = classify_strictness(psi, phi, region);
  if (profile.classification == Strictness::NeitherAtPoint)
    return std::nullopt;
  const Polyhedron& poly = region.polyhedron;
  if (profile.classification == Strictness::SemiStrict) {
    std::vector<Rat> P2(profile.point.size());
    for (std::size_t j = 0; j < P2.size(); ++j)
      P2[j] = Rat(profile.point[j] - *profile.epsilon * (*profile.direction)[j]);
    return detail::certify(psi, phi, profile.point, P2);
  }
  std::vector<std::vector<Rat>> starts;
  starts.push_back(profile.point);
  for (const std::vector<Rat>& a : detail::anchor_points(poly))
    if (std::find(starts.begin(), starts.end(), a) == starts.end())
      starts.push_back(a);
  for (const std::vector<Rat>& P1 : starts) {
    for (const std::vector<Rat>& d : detail::direction_candidates(poly, P1)) {
      if (std::optional<detail::StepOutcome> st =
              detail::step_certificate(psi, phi, poly.system, P1, d))
        return std::move(st->certificate);
    }
  }
  return std::nullopt;
}

// Certified interval around the largest entropy gain any certificate drawn
// from this region could achieve.  Over an interval of two-outcome catalysts
// the entropy is monotone, so the vertex spread is the exact range; in
// higher ambient dimension the maximum can sit strictly inside the region,
// so the upper end falls back to the uniform state's entropy, which
// dominates every auxiliary state.
inline EntropyInterval delta_upper_bound(const Opmp& region,
                                         unsigned precision_bits = 256) {
  const Polyhedron& poly = region.polyhedron;
  if (!poly.feasible || !poly.vertices || poly.vertices->empty())
    raise(ErrorCode::VerticesUnavailable,
          "the entropy spread of a region needs its vertex list");
  const std::vector<std::vector<Rat>>& verts = *poly.vertices;
  if (verts.size() == 1)
    return EntropyInterval{Rat(0), Rat(0), precision_bits};
  Rat max_lo, max_hi, min_lo, min_hi;
  bool first = true;
  for (const std::vector<Rat>& v : verts) {
    const EntropyInterval e = entropy(auxiliary_state(v), precision_bits);
    if (first) {
      max_lo = min_lo = e.lower;
      max_hi = min_hi = e.upper;
      first = false;
      continue;
    }
    max_lo = std::max(max_lo, e.lower);
    max_hi = std::max(max_hi, e.upper);
    min_lo = std::min(min_lo, e.lower);
    min_hi = std::min(min_hi, e.upper);
  }
  Rat lower = Rat(max_lo - min_hi);
  if (lower < 0) lower = 0;
  Rat upper;
  if (poly.system.ambient_dim == 1) {
    upper = Rat(max_hi - min_lo);
  } else {
    const std::size_t k = poly.system.ambient_dim + 1;
    std::vector<Rat> uniform(k, Rat(1) / Rat(Int(k)));
    const EntropyInterval cap =
        entropy(Spectrum::make(std::move(uniform)), precision_bits);
    upper = Rat(cap.upper - min_lo);
  }
  return EntropyInterval{lower, upper, precision_bits};
}

// Does converting at the low-entropy endpoint while handing back the
// high-entropy endpoint actually work?  When it does, the region's entropy
// spread is attained by a concrete certificate; when it does not, the report
// shows the first failing prefix.  Defined for interval regions (and,
// vacuously, isolated points).
inline BoundAttainment check_bound_attainment(const Spectrum& psi,
                                              const Spectrum& phi,
                                              const Opmp& region) {
  const Polyhedron& poly = region.polyhedron;
  if (!poly.feasible || !poly.vertices || poly.vertices->empty())
    raise(ErrorCode::VerticesUnavailable,
          "attainment needs the region's vertex list");
  if (poly.dim > 1)
    raise(ErrorCode::Unsupported,
          "spread attainment is defined for interval regions only");
  const std::size_t n = std::max(psi.size(), phi.size());
  BoundAttainment out;
  if (poly.vertices->size() == 1) {
    const Spectrum chi = auxiliary_state(poly.vertices->front());
    out.witness_or_refutation =
        majorizes(tensor(pad_to(psi, n), chi), tensor(pad_to(phi, n), chi));
    out.attained = out.witness_or_refutation.result;  // zero spread
    return out;
  }
  const std::vector<Rat>& v0 = poly.vertices->front();
  const std::vector<Rat>& v1 = poly.vertices->back();
  const EntropyOrder ord =
      entropy_compare(auxiliary_state(v0), auxiliary_state(v1));
  const std::vector<Rat>& low = ord == EntropyOrder::Less ? v0 : v1;
  const std::vector<Rat>& high = ord == EntropyOrder::Less ? v1 : v0;
  const Spectrum chi = auxiliary_state(low);
  const Spectrum upgraded = auxiliary_state(high);
  out.witness_or_refutation =
      majorizes(tensor(pad_to(psi, n), chi), tensor(pad_to(phi, n), upgraded));
  out.attained = out.witness_or_refutation.result;
  return out;
}

namespace detail {

// One realized ordering of the product spectrum together with the polyhedral
// cell of parameters realizing it and the exact range of every prefix form
// over that cell.
struct OrderCell {
  Ordering ordering;
  HalfspaceSystem cell;
  std::vector<AffineForm> prefixes;  // prefix forms for m = 1 .. nk-1
  std::vector<Rat> prefix_min;
  std::vector<Rat> prefix_max;
};

// All nonempty order cells of the product spectrum s (x) chi(P) over the
// ordered parameter simplex; cells that coincide because of tied products
// are emitted once.
inline std::vector<OrderCell> order_cells(const Spectrum& s, std::size_t k,
                                          std::size_t cap,
                                          OrderingSide side) {
  std::vector<OrderCell> out;
  std::set<std::string> seen;
  for (const Ordering& ord : enumerate_orderings(s.size(), k, cap)) {
    HalfspaceSystem sys = ordered_simplex_system(k);
    bool dead = false;
    for (std::size_t t = 0; t + 1 < ord.slots.size(); ++t) {
      Halfspace row = row_between(
          cell_form(s, ord.slots[t + 1].first, ord.slots[t + 1].second, k),
          cell_form(s, ord.slots[t].first, ord.slots[t].second, k),
          RowProvenance::ordering(side, t));
      if (append_row(sys, std::move(row)) == RowFate::Empty) {
        dead = true;
        break;
      }
    }
    if (dead) continue;
    if (!seen.insert(canonical_row_key(sys)).second) continue;
    OrderCell cell;
    cell.ordering = ord;
    cell.cell = std::move(sys);
    AffineForm acc{std::vector<Rat>(k - 1, Rat(0)), Rat(0)};
    bool ranged = true;
    for (std::size_t t = 0; t + 1 < ord.slots.size(); ++t) {
      acc = affine_sum(
          acc, cell_form(s, ord.slots[t].first, ord.slots[t].second, k));
      cell.prefixes.push_back(acc);
      const LpResult mx = maximize_over(cell.cell, acc.coeffs);
      std::vector<Rat> neg(acc.coeffs.size());
      for (std::size_t j = 0; j < neg.size(); ++j) neg[j] = Rat(-acc.coeffs[j]);
      const LpResult mn = maximize_over(cell.cell, neg);
      if (mx.status != LpStatus::Optimal || mn.status != LpStatus::Optimal) {
        ranged = false;
        break;
      }
      cell.prefix_max.push_back(Rat(mx.value + acc.constant));
      cell.prefix_min.push_back(Rat(-mn.value + acc.constant));
    }
    if (!ranged) continue;
    out.push_back(std::move(cell));
  }
  return out;
}

// Joint constraint system in 2(k-1) variables for "chi(P1) realizes the
// initial cell, chi(P2) realizes the final cell, and every initial prefix is
// at most the matching final prefix".  Absent when the per-prefix ranges
// already rule the pair out.
inline std::optional<HalfspaceSystem> joint_system(const OrderCell& sc,
                                                   const OrderCell& tc,
                                                   std::size_t k) {
  const std::size_t d = k - 1;
  for (std::size_t m = 0; m < sc.prefixes.size(); ++m)
    if (sc.prefix_min[m] > tc.prefix_max[m]) return std::nullopt;
  HalfspaceSystem sys;
  sys.ambient_dim = 2 * d;
  for (const Halfspace& h : sc.cell.rows) {
    Halfspace row = h;
    row.coeffs.resize(2 * d, Rat(0));
    sys.rows.push_back(std::move(row));
  }
  for (const Halfspace& h : tc.cell.rows) {
    Halfspace row = h;
    std::vector<Rat> coeffs(2 * d, Rat(0));
    for (std::size_t j = 0; j < d; ++j) coeffs[d + j] = h.coeffs[j];
    row.coeffs = std::move(coeffs);
    sys.rows.push_back(std::move(row));
  }
  for (std::size_t m = 0; m < sc.prefixes.size(); ++m) {
    Halfspace row;
    row.coeffs.assign(2 * d, Rat(0));
    for (std::size_t j = 0; j < d; ++j) row.coeffs[j] = sc.prefixes[m].coeffs[j];
    for (std::size_t j = 0; j < d; ++j)
      row.coeffs[d + j] = Rat(-tc.prefixes[m].coeffs[j]);
    row.rhs = Rat(tc.prefixes[m].constant - sc.prefixes[m].constant);
    row.provenance = RowProvenance::majorization(m + 1);
    sys.rows.push_back(std::move(row));
  }
  return sys;
}

inline double entropy_double(const std::vector<double>& params) {
  double tail = 1.0;
  double h = 0.0;
  for (const double p : params) {
    tail -= p;
    if (p > 0) h -= p * std::log(p);
  }
  if (tail > 0) h -= tail * std::log(tail);
  return h;
}

// One coordinate-ascent sweep improving the final-point entropy at a fixed
// initial point.  Exact slice endpoints come from two linear programs; a
// golden-section probe (double precision, snapped back to a rational) covers
// the concave interior.  Callers verify every returned point exactly.
inline std::vector<std::vector<Rat>> refined_finals(
    const HalfspaceSystem& joint, std::size_t k, const std::vector<Rat>& P1,
    const std::vector<Rat>& seed) {
  const std::size_t d = k - 1;
  std::vector<std::vector<Rat>> cands;
  std::vector<Rat> P2 = seed;
  auto joined = [&](const std::vector<Rat>& fin) {
    std::vector<Rat> w(P1);
    w.insert(w.end(), fin.begin(), fin.end());
    return w;
  };
  auto double_entropy = [](const std::vector<Rat>& fin) {
    std::vector<double> p(fin.size());
    for (std::size_t j = 0; j < fin.size(); ++j)
      p[j] = fin[j].convert_to<double>();
    return entropy_double(p);
  };
  for (std::size_t j = 0; j < d; ++j) {
    HalfspaceSystem slice = joint;
    for (std::size_t v = 0; v < 2 * d; ++v) {
      if (v == d + j) continue;
      Halfspace pin;
      pin.coeffs.assign(2 * d, Rat(0));
      pin.coeffs[v] = Rat(1);
      pin.relation = LpRelation::Eq;
      pin.rhs = v < d ? P1[v] : P2[v - d];
      slice.rows.push_back(std::move(pin));
    }
    std::vector<Rat> obj(2 * d, Rat(0));
    obj[d + j] = Rat(1);
    const LpResult mx = maximize_over(slice, obj);
    obj[d + j] = Rat(-1);
    const LpResult mn = maximize_over(slice, obj);
    if (mx.status != LpStatus::Optimal || mn.status != LpStatus::Optimal)
      continue;
    const Rat hi = mx.value;
    const Rat lo = Rat(-mn.value);
    if (lo > hi) continue;
    std::vector<Rat> probes{lo, hi};
    if (lo < hi) {
      double a = lo.convert_to<double>();
      double b = hi.convert_to<double>();
      const double inv_phi = 0.6180339887498949;
      double x1 = b - inv_phi * (b - a);
      double x2 = a + inv_phi * (b - a);
      auto value_at = [&](double x) {
        std::vector<double> p(P2.size());
        for (std::size_t t = 0; t < P2.size(); ++t)
          p[t] = P2[t].convert_to<double>();
        p[j] = x;
        return entropy_double(p);
      };
      double f1 = value_at(x1), f2 = value_at(x2);
      for (int it = 0; it < 60; ++it) {
        if (f1 < f2) {
          a = x1;
          x1 = x2;
          f1 = f2;
          x2 = a + inv_phi * (b - a);
          f2 = value_at(x2);
        } else {
          b = x2;
          x2 = x1;
          f2 = f1;
          x1 = b - inv_phi * (b - a);
          f1 = value_at(x1);
        }
      }
      const double x = (a + b) / 2;
      Rat snapped(std::llround(x * 4294967296.0));
      snapped = Rat(snapped / Rat(Int(1) << 32));
      if (snapped < lo) snapped = lo;
      if (snapped > hi) snapped = hi;
      probes.push_back(snapped);
    }
    std::vector<Rat> best_here = P2;
    double best_val = double_entropy(P2);
    for (const Rat& x : probes) {
      std::vector<Rat> fin = P2;
      fin[j] = x;
      if (!satisfies(joint, joined(fin))) continue;
      cands.push_back(fin);
      const double val = double_entropy(fin);
      if (val > best_val) {
        best_val = val;
        best_here = fin;
      }
    }
    P2 = best_here;  // chain the sweep through the best coordinate value
  }
  return cands;
}

// Larger certified gain wins; exact parameter order breaks ties so repeated
// searches return the same certificate.
inline bool certificate_better(const SupercatalysisCertificate& a,
                               const SupercatalysisCertificate& b) {
  if (a.delta.lower != b.delta.lower) return a.delta.lower > b.delta.lower;
  if (a.p_initial != b.p_initial) return a.p_initial < b.p_initial;
  return a.p_final < b.p_final;
}

}  // namespace detail

// Searches for a verified entropy-gaining catalyst upgrade with k-outcome
// auxiliary states.  Region-anchored steps come first; a joint scan over
// independent initial/final order cells then covers upgrades whose final
// state leaves the catalyst region.  With maximize=true every candidate is
// examined and the certificate with the largest certified gain is returned;
// otherwise the first verified certificate wins.
inline std::optional<SupercatalysisCertificate> find_supercatalyst(
    const Spectrum& psi, const Spectrum& phi, std::size_t k,
    bool maximize = false, std::size_t cap = 16) {
  if (compare(psi, phi) != ComparabilityClass::Incomparable)
    raise(ErrorCode::NotIncomparable,
          "catalyst upgrades are a question about incomparable pairs only");
  const std::size_t n = std::max(psi.size(), phi.size());
  detail::check_problem_size(n, k, cap);
  std::optional<SupercatalysisCertificate> best;
  auto offer = [&best](SupercatalysisCertificate c) {
    if (!best || detail::certificate_better(c, *best)) best = std::move(c);
  };
  for (const Opmp& region : enumerate_opmps(psi, phi, k, cap)) {
    if (std::optional<SupercatalysisCertificate> c =
            supercat_from_opmp(psi, phi, region)) {
      if (!maximize) return c;
      offer(std::move(*c));
    }
  }
  if (k >= 2) {
    const Spectrum ps = pad_to(psi, n);
    const Spectrum ph = pad_to(phi, n);
    const std::vector<detail::OrderCell> initial_cells =
        detail::order_cells(ps, k, cap, OrderingSide::Source);
    const std::vector<detail::OrderCell> final_cells =
        detail::order_cells(ph, k, cap, OrderingSide::Target);
    const std::size_t d = k - 1;
    const bool want_vertices = 2 * d <= 2;
    for (const detail::OrderCell& sc : initial_cells) {
      for (const detail::OrderCell& tc : final_cells) {
        std::optional<HalfspaceSystem> sys = detail::joint_system(sc, tc, k);
        if (!sys) continue;
        const Polyhedron joint =
            make_polyhedron(std::move(*sys), want_vertices);
        if (!joint.feasible) continue;
        std::vector<std::vector<Rat>> points;
        if (joint.vertices)
          points = *joint.vertices;
        else if (joint.witness)
          points.push_back(*joint.witness);
        for (const std::vector<Rat>& w : points) {
          const std::vector<Rat> P1(w.begin(), w.begin() + d);
          const std::vector<Rat> P2(w.begin() + d, w.end());
          if (std::optional<SupercatalysisCertificate> c =
                  detail::certify(psi, phi, P1, P2)) {
            if (!maximize) return c;
            offer(std::move(*c));
          }
          for (const std::vector<Rat>& fin :
               detail::refined_finals(joint.system, k, P1, P2)) {
            if (std::optional<SupercatalysisCertificate> c =
                    detail::certify(psi, phi, P1, fin)) {
              if (!maximize) return c;
              offer(std::move(*c));
            }
          }
        }
      }
    }
  }
  return best;
}

// Searches for a catalyst chi that a fixed final state omega can replace:
// psi (x) chi -> phi (x) omega deterministically with E(omega) > E(chi).
// The final side is constant, so each initial order cell intersected with
// the prefix constraints is scanned at its vertices, where the concave
// entropy attains its minimum; the certificate with the largest certified
// gain is returned.
inline std::optional<SupercatalysisCertificate> find_supercatalyst_with_final(
    const Spectrum& psi, const Spectrum& phi, const Spectrum& omega,
    std::size_t cap = 16) {
  if (compare(psi, phi) != ComparabilityClass::Incomparable)
    raise(ErrorCode::NotIncomparable,
          "catalyst upgrades are a question about incomparable pairs only");
  const std::size_t k = omega.size();
  const std::size_t n = std::max(psi.size(), phi.size());
  detail::check_problem_size(n, k, cap);
  const Spectrum ps = pad_to(psi, n);
  const Spectrum ph = pad_to(phi, n);
  const std::vector<Rat> targets = prefix_sums(tensor(ph, omega));
  std::vector<Rat> omega_params;
  omega_params.reserve(k - 1);
  for (std::size_t j = 0; j + 1 < k; ++j) omega_params.push_back(omega[j]);
  std::optional<SupercatalysisCertificate> best;
  for (const detail::OrderCell& sc :
       detail::order_cells(ps, k, cap, OrderingSide::Source)) {
    HalfspaceSystem sys = sc.cell;
    bool dead = false;
    for (std::size_t m = 0; m < sc.prefixes.size(); ++m) {
      Halfspace row;
      row.coeffs = sc.prefixes[m].coeffs;
      row.rhs = Rat(targets[m] - sc.prefixes[m].constant);
      row.provenance = RowProvenance::majorization(m + 1);
      if (detail::append_row(sys, std::move(row)) == detail::RowFate::Empty) {
        dead = true;
        break;
      }
    }
    if (dead) continue;
    const Polyhedron poly = make_polyhedron(std::move(sys), k - 1 <= 4);
    if (!poly.feasible) continue;
    std::vector<std::vector<Rat>> points;
    if (poly.vertices)
      points = *poly.vertices;
    else if (poly.witness)
      points.push_back(*poly.witness);
    for (const std::vector<Rat>& v : points) {
      if (std::optional<SupercatalysisCertificate> c =
              detail::certify(psi, phi, v, omega_params)) {
        if (!best || detail::certificate_better(*c, *best)) best = std::move(c);
      }
    }
  }
  return best;
}

}  // namespace supercat
