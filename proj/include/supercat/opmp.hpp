#pragma once

// Catalyst-region geometry for bipartite pure-state transformations.
//
// For a fixed auxiliary dimension k, the products alpha_i * p_j of a state
// spectrum with a k-outcome auxiliary spectrum can be sorted in only finitely
// many ways: the admissible orders are the linear extensions of the n x k
// grid poset.  Fixing one order for the source products and one for the
// target products turns every majorization prefix inequality into a linear
// constraint on the auxiliary parameters, so the set of auxiliary states
// that enable the transformation is a finite union of polyhedra.
//
// This header enumerates those orders, assembles the polyhedra, and merges
// adjacent order cells whose prefix constraints are implied, so that callers
// see maximal catalyst regions rather than one fragment per product order.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "supercat/entropy.hpp"
#include "supercat/errors.hpp"
#include "supercat/majorization.hpp"
#include "supercat/polyhedron.hpp"
#include "supercat/rational.hpp"
#include "supercat/spectrum.hpp"

namespace supercat {

// One admissible sorted order of the n*k products alpha_i * p_j.
// slots[t] is the (state index, auxiliary index) pair occupying sorted
// position t, 0-based, largest product first.
struct Ordering {
  std::size_t state_dim = 0;  // n
  std::size_t aux_dim = 0;    // k
  std::vector<std::pair<std::size_t, std::size_t>> slots;

  friend bool operator==(const Ordering& a, const Ordering& b) {
    return a.state_dim == b.state_dim && a.aux_dim == b.aux_dim &&
           a.slots == b.slots;
  }
};

// A valid ordering lists every grid cell exactly once and never places a
// cell before one of its grid predecessors: because both spectra are stored
// descending, alpha_i * p_j >= alpha_i' * p_j' holds identically whenever
// i <= i' and j <= j'.
inline bool is_valid_ordering(const Ordering& ord) {
  const std::size_t n = ord.state_dim;
  const std::size_t k = ord.aux_dim;
  if (n == 0 || k == 0 || ord.slots.size() != n * k) return false;
  std::vector<char> placed(n * k, 0);
  for (const auto& [i, j] : ord.slots) {
    if (i >= n || j >= k) return false;
    const std::size_t id = i * k + j;
    if (placed[id]) return false;
    if (i > 0 && !placed[id - k]) return false;
    if (j > 0 && !placed[id - 1]) return false;
    placed[id] = 1;
  }
  return true;
}

// Number of linear extensions of the n x k grid poset, i.e. the number of
// standard Young tableaux of rectangular shape, by the hook-length formula.
inline Int ordering_count(std::size_t n, std::size_t k) {
  Int numerator(1);
  for (std::size_t t = 2; t <= n * k; ++t) numerator *= Int(t);
  Int denominator(1);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < k; ++j)
      denominator *= Int((n - i) + (k - j) - 1);
  return Int(numerator / denominator);
}

// All admissible orders of an n x k product grid, in lexicographic cell-id
// order.  The count grows like the hook-length formula, so a cap keeps
// accidental blowups out; n*k = 16 (24024 orders for 4x4) stays cheap.
inline std::vector<Ordering> enumerate_orderings(std::size_t n, std::size_t k,
                                                 std::size_t cap = 16) {
  if (n == 0 || k == 0)
    raise(ErrorCode::InvalidOrdering, "ordering grid dimensions must be positive");
  if (n * k > cap)
    raise(ErrorCode::TooLarge,
          "ordering enumeration for " + std::to_string(n) + "x" +
              std::to_string(k) + " exceeds the cap of " + std::to_string(cap));

  std::vector<Ordering> out;
  std::vector<char> placed(n * k, 0);
  std::vector<std::pair<std::size_t, std::size_t>> slots;
  slots.reserve(n * k);

  auto dfs = [&](auto&& self) -> void {
    if (slots.size() == n * k) {
      out.push_back(Ordering{n, k, slots});
      return;
    }
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < k; ++j) {
        const std::size_t id = i * k + j;
        if (placed[id]) continue;
        if (i > 0 && !placed[id - k]) continue;
        if (j > 0 && !placed[id - 1]) continue;
        placed[id] = 1;
        slots.emplace_back(i, j);
        self(self);
        slots.pop_back();
        placed[id] = 0;
      }
    }
  };
  dfs(dfs);
  return out;
}

// The order actually realized by a concrete auxiliary state: cells sorted by
// product, largest first; ties broken toward smaller (i, j), which always
// yields a valid grid extension.
inline Ordering realized_ordering(const Spectrum& state, const Spectrum& aux) {
  const std::size_t n = state.size();
  const std::size_t k = aux.size();
  Ordering ord{n, k, {}};
  ord.slots.reserve(n * k);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < k; ++j) ord.slots.emplace_back(i, j);
  std::sort(ord.slots.begin(), ord.slots.end(),
            [&](const auto& a, const auto& b) {
              const Rat pa = Rat(state[a.first] * aux[a.second]);
              const Rat pb = Rat(state[b.first] * aux[b.second]);
              if (pa != pb) return pa > pb;
              return a < b;
            });
  return ord;
}

struct OrderingPair {
  Ordering source;
  Ordering target;
};

// A maximal catalyst region: a polyhedron of auxiliary parameters together
// with every (source order, target order) cell it merges.  The named
// source/target orderings are one representative pair.
struct Opmp {
  Ordering source_ordering;
  Ordering target_ordering;
  Polyhedron polyhedron;
  std::optional<std::vector<EntropyInterval>> vertex_entropies;  // descending
  std::vector<OrderingPair> pieces;
  bool covers_all_orderings = false;  // comparable pair: whole simplex works
};

namespace detail {

// Affine function of the reduced parameters (p_1, ..., p_{k-1}).
struct AffineForm {
  std::vector<Rat> coeffs;
  Rat constant;

  friend bool operator==(const AffineForm& a, const AffineForm& b) {
    return a.coeffs == b.coeffs && a.constant == b.constant;
  }
};

inline AffineForm affine_sum(const AffineForm& a, const AffineForm& b) {
  AffineForm out = a;
  for (std::size_t j = 0; j < out.coeffs.size(); ++j) out.coeffs[j] += b.coeffs[j];
  out.constant += b.constant;
  return out;
}

// alpha_i * p_j as a function of the reduced parameters.
inline AffineForm cell_form(const Spectrum& s, std::size_t i, std::size_t j,
                            std::size_t k) {
  AffineForm f{std::vector<Rat>(k - 1, Rat(0)), Rat(0)};
  if (j + 1 < k) {
    f.coeffs[j] = s[i];
  } else if (k >= 2) {
    for (Rat& c : f.coeffs) c = Rat(-s[i]);
    f.constant = s[i];
  } else {
    f.constant = s[i];
  }
  return f;
}

// Halfspace for "lhs <= rhs" between two affine forms.
inline Halfspace row_between(const AffineForm& lhs, const AffineForm& rhs,
                             RowProvenance prov) {
  Halfspace h;
  h.coeffs.resize(lhs.coeffs.size());
  for (std::size_t j = 0; j < lhs.coeffs.size(); ++j)
    h.coeffs[j] = Rat(lhs.coeffs[j] - rhs.coeffs[j]);
  h.relation = LpRelation::LessEq;
  h.rhs = Rat(rhs.constant - lhs.constant);
  h.provenance = prov;
  return h;
}

// The ordered probability simplex p_1 >= ... >= p_k >= 0, sum 1, in the
// k-1 reduced coordinates.
inline HalfspaceSystem ordered_simplex_system(std::size_t k) {
  HalfspaceSystem sys;
  sys.ambient_dim = k - 1;
  if (k == 1) return sys;
  const std::size_t d = k - 1;
  for (std::size_t j = 0; j + 1 < d; ++j) {
    Halfspace h;
    h.coeffs.assign(d, Rat(0));
    h.coeffs[j] = Rat(-1);
    h.coeffs[j + 1] = Rat(1);
    h.rhs = Rat(0);
    h.provenance = RowProvenance::simplex(j);
    sys.rows.push_back(std::move(h));
  }
  {
    // p_k <= p_{k-1}, with p_k eliminated.
    Halfspace h;
    h.coeffs.assign(d, Rat(-1));
    h.coeffs[d - 1] = Rat(-2);
    h.rhs = Rat(-1);
    h.provenance = RowProvenance::simplex(d - 1);
    sys.rows.push_back(std::move(h));
  }
  {
    // p_k >= 0.
    Halfspace h;
    h.coeffs.assign(d, Rat(1));
    h.rhs = Rat(1);
    h.provenance = RowProvenance::simplex(d);
    sys.rows.push_back(std::move(h));
  }
  return sys;
}

enum class RowFate { Tautology, Implied, Cut, Empty };

// Adds a row to a feasible bounded region only if it genuinely cuts it.
// Implied rows are dropped so that emitted systems stay irredundant.
inline RowFate append_row(HalfspaceSystem& sys, Halfspace row) {
  bool all_zero = true;
  for (const Rat& c : row.coeffs)
    if (c != 0) {
      all_zero = false;
      break;
    }
  if (all_zero) return row.rhs >= 0 ? RowFate::Tautology : RowFate::Empty;

  const LpResult mx = maximize_over(sys, row.coeffs);
  if (mx.status != LpStatus::Optimal) return RowFate::Empty;
  if (mx.value <= row.rhs) return RowFate::Implied;

  std::vector<Rat> negated(row.coeffs.size());
  for (std::size_t j = 0; j < row.coeffs.size(); ++j)
    negated[j] = Rat(-row.coeffs[j]);
  const LpResult mn = maximize_over(sys, negated);
  if (Rat(-mn.value) > row.rhs) return RowFate::Empty;

  sys.rows.push_back(std::move(row));
  return RowFate::Cut;
}

inline std::string affine_key(const AffineForm& f) {
  std::string out = "[";
  for (const Rat& c : f.coeffs) out += c.str() + ",";
  out += "|" + f.constant.str() + "]";
  return out;
}

struct PieceInfo {
  Ordering source;
  Ordering target;
  std::string signature;  // per-step product-form pairs; equal for tie twins
};

struct RegionOut {
  HalfspaceSystem system;
  std::vector<PieceInfo> pieces;
};

// Depth-first refinement over simultaneous source/target product orders.
//
// Each node owns the region where the placed prefixes are the sorted leading
// products and every placed prefix inequality holds.  Choosing the next cell
// on both sides splits the region along "candidate is the max of the open
// heads" facets; the new prefix inequality is then applied.  A node whose
// children are all intact and uncut by their prefix rows collapses back into
// its own region, which is how published intervals such as a full catalyst
// interval emerge in one piece even when the product order changes inside.
class OrderingTree {
 public:
  OrderingTree(const Spectrum& psi, const Spectrum& phi, std::size_t k)
      : psi_(psi), phi_(phi), k_(k), n_(psi.size()), total_(psi.size() * k) {}

  std::vector<RegionOut> run() {
    SideState src{std::vector<char>(total_, 0), {}};
    SideState tgt{std::vector<char>(total_, 0), {}};
    const AffineForm zero{std::vector<Rat>(k_ - 1, Rat(0)), Rat(0)};
    Step root = explore(ordered_simplex_system(k_), src, tgt, zero, zero,
                        std::string(), 0);
    return std::move(root.out);
  }

 private:
  struct SideState {
    std::vector<char> placed;
    std::vector<std::size_t> order;  // placed cell ids, in sorted position order
  };
  struct Step {
    bool whole = false;
    std::vector<RegionOut> out;
  };

  std::vector<std::size_t> heads(const SideState& s) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < n_; ++i) {
      for (std::size_t j = 0; j < k_; ++j) {
        const std::size_t id = i * k_ + j;
        if (s.placed[id]) continue;
        if (i > 0 && !s.placed[id - k_]) continue;
        if (j > 0 && !s.placed[id - 1]) continue;
        out.push_back(id);
      }
    }
    return out;
  }

  AffineForm form(const Spectrum& s, std::size_t id) const {
    return cell_form(s, id / k_, id % k_, k_);
  }

  Ordering to_ordering(const SideState& s) const {
    Ordering ord{n_, k_, {}};
    ord.slots.reserve(total_);
    for (std::size_t id : s.order) ord.slots.emplace_back(id / k_, id % k_);
    return ord;
  }

  Step explore(const HalfspaceSystem& region, const SideState& src,
               const SideState& tgt, const AffineForm& src_prefix,
               const AffineForm& tgt_prefix, const std::string& signature,
               std::size_t t) const {
    if (t == total_) {
      RegionOut leaf{region, {PieceInfo{to_ordering(src), to_ordering(tgt), signature}}};
      Step out;
      out.whole = true;
      out.out.push_back(std::move(leaf));
      return out;
    }

    const std::vector<std::size_t> src_heads = heads(src);
    const std::vector<std::size_t> tgt_heads = heads(tgt);

    std::vector<std::pair<AffineForm, AffineForm>> seen;
    bool merge_ok = true;
    bool any_child = false;
    std::vector<RegionOut> collected;

    for (std::size_t cs : src_heads) {
      const AffineForm fs = form(psi_, cs);
      for (std::size_t ct : tgt_heads) {
        const AffineForm ft = form(phi_, ct);
        const std::pair<AffineForm, AffineForm> key{fs, ft};
        if (std::find(seen.begin(), seen.end(), key) != seen.end()) continue;
        seen.push_back(key);

        HalfspaceSystem cell = region;
        bool empty = false;
        for (std::size_t h : src_heads) {
          if (h == cs) continue;
          if (append_row(cell, row_between(form(psi_, h), fs,
                                           RowProvenance::ordering(
                                               OrderingSide::Source, t))) ==
              RowFate::Empty) {
            empty = true;
            break;
          }
        }
        if (!empty) {
          for (std::size_t h : tgt_heads) {
            if (h == ct) continue;
            if (append_row(cell, row_between(form(phi_, h), ft,
                                             RowProvenance::ordering(
                                                 OrderingSide::Target, t))) ==
                RowFate::Empty) {
              empty = true;
              break;
            }
          }
        }
        if (empty) continue;  // this head pair never realizes the maximum here

        any_child = true;
        const AffineForm next_src = affine_sum(src_prefix, fs);
        const AffineForm next_tgt = affine_sum(tgt_prefix, ft);

        if (t + 1 < total_) {
          const RowFate fate = append_row(
              cell, row_between(next_src, next_tgt,
                                RowProvenance::majorization(t + 1)));
          if (fate == RowFate::Empty) {
            // The prefix inequality wipes this cell out: part of the parent
            // region is not catalytic, so the parent cannot collapse.
            merge_ok = false;
            continue;
          }
          if (fate == RowFate::Cut) merge_ok = false;
        }

        SideState src_next = src;
        src_next.placed[cs] = 1;
        src_next.order.push_back(cs);
        SideState tgt_next = tgt;
        tgt_next.placed[ct] = 1;
        tgt_next.order.push_back(ct);

        Step child = explore(cell, src_next, tgt_next, next_src, next_tgt,
                             signature + affine_key(fs) + "&" + affine_key(ft) + ";",
                             t + 1);
        if (!child.whole) merge_ok = false;
        for (RegionOut& r : child.out) collected.push_back(std::move(r));
      }
    }

    Step out;
    if (merge_ok && any_child) {
      RegionOut merged{region, {}};
      for (RegionOut& r : collected)
        for (PieceInfo& p : r.pieces) merged.pieces.push_back(std::move(p));
      out.whole = true;
      out.out.push_back(std::move(merged));
    } else {
      out.whole = false;
      out.out = std::move(collected);
    }
    return out;
  }

  const Spectrum& psi_;
  const Spectrum& phi_;
  std::size_t k_;
  std::size_t n_;
  std::size_t total_;
};

// Canonical text key of a system: rows scaled so the leading nonzero
// coefficient has absolute value one, serialized, and sorted.
inline std::string canonical_row_key(const HalfspaceSystem& sys) {
  std::vector<std::string> rows;
  rows.reserve(sys.rows.size());
  for (const Halfspace& h : sys.rows) {
    std::size_t lead = h.coeffs.size();
    for (std::size_t j = 0; j < h.coeffs.size(); ++j)
      if (h.coeffs[j] != 0) {
        lead = j;
        break;
      }
    Rat scale(1);
    if (lead != h.coeffs.size()) scale = Rat(abs(h.coeffs[lead]));
    std::string row = h.relation == LpRelation::Eq ? "=:" : "<:";
    for (const Rat& c : h.coeffs) row += Rat(c / scale).str() + ",";
    row += ":" + Rat(h.rhs / scale).str();
    rows.push_back(std::move(row));
  }
  std::sort(rows.begin(), rows.end());
  rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
  std::string key;
  for (const std::string& r : rows) key += r + "|";
  return key;
}

struct BuiltRegion {
  Polyhedron polyhedron;
  std::vector<PieceInfo> pieces;
  std::string key;
};

// True when every point of `inner` satisfies all rows of `outer`.
inline bool region_within(const BuiltRegion& inner, const BuiltRegion& outer) {
  for (const Halfspace& h : outer.polyhedron.system.rows) {
    bool all_zero = true;
    for (const Rat& c : h.coeffs)
      if (c != 0) {
        all_zero = false;
        break;
      }
    if (all_zero) {
      if (h.rhs < 0) return false;
      continue;
    }
    const LpResult mx = maximize_over(inner.polyhedron.system, h.coeffs);
    if (mx.status != LpStatus::Optimal || mx.value > h.rhs) return false;
  }
  return true;
}

inline void sort_pieces(std::vector<PieceInfo>& pieces) {
  std::sort(pieces.begin(), pieces.end(),
            [](const PieceInfo& a, const PieceInfo& b) {
              if (a.source.slots != b.source.slots)
                return a.source.slots < b.source.slots;
              return a.target.slots < b.target.slots;
            });
}

// Tree output -> feasible polyhedra, with duplicate and nested regions
// (tie-degenerate order cells) folded together, deterministically sorted.
inline std::vector<BuiltRegion> build_regions(const Spectrum& psi,
                                              const Spectrum& phi,
                                              std::size_t k) {
  std::vector<RegionOut> raw = OrderingTree(psi, phi, k).run();

  std::vector<BuiltRegion> built;
  for (RegionOut& r : raw) {
    BuiltRegion b;
    b.key = canonical_row_key(r.system);
    bool duplicate = false;
    for (BuiltRegion& existing : built) {
      if (existing.key == b.key) {
        for (PieceInfo& p : r.pieces) existing.pieces.push_back(std::move(p));
        duplicate = true;
        break;
      }
    }
    if (duplicate) continue;
    b.polyhedron = make_polyhedron(std::move(r.system));
    if (!b.polyhedron.feasible) continue;
    b.pieces = std::move(r.pieces);
    built.push_back(std::move(b));
  }

  // Absorb regions contained in another (faces reached through tied orders).
  std::vector<char> dead(built.size(), 0);
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < built.size(); ++i) {
      if (dead[i]) continue;
      for (std::size_t j = 0; j < built.size(); ++j) {
        if (i == j || dead[i] || dead[j]) continue;
        const bool i_in_j = region_within(built[i], built[j]);
        const bool j_in_i = i_in_j && region_within(built[j], built[i]);
        const bool drop_i = i_in_j && (!j_in_i || built[j].key < built[i].key);
        if (drop_i) {
          for (PieceInfo& p : built[i].pieces)
            built[j].pieces.push_back(std::move(p));
          dead[i] = 1;
          changed = true;
        }
      }
    }
  }

  std::vector<BuiltRegion> alive;
  for (std::size_t i = 0; i < built.size(); ++i)
    if (!dead[i]) alive.push_back(std::move(built[i]));

  const bool by_vertices =
      std::all_of(alive.begin(), alive.end(), [](const BuiltRegion& b) {
        return b.polyhedron.vertices.has_value();
      });
  std::sort(alive.begin(), alive.end(),
            [&](const BuiltRegion& a, const BuiltRegion& b) {
              if (by_vertices && *a.polyhedron.vertices != *b.polyhedron.vertices)
                return *a.polyhedron.vertices < *b.polyhedron.vertices;
              return a.key < b.key;
            });
  for (BuiltRegion& b : alive) sort_pieces(b.pieces);
  return alive;
}

inline std::optional<std::vector<EntropyInterval>> vertex_entropy_list(
    const Polyhedron& poly) {
  if (!poly.feasible || !poly.vertices.has_value()) return std::nullopt;
  std::vector<EntropyInterval> out;
  out.reserve(poly.vertices->size());
  for (const std::vector<Rat>& v : *poly.vertices)
    out.push_back(entropy(auxiliary_state(v)));
  std::sort(out.begin(), out.end(),
            [](const EntropyInterval& a, const EntropyInterval& b) {
              if (a.lower != b.lower) return a.lower > b.lower;
              return a.upper > b.upper;
            });
  return out;
}

inline Opmp opmp_from_region(BuiltRegion&& b) {
  Opmp o;
  o.source_ordering = b.pieces.front().source;
  o.target_ordering = b.pieces.front().target;
  o.vertex_entropies = vertex_entropy_list(b.polyhedron);
  o.polyhedron = std::move(b.polyhedron);
  o.pieces.reserve(b.pieces.size());
  for (PieceInfo& p : b.pieces)
    o.pieces.push_back(OrderingPair{std::move(p.source), std::move(p.target)});
  return o;
}

// Signature of a fully specified ordering pair, matching the tree's keys.
inline std::string pair_signature(const Spectrum& psi, const Spectrum& phi,
                                  const Ordering& src, const Ordering& tgt,
                                  std::size_t k) {
  std::string sig;
  for (std::size_t t = 0; t < src.slots.size(); ++t) {
    sig += affine_key(cell_form(psi, src.slots[t].first, src.slots[t].second, k));
    sig += "&";
    sig += affine_key(cell_form(phi, tgt.slots[t].first, tgt.slots[t].second, k));
    sig += ";";
  }
  return sig;
}

// The full constraint system of one literal ordering pair: consecutive
// sort rows on both sides, every prefix inequality, and the simplex.
inline HalfspaceSystem literal_pair_system(const Spectrum& psi,
                                           const Spectrum& phi,
                                           const Ordering& src,
                                           const Ordering& tgt,
                                           std::size_t k) {
  HalfspaceSystem sys = ordered_simplex_system(k);
  const std::size_t total = src.slots.size();
  auto src_form = [&](std::size_t t) {
    return cell_form(psi, src.slots[t].first, src.slots[t].second, k);
  };
  auto tgt_form = [&](std::size_t t) {
    return cell_form(phi, tgt.slots[t].first, tgt.slots[t].second, k);
  };
  for (std::size_t t = 0; t + 1 < total; ++t) {
    sys.rows.push_back(row_between(src_form(t + 1), src_form(t),
                                   RowProvenance::ordering(OrderingSide::Source, t)));
    sys.rows.push_back(row_between(tgt_form(t + 1), tgt_form(t),
                                   RowProvenance::ordering(OrderingSide::Target, t)));
  }
  AffineForm src_prefix{std::vector<Rat>(k - 1, Rat(0)), Rat(0)};
  AffineForm tgt_prefix = src_prefix;
  for (std::size_t m = 1; m < total; ++m) {
    src_prefix = affine_sum(src_prefix, src_form(m - 1));
    tgt_prefix = affine_sum(tgt_prefix, tgt_form(m - 1));
    sys.rows.push_back(
        row_between(src_prefix, tgt_prefix, RowProvenance::majorization(m)));
  }
  return sys;
}

// A strictly descending auxiliary state used to pick representative orders
// when every auxiliary state works.
inline Spectrum generic_auxiliary(std::size_t k) {
  std::vector<Rat> values(k);
  const Int den = Int((Int(1) << k) - 1);
  for (std::size_t j = 0; j < k; ++j)
    values[j] = Rat(Int(Int(1) << (k - 1 - j)), den);
  return Spectrum::make(std::move(values));
}

inline Opmp whole_simplex_opmp(std::size_t k, const Ordering& src,
                               const Ordering& tgt) {
  Opmp o;
  o.source_ordering = src;
  o.target_ordering = tgt;
  o.polyhedron = make_polyhedron(ordered_simplex_system(k));
  o.vertex_entropies = vertex_entropy_list(o.polyhedron);
  o.pieces.push_back(OrderingPair{src, tgt});
  o.covers_all_orderings = true;
  return o;
}

inline void check_ordering_inputs(const Ordering& src, const Ordering& tgt,
                                  std::size_t n, std::size_t k) {
  if (src.state_dim != n || src.aux_dim != k || !is_valid_ordering(src))
    raise(ErrorCode::InvalidOrdering,
          "source ordering is not a valid extension of the " +
              std::to_string(n) + "x" + std::to_string(k) + " grid");
  if (tgt.state_dim != n || tgt.aux_dim != k || !is_valid_ordering(tgt))
    raise(ErrorCode::InvalidOrdering,
          "target ordering is not a valid extension of the " +
              std::to_string(n) + "x" + std::to_string(k) + " grid");
}

inline void check_problem_size(std::size_t n, std::size_t k, std::size_t cap) {
  if (k == 0) raise(ErrorCode::Unsupported, "auxiliary dimension must be positive");
  if (n * k > cap)
    raise(ErrorCode::TooLarge,
          "product grid " + std::to_string(n) + "x" + std::to_string(k) +
              " exceeds the cap of " + std::to_string(cap));
}

}  // namespace detail

// Every maximal catalyst region for psi -> phi with a k-outcome auxiliary
// state.  The union of the returned polyhedra is exactly the set of
// auxiliary parameter points P for which verify_catalysis(psi, phi, chi(P))
// holds; regions are deterministically ordered.
inline std::vector<Opmp> enumerate_opmps(const Spectrum& psi, const Spectrum& phi,
                                         std::size_t k, std::size_t cap = 16) {
  const std::size_t n = std::max(psi.size(), phi.size());
  detail::check_problem_size(n, k, cap);
  const Spectrum ps = pad_to(psi, n);
  const Spectrum ph = pad_to(phi, n);

  const ComparabilityClass cls = compare(ps, ph);
  if (cls == ComparabilityClass::SourceToTarget ||
      cls == ComparabilityClass::Equivalent) {
    const Spectrum aux = detail::generic_auxiliary(k);
    return {detail::whole_simplex_opmp(k, realized_ordering(ps, aux),
                                       realized_ordering(ph, aux))};
  }
  if (cls == ComparabilityClass::TargetToSource) {
    // The reverse conversion is already deterministic, so equality of the
    // product spectra would be required; no auxiliary state achieves it.
    return {};
  }

  std::vector<detail::BuiltRegion> regions = detail::build_regions(ps, ph, k);
  std::vector<Opmp> out;
  out.reserve(regions.size());
  for (detail::BuiltRegion& b : regions)
    out.push_back(detail::opmp_from_region(std::move(b)));
  return out;
}

// The maximal catalyst region whose merged order cells include the given
// source/target pair; an infeasible region with the pair's literal
// constraint system when that cell is empty.
inline Opmp build_opmp(const Spectrum& psi, const Spectrum& phi, std::size_t k,
                       const Ordering& src, const Ordering& tgt,
                       std::size_t cap = 16) {
  const std::size_t n = std::max(psi.size(), phi.size());
  detail::check_problem_size(n, k, cap);
  const Spectrum ps = pad_to(psi, n);
  const Spectrum ph = pad_to(phi, n);
  detail::check_ordering_inputs(src, tgt, n, k);

  const ComparabilityClass cls = compare(ps, ph);
  if (cls == ComparabilityClass::SourceToTarget ||
      cls == ComparabilityClass::Equivalent)
    return detail::whole_simplex_opmp(k, src, tgt);

  if (cls == ComparabilityClass::Incomparable) {
    const std::string wanted = detail::pair_signature(ps, ph, src, tgt, k);
    std::vector<detail::BuiltRegion> regions = detail::build_regions(ps, ph, k);
    for (detail::BuiltRegion& b : regions) {
      for (const detail::PieceInfo& p : b.pieces) {
        if (p.signature == wanted) {
          Opmp o = detail::opmp_from_region(std::move(b));
          o.source_ordering = src;
          o.target_ordering = tgt;
          return o;
        }
      }
    }
  }

  Opmp o;
  o.source_ordering = src;
  o.target_ordering = tgt;
  o.polyhedron = make_polyhedron(detail::literal_pair_system(ps, ph, src, tgt, k));
  o.vertex_entropies = detail::vertex_entropy_list(o.polyhedron);
  o.pieces.push_back(OrderingPair{src, tgt});
  return o;
}

struct CatalyzabilityResult {
  bool catalyzable = false;
  std::optional<Spectrum> witness;
  // Nonzero outcomes of the witness; a trailing zero weight means the
  // auxiliary state is effectively lower-dimensional.
  std::optional<std::size_t> witness_effective_dimension;
};

// Does an incomparable pair admit a k-outcome catalyst?  Witness: an
// auxiliary state drawn from the interior of the first catalyst region.
inline CatalyzabilityResult is_catalyzable(const Spectrum& psi, const Spectrum& phi,
                                           std::size_t k, std::size_t cap = 16) {
  if (compare(psi, phi) != ComparabilityClass::Incomparable)
    raise(ErrorCode::NotIncomparable,
          "catalyzability is a question about incomparable pairs only");
  const std::vector<Opmp> regions = enumerate_opmps(psi, phi, k, cap);
  CatalyzabilityResult out;
  if (regions.empty()) return out;
  const Polyhedron& poly = regions.front().polyhedron;
  const std::vector<Rat>& point =
      poly.interior_point ? *poly.interior_point : *poly.witness;
  out.catalyzable = true;
  out.witness = auxiliary_state(point);
  out.witness_effective_dimension = out.witness->effective_size();
  return out;
}

}  // namespace supercat
