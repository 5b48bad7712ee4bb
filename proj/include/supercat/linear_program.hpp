#pragma once

// Exact rational linear programming over free variables.  Small dense
// two-phase simplex with Bland's anti-cycling rule; every pivot is exact, so
// results are certificates rather than approximations.  Problem sizes in this
// library are tiny (at most a few dozen rows, ambient dimension <= 6), which
// makes the dense tableau the right tool.
//
// Variables are unrestricted in sign; sign constraints must be supplied as
// rows.  A one-variable fast path solves the common interval case directly.

#include <cstddef>
#include <optional>
#include <vector>

#include "supercat/errors.hpp"
#include "supercat/rational.hpp"

namespace supercat {

enum class LpRelation { LessEq, Eq };

struct LpRow {
  std::vector<Rat> coeffs;
  LpRelation relation = LpRelation::LessEq;
  Rat rhs;
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  Rat value;               // objective value at the optimum
  std::vector<Rat> point;  // one optimal assignment
};

namespace detail {

// Closed-form solution for a single free variable: intersect the rows into
// an interval (possibly pinned by equalities) and read the optimum off an
// endpoint.
inline LpResult solve_univariate(const std::vector<Rat>& objective,
                                 const std::vector<LpRow>& rows) {
  std::optional<Rat> lo, hi;
  bool infeasible = false;
  for (const LpRow& row : rows) {
    const Rat& a = row.coeffs[0];
    if (row.relation == LpRelation::Eq) {
      if (a == 0) {
        if (row.rhs != 0) infeasible = true;
      } else {
        const Rat v = Rat(row.rhs / a);
        if (!lo || v > *lo) lo = v;
        if (!hi || v < *hi) hi = v;
      }
    } else if (a == 0) {
      if (row.rhs < 0) infeasible = true;
    } else if (a > 0) {
      const Rat v = Rat(row.rhs / a);
      if (!hi || v < *hi) hi = v;
    } else {
      const Rat v = Rat(row.rhs / a);
      if (!lo || v > *lo) lo = v;
    }
  }
  if (infeasible || (lo && hi && *lo > *hi)) return {LpStatus::Infeasible, Rat(0), {}};
  const Rat& c = objective[0];
  if (c > 0) {
    if (!hi) return {LpStatus::Unbounded, Rat(0), {}};
    return {LpStatus::Optimal, Rat(c * *hi), {*hi}};
  }
  if (c < 0) {
    if (!lo) return {LpStatus::Unbounded, Rat(0), {}};
    return {LpStatus::Optimal, Rat(c * *lo), {*lo}};
  }
  const Rat pick = lo ? *lo : (hi ? *hi : Rat(0));
  return {LpStatus::Optimal, Rat(0), {pick}};
}

// Dense exact tableau.  Column layout: for each free variable x_j a pair
// (u_j, v_j) with x_j = u_j - v_j, then one slack per inequality row, then
// artificials.  The objective row stores reduced costs; its rhs entry equals
// minus the current objective value.
class SimplexTableau {
 public:
  SimplexTableau(std::size_t nvars, const std::vector<LpRow>& input) : nvars_(nvars) {
    // Normalize every row to nonnegative rhs; a flipped inequality needs a
    // surplus column, which we fold into the slack block with coefficient -1.
    struct Prepared { std::vector<Rat> a; Rat b; int kind; };  // 0 le, 1 ge, 2 eq
    std::vector<Prepared> prepared;
    prepared.reserve(input.size());
    for (const LpRow& row : input) {
      Prepared p{row.coeffs, row.rhs, row.relation == LpRelation::Eq ? 2 : 0};
      if (p.b < 0) {
        for (Rat& c : p.a) c = Rat(-c);
        p.b = Rat(-p.b);
        if (p.kind == 0) p.kind = 1;
      }
      prepared.push_back(std::move(p));
    }

    std::size_t slack_count = 0, artificial_count = 0;
    for (const Prepared& p : prepared) {
      if (p.kind != 2) ++slack_count;
      if (p.kind != 0) ++artificial_count;
    }
    first_slack_ = 2 * nvars_;
    first_artificial_ = first_slack_ + slack_count;
    ncols_ = first_artificial_ + artificial_count;

    std::size_t slack_at = first_slack_, artificial_at = first_artificial_;
    for (const Prepared& p : prepared) {
      std::vector<Rat> r(ncols_ + 1, Rat(0));
      for (std::size_t j = 0; j < nvars_; ++j) {
        r[2 * j] = p.a[j];
        r[2 * j + 1] = Rat(-p.a[j]);
      }
      r[ncols_] = p.b;
      std::size_t basic;
      if (p.kind == 0) {
        r[slack_at] = 1;
        basic = slack_at++;
      } else {
        if (p.kind == 1) r[slack_at++] = -1;
        r[artificial_at] = 1;
        basic = artificial_at++;
      }
      basis_.push_back(basic);
      rows_.push_back(std::move(r));
    }
  }

  // Returns false when the artificial sum cannot be driven to zero.
  bool phase_one() {
    if (first_artificial_ == ncols_) return true;
    obj_.assign(ncols_ + 1, Rat(0));
    for (std::size_t j = first_artificial_; j < ncols_; ++j) obj_[j] = -1;
    canonicalize_objective();
    run();
    if (obj_[ncols_] != 0) return false;  // leftover artificial infeasibility
    evict_artificials();
    return true;
  }

  void phase_two(const std::vector<Rat>& objective) {
    obj_.assign(ncols_ + 1, Rat(0));
    for (std::size_t j = 0; j < nvars_; ++j) {
      obj_[2 * j] = objective[j];
      obj_[2 * j + 1] = Rat(-objective[j]);
    }
    canonicalize_objective();
    unbounded_ = false;
    run();
  }

  bool unbounded() const { return unbounded_; }
  Rat objective_value() const { return Rat(-obj_[ncols_]); }

  std::vector<Rat> solution() const {
    std::vector<Rat> split(ncols_, Rat(0));
    for (std::size_t i = 0; i < rows_.size(); ++i) split[basis_[i]] = rows_[i][ncols_];
    std::vector<Rat> x(nvars_);
    for (std::size_t j = 0; j < nvars_; ++j) x[j] = Rat(split[2 * j] - split[2 * j + 1]);
    return x;
  }

 private:
  void canonicalize_objective() {
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      const Rat cost = obj_[basis_[i]];
      if (cost == 0) continue;
      for (std::size_t j = 0; j <= ncols_; ++j) obj_[j] -= cost * rows_[i][j];
    }
  }

  void pivot(std::size_t r, std::size_t c) {
    const Rat p = rows_[r][c];
    for (std::size_t j = 0; j <= ncols_; ++j) rows_[r][j] /= p;
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      if (i == r || rows_[i][c] == 0) continue;
      const Rat f = rows_[i][c];
      for (std::size_t j = 0; j <= ncols_; ++j) rows_[i][j] -= f * rows_[r][j];
    }
    if (obj_[c] != 0) {
      const Rat f = obj_[c];
      for (std::size_t j = 0; j <= ncols_; ++j) obj_[j] -= f * rows_[r][j];
    }
    basis_[r] = c;
  }

  // Bland's rule: smallest improving column, smallest basis index on ties.
  void run() {
    for (;;) {
      std::size_t entering = ncols_;
      for (std::size_t j = 0; j < ncols_; ++j) {
        if (obj_[j] > 0) { entering = j; break; }
      }
      if (entering == ncols_) return;
      std::size_t leaving = rows_.size();
      std::optional<Rat> best;
      for (std::size_t i = 0; i < rows_.size(); ++i) {
        if (rows_[i][entering] <= 0) continue;
        const Rat ratio = Rat(rows_[i][ncols_] / rows_[i][entering]);
        if (!best || ratio < *best ||
            (ratio == *best && basis_[i] < basis_[leaving])) {
          best = ratio;
          leaving = i;
        }
      }
      if (leaving == rows_.size()) { unbounded_ = true; return; }
      pivot(leaving, entering);
    }
  }

  // After a successful phase one, pivot surviving artificials out of the
  // basis (their value is zero) or drop rows that became identically zero.
  void evict_artificials() {
    for (std::size_t i = rows_.size(); i-- > 0;) {
      if (basis_[i] < first_artificial_) continue;
      std::size_t col = first_artificial_;
      for (std::size_t j = 0; j < first_artificial_; ++j) {
        if (rows_[i][j] != 0) { col = j; break; }
      }
      if (col < first_artificial_) {
        pivot(i, col);
      } else {
        rows_.erase(rows_.begin() + static_cast<std::ptrdiff_t>(i));
        basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(i));
      }
    }
    // Forbid artificials from ever re-entering.
    for (auto& row : rows_)
      for (std::size_t j = first_artificial_; j < ncols_; ++j) row[j] = 0;
  }

  std::size_t nvars_, first_slack_ = 0, first_artificial_ = 0, ncols_ = 0;
  std::vector<std::vector<Rat>> rows_;
  std::vector<std::size_t> basis_;
  std::vector<Rat> obj_;
  bool unbounded_ = false;
};

inline LpResult solve_simplex(const std::vector<Rat>& objective,
                              const std::vector<LpRow>& rows) {
  SimplexTableau tableau(objective.size(), rows);
  if (!tableau.phase_one()) return {LpStatus::Infeasible, Rat(0), {}};
  tableau.phase_two(objective);
  if (tableau.unbounded()) return {LpStatus::Unbounded, Rat(0), {}};
  return {LpStatus::Optimal, tableau.objective_value(), tableau.solution()};
}

} // namespace detail

// Maximizes objective . x over the rows.  All variables are free reals.
inline LpResult lp_maximize(const std::vector<Rat>& objective,
                            const std::vector<LpRow>& rows) {
  const std::size_t nvars = objective.size();
  for (const LpRow& row : rows) {
    if (row.coeffs.size() != nvars)
      raise(ErrorCode::DimensionMismatch, "linear program row width mismatch");
  }
  if (nvars == 0) {
    for (const LpRow& row : rows) {
      const bool ok = row.relation == LpRelation::Eq ? row.rhs == 0 : row.rhs >= 0;
      if (!ok) return {LpStatus::Infeasible, Rat(0), {}};
    }
    return {LpStatus::Optimal, Rat(0), {}};
  }
  if (nvars == 1) return detail::solve_univariate(objective, rows);
  return detail::solve_simplex(objective, rows);
}

} // namespace supercat
