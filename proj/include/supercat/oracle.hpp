#pragma once

// Brute-force verification layer: dense scans over exact rational parameter
// grids.  Every grid point is a bona fide rational distribution, so a hit is
// a machine-checked proof at that point and a miss is a proof of failure at
// that point — the grid certifies nothing in between.  Scans partition the
// grid across threads; per-point work is pure and results are concatenated
// in partition order, so output is deterministic regardless of scheduling.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <future>
#include <thread>
#include <utility>
#include <vector>

#include "supercat/entropy.hpp"
#include "supercat/errors.hpp"
#include "supercat/majorization.hpp"
#include "supercat/rational.hpp"
#include "supercat/spectrum.hpp"

namespace supercat {

// Exact grid over the ordered probability simplex: all k-outcome
// distributions whose weights are integer multiples of 1/resolution, listed
// by their k-1 leading weights (the trailing weight is implied).
struct GridSpec {
  std::size_t k = 2;
  std::size_t resolution = 100;
};

namespace detail {

inline void validate_grid(const GridSpec& grid) {
  if (grid.k == 0)
    raise(ErrorCode::Unsupported, "grid needs at least one outcome");
  if (grid.resolution == 0)
    raise(ErrorCode::Unsupported, "grid resolution must be positive");
}

// Number of descending k-part integer compositions of r (equivalently,
// partitions of r into at most k parts), saturating at `limit` so oversized
// requests are detected without enumerating anything.
inline std::uint64_t grid_point_count(std::size_t k, std::size_t r,
                                      std::uint64_t limit) {
  if (k == 1) return 1;
  if (k == 2) return static_cast<std::uint64_t>(r / 2) + 1;
  if (r > 1'000'000) return limit;  // counting table would itself be huge
  // Partitions of m into parts of size <= k (conjugate shape).
  std::vector<std::uint64_t> dp(r + 1, 0);
  dp[0] = 1;
  for (std::size_t part = 1; part <= k; ++part) {
    for (std::size_t m = part; m <= r; ++m) {
      const std::uint64_t add = dp[m - part];
      dp[m] = (dp[m] > limit - std::min(add, limit)) ? limit : dp[m] + add;
    }
  }
  return std::min<std::uint64_t>(dp[r], limit);
}

// All grid points in ascending lexicographic order of the full integer
// weight vector.  Each point is the k-1 leading weights as exact rationals.
inline std::vector<std::vector<Rat>> grid_points(const GridSpec& grid) {
  std::vector<std::vector<Rat>> points;
  std::vector<std::size_t> weights(grid.k, 0);
  const std::size_t r = grid.resolution;

  // Recursively choose descending integer weights summing to r.  The first
  // weight of a descending k-part split of `left` is at least ceil(left/k).
  auto fill = [&](auto&& self, std::size_t slot, std::size_t left,
                  std::size_t prev) -> void {
    if (slot + 1 == grid.k) {
      if (left > prev) return;
      weights[slot] = left;
      std::vector<Rat> point;
      point.reserve(grid.k - 1);
      for (std::size_t j = 0; j + 1 < grid.k; ++j)
        point.emplace_back(Rat(Int(weights[j]), Int(r)));
      points.push_back(std::move(point));
      return;
    }
    const std::size_t slots = grid.k - slot;
    const std::size_t low = (left + slots - 1) / slots;
    const std::size_t high = std::min(prev, left);
    for (std::size_t w = low; w <= high; ++w) {
      weights[slot] = w;
      self(self, slot + 1, left - w, w);
    }
  };
  fill(fill, 0, r, r);
  return points;
}

inline std::size_t scan_task_count(std::size_t jobs, std::size_t threads) {
  if (threads == 0) {
    const unsigned hw = std::thread::hardware_concurrency();
    threads = hw == 0 ? 1 : std::min<unsigned>(hw, 8);
  }
  return std::max<std::size_t>(1, std::min(threads, jobs));
}

// Runs fn(first, last) over a contiguous partition of [0, jobs) per task and
// concatenates the partial results in partition order.
template <typename Result, typename Fn>
std::vector<Result> partitioned_scan(std::size_t jobs, std::size_t threads,
                                     Fn&& fn) {
  const std::size_t tasks = scan_task_count(jobs, threads);
  const std::size_t chunk = (jobs + tasks - 1) / tasks;
  std::vector<std::future<std::vector<Result>>> futures;
  futures.reserve(tasks);
  for (std::size_t t = 0; t < tasks; ++t) {
    const std::size_t first = t * chunk;
    const std::size_t last = std::min(jobs, first + chunk);
    futures.push_back(std::async(std::launch::async,
                                 [first, last, &fn] { return fn(first, last); }));
  }
  std::vector<Result> out;
  for (auto& f : futures) {
    std::vector<Result> part = f.get();
    out.insert(out.end(), std::make_move_iterator(part.begin()),
               std::make_move_iterator(part.end()));
  }
  return out;
}

// Descending prefix sums of the padded product spectrum state x aux.
inline std::vector<Rat> product_prefixes(const Spectrum& state,
                                         const Spectrum& aux,
                                         std::size_t padded_len) {
  std::vector<Rat> products;
  products.reserve(padded_len);
  for (const Rat& a : state)
    for (const Rat& p : aux) products.emplace_back(Rat(a * p));
  products.resize(padded_len, Rat(0));
  std::sort(products.begin(), products.end(), std::greater<Rat>());
  std::vector<Rat> prefixes(padded_len);
  Rat acc(0);
  for (std::size_t m = 0; m < padded_len; ++m) {
    acc += products[m];
    prefixes[m] = acc;
  }
  return prefixes;
}

}  // namespace detail

// Exactly the grid points whose auxiliary state makes the transformation
// possible.  Work is (state dimension x k x grid size) and must stay within
// work_cap.  `threads` = 0 picks a machine-appropriate partition count;
// results do not depend on it.
inline std::vector<std::vector<Rat>> scan_catalysts(
    const Spectrum& psi, const Spectrum& phi, const GridSpec& grid,
    std::uint64_t work_cap = 50'000'000, std::size_t threads = 0) {
  detail::validate_grid(grid);
  const std::uint64_t per_point =
      static_cast<std::uint64_t>(std::max(psi.size(), phi.size())) * grid.k;
  const std::uint64_t count =
      detail::grid_point_count(grid.k, grid.resolution, work_cap);
  if (count > work_cap / std::max<std::uint64_t>(per_point, 1))
    raise(ErrorCode::TooLarge, "catalyst grid scan exceeds the work cap");

  const auto points = detail::grid_points(grid);
  return detail::partitioned_scan<std::vector<Rat>>(
      points.size(), threads,
      [&](std::size_t first, std::size_t last) {
        std::vector<std::vector<Rat>> hits;
        for (std::size_t i = first; i < last; ++i) {
          if (verify_catalysis(psi, phi, auxiliary_state(points[i])).result)
            hits.push_back(points[i]);
        }
        return hits;
      });
}

// All ordered grid pairs (initial, final) whose product spectra satisfy the
// exact cross-majorization and whose final auxiliary state carries strictly
// more entropy than the initial one.  Work is quadratic in grid size; pairs
// are pruned first by the leading-product inequality (largest source product
// must not exceed the largest target product) before any sorting happens.
inline std::vector<std::pair<std::vector<Rat>, std::vector<Rat>>>
scan_supercatalysts(const Spectrum& psi, const Spectrum& phi,
                    const GridSpec& grid, std::uint64_t work_cap = 50'000'000,
                    std::size_t threads = 0) {
  detail::validate_grid(grid);
  const std::uint64_t per_point =
      static_cast<std::uint64_t>(std::max(psi.size(), phi.size())) * grid.k;
  const std::uint64_t count =
      detail::grid_point_count(grid.k, grid.resolution, work_cap);
  using u128 = unsigned __int128;
  if (u128(count) * count * std::max<std::uint64_t>(per_point, 1) > work_cap)
    raise(ErrorCode::TooLarge, "supercatalyst grid scan exceeds the work cap");

  const auto points = detail::grid_points(grid);
  const std::size_t n = points.size();
  const std::size_t padded_len =
      std::max(psi.size(), phi.size()) * grid.k;

  // Per-point caches: auxiliary states, product prefix sums for each side,
  // and the leading product for the prune.
  std::vector<Spectrum> aux;
  aux.reserve(n);
  std::vector<std::vector<Rat>> source_prefixes(n), target_prefixes(n);
  std::vector<Rat> source_top(n), target_top(n);
  const Rat alpha1 = psi.size() ? psi[0] : Rat(0);
  const Rat beta1 = phi.size() ? phi[0] : Rat(0);
  for (std::size_t i = 0; i < n; ++i) {
    aux.push_back(auxiliary_state(points[i]));
    source_prefixes[i] = detail::product_prefixes(psi, aux[i], padded_len);
    target_prefixes[i] = detail::product_prefixes(phi, aux[i], padded_len);
    const Rat top = aux[i].size() ? aux[i][0] : Rat(1);
    source_top[i] = Rat(alpha1 * top);
    target_top[i] = Rat(beta1 * top);
  }

  using IndexPair = std::pair<std::size_t, std::size_t>;
  const auto hits = detail::partitioned_scan<IndexPair>(
      n, threads, [&](std::size_t first, std::size_t last) {
        std::vector<IndexPair> found;
        for (std::size_t i = first; i < last; ++i) {
          for (std::size_t j = 0; j < n; ++j) {
            if (source_top[i] > target_top[j]) continue;  // leading products
            bool ok = true;
            for (std::size_t m = 0; ok && m + 1 < padded_len; ++m)
              ok = source_prefixes[i][m] <= target_prefixes[j][m];
            if (!ok) continue;
            if (entropy_compare(aux[j], aux[i]) != EntropyOrder::Greater)
              continue;
            found.emplace_back(i, j);
          }
        }
        return found;
      });

  std::vector<std::pair<std::vector<Rat>, std::vector<Rat>>> out;
  out.reserve(hits.size());
  for (const auto& [i, j] : hits) out.emplace_back(points[i], points[j]);
  return out;
}

}  // namespace supercat
