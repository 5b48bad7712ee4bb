#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "rational.hpp"

namespace supercat {

// A Schmidt spectrum: the descending-sorted eigenvalue vector of either
// reduced state of a bipartite pure state. Entries are exact rationals,
// nonnegative, and sum to exactly 1; zeros are legal entries.
class Spectrum {
 public:
  // Validates and canonicalizes: input order is irrelevant, the stored
  // vector is sorted descending.
  static Spectrum make(std::vector<Rat> values) {
    if (values.empty()) {
      raise(ErrorCode::NotNormalized, "spectrum must have at least one entry");
    }
    Rat sum = 0;
    for (const Rat& v : values) {
      if (v < 0) {
        raise(ErrorCode::NegativeEntry,
              "spectrum entry " + v.str() + " is negative");
      }
      sum += v;
    }
    if (sum != 1) {
      raise(ErrorCode::NotNormalized,
            "spectrum entries sum to " + sum.str() + ", expected 1");
    }
    std::sort(values.begin(), values.end(), std::greater<Rat>());
    return Spectrum(std::move(values));
  }

  const std::vector<Rat>& values() const noexcept { return values_; }
  std::size_t size() const noexcept { return values_.size(); }
  const Rat& operator[](std::size_t i) const { return values_[i]; }
  auto begin() const noexcept { return values_.begin(); }
  auto end() const noexcept { return values_.end(); }

  // Number of nonzero entries (the Schmidt rank).
  std::size_t effective_size() const noexcept {
    std::size_t count = 0;
    for (const Rat& v : values_) {
      if (v != 0) ++count;
    }
    return count;
  }

  friend bool operator==(const Spectrum& a, const Spectrum& b) {
    return a.values_ == b.values_;
  }
  friend bool operator!=(const Spectrum& a, const Spectrum& b) {
    return !(a == b);
  }

  std::string str() const {
    std::string out = "(";
    for (std::size_t i = 0; i < values_.size(); ++i) {
      if (i > 0) out += ", ";
      out += values_[i].str();
    }
    out += ")";
    return out;
  }

 private:
  explicit Spectrum(std::vector<Rat> sorted) : values_(std::move(sorted)) {}
  std::vector<Rat> values_;
};

// Spectrum of the joint state: all pairwise products, sorted descending.
inline Spectrum tensor(const Spectrum& a, const Spectrum& b) {
  std::vector<Rat> products;
  products.reserve(a.size() * b.size());
  for (const Rat& x : a) {
    for (const Rat& y : b) {
      products.push_back(x * y);
    }
  }
  return Spectrum::make(std::move(products));
}

// Extends a spectrum with exact zeros up to dimension n.
inline Spectrum pad_to(const Spectrum& s, std::size_t n) {
  if (n < s.size()) {
    raise(ErrorCode::DimensionMismatch,
          "cannot pad a spectrum of size " + std::to_string(s.size()) +
              " down to " + std::to_string(n));
  }
  std::vector<Rat> values(s.begin(), s.end());
  values.resize(n, Rat(0));
  return Spectrum::make(std::move(values));
}

// True iff all nonzero entries are equal, i.e. the state is maximally
// entangled on its support.
inline bool is_uniform(const Spectrum& s) {
  const Rat& top = s[0];
  for (const Rat& v : s) {
    if (v != 0 && v != top) return false;
  }
  return true;
}

// Running sums values[0] + ... + values[m-1] for m = 1..n; the last is 1.
inline std::vector<Rat> prefix_sums(const Spectrum& s) {
  std::vector<Rat> sums;
  sums.reserve(s.size());
  Rat acc = 0;
  for (const Rat& v : s) {
    acc += v;
    sums.push_back(acc);
  }
  return sums;
}

// Builds the k-dimensional auxiliary state chi(P) from its free parameters
// P = (p_1, ..., p_{k-1}); the last entry is p_k = 1 - sum(P). The parameters
// must lie in the ordered simplex p_1 >= ... >= p_k >= 0.
inline Spectrum auxiliary_state(const std::vector<Rat>& params) {
  std::vector<Rat> values(params.begin(), params.end());
  Rat sum = 0;
  for (const Rat& p : params) sum += p;
  values.push_back(1 - sum);
  for (std::size_t i = 0; i + 1 < values.size(); ++i) {
    if (values[i] < values[i + 1]) {
      raise(ErrorCode::NotNormalized,
            "auxiliary parameters are not descending: entry " +
                std::to_string(i + 1) + " is " + values[i].str() +
                " < " + values[i + 1].str());
    }
  }
  if (values.back() < 0) {
    raise(ErrorCode::NegativeEntry,
          "auxiliary parameters sum to more than 1");
  }
  return Spectrum::make(std::move(values));
}

}  // namespace supercat
