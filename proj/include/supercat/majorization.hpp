#pragma once

// Majorization order on Schmidt spectra and the transformation checks built
// on it: deterministic LOCC convertibility, catalysis, supercatalysis, a
// structural no-go test for small auxiliary dimensions, and the inheritance
// check that relates the two auxiliary states of a supercatalysis witness.

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "supercat/entropy.hpp"
#include "supercat/errors.hpp"
#include "supercat/rational.hpp"
#include "supercat/spectrum.hpp"

namespace supercat {

// Outcome of one prefix-sum comparison between equal-length spectra.
// Index convention is 1-based over proper prefixes m = 1..n-1 (the full sum
// is 1 on both sides and carries no information).
struct TransformReport {
  bool result = false;
  std::vector<Rat> prefix_sums_source;
  std::vector<Rat> prefix_sums_target;
  std::optional<std::size_t> failing_index;   // first m with source > target
  std::vector<std::size_t> tight_indices;     // all m < n with exact equality
};

// True result means every source prefix sum is at most the matching target
// prefix sum -- the source state converts to the target deterministically.
inline TransformReport majorizes(const Spectrum& source, const Spectrum& target) {
  if (source.size() != target.size())
    raise(ErrorCode::DimensionMismatch,
          "majorization comparison requires equal dimensions; pad explicitly first");
  const std::size_t n = source.size();
  TransformReport report;
  report.prefix_sums_source = prefix_sums(source);
  report.prefix_sums_target = prefix_sums(target);
  report.result = true;
  for (std::size_t m = 1; m <= n; ++m) {
    const Rat& a = report.prefix_sums_source[m - 1];
    const Rat& b = report.prefix_sums_target[m - 1];
    if (a > b) {
      report.result = false;
      if (!report.failing_index) report.failing_index = m;
    } else if (a == b && m < n) {
      report.tight_indices.push_back(m);
    }
  }
  return report;
}

enum class ComparabilityClass { SourceToTarget, TargetToSource, Equivalent, Incomparable };

inline const char* comparability_name(ComparabilityClass c) {
  switch (c) {
    case ComparabilityClass::SourceToTarget: return "SourceToTarget";
    case ComparabilityClass::TargetToSource: return "TargetToSource";
    case ComparabilityClass::Equivalent: return "Equivalent";
    case ComparabilityClass::Incomparable: return "Incomparable";
  }
  return "?";
}

// Classifies the pair under the majorization order, zero-padding the shorter
// spectrum so spectra that differ only by trailing zeros compare Equivalent.
inline ComparabilityClass compare(const Spectrum& a, const Spectrum& b) {
  const std::size_t n = std::max(a.size(), b.size());
  const Spectrum pa = pad_to(a, n);
  const Spectrum pb = pad_to(b, n);
  const bool forward = majorizes(pa, pb).result;
  const bool backward = majorizes(pb, pa).result;
  if (forward && backward) return ComparabilityClass::Equivalent;
  if (forward) return ComparabilityClass::SourceToTarget;
  if (backward) return ComparabilityClass::TargetToSource;
  return ComparabilityClass::Incomparable;
}

// Does attaching the auxiliary state chi to both sides enable psi -> phi?
// psi and phi are zero-padded to a common length before tensoring.
inline TransformReport verify_catalysis(const Spectrum& psi, const Spectrum& phi,
                                        const Spectrum& chi) {
  const std::size_t n = std::max(psi.size(), phi.size());
  return majorizes(tensor(pad_to(psi, n), chi), tensor(pad_to(phi, n), chi));
}

struct SupercatCheck {
  bool valid = false;
  TransformReport report;                                   // psi (x) chi vs phi (x) omega
  EntropyOrder entropy_gain_sign = EntropyOrder::Equal;     // H(omega) vs H(chi)
};

// A supercatalysis witness must convert psi (x) chi into phi (x) omega
// deterministically while strictly increasing the auxiliary entropy.
inline SupercatCheck verify_supercatalysis(const Spectrum& psi, const Spectrum& phi,
                                           const Spectrum& chi, const Spectrum& omega,
                                           unsigned max_precision_bits = 1024) {
  if (chi.size() != omega.size())
    raise(ErrorCode::DimensionMismatch, "auxiliary spectra must share one dimension");
  const std::size_t n = std::max(psi.size(), phi.size());
  SupercatCheck out;
  out.report = majorizes(tensor(pad_to(psi, n), chi), tensor(pad_to(phi, n), omega));
  out.entropy_gain_sign = entropy_compare(omega, chi, max_precision_bits);
  if (out.entropy_gain_sign == EntropyOrder::Indistinguishable)
    raise(ErrorCode::IndistinguishableEntropy,
          "entropy comparison of the auxiliary states hit the precision cap");
  out.valid = out.report.result && out.entropy_gain_sign == EntropyOrder::Greater;
  return out;
}

struct NogoReport {
  bool forbids_2x2 = false;  // no 2-dim auxiliary pair can witness supercatalysis
  bool forbids_3x3 = false;  // likewise for 3-dim auxiliary pairs
};

// Structural obstruction from the extreme eigenvalues: matching largest or
// smallest entries of psi and phi rule out small auxiliary dimensions.
inline NogoReport nogo_check(const Spectrum& psi, const Spectrum& phi) {
  if (psi.size() != phi.size())
    raise(ErrorCode::DimensionMismatch, "obstruction check requires equal dimensions");
  const std::size_t n = psi.size();
  const bool first_equal = psi[0] == phi[0];
  const bool last_equal = psi[n - 1] == phi[n - 1];
  NogoReport out;
  out.forbids_2x2 = first_equal || last_equal;
  out.forbids_3x3 = first_equal && last_equal;
  return out;
}

struct CatalystPairCheck {
  bool omega_to_chi = false;  // omega converts to chi deterministically
  // Present only when omega_to_chi holds: catalysis results for chi and omega.
  std::optional<std::pair<bool, bool>> both_catalysts;
};

// When the enriched auxiliary state omega can itself be converted back to
// chi, both auxiliary states must individually catalyze psi -> phi; this
// check reports that inheritance.
inline CatalystPairCheck check_catalyst_pair(const Spectrum& psi, const Spectrum& phi,
                                             const Spectrum& chi, const Spectrum& omega) {
  CatalystPairCheck out;
  out.omega_to_chi = majorizes(omega, chi).result;
  if (out.omega_to_chi) {
    out.both_catalysts = std::make_pair(verify_catalysis(psi, phi, chi).result,
                                        verify_catalysis(psi, phi, omega).result);
  }
  return out;
}

} // namespace supercat
