#pragma once

// Certified evaluation of Shannon entropy (natural log) for exact rational
// spectra.  Every result is an enclosure [lower, upper] with exact dyadic
// rational endpoints, so downstream comparisons can be made rigorous: the
// true entropy is guaranteed to lie inside the interval.
//
// Comparison strategy: identical distributions compare Equal outright;
// strictly majorization-ordered pairs are decided exactly through strict
// Schur concavity of entropy (no floating point at all); everything else
// falls back to interval refinement with doubling precision up to a cap.

#include <mpfr.h>

#include <algorithm>
#include <cstddef>

#include "supercat/errors.hpp"
#include "supercat/rational.hpp"
#include "supercat/spectrum.hpp"

namespace supercat {

struct EntropyInterval {
  Rat lower;                   // exact dyadic lower bound, lower <= true value
  Rat upper;                   // exact dyadic upper bound, true value <= upper
  unsigned precision_bits = 0; // requested certification precision

  Rat width() const { return Rat(upper - lower); }
  Rat midpoint() const { return Rat((lower + upper) / 2); }
  bool contains(const Rat& v) const { return lower <= v && v <= upper; }
};

enum class EntropyOrder { Less, Greater, Equal, Indistinguishable };

inline const char* entropy_order_name(EntropyOrder o) {
  switch (o) {
    case EntropyOrder::Less: return "Less";
    case EntropyOrder::Greater: return "Greater";
    case EntropyOrder::Equal: return "Equal";
    case EntropyOrder::Indistinguishable: return "Indistinguishable";
  }
  return "?";
}

namespace detail {

// Exact rational value of an MPFR number (every finite MPFR value is dyadic).
inline Rat rat_from_mpfr(mpfr_srcptr x) {
  if (mpfr_zero_p(x)) return Rat(0);
  Int mantissa;
  const mpfr_exp_t e = mpfr_get_z_2exp(mantissa.backend().data(), x);
  Rat r(mantissa);
  if (e >= 0) {
    r *= Rat(Int(Int(1) << static_cast<unsigned long>(e)));
  } else {
    r /= Rat(Int(Int(1) << static_cast<unsigned long>(-e)));
  }
  return r;
}

// Directional comparison of two distributions by prefix sums of their
// descending values (zero-padded to common length).
//   0  both have identical prefix sums (same distribution)
//  -1  a is strictly below b somewhere and never above (a majorized by b)
//  +1  b is strictly below a somewhere and never above (b majorized by a)
//   2  prefix sums cross (incomparable)
inline int majorization_direction(const Spectrum& a, const Spectrum& b) {
  const std::size_t n = std::max(a.size(), b.size());
  Rat pa(0), pb(0);
  bool a_below = true, b_below = true;
  for (std::size_t i = 0; i < n; ++i) {
    if (i < a.size()) pa += a[i];
    if (i < b.size()) pb += b[i];
    if (pa < pb) b_below = false;
    if (pb < pa) a_below = false;
  }
  if (a_below && b_below) return 0;
  if (a_below) return -1;
  if (b_below) return +1;
  return 2;
}

} // namespace detail

// Certified enclosure of -sum s[i] ln s[i] in nats.  Zero entries contribute
// zero.  Guarantee: lower <= true entropy <= upper and
// upper - lower <= 2^(1 - precision_bits) * n.
inline EntropyInterval entropy(const Spectrum& s, unsigned precision_bits = 128) {
  if (precision_bits < 16)
    raise(ErrorCode::Unsupported, "entropy precision_bits must be at least 16");

  // Work at extra precision so per-term rounding slack stays far inside the
  // advertised width bound.
  const mpfr_prec_t work = static_cast<mpfr_prec_t>(precision_bits) + 16;

  mpfr_t p_lo, p_up, log_buf, term, sum_lo, sum_up;
  mpfr_inits2(work, p_lo, p_up, log_buf, term, sum_lo, sum_up, static_cast<mpfr_ptr>(nullptr));
  mpfr_set_zero(sum_lo, 1);
  mpfr_set_zero(sum_up, 1);

  for (const Rat& q : s) {
    if (q == 0 || q == 1) continue; // exact zero terms
    mpfr_set_q(p_lo, q.backend().data(), MPFR_RNDD);
    mpfr_set_q(p_up, q.backend().data(), MPFR_RNDU);

    // Lower bound of q * (-ln q): both factors bounded from below.
    // -ln is decreasing, so -RNDU(ln(RNDU(q))) <= -ln q; it is >= 0 since
    // RNDU(q) <= 1 (1 is representable).
    mpfr_log(log_buf, p_up, MPFR_RNDU);
    mpfr_neg(log_buf, log_buf, MPFR_RNDN); // exact
    mpfr_mul(term, p_lo, log_buf, MPFR_RNDD);
    mpfr_add(sum_lo, sum_lo, term, MPFR_RNDD);

    // Upper bound: both factors bounded from above.
    mpfr_log(log_buf, p_lo, MPFR_RNDD);
    mpfr_neg(log_buf, log_buf, MPFR_RNDN); // exact
    mpfr_mul(term, p_up, log_buf, MPFR_RNDU);
    mpfr_add(sum_up, sum_up, term, MPFR_RNDU);
  }

  EntropyInterval out;
  out.lower = detail::rat_from_mpfr(sum_lo);
  out.upper = detail::rat_from_mpfr(sum_up);
  out.precision_bits = precision_bits;
  mpfr_clears(p_lo, p_up, log_buf, term, sum_lo, sum_up, static_cast<mpfr_ptr>(nullptr));
  return out;
}

// Compares H(a) with H(b).
//   Equal            a and b are the same distribution (up to trailing zeros)
//   Greater / Less   decided exactly (Schur concavity) or by certified
//                    interval separation
//   Indistinguishable intervals still overlap at max_precision_bits
inline EntropyOrder entropy_compare(const Spectrum& a, const Spectrum& b,
                                    unsigned max_precision_bits = 1024) {
  switch (detail::majorization_direction(a, b)) {
    case 0: return EntropyOrder::Equal;
    // Entropy is strictly Schur concave: if a is majorized by b and they are
    // distinct distributions, H(a) > H(b) exactly.
    case -1: return EntropyOrder::Greater;
    case +1: return EntropyOrder::Less;
    default: break;
  }
  for (unsigned bits = 128; bits <= max_precision_bits; bits *= 2) {
    const EntropyInterval ia = entropy(a, bits);
    const EntropyInterval ib = entropy(b, bits);
    if (ia.lower > ib.upper) return EntropyOrder::Greater;
    if (ia.upper < ib.lower) return EntropyOrder::Less;
  }
  return EntropyOrder::Indistinguishable;
}

} // namespace supercat
