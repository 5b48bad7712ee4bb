#include <catch2/catch_amalgamated.hpp>

#include <vector>

#include "supercat/entropy.hpp"
#include "supercat/rational.hpp"
#include "supercat/spectrum.hpp"
#include "support/test_util.hpp"

using supercat::entropy;
using supercat::entropy_compare;
using supercat::EntropyInterval;
using supercat::EntropyOrder;
using supercat::Error;
using supercat::ErrorCode;
using supercat::Rat;
using supercat::Spectrum;
using testutil::spectrum_of;

namespace {

// Checks that the certified interval is consistent with a 40-digit decimal
// reference value: the reference (accurate to ~1e-39) must lie within the
// interval inflated by that decimal's own error budget.
void check_reference(const Spectrum& s, const char* reference40) {
  const EntropyInterval e = entropy(s, 160);
  const Rat ref = supercat::parse_rational(reference40);
  // Reference strings carry ~31 decimal places, so allow for their own
  // rounding error; the interval itself is far tighter than this.
  const Rat tol = Rat(1, boost::multiprecision::pow(supercat::Int(10), 30));
  REQUIRE(e.lower <= e.upper);
  CHECK(ref >= e.lower - tol);
  CHECK(ref <= e.upper + tol);
  // At 160 bits the interval itself is far tighter than the tolerance.
  CHECK(e.width() <= tol);
}

} // namespace

TEST_CASE("entropy of deterministic spectra is exactly zero") {
  const EntropyInterval a = entropy(spectrum_of({"1"}), 64);
  CHECK(a.lower == 0);
  CHECK(a.upper == 0);
  const EntropyInterval b = entropy(spectrum_of({"1", "0", "0"}), 64);
  CHECK(b.lower == 0);
  CHECK(b.upper == 0);
}

TEST_CASE("entropy intervals agree with independent high-precision references") {
  check_reference(spectrum_of({"1/2", "1/2"}),
                  "0.6931471805599453094172321214582");
  check_reference(spectrum_of({"0.55", "0.45"}),
                  "0.68813881371358847194543389503145");
  check_reference(spectrum_of({"0.65", "0.35"}),
                  "0.64744663903463245821358327891997");
  check_reference(spectrum_of({"13/25", "12/25"}),
                  "0.69234696708996149754344464651575");
  check_reference(spectrum_of({"10/19", "9/19"}),
                  "0.69176149885241776078301012602211");
  check_reference(spectrum_of({"25/38", "13/38"}),
                  "0.64242202107625428788064630593396");
  check_reference(spectrum_of({"8/13", "5/13"}),
                  "0.666278442414676020744459166094");
  check_reference(spectrum_of({"5/8", "3/8"}),
                  "0.66156323815798205985300481726222");
  check_reference(spectrum_of({"0.4", "0.4", "0.1", "0.1"}),
                  "1.1935496040981331889504200603513");
  check_reference(spectrum_of({"0.5", "0.25", "0.25", "0"}),
                  "1.0397207708399179641258481821873");
  check_reference(spectrum_of({"0.48", "0.27", "0.25", "0"}),
                  "1.0523987907140846847546512139259");
}

TEST_CASE("interval width honors the certified bound at every precision") {
  auto rng = testutil::make_rng(42);
  for (unsigned bits : {16u, 64u, 128u, 256u, 1024u}) {
    for (int trial = 0; trial < 8; ++trial) {
      const std::size_t dim = 2 + static_cast<std::size_t>(trial % 5);
      const Spectrum s = testutil::random_spectrum_with_zeros(rng, dim);
      const EntropyInterval e = entropy(s, bits);
      REQUIRE(e.lower <= e.upper);
      CHECK(e.lower >= 0);
      const Rat bound = Rat(2 * static_cast<long>(dim)) / Rat(supercat::Int(supercat::Int(1) << bits));
      CHECK(e.width() <= bound);  // 2^(1-bits) * dim
      CHECK(e.precision_bits == bits);
    }
  }
}

TEST_CASE("entropy lies in [0, ln n] and attains ln n only when uniform") {
  auto rng = testutil::make_rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t dim = 2 + static_cast<std::size_t>(trial % 4);
    const Spectrum s = testutil::random_spectrum(rng, dim);
    const EntropyInterval e = entropy(s, 96);
    CHECK(e.lower >= 0);
    // ln(dim) upper bound, certified from the uniform spectrum itself.
    std::vector<Rat> uniform(dim, Rat(1, static_cast<long>(dim)));
    const EntropyInterval top = entropy(Spectrum::make(std::move(uniform)), 96);
    CHECK(e.lower <= top.upper);
    if (!is_uniform(s)) {
      // Strictly below ln n: the gap must exceed the combined interval widths
      // once precision is pushed high enough for these modest spectra.
      const EntropyInterval e2 = entropy(s, 256);
      std::vector<Rat> uniform2(dim, Rat(1, static_cast<long>(dim)));
      const EntropyInterval top2 = entropy(Spectrum::make(std::move(uniform2)), 256);
      CHECK(e2.upper < top2.lower);
    }
  }
}

TEST_CASE("tensor products add entropies") {
  auto rng = testutil::make_rng(99);
  for (int trial = 0; trial < 25; ++trial) {
    const Spectrum a = testutil::random_spectrum_with_zeros(rng, 2 + trial % 3);
    const Spectrum b = testutil::random_spectrum_with_zeros(rng, 2 + (trial / 3) % 3);
    const EntropyInterval ea = entropy(a, 128);
    const EntropyInterval eb = entropy(b, 128);
    const EntropyInterval et = entropy(tensor(a, b), 128);
    // Both [ea+eb] and et enclose the same true value, so they must overlap.
    CHECK(et.lower <= ea.upper + eb.upper);
    CHECK(ea.lower + eb.lower <= et.upper);
  }
}

TEST_CASE("requesting precision below the supported floor is rejected") {
  const Spectrum s = spectrum_of({"1/2", "1/2"});
  try {
    entropy(s, 8);
    FAIL("expected an exception");
  } catch (const Error& err) {
    CHECK(err.code() == ErrorCode::Unsupported);
  }
}

TEST_CASE("identical distributions compare Equal, including trailing zeros") {
  CHECK(entropy_compare(spectrum_of({"1/2", "1/2"}), spectrum_of({"1/2", "1/2"})) ==
        EntropyOrder::Equal);
  CHECK(entropy_compare(spectrum_of({"1/2", "1/2"}), spectrum_of({"1/2", "1/2", "0"})) ==
        EntropyOrder::Equal);
  CHECK(entropy_compare(spectrum_of({"0.4", "0.36", "0.14", "0.1"}),
                        spectrum_of({"0.36", "0.4", "0.1", "0.14"})) == EntropyOrder::Equal);
}

TEST_CASE("majorization-ordered pairs are decided exactly") {
  // (1/2,1/2) is majorized by (1,0): strictly higher entropy.
  CHECK(entropy_compare(spectrum_of({"1/2", "1/2"}), spectrum_of({"1", "0"})) ==
        EntropyOrder::Greater);
  CHECK(entropy_compare(spectrum_of({"1", "0"}), spectrum_of({"1/2", "1/2"})) ==
        EntropyOrder::Less);
  // Two-dimensional spectra are always comparable; these agree with the
  // high-precision reference values.
  CHECK(entropy_compare(spectrum_of({"13/25", "12/25"}), spectrum_of({"10/19", "9/19"})) ==
        EntropyOrder::Greater);
  CHECK(entropy_compare(spectrum_of({"0.55", "0.45"}), spectrum_of({"0.65", "0.35"})) ==
        EntropyOrder::Greater);
  CHECK(entropy_compare(spectrum_of({"8/13", "5/13"}), spectrum_of({"0.625", "0.375"})) ==
        EntropyOrder::Greater);
  CHECK(entropy_compare(spectrum_of({"0.625", "0.375"}), spectrum_of({"8/13", "5/13"})) ==
        EntropyOrder::Less);
}

TEST_CASE("incomparable pairs separate by interval refinement") {
  // Majorization-incomparable, entropies ~1.19 vs ~1.04: separates at 128 bits.
  CHECK(entropy_compare(spectrum_of({"0.4", "0.4", "0.1", "0.1"}),
                        spectrum_of({"0.5", "0.25", "0.25", "0"})) == EntropyOrder::Greater);
  // Incomparable pair whose entropy gap is only ~4e-6 nats.
  const Spectrum near_uniform =
      spectrum_of({"251/1000", "250/1000", "250/1000", "249/1000"});
  const Spectrum dyadic = spectrum_of({"1/2", "1/8", "1/8", "1/8", "1/8"});
  CHECK(entropy_compare(dyadic, near_uniform) == EntropyOrder::Greater);
  CHECK(entropy_compare(near_uniform, dyadic) == EntropyOrder::Less);
}

TEST_CASE("exactly equal entropies of distinct incomparable spectra hit the cap") {
  // Both have entropy exactly 2 ln 2, but the pair is majorization-incomparable,
  // so no finite refinement can separate them.
  const Spectrum a = spectrum_of({"1/2", "1/8", "1/8", "1/8", "1/8"});
  const Spectrum b = spectrum_of({"1/4", "1/4", "1/4", "1/4"});
  CHECK(entropy_compare(a, b) == EntropyOrder::Indistinguishable);
  CHECK(entropy_compare(a, b, 256) == EntropyOrder::Indistinguishable);
}

TEST_CASE("interval endpoints are exact dyadic rationals and midpoint sits inside") {
  const EntropyInterval e = entropy(spectrum_of({"3/5", "2/5"}), 128);
  CHECK(e.contains(e.midpoint()));
  // Dyadic denominators: endpoint * 2^big must be an integer.
  const Rat scaled_lo = e.lower * Rat(supercat::Int(supercat::Int(1) << 400));
  const Rat scaled_hi = e.upper * Rat(supercat::Int(supercat::Int(1) << 400));
  CHECK(denominator(scaled_lo) == 1);
  CHECK(denominator(scaled_hi) == 1);
}
