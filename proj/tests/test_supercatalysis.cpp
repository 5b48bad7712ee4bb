#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <utility>
#include <vector>

#include "supercat/entropy.hpp"
#include "supercat/errors.hpp"
#include "supercat/majorization.hpp"
#include "supercat/opmp.hpp"
#include "supercat/polyhedron.hpp"
#include "supercat/rational.hpp"
#include "supercat/spectrum.hpp"
#include "supercat/supercatalysis.hpp"

#include "support/test_util.hpp"

using supercat::auxiliary_state;
using supercat::BoundAttainment;
using supercat::check_bound_attainment;
using supercat::classify_strictness;
using supercat::compare;
using supercat::ComparabilityClass;
using supercat::delta_upper_bound;
using supercat::entropy;
using supercat::entropy_compare;
using supercat::EntropyInterval;
using supercat::EntropyOrder;
using supercat::enumerate_opmps;
using supercat::Error;
using supercat::ErrorCode;
using supercat::find_supercatalyst;
using supercat::find_supercatalyst_with_final;
using supercat::Halfspace;
using supercat::HalfspaceSystem;
using supercat::Int;
using supercat::is_uniform;
using supercat::make_polyhedron;
using supercat::nogo_check;
using supercat::Opmp;
using supercat::parse_rational;
using supercat::Rat;
using supercat::Spectrum;
using supercat::Strictness;
using supercat::StrictnessProfile;
using supercat::supercat_from_opmp;
using supercat::SupercatalysisCertificate;
using supercat::verify_catalysis;
using supercat::verify_supercatalysis;
using testutil::spectrum_of;

namespace {

Spectrum benchmark_source() { return spectrum_of({"0.4", "0.36", "0.14", "0.1"}); }
Spectrum benchmark_target() { return spectrum_of({"0.5", "0.25", "0.25", "0"}); }
Spectrum twin_source() { return spectrum_of({"0.4", "0.4", "0.1", "0.1"}); }

// Two-outcome auxiliary state (p, 1-p) from a decimal or fraction literal.
Spectrum chi2(const char* p) { return auxiliary_state({parse_rational(p)}); }

std::vector<Rat> params(std::initializer_list<const char*> entries) {
  return testutil::rats(entries);
}

Rat abs_rat(const Rat& v) { return v < 0 ? Rat(-v) : v; }

// The interval midpoint matches the independently computed reference to
// thirty decimal digits and the interval itself is at least that tight.
void check_reference(const EntropyInterval& e, const char* reference,
                     const char* tolerance = "1e-27") {
  const Rat ref = parse_rational(reference);
  const Rat tol = parse_rational(tolerance);
  CHECK(abs_rat(Rat(e.midpoint() - ref)) <= tol);
  CHECK(e.width() <= tol);
}

template <typename F>
void expect_error(ErrorCode code, F&& fn) {
  try {
    fn();
    FAIL("expected an error to be raised");
  } catch (const Error& err) {
    CHECK(err.code() == code);
  }
}

// A one-interval auxiliary region [lo, hi] (or a single point when lo == hi)
// detached from any state pair, for exercising the geometric contracts.
Opmp synthetic_interval(const char* lo, const char* hi, bool with_vertices = true) {
  HalfspaceSystem sys;
  sys.ambient_dim = 1;
  Halfspace upper;
  upper.coeffs = {Rat(1)};
  upper.rhs = parse_rational(hi);
  sys.rows.push_back(upper);
  Halfspace lower;
  lower.coeffs = {Rat(-1)};
  lower.rhs = Rat(-parse_rational(lo));
  sys.rows.push_back(lower);
  Opmp region;
  region.polyhedron = make_polyhedron(std::move(sys), with_vertices);
  return region;
}

Opmp synthetic_triangle() {
  Opmp region;
  region.polyhedron = make_polyhedron(supercat::detail::ordered_simplex_system(3));
  return region;
}

Opmp synthetic_empty() {
  HalfspaceSystem sys;
  sys.ambient_dim = 1;
  Halfspace a;
  a.coeffs = {Rat(1)};
  a.rhs = Rat(0);
  sys.rows.push_back(a);
  Halfspace b;
  b.coeffs = {Rat(-1)};
  b.rhs = Rat(-1);
  sys.rows.push_back(b);
  Opmp region;
  region.polyhedron = make_polyhedron(std::move(sys));
  return region;
}

void check_certificate(const SupercatalysisCertificate& cert) {
  CHECK(cert.delta.lower > 0);
  CHECK(cert.delta.lower <= cert.delta.upper);
  const Spectrum chi = auxiliary_state(cert.p_initial);
  const Spectrum omega = auxiliary_state(cert.p_final);
  CHECK_FALSE(is_uniform(omega));
  const auto recheck = verify_supercatalysis(cert.psi, cert.phi, chi, omega);
  CHECK(recheck.valid);
  CHECK(recheck.entropy_gain_sign == EntropyOrder::Greater);
  // An independent high-precision gap evaluation must agree with the stored one.
  const EntropyInterval eo = entropy(omega, 512);
  const EntropyInterval ec = entropy(chi, 512);
  CHECK(Rat(eo.lower - ec.upper) <= cert.delta.upper);
  CHECK(Rat(eo.upper - ec.lower) >= cert.delta.lower);
}

// Splits 'mass' integer units into 'parts' descending values within
// [lo, hi]; used to build random spectra with pinned extreme entries.
std::optional<std::vector<long>> split_mass(std::mt19937_64& rng, long mass,
                                            int parts, long lo, long hi) {
  std::uniform_int_distribution<long> draw(0, mass);
  for (int tries = 0; tries < 2000; ++tries) {
    std::vector<long> cuts{0, mass};
    for (int i = 0; i + 1 < parts; ++i) cuts.push_back(draw(rng));
    std::sort(cuts.begin(), cuts.end());
    std::vector<long> segs;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
      segs.push_back(cuts[i + 1] - cuts[i]);
    std::sort(segs.begin(), segs.end(), std::greater<long>());
    if (segs.front() <= hi && segs.back() >= lo) return segs;
  }
  return std::nullopt;
}

Spectrum spectrum_from_units(const std::vector<long>& units, long den) {
  std::vector<Rat> values;
  values.reserve(units.size());
  for (const long u : units) values.emplace_back(Rat(Int(u), Int(den)));
  return Spectrum::make(std::move(values));
}

}  // namespace

TEST_CASE("benchmark regions admit strictly slack anchors") {
  const Spectrum psi = benchmark_source();
  const Spectrum phi = benchmark_target();
  const auto regions = enumerate_opmps(psi, phi, 2);
  REQUIRE(regions.size() == 2);

  for (const Opmp& region : regions) {
    const StrictnessProfile profile = classify_strictness(psi, phi, region);
    CHECK(profile.classification == Strictness::Strict);
    CHECK(profile.point == params({"10/19"}));
    CHECK(profile.benign_indices.empty());
    CHECK_FALSE(profile.direction.has_value());
    CHECK_FALSE(profile.epsilon.has_value());
    // The anchor genuinely satisfies every prefix inequality strictly.
    const auto report = verify_catalysis(psi, phi, auxiliary_state(profile.point));
    CHECK(report.result);
    CHECK(report.tight_indices.empty());
  }
}

TEST_CASE("upgrades step away from the low entropy corner") {
  const Spectrum psi = benchmark_source();
  const Spectrum phi = benchmark_target();
  const auto regions = enumerate_opmps(psi, phi, 2);
  REQUIRE(regions.size() == 2);
  const Opmp& narrow = regions[0];  // [13/25, 10/19]
  const Opmp& wide = regions[1];    // [10/19, 25/38]

  const auto narrow_cert = supercat_from_opmp(psi, phi, narrow);
  REQUIRE(narrow_cert.has_value());
  CHECK(narrow_cert->p_initial == params({"10/19"}));
  CHECK(narrow_cert->p_final == params({"13/25"}));
  check_certificate(*narrow_cert);
  check_reference(narrow_cert->delta,
                  "0.00058546823754373676043452049363658");

  const auto wide_cert = supercat_from_opmp(psi, phi, wide);
  REQUIRE(wide_cert.has_value());
  CHECK(wide_cert->p_initial == params({"25/38"}));
  CHECK(wide_cert->p_final == params({"45/76"}));
  check_certificate(*wide_cert);
  CHECK(wide_cert->delta.lower > parse_rational("0.033"));
  CHECK(wide_cert->delta.upper < parse_rational("0.034"));

  // Neither certified gain may exceed its region's certified spread.
  CHECK(narrow_cert->delta.lower <= delta_upper_bound(narrow).upper);
  CHECK(wide_cert->delta.lower <= delta_upper_bound(wide).upper);
}

TEST_CASE("entropy spread of interval regions brackets the references") {
  const Spectrum psi = benchmark_source();
  const Spectrum phi = benchmark_target();
  const auto regions = enumerate_opmps(psi, phi, 2);
  REQUIRE(regions.size() == 2);

  const EntropyInterval narrow_bound = delta_upper_bound(regions[0]);
  check_reference(narrow_bound, "0.00058546823754373676043452049363658");
  const EntropyInterval wide_bound = delta_upper_bound(regions[1]);
  check_reference(wide_bound, "0.049339477776163472902363820088147");
  CHECK(narrow_bound.lower >= 0);
  CHECK(wide_bound.lower >= 0);

  const EntropyInterval point_bound = delta_upper_bound(synthetic_interval("0.55", "0.55"));
  CHECK(point_bound.lower == 0);
  CHECK(point_bound.upper == 0);

  expect_error(ErrorCode::VerticesUnavailable,
               [] { delta_upper_bound(synthetic_empty()); });
  expect_error(ErrorCode::VerticesUnavailable, [] {
    delta_upper_bound(synthetic_interval("0.53", "0.6", false));
  });
}

TEST_CASE("spread attainment distinguishes the two regions") {
  const Spectrum psi = benchmark_source();
  const Spectrum phi = benchmark_target();
  const auto regions = enumerate_opmps(psi, phi, 2);
  REQUIRE(regions.size() == 2);

  const BoundAttainment narrow = check_bound_attainment(psi, phi, regions[0]);
  CHECK(narrow.attained);
  CHECK(narrow.witness_or_refutation.result);
  const auto& tights = narrow.witness_or_refutation.tight_indices;
  CHECK(std::find(tights.begin(), tights.end(), std::size_t{4}) != tights.end());

  const BoundAttainment wide = check_bound_attainment(psi, phi, regions[1]);
  CHECK_FALSE(wide.attained);
  CHECK_FALSE(wide.witness_or_refutation.result);
  REQUIRE(wide.witness_or_refutation.failing_index.has_value());
  CHECK(*wide.witness_or_refutation.failing_index == 3);

  // A single admissible point attains its zero spread trivially.
  const BoundAttainment point =
      check_bound_attainment(psi, phi, synthetic_interval("0.55", "0.55"));
  CHECK(point.attained);

  expect_error(ErrorCode::Unsupported,
               [&] { check_bound_attainment(psi, phi, synthetic_triangle()); });
  expect_error(ErrorCode::VerticesUnavailable, [&] {
    check_bound_attainment(psi, phi, synthetic_interval("0.53", "0.6", false));
  });
}

TEST_CASE("full search returns the biggest verified gain when asked") {
  const Spectrum psi = benchmark_source();
  const Spectrum phi = benchmark_target();

  const auto first = find_supercatalyst(psi, phi, 2);
  REQUIRE(first.has_value());
  CHECK(first->p_initial == params({"10/19"}));
  CHECK(first->p_final == params({"13/25"}));
  check_certificate(*first);

  const auto best = find_supercatalyst(psi, phi, 2, true);
  REQUIRE(best.has_value());
  CHECK(best->p_initial == params({"25/38"}));
  CHECK(best->p_final == params({"52/95"}));
  check_certificate(*best);
  check_reference(best->delta, "0.046230887986840160797501346896726");

  // The unconstrained optimum dominates every region-anchored certificate,
  // and strictly exceeds the narrow region's entire entropy spread.
  const auto regions = enumerate_opmps(psi, phi, 2);
  REQUIRE(regions.size() == 2);
  for (const Opmp& region : regions) {
    const auto region_cert = supercat_from_opmp(psi, phi, region);
    REQUIRE(region_cert.has_value());
    CHECK(best->delta.lower >= region_cert->delta.upper);
  }
  CHECK(best->delta.lower > delta_upper_bound(regions[0]).upper);
}

TEST_CASE("worked example certificates verify end to end") {
  const Spectrum psi = benchmark_source();
  const Spectrum phi = benchmark_target();
  const auto flagship =
      verify_supercatalysis(psi, phi, chi2("0.65"), chi2("0.55"));
  CHECK(flagship.valid);
  CHECK(flagship.report.result);
  CHECK(flagship.entropy_gain_sign == EntropyOrder::Greater);
  {
    const EntropyInterval eo = entropy(chi2("0.55"), 256);
    const EntropyInterval ec = entropy(chi2("0.65"), 256);
    check_reference(EntropyInterval{Rat(eo.lower - ec.upper),
                                    Rat(eo.upper - ec.lower), 256},
                    "0.040692174678956013731850616111476");
  }

  const auto twin = verify_supercatalysis(twin_source(), phi, chi2("0.625"),
                                          auxiliary_state({parse_rational("8/13")}));
  CHECK(twin.valid);
  CHECK(twin.entropy_gain_sign == EntropyOrder::Greater);
}

TEST_CASE("fixed final state picks the flattest workable catalyst") {
  const Spectrum psi = twin_source();
  const Spectrum phi = benchmark_target();
  const Spectrum omega = spectrum_of({"8/13", "5/13"});

  const auto cert = find_supercatalyst_with_final(psi, phi, omega);
  REQUIRE(cert.has_value());
  CHECK(cert->p_initial == params({"5/8"}));
  CHECK(cert->p_final == params({"8/13"}));
  check_certificate(*cert);
  check_reference(cert->delta, "0.00471520425669396089145434883178");

  const auto flagship_cert = find_supercatalyst_with_final(
      benchmark_source(), phi, spectrum_of({"0.55", "0.45"}));
  REQUIRE(flagship_cert.has_value());
  CHECK(flagship_cert->p_initial == params({"25/38"}));
  check_certificate(*flagship_cert);
  check_reference(flagship_cert->delta,
                  "0.04571679263733418406478758909749");

  // A maximally entangled replacement can never be certified.
  const auto uniform_final = find_supercatalyst_with_final(
      psi, phi, spectrum_of({"0.5", "0.5"}));
  CHECK_FALSE(uniform_final.has_value());
}

TEST_CASE("matched extreme weights rule out any upgrade") {
  const Spectrum psi = spectrum_of({"0.4", "0.3", "0.2", "0.05", "0.05"});
  const Spectrum phi = spectrum_of({"0.4", "0.35", "0.14", "0.11", "0"});
  REQUIRE(compare(psi, phi) == ComparabilityClass::Incomparable);
  CHECK(nogo_check(psi, phi).forbids_2x2);

  CHECK_FALSE(find_supercatalyst(psi, phi, 2).has_value());
  CHECK_FALSE(find_supercatalyst(psi, phi, 2, true).has_value());
  CHECK_FALSE(find_supercatalyst_with_final(psi, phi, spectrum_of({"3/5", "2/5"}))
                  .has_value());
}

TEST_CASE("random pairs with pinned extremes never certify") {
  auto rng = testutil::make_rng(0x0bc0de5ULL);
  const long den = 1000;

  int head_trials = 0;
  for (int attempt = 0; attempt < 300 && head_trials < 6; ++attempt) {
    std::uniform_int_distribution<long> head_draw(350, 549);
    const long h = head_draw(rng);
    const auto a = split_mass(rng, den - h, 3, 10, h);
    const auto b = split_mass(rng, den - h, 3, 10, h);
    if (!a || !b || *a == *b) continue;
    std::vector<long> ua{h};
    ua.insert(ua.end(), a->begin(), a->end());
    std::vector<long> ub{h};
    ub.insert(ub.end(), b->begin(), b->end());
    const Spectrum psi = spectrum_from_units(ua, den);
    const Spectrum phi = spectrum_from_units(ub, den);
    if (compare(psi, phi) != ComparabilityClass::Incomparable) continue;
    ++head_trials;
    CHECK(nogo_check(psi, phi).forbids_2x2);
    CHECK_FALSE(find_supercatalyst(psi, phi, 2).has_value());
  }
  CHECK(head_trials == 6);

  int tail_trials = 0;
  for (int attempt = 0; attempt < 300 && tail_trials < 6; ++attempt) {
    std::uniform_int_distribution<long> tail_draw(30, 80);
    const long t = tail_draw(rng);
    const auto a = split_mass(rng, den - t, 3, t, den);
    const auto b = split_mass(rng, den - t, 3, t, den);
    if (!a || !b || *a == *b) continue;
    std::vector<long> ua(*a), ub(*b);
    ua.push_back(t);
    ub.push_back(t);
    const Spectrum psi = spectrum_from_units(ua, den);
    const Spectrum phi = spectrum_from_units(ub, den);
    if (compare(psi, phi) != ComparabilityClass::Incomparable) continue;
    ++tail_trials;
    CHECK(nogo_check(psi, phi).forbids_2x2);
    CHECK_FALSE(find_supercatalyst(psi, phi, 2).has_value());
  }
  CHECK(tail_trials == 6);

  // Pinning BOTH extremes leaves a single free prefix sum on four outcomes,
  // so incomparable pairs of that shape need at least five outcomes.  The
  // exhaustive ordering enumeration is out of reach at five outcomes with
  // three-dimensional catalysts, so the three-outcome side of the law is
  // exercised through the fixed-final-state search, which only needs the
  // source-side geometry.
  int pinch_trials = 0;
  for (int attempt = 0; attempt < 300 && pinch_trials < 2; ++attempt) {
    std::uniform_int_distribution<long> head_draw(300, 380);
    std::uniform_int_distribution<long> tail_draw(20, 50);
    const long h = head_draw(rng);
    const long t = tail_draw(rng);
    const auto a = split_mass(rng, den - h - t, 3, t, h);
    const auto b = split_mass(rng, den - h - t, 3, t, h);
    if (!a || !b || *a == *b) continue;
    std::vector<long> ua{h}, ub{h};
    ua.insert(ua.end(), a->begin(), a->end());
    ub.insert(ub.end(), b->begin(), b->end());
    ua.push_back(t);
    ub.push_back(t);
    const Spectrum psi = spectrum_from_units(ua, den);
    const Spectrum phi = spectrum_from_units(ub, den);
    if (compare(psi, phi) != ComparabilityClass::Incomparable) continue;
    ++pinch_trials;
    CHECK(nogo_check(psi, phi).forbids_3x3);
    CHECK_FALSE(find_supercatalyst(psi, phi, 2).has_value());
    const auto parts = split_mass(rng, den, 3, 50, 800);
    REQUIRE(parts.has_value());
    const Spectrum omega = spectrum_from_units(*parts, den);
    CHECK_FALSE(find_supercatalyst_with_final(psi, phi, omega).has_value());
  }
  CHECK(pinch_trials == 2);
}

TEST_CASE("trailing zero ties force the semi strict profile") {
  // The benchmark pair with one explicit zero appended to each state: the
  // product spectra then agree exactly on their trailing prefix sums, so no
  // anchor can be strictly slack, yet the same upgrades remain available.
  const Spectrum psi = spectrum_of({"0.4", "0.36", "0.14", "0.1", "0"});
  const Spectrum phi = spectrum_of({"0.5", "0.25", "0.25", "0", "0"});
  const auto regions = enumerate_opmps(psi, phi, 2);
  REQUIRE(regions.size() == 2);
  REQUIRE(regions[0].polyhedron.vertices.has_value());
  CHECK(*regions[0].polyhedron.vertices ==
        std::vector<std::vector<Rat>>{{parse_rational("13/25")},
                                      {parse_rational("10/19")}});

  const StrictnessProfile profile = classify_strictness(psi, phi, regions[0]);
  CHECK(profile.classification == Strictness::SemiStrict);
  CHECK(profile.point == params({"10/19"}));
  REQUIRE(profile.direction.has_value());
  REQUIRE(profile.epsilon.has_value());
  CHECK(profile.benign_indices == std::vector<std::size_t>{8, 9});
  // The profile's step really lands inside the region.
  std::vector<Rat> landed(profile.point.size());
  for (std::size_t j = 0; j < landed.size(); ++j)
    landed[j] = Rat(profile.point[j] - *profile.epsilon * (*profile.direction)[j]);
  CHECK(supercat::contains(regions[0].polyhedron, landed));

  const auto cert = supercat_from_opmp(psi, phi, regions[0]);
  REQUIRE(cert.has_value());
  CHECK(cert->p_initial == params({"10/19"}));
  CHECK(cert->p_final == params({"13/25"}));
  check_certificate(*cert);

  // The wide region's only workable anchor is its flattest endpoint, where
  // one genuine prefix inequality is additionally tight; the certified step
  // releases that tie immediately, so it is benign alongside the permanent
  // trailing ties.
  const StrictnessProfile wide = classify_strictness(psi, phi, regions[1]);
  CHECK(wide.classification == Strictness::SemiStrict);
  CHECK(wide.point == params({"25/38"}));
  CHECK(wide.benign_indices == std::vector<std::size_t>{2, 8, 9});
}

TEST_CASE("degenerate regions classify as pointlike") {
  const Spectrum psi = benchmark_source();
  const Spectrum phi = benchmark_target();

  const Opmp point = synthetic_interval("0.55", "0.55");
  const StrictnessProfile profile = classify_strictness(psi, phi, point);
  CHECK(profile.classification == Strictness::NeitherAtPoint);
  CHECK(profile.point == params({"0.55"}));
  CHECK_FALSE(supercat_from_opmp(psi, phi, point).has_value());

  const Opmp empty = synthetic_empty();
  const StrictnessProfile none = classify_strictness(psi, phi, empty);
  CHECK(none.classification == Strictness::NeitherAtPoint);
  CHECK(none.point.empty());
  CHECK_FALSE(supercat_from_opmp(psi, phi, empty).has_value());
}

TEST_CASE("three outcome regions support anchored upgrades") {
  const Spectrum psi = benchmark_source();
  const Spectrum phi = benchmark_target();
  const auto regions = enumerate_opmps(psi, phi, 3);
  REQUIRE_FALSE(regions.empty());

  bool some_cert = false;
  for (const Opmp& region : regions) {
    const StrictnessProfile profile = classify_strictness(psi, phi, region);
    if (profile.classification == Strictness::NeitherAtPoint) continue;
    const auto cert = supercat_from_opmp(psi, phi, region);
    if (!cert) continue;
    some_cert = true;
    check_certificate(*cert);
    CHECK(cert->delta.lower <= delta_upper_bound(region).upper);
  }
  CHECK(some_cert);

  // Two-dimensional regions have no two-endpoint spread to attain.
  const auto flat = std::find_if(regions.begin(), regions.end(),
                                 [](const Opmp& r) { return r.polyhedron.dim >= 2; });
  REQUIRE(flat != regions.end());
  expect_error(ErrorCode::Unsupported,
               [&] { check_bound_attainment(psi, phi, *flat); });
}

TEST_CASE("search preconditions are enforced") {
  const Spectrum psi = benchmark_source();
  const Spectrum phi = benchmark_target();
  const Spectrum sorted_down = spectrum_of({"0.5", "0.3", "0.2"});
  const Spectrum sorted_up = spectrum_of({"0.6", "0.3", "0.1"});

  expect_error(ErrorCode::NotIncomparable,
               [&] { find_supercatalyst(sorted_down, sorted_up, 2); });
  expect_error(ErrorCode::NotIncomparable, [&] {
    find_supercatalyst_with_final(sorted_down, sorted_up,
                                  spectrum_of({"0.6", "0.4"}));
  });
  expect_error(ErrorCode::Unsupported, [&] { find_supercatalyst(psi, phi, 0); });
  expect_error(ErrorCode::TooLarge, [&] { find_supercatalyst(psi, phi, 5); });
  expect_error(ErrorCode::TooLarge,
               [&] { find_supercatalyst(psi, phi, 2, false, 7); });
  expect_error(ErrorCode::TooLarge, [&] {
    find_supercatalyst_with_final(
        psi, phi, spectrum_of({"0.3", "0.25", "0.2", "0.15", "0.1"}));
  });
}
