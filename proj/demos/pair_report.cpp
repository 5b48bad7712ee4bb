// Reports, for a pair of state spectra, whether one converts to the other
// deterministically, and if not, the exact catalyst regions for a k-outcome
// auxiliary state: vertices, merged order cells, and vertex entropies.
//
// Usage:
//   pair_report                          (built-in example pair, k = 2)
//   pair_report SOURCE TARGET [K]
// where SOURCE and TARGET are comma-separated exact rationals, e.g.
//   pair_report 0.4,0.36,0.14,0.1 0.5,0.25,0.25,0 2

#include <cstddef>
#include <exception>
#include <iostream>
#include <string>
#include <string_view>
#include <vector>

#include "supercat/entropy.hpp"
#include "supercat/errors.hpp"
#include "supercat/majorization.hpp"
#include "supercat/opmp.hpp"
#include "supercat/polyhedron.hpp"
#include "supercat/rational.hpp"
#include "supercat/spectrum.hpp"

namespace {

using supercat::Opmp;
using supercat::Rat;
using supercat::Spectrum;

Spectrum parse_spectrum(const std::string& text) {
  std::vector<Rat> values;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t comma = text.find(',', start);
    const std::size_t end = comma == std::string::npos ? text.size() : comma;
    values.push_back(supercat::parse_rational(
        std::string_view(text).substr(start, end - start)));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return Spectrum::make(std::move(values));
}

std::string approx(const Rat& q) {
  return supercat::to_fraction_string(q) + " = " + supercat::to_decimal_string(q, 6);
}

std::string spectrum_line(const Spectrum& s) {
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += ", ";
    out += supercat::to_fraction_string(s[i]);
  }
  return out;
}

std::string ordering_line(const supercat::Ordering& ord) {
  std::string out;
  for (const auto& [i, j] : ord.slots)
    out += "(" + std::to_string(i) + "," + std::to_string(j) + ")";
  return out;
}

void print_region(const Opmp& region, std::size_t index) {
  std::cout << "  region " << index << ": dimension " << region.polyhedron.dim
            << ", " << region.pieces.size() << " order cell"
            << (region.pieces.size() == 1 ? "" : "s") << "\n";
  if (region.polyhedron.vertices) {
    std::cout << "    vertices:";
    for (const std::vector<Rat>& v : *region.polyhedron.vertices) {
      std::cout << "  (";
      for (std::size_t j = 0; j < v.size(); ++j)
        std::cout << (j ? ", " : "") << approx(v[j]);
      std::cout << ")";
    }
    std::cout << "\n";
  }
  if (region.vertex_entropies) {
    std::cout << "    vertex entropies (nats, descending):";
    for (const supercat::EntropyInterval& e : *region.vertex_entropies)
      std::cout << "  ~" << supercat::to_decimal_string(e.midpoint(), 9);
    std::cout << "\n";
  }
  std::cout << "    order of source products: " << ordering_line(region.source_ordering)
            << "\n";
  std::cout << "    order of target products: " << ordering_line(region.target_ordering)
            << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  Spectrum psi = parse_spectrum("0.4,0.36,0.14,0.1");
  Spectrum phi = parse_spectrum("0.5,0.25,0.25,0");
  std::size_t k = 2;
  try {
    if (argc >= 3) {
      psi = parse_spectrum(argv[1]);
      phi = parse_spectrum(argv[2]);
    } else if (argc != 1) {
      std::cerr << "usage: pair_report [SOURCE TARGET [K]]\n";
      return 2;
    }
    if (argc >= 4) k = static_cast<std::size_t>(std::stoul(argv[3]));
  } catch (const std::exception& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  }

  std::cout << "source spectrum: " << spectrum_line(psi) << "\n";
  std::cout << "target spectrum: " << spectrum_line(phi) << "\n";

  try {
    const supercat::ComparabilityClass cls = supercat::compare(psi, phi);
    std::cout << "comparability: " << supercat::comparability_name(cls) << "\n\n";

    const std::vector<Opmp> regions = supercat::enumerate_opmps(psi, phi, k);
    if (cls == supercat::ComparabilityClass::SourceToTarget ||
        cls == supercat::ComparabilityClass::Equivalent) {
      std::cout << "the conversion needs no catalyst; every " << k
                << "-outcome auxiliary state works.\n";
      print_region(regions.front(), 1);
      return 0;
    }
    if (cls == supercat::ComparabilityClass::TargetToSource) {
      std::cout << "the conversion runs deterministically in the other direction "
                   "only; no auxiliary state can reverse it.\n";
      return 0;
    }

    std::cout << "catalyst regions with a " << k << "-outcome auxiliary state ("
              << "coordinates are the leading auxiliary weights):\n";
    if (regions.empty()) {
      std::cout << "  none: no " << k << "-outcome catalyst exists.\n";
      return 0;
    }
    for (std::size_t i = 0; i < regions.size(); ++i) print_region(regions[i], i + 1);

    const auto cat = supercat::is_catalyzable(psi, phi, k);
    if (cat.catalyzable && cat.witness) {
      const bool ok = supercat::verify_catalysis(psi, phi, *cat.witness).result;
      std::cout << "\nwitness catalyst: " << spectrum_line(*cat.witness)
                << (ok ? "  (verified exactly)" : "  (VERIFICATION FAILED)") << "\n";
      return ok ? 0 : 1;
    }
    return 0;
  } catch (const supercat::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
