// Brute-force grid scan for a pair of state spectra: reports which exact
// grid auxiliary states catalyze the conversion, and which ordered grid
// pairs certify an entropy-raising replacement of the auxiliary state.
//
// Usage:
//   grid_scan                                   (built-in pair, k = 2, r = 200)
//   grid_scan SOURCE TARGET [K] [RESOLUTION]
// where SOURCE and TARGET are comma-separated exact rationals, e.g.
//   grid_scan 0.4,0.36,0.14,0.1 0.5,0.25,0.25,0 2 500

#include <cstddef>
#include <cstdint>
#include <exception>
#include <iostream>
#include <string>
#include <string_view>
#include <vector>

#include "supercat/entropy.hpp"
#include "supercat/errors.hpp"
#include "supercat/oracle.hpp"
#include "supercat/rational.hpp"
#include "supercat/spectrum.hpp"

namespace {

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

std::string point_line(const std::vector<Rat>& p) {
  std::string out = "(";
  for (std::size_t j = 0; j < p.size(); ++j) {
    if (j) out += ", ";
    out += supercat::to_fraction_string(p[j]);
  }
  return out + ")";
}

}  // namespace

int main(int argc, char** argv) {
  Spectrum psi = parse_spectrum("0.4,0.36,0.14,0.1");
  Spectrum phi = parse_spectrum("0.5,0.25,0.25,0");
  supercat::GridSpec grid{2, 200};
  try {
    if (argc >= 3) {
      psi = parse_spectrum(argv[1]);
      phi = parse_spectrum(argv[2]);
    } else if (argc != 1) {
      std::cerr << "usage: grid_scan [SOURCE TARGET [K] [RESOLUTION]]\n";
      return 2;
    }
    if (argc >= 4) grid.k = static_cast<std::size_t>(std::stoul(argv[3]));
    if (argc >= 5)
      grid.resolution = static_cast<std::size_t>(std::stoul(argv[4]));
  } catch (const std::exception& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  }

  try {
    const std::uint64_t count = supercat::detail::grid_point_count(
        grid.k, grid.resolution, 1'000'000'000'000ULL);
    std::cout << "grid: " << grid.k << "-outcome auxiliary states, step 1/"
              << grid.resolution << ", " << count << " points\n";

    const auto hits = supercat::scan_catalysts(psi, phi, grid);
    std::cout << "catalysts at grid points: " << hits.size();
    if (!hits.empty())
      std::cout << "   first " << point_line(hits.front()) << "   last "
                << point_line(hits.back());
    std::cout << "\n";

    const auto pairs = supercat::scan_supercatalysts(psi, phi, grid);
    std::cout << "entropy-raising replacements: " << pairs.size() << " pairs\n";
    if (!pairs.empty()) {
      std::size_t best = 0;
      Rat best_gap(-1);
      for (std::size_t i = 0; i < pairs.size(); ++i) {
        const Rat gap =
            Rat(supercat::entropy(supercat::auxiliary_state(pairs[i].second))
                    .midpoint() -
                supercat::entropy(supercat::auxiliary_state(pairs[i].first))
                    .midpoint());
        if (gap > best_gap) {
          best_gap = gap;
          best = i;
        }
      }
      std::cout << "largest gap on the grid: " << point_line(pairs[best].first)
                << " -> " << point_line(pairs[best].second) << "   gain ~"
                << supercat::to_decimal_string(best_gap, 9) << " nats\n";
    }
    return 0;
  } catch (const supercat::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.code() == supercat::ErrorCode::TooLarge ? 4 : 3;
  }
}
