#pragma once

#include <cmath>
#include <vector>

#include "phimap/linalg.hpp"
#include "phimap/random.hpp"

namespace phimap::testing {

inline ComplexMatrix random_matrix(std::size_t n, Rng& rng) { return gaussian_matrix(n, n, rng); }

inline ComplexMatrix random_hermitian(std::size_t n, Rng& rng) {
  const ComplexMatrix g = gaussian_matrix(n, n, rng);
  return 0.5 * (g + g.adjoint());
}

/// Eigenvalue multiplicities after rounding to the nearest multiple of `grid`.
inline bool spectrum_matches(const std::vector<double>& ev, const std::vector<std::pair<double, std::size_t>>& expected,
                             double tol) {
  std::size_t total = 0;
  for (const auto& [value, mult] : expected) {
    std::size_t count = 0;
    for (double x : ev) {
      if (std::abs(x - value) <= tol) ++count;
    }
    if (count != mult) return false;
    total += mult;
  }
  return total == ev.size();
}

}  // namespace phimap::testing
