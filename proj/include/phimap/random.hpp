#pragma once

#include <cstdint>
#include <random>

#include "phimap/linalg.hpp"

namespace phimap {

using Rng = std::mt19937_64;

/// Independent stream for sample `index` of a run seeded with `seed`.
inline Rng derived_rng(std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  return Rng(seq);
}

/// i.i.d. standard complex Gaussian amplitudes, not normalized.
inline Ket gaussian_ket(std::size_t dim, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Ket k(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    const double re = normal(rng);
    const double im = normal(rng);
    k[i] = cplx{re, im};
  }
  return k;
}

inline Ket random_unit_ket(std::size_t dim, Rng& rng) { return gaussian_ket(dim, rng).normalized(); }

inline ComplexMatrix gaussian_matrix(std::size_t rows, std::size_t cols, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  ComplexMatrix g(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      const double re = normal(rng);
      const double im = normal(rng);
      g(r, c) = cplx{re, im};
    }
  }
  return g;
}

}  // namespace phimap
