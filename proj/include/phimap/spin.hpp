#pragma once

// Spin-j machinery on C^N, N = 2j + 1.
//
// Half-integers are carried as doubled integers (two_j = 2j, two_m = 2m).
// Basis index i corresponds to m = j - i, so index 0 is m = +j and the last
// index is m = -j.

#include <memory>
#include <vector>

#include "phimap/linalg.hpp"

namespace phimap {

/// Basis ordering: index 0 is m = +j, descending to m = -j.
inline constexpr bool kBasisMDescending = true;

class SpinSystem {
 public:
  explicit SpinSystem(int two_j);
  static SpinSystem from_dimension(std::size_t n);

  int two_j() const { return two_j_; }
  std::size_t dim() const { return static_cast<std::size_t>(two_j_) + 1; }
  bool even() const { return dim() % 2 == 0; }

  /// 2m for basis index i.
  int two_m(std::size_t index) const { return two_j_ - 2 * static_cast<int>(index); }
  std::size_t index_of(int two_m) const;

  /// Throws UnsupportedDimension unless N is even.
  void require_even(const char* who) const;

 private:
  int two_j_;
};

/// <j,m'|V|j,m> = (-1)^(j-m) delta(m', -m). Unitary with V^T = -V for even N.
ComplexMatrix build_V(const SpinSystem& sys);

/// theta phi = V conj(phi).
Ket theta_ket(const SpinSystem& sys, const Ket& phi);

/// Condon-Shortley <j1 m1; j2 m2 | J M>, all arguments doubled.
double clebsch_gordan(int two_j1, int two_m1, int two_j2, int two_m2, int two_J, int two_M);

/// Equal-spin shorthand: <j m1; j m2 | J M> with integer J.
double clebsch_gordan(const SpinSystem& sys, int two_m1, int two_m2, int J, int two_M);

/// Coupled state |J, M> of two spin-j particles in the product basis.
Ket coupled_state(const SpinSystem& sys, int J, int two_M);

struct TotalSpinDecomposition {
  int two_j = 0;
  std::vector<ComplexMatrix> projectors;  // projectors[J] for J = 0 .. 2j

  const ComplexMatrix& operator[](int J) const { return projectors.at(static_cast<std::size_t>(J)); }
  int max_J() const { return two_j; }
};

/// P_J for J = 0 .. 2j, built from Clebsch-Gordan coupled states.
/// Results are memoized per N; the cache is safe for concurrent callers.
std::shared_ptr<const TotalSpinDecomposition> total_spin_projectors(const SpinSystem& sys);

/// F|a>|b> = |b>|a>.
ComplexMatrix swap_operator(const SpinSystem& sys);

/// Projector onto the J = 0 singlet.
ComplexMatrix singlet_projector(const SpinSystem& sys);

/// Spin components j_z, j_x, j_y in the m-descending basis.
ComplexMatrix spin_z(const SpinSystem& sys);
ComplexMatrix spin_x(const SpinSystem& sys);
ComplexMatrix spin_y(const SpinSystem& sys);

}  // namespace phimap
