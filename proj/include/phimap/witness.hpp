#pragma once

// The witness W = N (I (x) Phi) P_0 and the machinery used to certify that it
// is optimal: zero-expectation product vectors, the decomposition of an
// arbitrary product vector into such vectors, and a numerical span check.

#include <cstdint>
#include <vector>

#include "phimap/criteria.hpp"
#include "phimap/linalg.hpp"
#include "phimap/spin.hpp"

namespace phimap {

struct Witness {
  std::size_t n = 0;
  ComplexMatrix matrix;  // n^2 x n^2
};

/// N * apply_local_map(P_0, Phi), checked against the closed form.
/// Throws UnsupportedDimension unless N is even and >= 4, NumericalFailure
/// if the two constructions disagree beyond 1e-10.
Witness build_witness(std::size_t n);

/// -(N-2) P_0 + 2 (P_2 + P_4 + ... + P_{2j-1})
ComplexMatrix witness_closed_form(std::size_t n);

/// tr(W rho); accepts unnormalized operators.
double witness_expectation(const Witness& w, const ComplexMatrix& rho);
double witness_expectation(const Witness& w, const DensityState& rho);

struct GammaCheck {
  bool member = false;
  double residual = 0.0;  // 1 - |<a|b>|^2 - |<a|theta b>|^2
};

inline constexpr double kGammaTolerance = 1e-10;

/// Whether |a>|b> has zero W-expectation. Kets must be normalized to 1e-8.
GammaCheck gamma_membership(const SpinSystem& sys, const Ket& first, const Ket& second,
                            double tol = kGammaTolerance);

struct GammaTerm {
  cplx coefficient;
  Ket first;
  Ket second;
  bool zero_vector = false;  // one factor vanished; membership not testable
};

/// Four-term expansion of first (x) second into product vectors of the form
/// theta psi (x) psi or psi (x) theta psi. The weighted sum reproduces the
/// input exactly (up to rounding) for any pair of kets.
std::vector<GammaTerm> decompose_into_gamma(const SpinSystem& sys, const Ket& first,
                                            const Ket& second);

Ket reconstruct(const std::vector<GammaTerm>& terms);

enum class GammaSampling {
  Generic,         // alternating phi (x) theta phi and theta phi (x) phi, complex phi
  RealFirstForm,   // phi (x) theta phi only, real-amplitude phi
};

struct OptimalityReport {
  std::size_t n = 0;
  std::size_t samples = 0;
  std::size_t rank = 0;
  std::size_t full_rank = 0;        // n^2
  double invariance_residual = 0.0;  // |theta_2 W - W|_max
  bool theta2_invariant = false;
  bool optimal() const { return rank == full_rank && theta2_invariant; }
};

/// Samples product vectors from Gamma_W, reports their span rank and whether
/// W is invariant under partial time reversal.
OptimalityReport verify_optimality(const SpinSystem& sys, std::size_t samples, std::uint64_t seed,
                                   double tol = 1e-10, GammaSampling mode = GammaSampling::Generic);

}  // namespace phimap
