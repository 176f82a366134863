#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "phimap/criteria.hpp"
#include "phimap/linalg.hpp"

namespace phimap {

/// rho_0 = 2/(N(N+1)) * sum over odd J of P_J (normalized symmetric projector).
DensityState symmetric_werner_state(std::size_t n);
/// Same state from (I + F) / (N(N+1)).
DensityState symmetric_werner_state_from_swap(std::size_t n);

struct FamilyPoint {
  std::size_t n = 0;
  double lambda = 0.0;
  DensityState state;
};

/// rho(lambda) = lambda P_0 + (1 - lambda) rho_0, lambda in [0, 1].
FamilyPoint family_state(std::size_t n, double lambda);

struct ThresholdOptions {
  double resolution = 1e-6;  // bisection width and smallest probe
  double tol = kDefaultTolerance;
};

struct ThresholdResult {
  double lambda_c = 1.0;
  bool detected = false;       // criterion fires somewhere on (0, 1]
  bool fires_at_floor = false;  // fires already at lambda = resolution
};

/// Signed score of `criterion` on rho(lambda); Verdict::Entangled when it fires.
CriterionReport family_score(std::size_t n, double lambda, Criterion criterion, double tol);

ThresholdResult family_threshold(std::size_t n, Criterion criterion, const ThresholdOptions& opts = {});

struct ManifoldTerm {
  double weight = 0.0;
  Ket first;
  Ket second;
};

struct ManifoldSpec {
  DensityState base;
  std::vector<ManifoldTerm> terms;
  bool normalize = true;
};

struct ManifoldMember {
  ComplexMatrix matrix;          // normalized iff `normalized`
  Dims dims;
  double raw_trace = 1.0;        // trace before normalization
  bool normalized = true;
  /// Throws unless `normalized`.
  DensityState state() const;
};

/// base + sum_a p_a |first_a, second_a><first_a, second_a|. Every term must
/// lie in Gamma_W; the base must be PPT and detected by W.
ManifoldMember bound_entangled_state(const ManifoldSpec& spec);

/// Base rho(lambda_base) with the 2N terms |m>|m> (weights[0..N)) and
/// |-m>|m> (weights[N..2N)). lambda_base must lie in (0, 1/(N+2)].
ManifoldMember standard_manifold_member(std::size_t n, double lambda_base, std::span<const double> weights);

enum class EnsembleKind { GinibreMixed, PureHaar, SeparableMixture };

struct Ensemble {
  EnsembleKind kind = EnsembleKind::GinibreMixed;
  std::size_t mixture_terms = 1;  // SeparableMixture only
};

DensityState random_state(Dims dims, const Ensemble& ensemble, std::uint64_t seed);
/// Same ensemble, independent stream per (seed, index).
DensityState random_state(Dims dims, const Ensemble& ensemble, std::uint64_t seed, std::uint64_t index);

}  // namespace phimap
