#include "phimap/states.hpp"

#include <cmath>
#include <random>

#include "phimap/random.hpp"
#include "phimap/spin.hpp"
#include "phimap/witness.hpp"

namespace phimap {

namespace {

SpinSystem family_system(std::size_t n, const char* who) {
  if (n < 4 || n % 2 != 0) {
    throw UnsupportedDimension(std::string(who) + ": requires even N >= 4, got N = " +
                               std::to_string(n));
  }
  return SpinSystem::from_dimension(n);
}

double werner_norm(std::size_t n) { return 2.0 / static_cast<double>(n * (n + 1)); }

ComplexMatrix werner_matrix(std::size_t n) {
  const auto dec = total_spin_projectors(family_system(n, "symmetric_werner_state"));
  ComplexMatrix ps(n * n, n * n);
  for (int J = 1; J <= dec->max_J(); J += 2) ps += (*dec)[J];
  return werner_norm(n) * ps;
}

}  // namespace

DensityState symmetric_werner_state(std::size_t n) { return DensityState(werner_matrix(n), Dims{n, n}); }

DensityState symmetric_werner_state_from_swap(std::size_t n) {
  const SpinSystem sys = family_system(n, "symmetric_werner_state_from_swap");
  ComplexMatrix m = ComplexMatrix::identity(n * n) + swap_operator(sys);
  return DensityState(0.5 * werner_norm(n) * m, Dims{n, n});
}

FamilyPoint family_state(std::size_t n, double lambda) {
  const SpinSystem sys = family_system(n, "family_state");
  if (!(lambda >= 0.0 && lambda <= 1.0)) throw InvalidInput("family_state: lambda must lie in [0, 1]");
  ComplexMatrix m = lambda * singlet_projector(sys) + (1.0 - lambda) * werner_matrix(n);
  return FamilyPoint{n, lambda, DensityState(std::move(m), Dims{n, n})};
}

CriterionReport family_score(std::size_t n, double lambda, Criterion criterion, double tol) {
  const FamilyPoint p = family_state(n, lambda);
  switch (criterion) {
    case Criterion::PPT: return ppt_check(p.state, tol);
    case Criterion::Reduction1: return reduction_check(p.state, tol).side1;
    case Criterion::Reduction2: return reduction_check(p.state, tol).side2;
    case Criterion::Phi: return phi_check(p.state, tol);
    case Criterion::Realignment: return realignment_check(p.state, tol);
    case Criterion::Majorization: return majorization_check(p.state, tol);
  }
  throw InvalidInput("family_score: unknown criterion");
}

ThresholdResult family_threshold(std::size_t n, Criterion criterion, const ThresholdOptions& opts) {
  if (!(opts.resolution > 0.0 && opts.resolution < 1.0)) {
    throw InvalidInput("family_threshold: resolution must lie in (0, 1)");
  }
  auto fires = [&](double lambda) {
    return family_score(n, lambda, criterion, opts.tol).verdict == Verdict::Entangled;
  };
  ThresholdResult res;
  if (fires(opts.resolution)) {
    res.lambda_c = 0.0;
    res.detected = true;
    res.fires_at_floor = true;
    return res;
  }
  if (!fires(1.0)) return res;

  // Bracket to well below the resolution so the reported value is accurate
  // to it after rounding.
  double lo = opts.resolution;  // not detected
  double hi = 1.0;              // detected
  while (hi - lo > 1e-3 * opts.resolution) {
    const double mid = 0.5 * (lo + hi);
    (fires(mid) ? hi : lo) = mid;
  }
  res.lambda_c = 0.5 * (lo + hi);
  res.detected = true;
  return res;
}

// ------------------------------------------------------------ manifold

DensityState ManifoldMember::state() const {
  if (!normalized) throw InvalidInput("ManifoldMember: state is not normalized");
  return DensityState(matrix, dims);
}

ManifoldMember bound_entangled_state(const ManifoldSpec& spec) {
  const Dims dims = spec.base.dims();
  if (dims.d1 != dims.d2) throw InvalidInput("bound_entangled_state: base must be N x N");
  const std::size_t n = dims.d1;
  const SpinSystem sys = family_system(n, "bound_entangled_state");
  const Witness w = build_witness(n);

  if (ppt_check(spec.base).verdict == Verdict::Entangled) {
    throw InvalidInput("bound_entangled_state: base state is not PPT");
  }
  if (!(witness_expectation(w, spec.base) < -kDefaultTolerance)) {
    throw InvalidInput("bound_entangled_state: base state is not detected by W");
  }

  ComplexMatrix m = spec.base.matrix();
  double trace = spec.base.matrix().trace().real();
  for (std::size_t a = 0; a < spec.terms.size(); ++a) {
    const auto& t = spec.terms[a];
    if (!(t.weight >= 0.0) || !std::isfinite(t.weight)) {
      throw InvalidInput("bound_entangled_state: weights must be finite and nonnegative");
    }
    if (t.first.dim() != n || t.second.dim() != n) {
      throw InvalidInput("bound_entangled_state: term kets have wrong dimension");
    }
    if (t.first.norm() == 0.0 || t.second.norm() == 0.0) {
      throw InvalidInput("bound_entangled_state: zero ket in term " + std::to_string(a));
    }
    const auto check = gamma_membership(sys, t.first.normalized(), t.second.normalized());
    if (!check.member) {
      throw InvalidInput("bound_entangled_state: term " + std::to_string(a) +
                         " is not in Gamma_W (residual " + std::to_string(check.residual) + ")");
    }
    const Ket prod = tensor_product(t.first, t.second);
    m += t.weight * ComplexMatrix::projector(prod);
    trace += t.weight * std::pow(prod.norm(), 2);
  }

  ManifoldMember out{std::move(m), dims, trace, spec.normalize};
  if (spec.normalize) out.matrix *= 1.0 / trace;
  return out;
}

ManifoldMember standard_manifold_member(std::size_t n, double lambda_base, std::span<const double> weights) {
  family_system(n, "standard_manifold_member");
  const double window = 1.0 / static_cast<double>(n + 2);
  if (!(lambda_base > 0.0 && lambda_base <= window)) {
    throw InvalidInput("standard_manifold_member: lambda_base must lie in (0, 1/(N+2)]");
  }
  if (weights.size() != 2 * n) {
    throw InvalidInput("standard_manifold_member: expected 2N weights");
  }
  ManifoldSpec spec{family_state(n, lambda_base).state, {}, true};
  for (std::size_t i = 0; i < n; ++i) {
    spec.terms.push_back({weights[i], Ket::basis(n, i), Ket::basis(n, i)});
  }
  for (std::size_t i = 0; i < n; ++i) {
    spec.terms.push_back({weights[n + i], Ket::basis(n, n - 1 - i), Ket::basis(n, i)});
  }
  return bound_entangled_state(spec);
}

// ------------------------------------------------------------ random states

namespace {

ComplexMatrix ginibre_density(std::size_t d, Rng& rng) {
  const ComplexMatrix g = gaussian_matrix(d, d, rng);
  ComplexMatrix m = g * g.adjoint();
  m *= 1.0 / m.trace().real();
  return m;
}

}  // namespace

DensityState random_state(Dims dims, const Ensemble& ensemble, std::uint64_t seed) {
  return random_state(dims, ensemble, seed, 0);
}

DensityState random_state(Dims dims, const Ensemble& ensemble, std::uint64_t seed, std::uint64_t index) {
  if (dims.d1 == 0 || dims.d2 == 0) throw InvalidInput("random_state: zero dimension");
  Rng rng = derived_rng(seed, index);
  const std::size_t d = dims.total();
  switch (ensemble.kind) {
    case EnsembleKind::GinibreMixed: return DensityState(ginibre_density(d, rng), dims);
    case EnsembleKind::PureHaar:
      return DensityState(ComplexMatrix::projector(random_unit_ket(d, rng)), dims);
    case EnsembleKind::SeparableMixture: {
      if (ensemble.mixture_terms == 0) throw InvalidInput("random_state: mixture needs k >= 1");
      std::exponential_distribution<double> expo(1.0);
      std::vector<double> p(ensemble.mixture_terms);
      double total = 0.0;
      for (auto& x : p) total += (x = expo(rng));
      ComplexMatrix m(d, d);
      for (double pi : p) {
        const ComplexMatrix a = ginibre_density(dims.d1, rng);
        const ComplexMatrix b = ginibre_density(dims.d2, rng);
        m += (pi / total) * tensor_product(a, b);
      }
      return DensityState(std::move(m), dims);
    }
  }
  throw InvalidInput("random_state: unknown ensemble");
}

}  // namespace phimap
