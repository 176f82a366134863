#include "phimap/witness.hpp"

#include <cmath>

#include "phimap/maps.hpp"
#include "phimap/random.hpp"

namespace phimap {

namespace {

SpinSystem witness_system(std::size_t n, const char* who) {
  if (n < 4 || n % 2 != 0) {
    throw UnsupportedDimension(std::string(who) + ": requires even N >= 4, got N = " +
                               std::to_string(n));
  }
  return SpinSystem::from_dimension(n);
}

}  // namespace

ComplexMatrix witness_closed_form(std::size_t n) {
  const SpinSystem sys = witness_system(n, "witness_closed_form");
  const auto dec = total_spin_projectors(sys);
  ComplexMatrix w = -static_cast<double>(n - 2) * (*dec)[0];
  for (int J = 2; J <= dec->max_J(); J += 2) w += 2.0 * (*dec)[J];
  return w;
}

Witness build_witness(std::size_t n) {
  const SpinSystem sys = witness_system(n, "build_witness");
  const Dims dims{n, n};
  ComplexMatrix w = static_cast<double>(n) *
                    apply_local_map(singlet_projector(sys), dims, OperatorMap(MapKind::Phi, n));
  const double gap = max_abs_diff(w, witness_closed_form(n));
  if (gap > 1e-10) {
    throw NumericalFailure("build_witness: map construction deviates from closed form by " +
                           std::to_string(gap));
  }
  return Witness{n, std::move(w)};
}

double witness_expectation(const Witness& w, const ComplexMatrix& rho) {
  if (rho.rows() != w.matrix.rows() || rho.cols() != w.matrix.cols()) {
    throw InvalidInput("witness_expectation: dimension mismatch");
  }
  // tr(W rho) = sum_ij W_ij rho_ji
  cplx s = 0.0;
  const std::size_t d = rho.rows();
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) s += w.matrix(i, j) * rho(j, i);
  }
  return s.real();
}

double witness_expectation(const Witness& w, const DensityState& rho) {
  return witness_expectation(w, rho.matrix());
}

GammaCheck gamma_membership(const SpinSystem& sys, const Ket& first, const Ket& second, double tol) {
  if (first.dim() != sys.dim() || second.dim() != sys.dim()) {
    throw InvalidInput("gamma_membership: ket dimension does not match spin system");
  }
  if (std::abs(first.norm() - 1.0) > 1e-8 || std::abs(second.norm() - 1.0) > 1e-8) {
    throw InvalidInput("gamma_membership: kets must be normalized");
  }
  const double residual = 1.0 - std::norm(inner(first, second)) -
                          std::norm(inner(first, theta_ket(sys, second)));
  return {std::abs(residual) <= tol, residual};
}

std::vector<GammaTerm> decompose_into_gamma(const SpinSystem& sys, const Ket& first,
                                            const Ket& second) {
  const cplx i{0.0, 1.0};
  const Ket theta_first = theta_ket(sys, first);
  const Ket u = theta_first + second;
  const Ket v = i * theta_first + second;

  auto term = [](cplx c, Ket a, Ket b) {
    const bool zero = a.norm() == 0.0 || b.norm() == 0.0;
    return GammaTerm{c, std::move(a), std::move(b), zero};
  };
  std::vector<GammaTerm> out;
  out.push_back(term(-0.5, theta_ket(sys, u), u));
  out.push_back(term(-0.5 * i, theta_ket(sys, v), v));
  out.push_back(term(-0.5 * (1.0 + i), first, theta_first));
  out.push_back(term(0.5 * (1.0 + i), theta_ket(sys, second), second));
  return out;
}

Ket reconstruct(const std::vector<GammaTerm>& terms) {
  if (terms.empty()) return Ket();
  Ket sum(terms.front().first.dim() * terms.front().second.dim());
  for (const auto& t : terms) sum += t.coefficient * tensor_product(t.first, t.second);
  return sum;
}

OptimalityReport verify_optimality(const SpinSystem& sys, std::size_t samples, std::uint64_t seed,
                                   double tol, GammaSampling mode) {
  const std::size_t n = sys.dim();
  const Witness w = build_witness(n);
  if (samples < n * n) {
    throw InvalidInput("verify_optimality: need at least N^2 samples");
  }

  Rng rng(seed);
  std::vector<Ket> vectors;
  vectors.reserve(samples);
  for (std::size_t s = 0; s < samples; ++s) {
    Ket phi = gaussian_ket(n, rng);
    if (mode == GammaSampling::RealFirstForm) {
      for (std::size_t k = 0; k < n; ++k) phi[k] = phi[k].real();
    }
    phi = phi.normalized();
    const Ket tphi = theta_ket(sys, phi);
    const bool first_form = mode == GammaSampling::RealFirstForm || s % 2 == 0;
    vectors.push_back(first_form ? tensor_product(phi, tphi) : tensor_product(tphi, phi));
  }

  OptimalityReport rep;
  rep.n = n;
  rep.samples = samples;
  rep.full_rank = n * n;
  rep.rank = span_rank(vectors);
  rep.invariance_residual =
      max_abs_diff(apply_local_map(w.matrix, Dims{n, n}, OperatorMap(MapKind::TimeReversal, n)), w.matrix);
  rep.theta2_invariant = rep.invariance_residual <= tol;
  return rep;
}

}  // namespace phimap
