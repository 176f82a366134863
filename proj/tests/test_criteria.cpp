#include "doctest.h"
#include "phimap/criteria.hpp"
#include "phimap/spin.hpp"
#include "phimap/states.hpp"
#include "test_helpers.hpp"

using namespace phimap;

namespace {

DensityState singlet(std::size_t n) {
  return DensityState(singlet_projector(SpinSystem::from_dimension(n)), Dims{n, n});
}

DensityState product_pure(Dims dims, Rng& rng) {
  const Ket k = tensor_product(random_unit_ket(dims.d1, rng), random_unit_ket(dims.d2, rng));
  return DensityState(ComplexMatrix::projector(k), dims);
}

}  // namespace

TEST_CASE("DensityState validation") {
  CHECK_THROWS_AS(DensityState(ComplexMatrix::identity(4), Dims{2, 2}), InvalidInput);  // trace 4
  CHECK_THROWS_AS(DensityState(0.25 * ComplexMatrix::identity(4), Dims{2, 3}), InvalidInput);
  CHECK_THROWS_AS(DensityState(ComplexMatrix{{0.5, 1.0}, {0.0, 0.5}}, Dims{1, 2}), InvalidInput);
  CHECK_THROWS_AS(DensityState(ComplexMatrix::diagonal(std::vector<double>{1.5, -0.5}), Dims{2, 1}), InvalidInput);
  CHECK_NOTHROW(DensityState(0.25 * ComplexMatrix::identity(4), Dims{2, 2}));
}

TEST_CASE("realign index convention") {
  // For a product A (x) B the realigned matrix is vec(A) vec(B)^T.
  Rng rng(71);
  const auto a = gaussian_matrix(2, 2, rng);
  const auto b = gaussian_matrix(3, 3, rng);
  const auto r = realign(tensor_product(a, b), Dims{2, 3});
  REQUIRE(r.rows() == 4);
  REQUIRE(r.cols() == 9);
  for (std::size_t i = 0; i < 2; ++i) {
    for (std::size_t j = 0; j < 2; ++j) {
      for (std::size_t k = 0; k < 3; ++k) {
        for (std::size_t l = 0; l < 3; ++l) CHECK(std::abs(r(i * 2 + j, k * 3 + l) - a(i, j) * b(k, l)) <= 1e-14);
      }
    }
  }
}

TEST_CASE("singlet scores") {
  const auto p0 = singlet(4);
  const auto ppt = ppt_check(p0);
  CHECK(ppt.verdict == Verdict::Entangled);
  CHECK(ppt.score == doctest::Approx(-0.25).epsilon(1e-12));

  const auto red = reduction_check(p0);
  CHECK(red.side2.verdict == Verdict::Entangled);
  CHECK(red.side2.score == doctest::Approx(0.25 - 1.0).epsilon(1e-12));

  const auto re = realignment_check(p0);
  CHECK(re.verdict == Verdict::Entangled);
  CHECK(re.score == doctest::Approx(3.0).epsilon(1e-12));

  const auto maj = majorization_check(p0);
  CHECK(maj.verdict == Verdict::Entangled);
  CHECK(maj.score == doctest::Approx(0.75).epsilon(1e-12));
}

TEST_CASE("product states are never flagged") {
  Rng rng(73);
  for (Dims dims : {Dims{2, 2}, Dims{3, 4}, Dims{4, 4}, Dims{2, 6}}) {
    for (int trial = 0; trial < 10; ++trial) {
      const auto rho = product_pure(dims, rng);
      for (const auto& r : analyze(rho)) {
        CAPTURE(to_string(r.criterion));
        CHECK(r.verdict == Verdict::Inconclusive);
        if (r.skipped) continue;
        if (r.criterion == Criterion::Realignment || r.criterion == Criterion::Majorization) {
          CHECK(std::abs(r.score) <= 1e-12);
        } else {
          CHECK(r.score >= -1e-12);
        }
      }
    }
  }
}

TEST_CASE("family boundaries") {
  for (std::size_t n : {4, 6, 8}) {
    CAPTURE(n);
    const double ppt_edge = 1.0 / (n + 2.0);
    const double red_edge = 1.0 / n;
    CHECK(std::abs(ppt_check(family_state(n, ppt_edge).state).score) <= 1e-9);
    CHECK(std::abs(reduction_check(family_state(n, red_edge).state).side2.score) <= 1e-9);
    CHECK(std::abs(realignment_check(family_state(n, red_edge).state).score) <= 1e-9);
    CHECK(std::abs(majorization_check(family_state(n, red_edge).state).score) <= 1e-9);

    for (double lambda : {0.0, 0.01, 0.05, 0.1, 0.3, 1.0}) {
      const auto p = family_state(n, lambda);
      const auto phi = phi_check(p.state);
      CHECK(phi.score <= -lambda * (n - 2.0) / n + 1e-10);
      CHECK((phi.verdict == Verdict::Entangled) == (lambda > 0.0));
    }
  }
}

TEST_CASE("analyze verdicts on the family") {
  const auto at01 = analyze(family_state(4, 0.1).state);
  REQUIRE(at01.size() == 6);
  CHECK(at01[0].criterion == Criterion::PPT);
  CHECK(at01[0].verdict == Verdict::Inconclusive);
  CHECK(at01[3].criterion == Criterion::Phi);
  CHECK(at01[3].verdict == Verdict::Entangled);

  const auto at02 = analyze(family_state(4, 0.2).state);
  CHECK(at02[0].verdict == Verdict::Entangled);
  CHECK(at02[1].verdict == Verdict::Inconclusive);
  CHECK(at02[2].verdict == Verdict::Inconclusive);

  for (const auto& r : analyze(DensityState((1.0 / 16) * ComplexMatrix::identity(16), Dims{4, 4}))) {
    CHECK(r.verdict == Verdict::Inconclusive);
  }
}

TEST_CASE("analyze skips Phi where undefined") {
  Rng rng(79);
  for (Dims dims : {Dims{3, 3}, Dims{4, 2}, Dims{2, 5}}) {
    const auto rho = random_state(dims, Ensemble{EnsembleKind::GinibreMixed}, 3);
    const auto reps = analyze(rho);
    CHECK(reps[3].criterion == Criterion::Phi);
    CHECK(reps[3].skipped);
    CHECK(reps[3].detail.rfind("skipped: unsupported dimension", 0) == 0);
    CHECK_THROWS_AS(phi_check(rho), UnsupportedDimension);
  }
}

TEST_CASE("PPT verdict independent of transpose vs time reversal") {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto ens = seed % 2 == 0 ? Ensemble{EnsembleKind::GinibreMixed} : Ensemble{EnsembleKind::PureHaar};
    const auto rho = random_state(Dims{3, 4}, ens, seed);
    const auto t = ppt_check(rho, kDefaultTolerance, PptRoute::Transpose);
    const auto v = ppt_check(rho, kDefaultTolerance, PptRoute::TimeReversal);
    CHECK(t.verdict == v.verdict);
    CHECK(t.score == doctest::Approx(v.score).epsilon(1e-10));
  }
  CHECK_THROWS_AS(ppt_check(random_state(Dims{2, 3}, {}, 1), kDefaultTolerance, PptRoute::TimeReversal),
                  UnsupportedDimension);
}

TEST_CASE("no criterion fires on explicit separable mixtures") {
  std::size_t fired = 0;
  double worst_phi = 1.0;
  for (std::uint64_t i = 0; i < 500; ++i) {
    const auto rho = random_state(Dims{4, 4}, Ensemble{EnsembleKind::SeparableMixture, 10}, 2024, i);
    for (const auto& r : analyze(rho)) {
      if (r.verdict == Verdict::Entangled) ++fired;
      if (r.criterion == Criterion::Phi) worst_phi = std::min(worst_phi, r.score);
    }
  }
  CHECK(fired == 0);
  CHECK(worst_phi >= -1e-10);
}
