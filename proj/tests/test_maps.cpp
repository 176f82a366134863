#include "doctest.h"
#include "phimap/maps.hpp"
#include "test_helpers.hpp"

using namespace phimap;
using phimap::testing::random_hermitian;
using phimap::testing::random_matrix;

TEST_CASE("time_reversal_op") {
  Rng rng(51);
  for (std::size_t n : {2, 4, 6, 8}) {
    const auto sys = SpinSystem::from_dimension(n);
    const auto v = build_V(sys);
    CHECK(max_abs_diff(time_reversal_op(n, ComplexMatrix::identity(n)), ComplexMatrix::identity(n)) == 0.0);
    // Spin flip: every component of the spin vector changes sign.
    CHECK(max_abs_diff(time_reversal_op(n, spin_z(sys)), -1.0 * spin_z(sys)) <= 1e-14);
    CHECK(max_abs_diff(time_reversal_op(n, spin_x(sys)), -1.0 * spin_x(sys)) <= 1e-14);
    CHECK(max_abs_diff(time_reversal_op(n, spin_y(sys)), -1.0 * spin_y(sys)) <= 1e-14);
    for (int trial = 0; trial < 10; ++trial) {
      const auto b = random_matrix(n, rng);
      CHECK(max_abs_diff(time_reversal_op(n, time_reversal_op(n, b)), b) <= 1e-14);
      CHECK(max_abs_diff(time_reversal_op(n, b), v * transpose_op(n, b) * v.adjoint()) <= 1e-14);
    }
  }
  CHECK_THROWS_AS(time_reversal_op(3, ComplexMatrix::identity(3)), UnsupportedDimension);
  CHECK_THROWS_AS(OperatorMap(MapKind::TimeReversal, 5), UnsupportedDimension);
  CHECK_THROWS_AS(time_reversal_op(4, ComplexMatrix::identity(3)), InvalidInput);
}

TEST_CASE("reduction_op") {
  Rng rng(53);
  const std::size_t n = 5;
  CHECK(max_abs_diff(reduction_op(n, ComplexMatrix::identity(n)), 4.0 * ComplexMatrix::identity(n)) == 0.0);
  const Ket phi = random_unit_ket(n, rng);
  const auto img = reduction_op(n, ComplexMatrix::projector(phi));
  CHECK(max_abs_diff(img, ComplexMatrix::identity(n) - ComplexMatrix::projector(phi)) <= 1e-14);
  CHECK(min_eigenvalue(img) >= -1e-12);
  const auto b = random_matrix(n, rng);
  CHECK(std::abs(reduction_op(n, b).trace() - 4.0 * b.trace()) <= 1e-12);
}

TEST_CASE("phi_op") {
  Rng rng(59);
  SUBCASE("identity and decomposition") {
    for (std::size_t n : {4, 6, 8}) {
      CHECK(max_abs_diff(phi_op(n, ComplexMatrix::identity(n)), (n - 2.0) * ComplexMatrix::identity(n)) <= 1e-14);
      const auto b = random_matrix(n, rng);
      CHECK(max_abs_diff(phi_op(n, b), reduction_op(n, b) - time_reversal_op(n, b)) <= 1e-14);
    }
  }
  SUBCASE("image of a pure state is the complement of a rank-2 projector") {
    for (std::size_t n : {4, 6, 8}) {
      const auto sys = SpinSystem::from_dimension(n);
      for (int trial = 0; trial < 20; ++trial) {
        const Ket phi = random_unit_ket(n, rng);
        const auto img = phi_op(n, ComplexMatrix::projector(phi));
        const auto pi = ComplexMatrix::identity(n) - img;
        CHECK(max_abs_diff(pi * pi, pi) <= 1e-12);
        CHECK(pi.trace().real() == doctest::Approx(2.0));
        const auto expected = ComplexMatrix::projector(phi) + ComplexMatrix::projector(theta_ket(sys, phi));
        CHECK(max_abs_diff(pi, expected) <= 1e-12);
      }
    }
  }
  SUBCASE("positivity on 1000 random pure states") {
    for (std::size_t n : {4, 6, 8}) {
      double worst = 1.0;
      for (int trial = 0; trial < 1000; ++trial) {
        worst = std::min(worst, min_eigenvalue(phi_op(n, ComplexMatrix::projector(random_unit_ket(n, rng)))));
      }
      CHECK(worst >= -1e-10);
    }
  }
  SUBCASE("N = 2 is the zero map") {
    OperatorMap phi2(MapKind::Phi, 2);
    CHECK(phi2.trivially_zero());
    for (int trial = 0; trial < 10; ++trial) CHECK(phi_op(2, random_matrix(2, rng)).max_abs() <= 1e-14);
  }
  SUBCASE("Phi after time reversal is Phi") {
    for (std::size_t n : {4, 6}) {
      const auto b = random_matrix(n, rng);
      CHECK(max_abs_diff(phi_op(n, time_reversal_op(n, b)), phi_op(n, b)) <= 1e-12);
    }
  }
  CHECK_THROWS_AS(phi_op(5, ComplexMatrix::identity(5)), UnsupportedDimension);
}

TEST_CASE("transpose_op") {
  const ComplexMatrix sym{{1, 2}, {2, 3}};
  CHECK(transpose_op(2, sym) == sym);
  const auto e = ComplexMatrix::outer(Ket::basis(4, 0), Ket::basis(4, 2));
  CHECK(transpose_op(4, e) == ComplexMatrix::outer(Ket::basis(4, 2), Ket::basis(4, 0)));
}

TEST_CASE("maps are linear and self-dual") {
  Rng rng(61);
  std::normal_distribution<double> normal;
  for (MapKind kind : {MapKind::Identity, MapKind::Transpose, MapKind::TimeReversal, MapKind::Reduction, MapKind::Phi}) {
    CAPTURE(to_string(kind));
    const std::size_t n = 6;
    const OperatorMap map(kind, n);
    for (int trial = 0; trial < 10; ++trial) {
      const auto a = random_matrix(n, rng);
      const auto b = random_matrix(n, rng);
      const cplx alpha(normal(rng), normal(rng));
      const cplx beta(normal(rng), normal(rng));
      CHECK(max_abs_diff(map(alpha * a + beta * b), alpha * map(a) + beta * map(b)) <= 1e-12);

      const auto ha = random_hermitian(n, rng);
      const auto hb = random_hermitian(n, rng);
      CHECK(std::abs((map(ha) * hb).trace() - (ha * map(hb)).trace()) <= 1e-11);
    }
  }
}
