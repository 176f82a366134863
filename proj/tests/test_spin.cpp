#include <thread>

#include "doctest.h"
#include "phimap/spin.hpp"
#include "test_helpers.hpp"

using namespace phimap;

namespace {

const cplx I{0.0, 1.0};

struct TotalSpinOps {
  ComplexMatrix jz;
  ComplexMatrix jplus;
  ComplexMatrix j2;
};

// Total spin operators of two spin-j particles, built from single-particle
// spin matrices (oracle route; production projectors use Clebsch-Gordan).
TotalSpinOps total_spin_ops(const SpinSystem& sys) {
  const auto id = ComplexMatrix::identity(sys.dim());
  auto lift = [&](const ComplexMatrix& a) { return tensor_product(a, id) + tensor_product(id, a); };
  const auto jx = lift(spin_x(sys));
  const auto jy = lift(spin_y(sys));
  const auto jz = lift(spin_z(sys));
  return {jz, jx + I * jy, jx * jx + jy * jy + jz * jz};
}

ComplexMatrix oracle_projector(const TotalSpinOps& ops, int J) {
  const auto spec = hermitian_eigen(ops.j2);
  const double target = J * (J + 1.0);
  ComplexMatrix p(ops.j2.rows(), ops.j2.cols());
  for (std::size_t k = 0; k < spec.eigenvalues.size(); ++k) {
    if (std::abs(spec.eigenvalues[k] - target) < 1e-6) p += ComplexMatrix::projector(spec.eigenvectors[k]);
  }
  return p;
}

// Highest-weight state from diagonalizing J^2 inside the M = J sector, sign
// fixed by the Condon-Shortley rule, then lowered with J_-.
std::vector<Ket> oracle_multiplet(const SpinSystem& sys, const TotalSpinOps& ops, int J) {
  const std::size_t n = sys.dim();
  std::vector<std::size_t> sector;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      if (sys.two_m(a) + sys.two_m(b) == 2 * J) sector.push_back(a * n + b);
    }
  }
  ComplexMatrix sub(sector.size(), sector.size());
  for (std::size_t r = 0; r < sector.size(); ++r) {
    for (std::size_t c = 0; c < sector.size(); ++c) sub(r, c) = ops.j2(sector[r], sector[c]);
  }
  const auto spec = hermitian_eigen(sub);
  Ket top(n * n);
  for (std::size_t k = 0; k < spec.eigenvalues.size(); ++k) {
    if (std::abs(spec.eigenvalues[k] - J * (J + 1.0)) < 1e-6) {
      for (std::size_t r = 0; r < sector.size(); ++r) top[sector[r]] = spec.eigenvectors[k][r];
    }
  }
  // Component with m1 = +j (product index 0 * n + b) must be real positive.
  cplx lead = 0.0;
  for (std::size_t b = 0; b < n; ++b) {
    if (top[b] != cplx{0.0}) lead = top[b];
  }
  top *= std::abs(lead) / lead;

  std::vector<Ket> out{top};
  const auto jminus = ops.jplus.adjoint();
  for (int two_M = 2 * J; two_M > -2 * J; two_M -= 2) {
    const double M = 0.5 * two_M;
    Ket next = jminus * out.back();
    next *= 1.0 / std::sqrt(J * (J + 1.0) - M * (M - 1.0));
    out.push_back(std::move(next));
  }
  return out;
}

}  // namespace

TEST_CASE("basis ordering") {
  const SpinSystem sys(3);
  CHECK(kBasisMDescending);
  CHECK(sys.dim() == 4);
  CHECK(sys.two_m(0) == 3);
  CHECK(sys.two_m(3) == -3);
  CHECK(sys.index_of(-1) == 2);
  CHECK_THROWS_AS(sys.index_of(0), InvalidInput);
}

TEST_CASE("build_V") {
  CHECK(build_V(SpinSystem(1)) == ComplexMatrix{{0, -1}, {1, 0}});
  const auto v4 = build_V(SpinSystem(3));
  const double expected[] = {-1, 1, -1, 1};
  for (std::size_t r = 0; r < 4; ++r) CHECK(v4(r, 3 - r) == cplx{expected[r]});
  CHECK_THROWS_AS(build_V(SpinSystem::from_dimension(3)), UnsupportedDimension);

  for (std::size_t n : {2, 4, 6, 8, 10}) {
    const auto v = build_V(SpinSystem::from_dimension(n));
    CHECK(max_abs_diff(v.adjoint() * v, ComplexMatrix::identity(n)) <= 1e-12);
    CHECK(max_abs_diff(v.transpose(), -1.0 * v) <= 1e-12);
  }
}

TEST_CASE("theta_ket") {
  const SpinSystem sys(5);
  for (std::size_t i = 0; i < sys.dim(); ++i) {
    // theta |j,m> = (-1)^(j-m) |j,-m>, j - m = i.
    const Ket t = theta_ket(sys, Ket::basis(6, i));
    CHECK(t[5 - i] == cplx{i % 2 == 0 ? 1.0 : -1.0});
  }
  CHECK_THROWS_AS(theta_ket(sys, Ket(4)), InvalidInput);
  CHECK_THROWS_AS(theta_ket(SpinSystem(2), Ket(3)), UnsupportedDimension);

  Rng rng(41);
  for (std::size_t n : {2, 4, 6, 8, 10}) {
    const auto s = SpinSystem::from_dimension(n);
    for (int trial = 0; trial < 100; ++trial) {
      const Ket phi = random_unit_ket(n, rng);
      const Ket tt = theta_ket(s, theta_ket(s, phi));
      CHECK((tt + phi).norm() <= 1e-12);
      CHECK(std::abs(inner(phi, theta_ket(s, phi))) <= 1e-12);
    }
  }
}

TEST_CASE("clebsch_gordan") {
  SUBCASE("spin-1/2 singlet") {
    CHECK(clebsch_gordan(1, 1, 1, -1, 0, 0) == doctest::Approx(1.0 / std::sqrt(2.0)));
    CHECK(clebsch_gordan(1, -1, 1, 1, 0, 0) == doctest::Approx(-1.0 / std::sqrt(2.0)));
  }
  SUBCASE("stretched state") {
    for (int two_j = 1; two_j <= 9; two_j += 2) {
      CHECK(clebsch_gordan(SpinSystem(two_j), two_j, two_j, two_j, 2 * two_j) == doctest::Approx(1.0));
    }
  }
  SUBCASE("zero unless M = m1 + m2") { CHECK(clebsch_gordan(3, 1, 3, 1, 2, 0) == 0.0); }
  SUBCASE("range errors") {
    CHECK_THROWS_AS(clebsch_gordan(1, 3, 1, 1, 2, 4), InvalidInput);
    CHECK_THROWS_AS(clebsch_gordan(1, 1, 1, 1, 4, 2), InvalidInput);
    CHECK_THROWS_AS(clebsch_gordan(1, 1, 1, 1, 2, 4), InvalidInput);
  }
  SUBCASE("normalization per (J, M)") {
    for (int two_j : {1, 3, 5, 7, 9}) {
      const SpinSystem sys(two_j);
      for (int J = 0; J <= two_j; ++J) {
        for (int two_M = -2 * J; two_M <= 2 * J; two_M += 2) {
          double s = 0.0;
          for (int m1 = -two_j; m1 <= two_j; m1 += 2) {
            const int m2 = two_M - m1;
            if (std::abs(m2) <= two_j) s += std::pow(clebsch_gordan(sys, m1, m2, J, two_M), 2);
          }
          CHECK(s == doctest::Approx(1.0).epsilon(1e-12));
        }
      }
    }
  }
  SUBCASE("coupling matrix is orthogonal") {
    for (int two_j : {1, 3, 5, 7}) {
      const SpinSystem sys(two_j);
      std::vector<Ket> cols;
      for (int J = 0; J <= two_j; ++J) {
        for (int two_M = -2 * J; two_M <= 2 * J; two_M += 2) cols.push_back(coupled_state(sys, J, two_M));
      }
      const std::size_t d = cols.size();
      REQUIRE(d == sys.dim() * sys.dim());
      double worst = 0.0;
      for (std::size_t a = 0; a < d; ++a) {
        for (std::size_t b = 0; b < d; ++b) {
          worst = std::max(worst, std::abs(inner(cols[a], cols[b]) - (a == b ? 1.0 : 0.0)));
        }
      }
      CHECK(worst <= 1e-10);
    }
  }
  SUBCASE("agrees with J^2 diagonalization plus lowering") {
    for (int two_j : {1, 3, 5}) {
      const SpinSystem sys(two_j);
      const auto ops = total_spin_ops(sys);
      for (int J = 0; J <= two_j; ++J) {
        const auto multiplet = oracle_multiplet(sys, ops, J);
        for (std::size_t k = 0; k < multiplet.size(); ++k) {
          const int two_M = 2 * J - 2 * static_cast<int>(k);
          const Ket cg = coupled_state(sys, J, two_M);
          CHECK((cg - multiplet[k]).norm() <= 1e-10);
        }
      }
    }
  }
}

TEST_CASE("total_spin_projectors") {
  for (int two_j : {1, 3, 5, 7}) {
    const SpinSystem sys(two_j);
    const auto dec = total_spin_projectors(sys);
    const std::size_t d = sys.dim() * sys.dim();
    REQUIRE(dec->projectors.size() == static_cast<std::size_t>(two_j + 1));
    ComplexMatrix sum(d, d);
    for (int J = 0; J <= two_j; ++J) {
      const auto& p = (*dec)[J];
      CHECK(max_abs_diff(p * p, p) <= 1e-10);
      CHECK(max_abs_diff(p.adjoint(), p) <= 1e-10);
      CHECK(p.trace().real() == doctest::Approx(2 * J + 1.0).epsilon(1e-8));
      for (int K = J + 1; K <= two_j; ++K) CHECK((p * (*dec)[K]).max_abs() <= 1e-10);
      sum += p;
    }
    CHECK(max_abs_diff(sum, ComplexMatrix::identity(d)) <= 1e-10);
  }
  SUBCASE("ranks") {
    const auto half = total_spin_projectors(SpinSystem(1));
    CHECK(half->projectors[0].trace().real() == doctest::Approx(1.0));
    CHECK(half->projectors[1].trace().real() == doctest::Approx(3.0));
  }
  SUBCASE("J^2 eigenprojector oracle") {
    for (int two_j : {1, 3, 5, 7}) {
      const SpinSystem sys(two_j);
      const auto ops = total_spin_ops(sys);
      const auto dec = total_spin_projectors(sys);
      for (int J = 0; J <= two_j; ++J) CHECK(max_abs_diff((*dec)[J], oracle_projector(ops, J)) <= 1e-9);
    }
  }
  SUBCASE("memo is shared and safe under concurrent readers") {
    std::vector<std::shared_ptr<const TotalSpinDecomposition>> seen(8);
    std::vector<std::thread> threads;
    for (std::size_t t = 0; t < seen.size(); ++t) {
      threads.emplace_back([&seen, t] { seen[t] = total_spin_projectors(SpinSystem(9)); });
    }
    for (auto& th : threads) th.join();
    for (const auto& p : seen) CHECK(p.get() == seen.front().get());
  }
}

TEST_CASE("swap_operator") {
  Rng rng(43);
  for (std::size_t n : {2, 4, 6}) {
    const auto sys = SpinSystem::from_dimension(n);
    const auto f = swap_operator(sys);
    CHECK(f.trace().real() == doctest::Approx(static_cast<double>(n)));
    CHECK(max_abs_diff(f * f, ComplexMatrix::identity(n * n)) == 0.0);
    const Ket a = gaussian_ket(n, rng);
    const Ket b = gaussian_ket(n, rng);
    CHECK((f * tensor_product(a, b) - tensor_product(b, a)).norm() <= 1e-12);

    const auto dec = total_spin_projectors(sys);
    ComplexMatrix alt(n * n, n * n);
    for (int J = 0; J <= dec->max_J(); ++J) alt += (J % 2 == 1 ? 1.0 : -1.0) * (*dec)[J];
    CHECK(max_abs_diff(f, alt) <= 1e-10);
  }
}

TEST_CASE("singlet_projector") {
  for (std::size_t n : {2, 4, 6, 8}) {
    const auto sys = SpinSystem::from_dimension(n);
    const auto p0 = singlet_projector(sys);
    CHECK(max_abs_diff(p0 * p0, p0) <= 1e-12);
    CHECK(p0.trace().real() == doctest::Approx(1.0));
    CHECK(max_abs_diff(swap_operator(sys) * p0, -1.0 * p0) <= 1e-12);
  }
}
