#include "phimap/spin.hpp"

#include <array>
#include <cmath>
#include <cstdlib>
#include <map>
#include <mutex>

namespace phimap {

SpinSystem::SpinSystem(int two_j) : two_j_(two_j) {
  if (two_j < 0) throw InvalidInput("SpinSystem: negative spin");
}

SpinSystem SpinSystem::from_dimension(std::size_t n) {
  if (n == 0) throw InvalidInput("SpinSystem: dimension must be positive");
  return SpinSystem(static_cast<int>(n) - 1);
}

std::size_t SpinSystem::index_of(int two_m) const {
  if (std::abs(two_m) > two_j_ || (two_j_ - two_m) % 2 != 0) {
    throw InvalidInput("SpinSystem::index_of: m out of range");
  }
  return static_cast<std::size_t>((two_j_ - two_m) / 2);
}

void SpinSystem::require_even(const char* who) const {
  if (!even()) {
    throw UnsupportedDimension(std::string(who) + ": requires even N, got N = " +
                               std::to_string(dim()));
  }
}

ComplexMatrix build_V(const SpinSystem& sys) {
  sys.require_even("build_V");
  const std::size_t n = sys.dim();
  ComplexMatrix v(n, n);
  // Column c is |j, m> with j - m = c; it maps to row index of -m, i.e. n-1-c.
  for (std::size_t c = 0; c < n; ++c) v(n - 1 - c, c) = (c % 2 == 0) ? 1.0 : -1.0;
  return v;
}

Ket theta_ket(const SpinSystem& sys, const Ket& phi) {
  sys.require_even("theta_ket");
  const std::size_t n = sys.dim();
  if (phi.dim() != n) throw InvalidInput("theta_ket: ket dimension does not match spin system");
  Ket out(n);
  for (std::size_t c = 0; c < n; ++c) {
    out[n - 1 - c] = ((c % 2 == 0) ? 1.0 : -1.0) * std::conj(phi[c]);
  }
  return out;
}

// ------------------------------------------------------------ Clebsch-Gordan

namespace {

constexpr int kMaxFactorial = 256;

const std::array<double, kMaxFactorial + 1>& log_factorials() {
  static const auto table = [] {
    std::array<double, kMaxFactorial + 1> t{};
    t[0] = 0.0;
    for (int i = 1; i <= kMaxFactorial; ++i) t[i] = t[i - 1] + std::log(static_cast<double>(i));
    return t;
  }();
  return table;
}

double log_fact(int n) {
  if (n < 0 || n > kMaxFactorial) throw InvalidInput("clebsch_gordan: factorial out of range");
  return log_factorials()[static_cast<std::size_t>(n)];
}

bool valid_projection(int two_j, int two_m) {
  return two_j >= 0 && std::abs(two_m) <= two_j && (two_j + two_m) % 2 == 0;
}

}  // namespace

double clebsch_gordan(int two_j1, int two_m1, int two_j2, int two_m2, int two_J, int two_M) {
  if (!valid_projection(two_j1, two_m1) || !valid_projection(two_j2, two_m2) ||
      !valid_projection(two_J, two_M)) {
    throw InvalidInput("clebsch_gordan: projection quantum number out of range");
  }
  if (two_J < std::abs(two_j1 - two_j2) || two_J > two_j1 + two_j2 ||
      (two_j1 + two_j2 + two_J) % 2 != 0) {
    throw InvalidInput("clebsch_gordan: J violates the triangle rule");
  }
  if (two_M != two_m1 + two_m2) return 0.0;

  // Integer arguments of Racah's formula.
  const int a = (two_J + two_j1 - two_j2) / 2;  // J + j1 - j2
  const int b = (two_J - two_j1 + two_j2) / 2;  // J - j1 + j2
  const int c = (two_j1 + two_j2 - two_J) / 2;  // j1 + j2 - J
  const int d = (two_j1 + two_j2 + two_J) / 2 + 1;
  const int jpm = (two_J + two_M) / 2;
  const int jmm = (two_J - two_M) / 2;
  const int j1m = (two_j1 - two_m1) / 2;
  const int j1p = (two_j1 + two_m1) / 2;
  const int j2m = (two_j2 - two_m2) / 2;
  const int j2p = (two_j2 + two_m2) / 2;
  const int e = (two_J - two_j2 + two_m1) / 2;  // J - j2 + m1
  const int f = (two_J - two_j1 - two_m2) / 2;  // J - j1 - m2

  const double log_pref =
      0.5 * (std::log(two_J + 1.0) + log_fact(a) + log_fact(b) + log_fact(c) - log_fact(d) +
             log_fact(jpm) + log_fact(jmm) + log_fact(j1m) + log_fact(j1p) + log_fact(j2m) +
             log_fact(j2p));

  const int k_min = std::max({0, -e, -f});
  const int k_max = std::min({c, j1m, j2p});
  double sum = 0.0;
  for (int k = k_min; k <= k_max; ++k) {
    const double log_den = log_fact(k) + log_fact(c - k) + log_fact(j1m - k) +
                           log_fact(j2p - k) + log_fact(e + k) + log_fact(f + k);
    const double term = std::exp(log_pref - log_den);
    sum += (k % 2 == 0) ? term : -term;
  }
  return sum;
}

double clebsch_gordan(const SpinSystem& sys, int two_m1, int two_m2, int J, int two_M) {
  return clebsch_gordan(sys.two_j(), two_m1, sys.two_j(), two_m2, 2 * J, two_M);
}

Ket coupled_state(const SpinSystem& sys, int J, int two_M) {
  const std::size_t n = sys.dim();
  Ket out(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    const int two_m1 = sys.two_m(i);
    const int two_m2 = two_M - two_m1;
    if (std::abs(two_m2) > sys.two_j()) continue;
    out[i * n + sys.index_of(two_m2)] = clebsch_gordan(sys, two_m1, two_m2, J, two_M);
  }
  return out;
}

// ------------------------------------------------------------ projectors

namespace {

TotalSpinDecomposition build_decomposition(const SpinSystem& sys) {
  const std::size_t n = sys.dim();
  TotalSpinDecomposition dec;
  dec.two_j = sys.two_j();
  for (int J = 0; J <= sys.two_j(); ++J) {
    ComplexMatrix p(n * n, n * n);
    for (int two_M = -2 * J; two_M <= 2 * J; two_M += 2) {
      p += ComplexMatrix::projector(coupled_state(sys, J, two_M));
    }
    dec.projectors.push_back(std::move(p));
  }
  return dec;
}

}  // namespace

std::shared_ptr<const TotalSpinDecomposition> total_spin_projectors(const SpinSystem& sys) {
  static std::mutex mutex;
  static std::map<int, std::shared_ptr<const TotalSpinDecomposition>> cache;
  {
    std::lock_guard lock(mutex);
    if (auto it = cache.find(sys.two_j()); it != cache.end()) return it->second;
  }
  auto built = std::make_shared<const TotalSpinDecomposition>(build_decomposition(sys));
  std::lock_guard lock(mutex);
  return cache.emplace(sys.two_j(), std::move(built)).first->second;
}

ComplexMatrix swap_operator(const SpinSystem& sys) {
  const std::size_t n = sys.dim();
  ComplexMatrix f(n * n, n * n);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) f(b * n + a, a * n + b) = 1.0;
  }
  return f;
}

ComplexMatrix singlet_projector(const SpinSystem& sys) { return (*total_spin_projectors(sys))[0]; }

// ------------------------------------------------------------ spin matrices

ComplexMatrix spin_z(const SpinSystem& sys) {
  const std::size_t n = sys.dim();
  ComplexMatrix jz(n, n);
  for (std::size_t i = 0; i < n; ++i) jz(i, i) = 0.5 * sys.two_m(i);
  return jz;
}

namespace {

// j_+ |j,m> = sqrt(j(j+1) - m(m+1)) |j,m+1>; index i-1 holds m+1.
ComplexMatrix raising(const SpinSystem& sys) {
  const std::size_t n = sys.dim();
  const double j = 0.5 * sys.two_j();
  ComplexMatrix jp(n, n);
  for (std::size_t i = 1; i < n; ++i) {
    const double m = 0.5 * sys.two_m(i);
    jp(i - 1, i) = std::sqrt(j * (j + 1.0) - m * (m + 1.0));
  }
  return jp;
}

}  // namespace

ComplexMatrix spin_x(const SpinSystem& sys) {
  const ComplexMatrix jp = raising(sys);
  return 0.5 * (jp + jp.adjoint());
}

ComplexMatrix spin_y(const SpinSystem& sys) {
  const ComplexMatrix jp = raising(sys);
  return cplx{0.0, -0.5} * (jp - jp.adjoint());
}

}  // namespace phimap
