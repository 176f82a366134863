#include "phimap/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace phimap {

// ---------------------------------------------------------------- Ket

Ket::Ket(std::vector<cplx> amps) : amps_(std::move(amps)) {}

Ket Ket::basis(std::size_t dim, std::size_t index) {
  if (index >= dim) throw InvalidInput("Ket::basis: index out of range");
  Ket k(dim);
  k.amps_[index] = 1.0;
  return k;
}

double Ket::norm() const {
  double s = 0.0;
  for (const auto& a : amps_) s += std::norm(a);
  return std::sqrt(s);
}

Ket Ket::normalized() const {
  const double n = norm();
  if (n == 0.0) throw InvalidInput("Ket::normalized: zero vector");
  Ket out = *this;
  out *= 1.0 / n;
  return out;
}

Ket Ket::conj() const {
  Ket out = *this;
  for (auto& a : out.amps_) a = std::conj(a);
  return out;
}

Ket& Ket::operator+=(const Ket& o) {
  if (dim() != o.dim()) throw InvalidInput("Ket: dimension mismatch");
  for (std::size_t i = 0; i < amps_.size(); ++i) amps_[i] += o.amps_[i];
  return *this;
}

Ket& Ket::operator-=(const Ket& o) {
  if (dim() != o.dim()) throw InvalidInput("Ket: dimension mismatch");
  for (std::size_t i = 0; i < amps_.size(); ++i) amps_[i] -= o.amps_[i];
  return *this;
}

Ket& Ket::operator*=(cplx s) {
  for (auto& a : amps_) a *= s;
  return *this;
}

Ket operator+(Ket a, const Ket& b) { return a += b; }
Ket operator-(Ket a, const Ket& b) { return a -= b; }
Ket operator*(cplx s, Ket a) { return a *= s; }

cplx inner(const Ket& a, const Ket& b) {
  if (a.dim() != b.dim()) throw InvalidInput("inner: dimension mismatch");
  cplx s = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) s += std::conj(a[i]) * b[i];
  return s;
}

Ket tensor_product(const Ket& a, const Ket& b) {
  Ket out(a.dim() * b.dim());
  for (std::size_t i = 0; i < a.dim(); ++i) {
    for (std::size_t k = 0; k < b.dim(); ++k) out[i * b.dim() + k] = a[i] * b[k];
  }
  return out;
}

// ---------------------------------------------------------------- ComplexMatrix

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<cplx>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw InvalidInput("ComplexMatrix: ragged initializer");
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const double> values) {
  ComplexMatrix m(values.size(), values.size());
  for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
  return m;
}

ComplexMatrix ComplexMatrix::outer(const Ket& a, const Ket& b) {
  ComplexMatrix m(a.dim(), b.dim());
  for (std::size_t i = 0; i < a.dim(); ++i) {
    for (std::size_t j = 0; j < b.dim(); ++j) m(i, j) = a[i] * std::conj(b[j]);
  }
  return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix m(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) m(j, i) = std::conj((*this)(i, j));
  }
  return m;
}

ComplexMatrix ComplexMatrix::transpose() const {
  ComplexMatrix m(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) m(j, i) = (*this)(i, j);
  }
  return m;
}

ComplexMatrix ComplexMatrix::conj() const {
  ComplexMatrix m = *this;
  for (auto& x : m.data_) x = std::conj(x);
  return m;
}

cplx ComplexMatrix::trace() const {
  if (!is_square()) throw InvalidInput("trace: matrix is not square");
  cplx s = 0.0;
  for (std::size_t i = 0; i < rows_; ++i) s += (*this)(i, i);
  return s;
}

double ComplexMatrix::max_abs() const {
  double m = 0.0;
  for (const auto& x : data_) m = std::max(m, std::abs(x));
  return m;
}

double ComplexMatrix::frobenius_norm() const {
  double s = 0.0;
  for (const auto& x : data_) s += std::norm(x);
  return std::sqrt(s);
}

bool ComplexMatrix::all_finite() const {
  return std::all_of(data_.begin(), data_.end(), [](const cplx& x) {
    return std::isfinite(x.real()) && std::isfinite(x.imag());
  });
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw InvalidInput("matrix shape mismatch");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw InvalidInput("matrix shape mismatch");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(cplx s) {
  for (auto& x : data_) x *= s;
  return *this;
}

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
ComplexMatrix operator*(cplx s, ComplexMatrix a) { return a *= s; }

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows()) throw InvalidInput("matmul: inner dimension mismatch");
  ComplexMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const cplx aik = a(i, k);
      if (aik == cplx{0.0, 0.0}) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
    }
  }
  return c;
}

Ket operator*(const ComplexMatrix& a, const Ket& v) {
  if (a.cols() != v.dim()) throw InvalidInput("matvec: dimension mismatch");
  Ket out(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    cplx s = 0.0;
    for (std::size_t j = 0; j < a.cols(); ++j) s += a(i, j) * v[j];
    out[i] = s;
  }
  return out;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw InvalidInput("max_abs_diff: shape mismatch");
  }
  double m = 0.0;
  for (std::size_t i = 0; i < a.entries().size(); ++i) {
    m = std::max(m, std::abs(a.entries()[i] - b.entries()[i]));
  }
  return m;
}

ComplexMatrix tensor_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const cplx aij = a(i, j);
      for (std::size_t k = 0; k < b.rows(); ++k) {
        for (std::size_t l = 0; l < b.cols(); ++l) {
          out(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
        }
      }
    }
  }
  return out;
}

namespace {

void require_bipartite_square(const ComplexMatrix& rho, Dims dims, const char* who) {
  if (dims.d1 == 0 || dims.d2 == 0 || rho.rows() != dims.total() ||
      rho.cols() != dims.total()) {
    throw InvalidInput(std::string(who) + ": matrix is not (d1*d2)-square");
  }
}

}  // namespace

ComplexMatrix partial_trace(const ComplexMatrix& rho, Dims dims, Subsystem traced) {
  require_bipartite_square(rho, dims, "partial_trace");
  const auto [d1, d2] = dims;
  if (traced == Subsystem::Second) {
    ComplexMatrix out(d1, d1);
    for (std::size_t i = 0; i < d1; ++i) {
      for (std::size_t j = 0; j < d1; ++j) {
        cplx s = 0.0;
        for (std::size_t k = 0; k < d2; ++k) s += rho(i * d2 + k, j * d2 + k);
        out(i, j) = s;
      }
    }
    return out;
  }
  ComplexMatrix out(d2, d2);
  for (std::size_t k = 0; k < d2; ++k) {
    for (std::size_t l = 0; l < d2; ++l) {
      cplx s = 0.0;
      for (std::size_t i = 0; i < d1; ++i) s += rho(i * d2 + k, i * d2 + l);
      out(k, l) = s;
    }
  }
  return out;
}

ComplexMatrix block(const ComplexMatrix& rho, Dims dims, std::size_t i, std::size_t j) {
  require_bipartite_square(rho, dims, "block");
  ComplexMatrix b(dims.d2, dims.d2);
  for (std::size_t k = 0; k < dims.d2; ++k) {
    for (std::size_t l = 0; l < dims.d2; ++l) b(k, l) = rho(i * dims.d2 + k, j * dims.d2 + l);
  }
  return b;
}

void set_block(ComplexMatrix& rho, Dims dims, std::size_t i, std::size_t j,
               const ComplexMatrix& value) {
  require_bipartite_square(rho, dims, "set_block");
  if (value.rows() != dims.d2 || value.cols() != dims.d2) {
    throw InvalidInput("set_block: block has wrong size");
  }
  for (std::size_t k = 0; k < dims.d2; ++k) {
    for (std::size_t l = 0; l < dims.d2; ++l) rho(i * dims.d2 + k, j * dims.d2 + l) = value(k, l);
  }
}

// ---------------------------------------------------------------- eigen

bool is_hermitian(const ComplexMatrix& a, double tol) {
  if (!a.is_square()) return false;
  double asym = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = i; j < a.cols(); ++j) {
      asym = std::max(asym, std::abs(a(i, j) - std::conj(a(j, i))));
    }
  }
  return asym <= tol * (1.0 + a.max_abs());
}

namespace {

double off_diagonal_norm(const ComplexMatrix& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (i != j) s += std::norm(a(i, j));
    }
  }
  return std::sqrt(s);
}

}  // namespace

HermitianSpectrum hermitian_eigen(const ComplexMatrix& input, const EigenOptions& opts) {
  if (!input.is_square()) throw InvalidInput("hermitian_eigen: matrix is not square");
  if (!input.all_finite()) throw InvalidInput("hermitian_eigen: non-finite entries");
  if (!is_hermitian(input, opts.hermitian_tol)) {
    throw InvalidInput("hermitian_eigen: matrix is not Hermitian");
  }
  const std::size_t n = input.rows();

  // Work on the exactly Hermitian part so rounding asymmetry does not leak in.
  ComplexMatrix a(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    a(i, i) = input(i, i).real();
    for (std::size_t j = i + 1; j < n; ++j) {
      a(i, j) = 0.5 * (input(i, j) + std::conj(input(j, i)));
      a(j, i) = std::conj(a(i, j));
    }
  }
  ComplexMatrix v = opts.vectors ? ComplexMatrix::identity(n) : ComplexMatrix();

  const double scale = a.frobenius_norm();
  int sweep = 0;
  while (off_diagonal_norm(a) > opts.convergence_tol * scale) {
    if (sweep++ >= opts.max_sweeps) {
      throw NumericalFailure("hermitian_eigen: no convergence after " +
                             std::to_string(opts.max_sweeps) + " sweeps");
    }
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const cplx apq = a(p, q);
        const double g = std::abs(apq);
        if (g == 0.0) continue;
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const double tau = (aqq - app) / (2.0 * g);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        const cplx phase_bar = std::conj(apq / g);
        // Rotation J = diag(1, conj(phase)) * [[c, s], [-s, c]] on (p, q).
        const cplx jpp = c;
        const cplx jpq = s;
        const cplx jqp = -s * phase_bar;
        const cplx jqq = c * phase_bar;

        for (std::size_t k = 0; k < n; ++k) {
          const cplx akp = a(k, p);
          const cplx akq = a(k, q);
          a(k, p) = akp * jpp + akq * jqp;
          a(k, q) = akp * jpq + akq * jqq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const cplx apk = a(p, k);
          const cplx aqk = a(q, k);
          a(p, k) = std::conj(jpp) * apk + std::conj(jqp) * aqk;
          a(q, k) = std::conj(jpq) * apk + std::conj(jqq) * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();

        if (opts.vectors) {
          for (std::size_t k = 0; k < n; ++k) {
            const cplx vkp = v(k, p);
            const cplx vkq = v(k, q);
            v(k, p) = vkp * jpp + vkq * jqp;
            v(k, q) = vkp * jpq + vkq * jqq;
          }
        }
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return a(x, x).real() < a(y, y).real();
  });

  HermitianSpectrum out;
  out.eigenvalues.reserve(n);
  for (std::size_t idx : order) {
    out.eigenvalues.push_back(a(idx, idx).real());
    if (opts.vectors) {
      Ket col(n);
      for (std::size_t k = 0; k < n; ++k) col[k] = v(k, idx);
      out.eigenvectors.push_back(std::move(col));
    }
  }
  return out;
}

std::vector<double> hermitian_eigenvalues(const ComplexMatrix& a) {
  EigenOptions opts;
  opts.vectors = false;
  return hermitian_eigen(a, opts).eigenvalues;
}

double min_eigenvalue(const ComplexMatrix& a) {
  const auto ev = hermitian_eigenvalues(a);
  if (ev.empty()) throw InvalidInput("min_eigenvalue: empty matrix");
  return ev.front();
}

// Singular values come from the Hermitian dilation [[0, A], [A^dag, 0]],
// whose spectrum is {+s_i, -s_i} plus |m - n| zeros. Unlike the eigenvalues
// of A^dag A this resolves small singular values to absolute precision
// eps * |A|, which matters for trace norms of rank-deficient matrices.
std::vector<double> singular_values(const ComplexMatrix& a) {
  if (!a.all_finite()) throw InvalidInput("singular_values: non-finite entries");
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  const std::size_t k = std::min(m, n);
  if (k == 0) return {};
  ComplexMatrix h(m + n, m + n);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      h(i, m + j) = a(i, j);
      h(m + j, i) = std::conj(a(i, j));
    }
  }
  auto ev = hermitian_eigenvalues(h);
  std::vector<double> sv(ev.rbegin(), ev.rbegin() + static_cast<std::ptrdiff_t>(k));
  for (auto& s : sv) s = std::max(s, 0.0);
  return sv;
}

double trace_norm(const ComplexMatrix& a) {
  const auto sv = singular_values(a);
  return std::accumulate(sv.begin(), sv.end(), 0.0);
}

std::size_t span_rank(std::span<const Ket> vectors, double tol) {
  if (vectors.empty()) return 0;
  const std::size_t dim = vectors.front().dim();
  ComplexMatrix stacked(vectors.size(), dim);
  for (std::size_t r = 0; r < vectors.size(); ++r) {
    if (vectors[r].dim() != dim) throw InvalidInput("span_rank: kets of different dimension");
    for (std::size_t c = 0; c < dim; ++c) stacked(r, c) = vectors[r][c];
  }
  const auto sv = singular_values(stacked);
  if (sv.empty() || sv.front() == 0.0) return 0;
  const double cut = tol * sv.front();
  return static_cast<std::size_t>(
      std::count_if(sv.begin(), sv.end(), [cut](double s) { return s > cut; }));
}

}  // namespace phimap
