#pragma once

// Dense complex linear algebra for small bipartite systems.
//
// Flattening convention: in a product space C^{d1} (x) C^{d2} the flat index
// of |a>|b> is a*d2 + b, i.e. subsystem 1 is the major (slow) index. An
// operator on the product space is therefore a d1 x d1 grid of d2 x d2 blocks,
// and (I (x) L) acts on each block independently.

#include <complex>
#include <concepts>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace phimap {

using cplx = std::complex<double>;

class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class UnsupportedDimension : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class NumericalFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Dims {
  std::size_t d1 = 0;
  std::size_t d2 = 0;
  std::size_t total() const { return d1 * d2; }
  bool operator==(const Dims&) const = default;
};

enum class Subsystem { First, Second };

class Ket {
 public:
  Ket() = default;
  explicit Ket(std::size_t dim) : amps_(dim, cplx{0.0, 0.0}) {}
  explicit Ket(std::vector<cplx> amps);
  Ket(std::initializer_list<cplx> amps) : Ket(std::vector<cplx>(amps)) {}

  static Ket basis(std::size_t dim, std::size_t index);

  std::size_t dim() const { return amps_.size(); }
  cplx& operator[](std::size_t i) { return amps_[i]; }
  const cplx& operator[](std::size_t i) const { return amps_[i]; }
  std::span<const cplx> amplitudes() const { return amps_; }

  double norm() const;
  Ket normalized() const;
  Ket conj() const;

  Ket& operator+=(const Ket& o);
  Ket& operator-=(const Ket& o);
  Ket& operator*=(cplx s);

 private:
  std::vector<cplx> amps_;
};

Ket operator+(Ket a, const Ket& b);
Ket operator-(Ket a, const Ket& b);
Ket operator*(cplx s, Ket a);

/// <a|b>, antilinear in the first argument.
cplx inner(const Ket& a, const Ket& b);

/// Kronecker product of kets with the first factor as the major index.
Ket tensor_product(const Ket& a, const Ket& b);

class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, cplx{0.0, 0.0}) {}
  /// Rows given as nested lists; all rows must have equal length.
  ComplexMatrix(std::initializer_list<std::initializer_list<cplx>> rows);

  static ComplexMatrix identity(std::size_t n);
  static ComplexMatrix zero(std::size_t n) { return ComplexMatrix(n, n); }
  static ComplexMatrix diagonal(std::span<const double> values);
  /// |a><b|
  static ComplexMatrix outer(const Ket& a, const Ket& b);
  static ComplexMatrix projector(const Ket& a) { return outer(a, a); }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  cplx& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const cplx& operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }
  std::span<const cplx> entries() const { return data_; }

  ComplexMatrix adjoint() const;
  ComplexMatrix transpose() const;
  ComplexMatrix conj() const;
  cplx trace() const;
  double max_abs() const;
  double frobenius_norm() const;
  bool all_finite() const;

  ComplexMatrix& operator+=(const ComplexMatrix& o);
  ComplexMatrix& operator-=(const ComplexMatrix& o);
  ComplexMatrix& operator*=(cplx s);

  bool operator==(const ComplexMatrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<cplx> data_;
};

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator*(cplx s, ComplexMatrix a);
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
Ket operator*(const ComplexMatrix& a, const Ket& v);

/// max_ij |a_ij - b_ij|; shapes must agree.
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

/// (A (x) B)[(i*rB + k), (j*cB + l)] = A[i,j] * B[k,l]
ComplexMatrix tensor_product(const ComplexMatrix& a, const ComplexMatrix& b);

ComplexMatrix partial_trace(const ComplexMatrix& rho, Dims dims, Subsystem traced);

/// Block (i, j) of a (d1*d2)-square matrix viewed as a d1 x d1 grid of
/// d2 x d2 blocks.
ComplexMatrix block(const ComplexMatrix& rho, Dims dims, std::size_t i, std::size_t j);
void set_block(ComplexMatrix& rho, Dims dims, std::size_t i, std::size_t j,
               const ComplexMatrix& value);

/// Anything usable as the Lambda in (I (x) Lambda).
template <typename M>
concept LocalMap = requires(const M& m, const ComplexMatrix& b) {
  { m.dim() } -> std::convertible_to<std::size_t>;
  { m(b) } -> std::convertible_to<ComplexMatrix>;
};

/// (I (x) map) rho: applies map to every d2 x d2 block.
template <LocalMap M>
ComplexMatrix apply_local_map(const ComplexMatrix& rho, Dims dims, const M& map) {
  if (rho.rows() != dims.total() || rho.cols() != dims.total()) {
    throw InvalidInput("apply_local_map: matrix is not (d1*d2)-square");
  }
  if (map.dim() != dims.d2) {
    throw InvalidInput("apply_local_map: map dimension " + std::to_string(map.dim()) +
                       " does not match block size " + std::to_string(dims.d2));
  }
  ComplexMatrix out(rho.rows(), rho.cols());
  for (std::size_t i = 0; i < dims.d1; ++i) {
    for (std::size_t j = 0; j < dims.d1; ++j) {
      set_block(out, dims, i, j, map(block(rho, dims, i, j)));
    }
  }
  return out;
}

struct HermitianSpectrum {
  std::vector<double> eigenvalues;  // ascending
  std::vector<Ket> eigenvectors;    // eigenvectors[k] belongs to eigenvalues[k]
};

struct EigenOptions {
  double hermitian_tol = 1e-10;
  double convergence_tol = 1e-14;
  int max_sweeps = 100;
  bool vectors = true;
};

/// Cyclic Jacobi eigensolver for Hermitian matrices.
HermitianSpectrum hermitian_eigen(const ComplexMatrix& a, const EigenOptions& opts = {});
std::vector<double> hermitian_eigenvalues(const ComplexMatrix& a);
double min_eigenvalue(const ComplexMatrix& a);

bool is_hermitian(const ComplexMatrix& a, double tol = 1e-10);

/// Singular values in descending order (works for rectangular input).
std::vector<double> singular_values(const ComplexMatrix& a);
double trace_norm(const ComplexMatrix& a);

/// Number of singular values of the stacked vectors above tol * s_max.
std::size_t span_rank(std::span<const Ket> vectors, double tol = 1e-8);

}  // namespace phimap
