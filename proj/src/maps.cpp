#include "phimap/maps.hpp"

namespace phimap {

std::string_view to_string(MapKind kind) {
  switch (kind) {
    case MapKind::Identity: return "Identity";
    case MapKind::Transpose: return "Transpose";
    case MapKind::TimeReversal: return "TimeReversal";
    case MapKind::Reduction: return "Reduction";
    case MapKind::Phi: return "Phi";
  }
  return "?";
}

namespace {

void require_square(std::size_t n, const ComplexMatrix& b, const char* who) {
  if (b.rows() != n || b.cols() != n) {
    throw InvalidInput(std::string(who) + ": operand is not " + std::to_string(n) + "x" +
                       std::to_string(n));
  }
}

void require_even(std::size_t n, const char* who) {
  if (n == 0 || n % 2 != 0) {
    throw UnsupportedDimension(std::string(who) + ": requires even N, got N = " +
                               std::to_string(n));
  }
}

}  // namespace

OperatorMap::OperatorMap(MapKind kind, std::size_t dim) : kind_(kind), dim_(dim) {
  if (dim == 0) throw InvalidInput("OperatorMap: dimension must be positive");
  if (kind == MapKind::TimeReversal || kind == MapKind::Phi) require_even(dim, "OperatorMap");
}

ComplexMatrix OperatorMap::operator()(const ComplexMatrix& b) const {
  switch (kind_) {
    case MapKind::Identity: require_square(dim_, b, "Identity"); return b;
    case MapKind::Transpose: return transpose_op(dim_, b);
    case MapKind::TimeReversal: return time_reversal_op(dim_, b);
    case MapKind::Reduction: return reduction_op(dim_, b);
    case MapKind::Phi: return phi_op(dim_, b);
  }
  throw InvalidInput("OperatorMap: unknown kind");
}

ComplexMatrix time_reversal_op(std::size_t n, const ComplexMatrix& b) {
  require_even(n, "time_reversal_op");
  require_square(n, b, "time_reversal_op");
  // V is a signed antidiagonal permutation, so V B^T V^dag reduces to
  // (VB^TV^dag)[r][c] = s(r) s(c) B[n-1-c][n-1-r] with s(r) = (-1)^(n-1-r).
  ComplexMatrix out(n, n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      const double sign = ((r + c) % 2 == 0) ? 1.0 : -1.0;
      out(r, c) = sign * b(n - 1 - c, n - 1 - r);
    }
  }
  return out;
}

ComplexMatrix reduction_op(std::size_t n, const ComplexMatrix& b) {
  require_square(n, b, "reduction_op");
  ComplexMatrix out = b.trace() * ComplexMatrix::identity(n);
  out -= b;
  return out;
}

ComplexMatrix phi_op(std::size_t n, const ComplexMatrix& b) {
  ComplexMatrix out = reduction_op(n, b);
  out -= time_reversal_op(n, b);
  return out;
}

ComplexMatrix transpose_op(std::size_t n, const ComplexMatrix& b) {
  require_square(n, b, "transpose_op");
  return b.transpose();
}

}  // namespace phimap
