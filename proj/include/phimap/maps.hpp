#pragma once

// Linear maps on operators of C^N, usable as the local map in
// apply_local_map(rho, dims, map).

#include <string_view>

#include "phimap/linalg.hpp"
#include "phimap/spin.hpp"

namespace phimap {

enum class MapKind { Identity, Transpose, TimeReversal, Reduction, Phi };

std::string_view to_string(MapKind kind);

class OperatorMap {
 public:
  /// Throws UnsupportedDimension for TimeReversal/Phi on odd N.
  OperatorMap(MapKind kind, std::size_t dim);

  MapKind kind() const { return kind_; }
  std::size_t dim() const { return dim_; }

  /// For N = 2 the Phi map vanishes identically.
  bool trivially_zero() const { return kind_ == MapKind::Phi && dim_ == 2; }

  ComplexMatrix operator()(const ComplexMatrix& b) const;

 private:
  MapKind kind_;
  std::size_t dim_;
};

/// B -> V B^T V^dag
ComplexMatrix time_reversal_op(std::size_t n, const ComplexMatrix& b);
/// B -> tr(B) I - B
ComplexMatrix reduction_op(std::size_t n, const ComplexMatrix& b);
/// B -> tr(B) I - B - V B^T V^dag
ComplexMatrix phi_op(std::size_t n, const ComplexMatrix& b);
ComplexMatrix transpose_op(std::size_t n, const ComplexMatrix& b);

}  // namespace phimap
