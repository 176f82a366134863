#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "phimap/linalg.hpp"

namespace phimap {

/// Validated bipartite density matrix: Hermitian, unit trace, PSD.
class DensityState {
 public:
  struct Tolerances {
    double hermitian = 1e-10;
    double trace = 1e-10;
    double positivity = 1e-10;
  };

  /// Throws InvalidInput if any invariant fails.
  DensityState(ComplexMatrix matrix, Dims dims, const Tolerances& tol);
  DensityState(ComplexMatrix matrix, Dims dims) : DensityState(std::move(matrix), dims, Tolerances{}) {}

  const ComplexMatrix& matrix() const { return matrix_; }
  Dims dims() const { return dims_; }
  ComplexMatrix reduced(Subsystem kept) const;

 private:
  ComplexMatrix matrix_;
  Dims dims_;
};

enum class Criterion { PPT, Reduction1, Reduction2, Phi, Realignment, Majorization };
enum class Verdict { Entangled, Inconclusive };

std::string_view to_string(Criterion c);
std::string_view to_string(Verdict v);

/// Eigenvalue-margin criteria (PPT, reductions, Phi) report the minimum
/// eigenvalue as score and fire when score < -tol. Realignment reports
/// |R(rho)|_1 - 1 and majorization the largest cumulative-sum violation;
/// those fire when score > tol.
struct CriterionReport {
  Criterion criterion = Criterion::PPT;
  Verdict verdict = Verdict::Inconclusive;
  double score = 0.0;
  std::string detail;
  bool skipped = false;
};

inline constexpr double kDefaultTolerance = 1e-10;

/// (I (x) T) rho
ComplexMatrix partial_transpose(const ComplexMatrix& rho, Dims dims);
/// (I (x) theta-reversal) rho; d2 must be even.
ComplexMatrix partial_time_reversal(const ComplexMatrix& rho, Dims dims);
/// R[i*d1 + j][k*d2 + l] = rho[i*d2 + k][j*d2 + l], a d1^2 x d2^2 matrix.
ComplexMatrix realign(const ComplexMatrix& rho, Dims dims);

enum class PptRoute { Transpose, TimeReversal };

CriterionReport ppt_check(const DensityState& rho, double tol = kDefaultTolerance,
                          PptRoute route = PptRoute::Transpose);

struct ReductionReports {
  CriterionReport side1;  // I (x) rho_2 - rho
  CriterionReport side2;  // rho_1 (x) I - rho
};
ReductionReports reduction_check(const DensityState& rho, double tol = kDefaultTolerance);

/// Requires even d2 >= 4; throws UnsupportedDimension otherwise.
CriterionReport phi_check(const DensityState& rho, double tol = kDefaultTolerance);

CriterionReport realignment_check(const DensityState& rho, double tol = kDefaultTolerance);
CriterionReport majorization_check(const DensityState& rho, double tol = kDefaultTolerance);

/// PPT, Reduction1, Reduction2, Phi, Realignment, Majorization in that order.
/// Phi is reported as skipped when d2 is odd or below 4.
std::vector<CriterionReport> analyze(const DensityState& rho, double tol = kDefaultTolerance);

}  // namespace phimap
