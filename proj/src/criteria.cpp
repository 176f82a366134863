#include "phimap/criteria.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>

#include "phimap/maps.hpp"

namespace phimap {

DensityState::DensityState(ComplexMatrix matrix, Dims dims, const Tolerances& tol)
    : matrix_(std::move(matrix)), dims_(dims) {
  if (dims_.d1 == 0 || dims_.d2 == 0) throw InvalidInput("DensityState: zero dimension");
  if (matrix_.rows() != dims_.total() || matrix_.cols() != dims_.total()) {
    throw InvalidInput("DensityState: matrix size does not equal d1*d2");
  }
  if (!matrix_.all_finite()) throw InvalidInput("DensityState: non-finite entries");
  if (!is_hermitian(matrix_, tol.hermitian)) throw InvalidInput("DensityState: not Hermitian");
  const cplx tr = matrix_.trace();
  if (std::abs(tr - 1.0) > tol.trace) {
    std::ostringstream os;
    os << "DensityState: trace " << tr.real() << " is not 1";
    throw InvalidInput(os.str());
  }
  const double lo = min_eigenvalue(matrix_);
  if (lo < -tol.positivity) {
    std::ostringstream os;
    os << "DensityState: negative eigenvalue " << lo;
    throw InvalidInput(os.str());
  }
}

ComplexMatrix DensityState::reduced(Subsystem kept) const {
  return partial_trace(matrix_, dims_,
                       kept == Subsystem::First ? Subsystem::Second : Subsystem::First);
}

std::string_view to_string(Criterion c) {
  switch (c) {
    case Criterion::PPT: return "PPT";
    case Criterion::Reduction1: return "Reduction1";
    case Criterion::Reduction2: return "Reduction2";
    case Criterion::Phi: return "Phi";
    case Criterion::Realignment: return "Realignment";
    case Criterion::Majorization: return "Majorization";
  }
  return "?";
}

std::string_view to_string(Verdict v) {
  return v == Verdict::Entangled ? "Entangled" : "Inconclusive";
}

ComplexMatrix partial_transpose(const ComplexMatrix& rho, Dims dims) {
  return apply_local_map(rho, dims, OperatorMap(MapKind::Transpose, dims.d2));
}

ComplexMatrix partial_time_reversal(const ComplexMatrix& rho, Dims dims) {
  return apply_local_map(rho, dims, OperatorMap(MapKind::TimeReversal, dims.d2));
}

ComplexMatrix realign(const ComplexMatrix& rho, Dims dims) {
  const auto [d1, d2] = dims;
  if (rho.rows() != dims.total() || rho.cols() != dims.total()) {
    throw InvalidInput("realign: matrix is not (d1*d2)-square");
  }
  ComplexMatrix r(d1 * d1, d2 * d2);
  for (std::size_t i = 0; i < d1; ++i) {
    for (std::size_t j = 0; j < d1; ++j) {
      for (std::size_t k = 0; k < d2; ++k) {
        for (std::size_t l = 0; l < d2; ++l) r(i * d1 + j, k * d2 + l) = rho(i * d2 + k, j * d2 + l);
      }
    }
  }
  return r;
}

namespace {

CriterionReport margin_report(Criterion c, double min_eig, double tol, std::string detail) {
  CriterionReport rep;
  rep.criterion = c;
  rep.score = min_eig;
  rep.verdict = min_eig < -tol ? Verdict::Entangled : Verdict::Inconclusive;
  rep.detail = std::move(detail);
  return rep;
}

CriterionReport excess_report(Criterion c, double excess, double tol, std::string detail) {
  CriterionReport rep;
  rep.criterion = c;
  rep.score = excess;
  rep.verdict = excess > tol ? Verdict::Entangled : Verdict::Inconclusive;
  rep.detail = std::move(detail);
  return rep;
}

bool phi_applicable(Dims dims) { return dims.d2 >= 4 && dims.d2 % 2 == 0; }

}  // namespace

CriterionReport ppt_check(const DensityState& rho, double tol, PptRoute route) {
  if (route == PptRoute::TimeReversal) {
    if (rho.dims().d2 % 2 != 0) {
      throw UnsupportedDimension("ppt_check: time-reversal route needs even d2");
    }
    return margin_report(Criterion::PPT,
                         min_eigenvalue(partial_time_reversal(rho.matrix(), rho.dims())), tol,
                         "min eig of partial time reversal");
  }
  return margin_report(Criterion::PPT, min_eigenvalue(partial_transpose(rho.matrix(), rho.dims())),
                       tol, "min eig of partial transpose");
}

ReductionReports reduction_check(const DensityState& rho, double tol) {
  const Dims dims = rho.dims();
  const ComplexMatrix side2 = apply_local_map(rho.matrix(), dims, OperatorMap(MapKind::Reduction, dims.d2));
  const ComplexMatrix side1 =
      tensor_product(ComplexMatrix::identity(dims.d1), rho.reduced(Subsystem::Second)) - rho.matrix();
  return {margin_report(Criterion::Reduction1, min_eigenvalue(side1), tol, "min eig of I (x) rho_2 - rho"),
          margin_report(Criterion::Reduction2, min_eigenvalue(side2), tol, "min eig of rho_1 (x) I - rho")};
}

CriterionReport phi_check(const DensityState& rho, double tol) {
  if (!phi_applicable(rho.dims())) {
    throw UnsupportedDimension("phi_check: requires even d2 >= 4, got d2 = " +
                               std::to_string(rho.dims().d2));
  }
  const ComplexMatrix out = apply_local_map(rho.matrix(), rho.dims(), OperatorMap(MapKind::Phi, rho.dims().d2));
  return margin_report(Criterion::Phi, min_eigenvalue(out), tol, "min eig of (I (x) Phi) rho");
}

CriterionReport realignment_check(const DensityState& rho, double tol) {
  const double norm = trace_norm(realign(rho.matrix(), rho.dims()));
  return excess_report(Criterion::Realignment, norm - 1.0, tol, "trace norm of realignment minus 1");
}

CriterionReport majorization_check(const DensityState& rho, double tol) {
  auto descending = [](const ComplexMatrix& m) {
    auto ev = hermitian_eigenvalues(m);
    std::sort(ev.begin(), ev.end(), std::greater<>());
    return ev;
  };
  const auto global = descending(rho.matrix());
  double worst = -std::numeric_limits<double>::infinity();
  for (Subsystem kept : {Subsystem::First, Subsystem::Second}) {
    auto local = descending(rho.reduced(kept));
    local.resize(global.size(), 0.0);
    double cum_global = 0.0;
    double cum_local = 0.0;
    for (std::size_t k = 0; k < global.size(); ++k) {
      cum_global += global[k];
      cum_local += local[k];
      worst = std::max(worst, cum_global - cum_local);
    }
  }
  return excess_report(Criterion::Majorization, worst, tol,
                       "max cumulative spectrum excess over reduced states");
}

std::vector<CriterionReport> analyze(const DensityState& rho, double tol) {
  std::vector<CriterionReport> out;
  out.push_back(ppt_check(rho, tol));
  auto red = reduction_check(rho, tol);
  out.push_back(std::move(red.side1));
  out.push_back(std::move(red.side2));
  if (phi_applicable(rho.dims())) {
    out.push_back(phi_check(rho, tol));
  } else {
    CriterionReport skip;
    skip.criterion = Criterion::Phi;
    skip.skipped = true;
    skip.detail = rho.dims().d2 == 2 ? "skipped: unsupported dimension (Phi is the zero map for d2 = 2)"
                                     : "skipped: unsupported dimension";
    out.push_back(std::move(skip));
  }
  out.push_back(realignment_check(rho, tol));
  out.push_back(majorization_check(rho, tol));
  return out;
}

}  // namespace phimap
