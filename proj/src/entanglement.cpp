#include "tomolab/entanglement.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace tomolab {

namespace {

// Partial transpose of the second factor, on raw matrices (the solver loop
// cannot afford the HermitianOperator validation on every cycle).
CMatrix pt2(const CMatrix& m) {
  CMatrix out(9, 9);
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) {
      for (int c = 0; c < 3; ++c) {
        for (int d = 0; d < 3; ++d) {
          out(3 * a + b, 3 * c + d) = m(3 * a + d, 3 * c + b);
        }
      }
    }
  }
  return out;
}

CMatrix psd_part(const CMatrix& m) {
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(0.5 * (m + m.adjoint()));
  const RVector lam = solver.eigenvalues().cwiseMax(0.0);
  return solver.eigenvectors() * lam.asDiagonal() * solver.eigenvectors().adjoint();
}

double min_eigenvalue(const CMatrix& m) {
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(0.5 * (m + m.adjoint()), Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

struct FeasibilityCheck {
  bool feasible = false;
  CMatrix y;
};

// Is there Y >= 0 with Tr Y = t and (rho + Y)^{T_B} >= 0?  Dykstra's
// alternating projections onto the three sets; the verdict is a certificate
// (all three constraints within margin) or cycle exhaustion.
FeasibilityCheck feasible_at(const CMatrix& rho_pt, double t, const RobustnessOptions& opts,
                             const CMatrix* warm_start) {
  const CMatrix eye = CMatrix::Identity(9, 9);
  CMatrix y = warm_start ? *warm_start : CMatrix((t / 9.0) * eye);
  CMatrix p1 = CMatrix::Zero(9, 9);
  CMatrix p2 = CMatrix::Zero(9, 9);
  CMatrix p3 = CMatrix::Zero(9, 9);

  double best_violation = std::numeric_limits<double>::infinity();
  int stall = 0;

  for (int cycle = 0; cycle < opts.max_inner_cycles; ++cycle) {
    CMatrix z = y + p1;
    CMatrix yn = psd_part(z);
    p1 = z - yn;

    z = yn + p2;
    yn = z - ((z.trace().real() - t) / 9.0) * eye;
    p2 = z - yn;

    z = yn + p3;
    yn = pt2(psd_part(pt2(z) + rho_pt)) - pt2(rho_pt);
    p3 = z - yn;
    y = yn;

    const double violation = std::max({-min_eigenvalue(y), std::abs(y.trace().real() - t),
                                       -min_eigenvalue(pt2(y) + rho_pt)});
    if (violation <= opts.feasibility_margin) {
      return {true, y};
    }
    // plateau detection: infeasible runs stop shrinking the violation
    if (violation > best_violation * (1.0 - 1e-4)) {
      if (++stall >= 400 && cycle >= 800) {
        break;
      }
    } else {
      stall = 0;
    }
    best_violation = std::min(best_violation, violation);
  }
  return {false, y};
}

}  // namespace

double negativity(const DensityOperator& rho) {
  if (rho.dim() != 9) {
    throw std::invalid_argument("negativity: state must be 9-dimensional");
  }
  const double value = trace_norm(partial_transpose(rho.op(), Subsystem::second)) - 1.0;
  return std::max(value, 0.0);
}

RobustnessResult generalized_robustness_ppt(const DensityOperator& rho, double tol) {
  RobustnessOptions opts;
  opts.tol = tol;
  return generalized_robustness_ppt(rho, opts);
}

RobustnessResult generalized_robustness_ppt(const DensityOperator& rho,
                                            const RobustnessOptions& opts) {
  if (rho.dim() != 9) {
    throw std::invalid_argument("generalized_robustness_ppt: state must be 9-dimensional");
  }
  if (!(opts.tol > 0.0)) {
    throw std::invalid_argument("generalized_robustness_ppt: tol must be positive");
  }
  const CMatrix rho_pt = pt2(rho.matrix());
  if (min_eigenvalue(rho_pt) >= -opts.feasibility_margin) {
    return {0.0, true};  // already PPT: Y = 0 is optimal
  }

  double lo = 0.0;
  double hi = opts.bracket_hi;
  CMatrix warm;
  bool have_warm = false;
  double warm_trace = 0.0;

  for (int iter = 0; iter < opts.max_bisections && hi - lo > opts.tol; ++iter) {
    const double mid = 0.5 * (lo + hi);
    CMatrix start;
    const CMatrix* start_ptr = nullptr;
    if (have_warm && warm_trace > 0.0) {
      start = warm * (mid / warm_trace);
      start_ptr = &start;
    }
    const FeasibilityCheck check = feasible_at(rho_pt, mid, opts, start_ptr);
    if (check.feasible) {
      hi = mid;
      warm = check.y;
      warm_trace = mid;
      have_warm = true;
    } else {
      lo = mid;
    }
  }
  return {hi, hi - lo <= opts.tol};
}

double pure_state_robustness(const Ket& psi) {
  const double sum = schmidt_coefficients(psi).sum();
  return sum * sum - 1.0;
}

EntanglementReport entanglement_report(const DensityOperator& rho, double tol) {
  EntanglementReport report;
  report.negativity = negativity(rho);
  const RobustnessResult r = generalized_robustness_ppt(rho, tol);
  report.robustness_ppt = r.value;
  report.solver_tol = tol;
  report.converged = r.converged;
  return report;
}

}  // namespace tomolab
