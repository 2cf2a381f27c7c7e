#pragma once

#include "tomolab/operator_algebra.hpp"

namespace tomolab {

struct RobustnessOptions {
  double tol = 1e-6;               // final bisection bracket width
  double feasibility_margin = 1e-9;
  int max_bisections = 60;
  int max_inner_cycles = 5000;     // Dykstra cycles per feasibility check
  double bracket_hi = 8.0;
};

struct RobustnessResult {
  double value = 0.0;
  bool converged = false;
};

/// ||rho^{T_B}||_1 - 1, clipped at zero. Reaches 2 on maximally entangled
/// qutrit pairs; 0 exactly on PPT states.
double negativity(const DensityOperator& rho);

/// Minimum Tr(Y) with Y >= 0 and (rho + Y)^{T_B} >= 0, solved by bisection on
/// the trace with Dykstra alternating-projection feasibility checks. This is
/// the PPT relaxation of the generalized robustness: a lower bound in
/// general, exact on pure states of full Schmidt rank.
RobustnessResult generalized_robustness_ppt(const DensityOperator& rho, double tol = 1e-6);
RobustnessResult generalized_robustness_ppt(const DensityOperator& rho,
                                            const RobustnessOptions& opts);

/// Closed form for pure states: (sum of Schmidt coefficients)^2 - 1.
double pure_state_robustness(const Ket& psi);

struct EntanglementReport {
  double negativity = 0.0;
  double robustness_ppt = 0.0;
  double solver_tol = 0.0;
  bool converged = false;
};

EntanglementReport entanglement_report(const DensityOperator& rho, double tol = 1e-6);

}  // namespace tomolab
