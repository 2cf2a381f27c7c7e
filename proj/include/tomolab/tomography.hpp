#pragma once

#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "tomolab/experiment.hpp"

namespace tomolab {

struct ReconstructionResult {
  DensityOperator rho;
  double residual = 0.0;  // rms misfit of the returned state against the data
  int iterations = 0;
  int n_elements_used = 0;
  bool converged = true;
};

struct VariationalOptions {
  int max_iters = 20000;  // objective-evaluation budget, backtracking probes included
  double step = 0.0;      // <= 0 selects 0.5 / lambda_max(Gram)
  double tol = 1e-12;     // stop once an accepted step improves the objective by less
  std::function<void(int iteration, double objective)> on_accept;
};

/// Least-squares fit of a Hermitian operator to the full frequency vector in
/// an orthonormal operator basis, then projection to the closest density
/// operator. Requires an informationally complete set.
ReconstructionResult linear_inversion(std::span<const double> freqs, const PovmSet& p);

/// Minimizes sum_m (Tr(Pi_m rho) - f_m)^2 over density operators by projected
/// gradient descent with backtracking; the objective is non-increasing across
/// accepted iterations. Works on any subset of elements. Non-convergence is
/// reported through `converged`, not an exception.
ReconstructionResult variational_reconstruct(std::span<const double> freqs, const PovmSet& p,
                                             const VariationalOptions& opts = {});

/// Frequency vector from counts: f_m = counts_m / sum(counts). Meant for a
/// full run of a complete set, so the grand total estimates the flux.
ReconstructionResult variational_reconstruct(std::span<const MeasurementRecord> records,
                                             const PovmSet& p,
                                             const VariationalOptions& opts = {});

enum class CurveOrdering { canonical, random };

struct CurveOptions {
  int n_min = 1;
  int n_max = 0;  // 0 means every element
  int n_step = 1;
  CurveOrdering ordering = CurveOrdering::canonical;
  std::uint64_t seed = 0;
  int n_permutations = 10;  // random ordering only
  VariationalOptions reconstruction{};
  double robustness_tol = 1e-3;
};

struct CurvePoint {
  int n = 0;
  double negativity = 0.0;
  double robustness = 0.0;
};

/// Entanglement quantifiers of states reconstructed from the first N
/// elements, for N over a grid. Random orderings are averaged over
/// seed-controlled permutations.
std::vector<CurvePoint> entanglement_curve(std::span<const double> freqs, const PovmSet& p,
                                           const CurveOptions& opts = {});

struct FidelityScanResult {
  double phi_star = 0.0;
  double f_star = 0.0;
  std::vector<std::pair<double, double>> curve;  // (phi, fidelity)
};

/// pure_fidelity(rho, theoretical_state(phi)) over the grid, with quadratic
/// refinement of the maximum.
FidelityScanResult fidelity_scan(const DensityOperator& rho, std::span<const double> phi_grid,
                                 FidelityConvention convention = FidelityConvention::sqrt_overlap);

}  // namespace tomolab
