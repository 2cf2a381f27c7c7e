#pragma once

#include <string>
#include <vector>

#include "tomolab/operator_algebra.hpp"

namespace tomolab {

struct PovmElement {
  std::string label;
  HermitianOperator op;
};

/// Ordered list of labeled positive operators. Positivity is enforced at
/// construction; completeness (sum to identity) is tracked as metadata so
/// that subsets taken for partial tomography remain representable.
class PovmSet {
 public:
  PovmSet(std::vector<PovmElement> elements, Eigen::Index dim);

  std::size_t size() const { return elements_.size(); }
  Eigen::Index dim() const { return dim_; }
  const std::vector<PovmElement>& elements() const { return elements_; }
  const PovmElement& element(std::size_t i) const { return elements_.at(i); }

  double completeness_residual() const { return completeness_residual_; }
  bool is_complete() const { return completeness_residual_ <= Tolerances::povm_completeness; }

  /// First n elements, in order.
  PovmSet prefix(std::size_t n) const;
  /// Elements reordered by the given index permutation.
  PovmSet reordered(const std::vector<std::size_t>& order) const;

 private:
  std::vector<PovmElement> elements_;
  Eigen::Index dim_;
  double completeness_residual_;
};

/// The nine equidistant qutrit states generating the SIC-POVM, in canonical
/// order. Every pairwise overlap has magnitude 1/2.
std::vector<Ket> sic_states();

/// Pi_j = (1/3)|psi_j><psi_j|, j = 1..9; sums exactly to the identity.
PovmSet sic_povm();

/// All pairwise tensor products of two complete sets, row-major in (i, j)
/// with labels "<a>_<b>"; informationally complete for the product space.
PovmSet product_povm(const PovmSet& a, const PovmSet& b);

/// diag(e^{i phi_e}, 1, e^{i phi_e}): the extra phase picked up on the paths
/// through the outer slits relative to the middle one.
CMatrix path_phase_unitary(double phi_e);

/// Maps every element to (U1 (x) U2)^dagger Pi (U1 (x) U2).
PovmSet conjugate_povm(const PovmSet& p, const CMatrix& u_first, const CMatrix& u_second);

struct SicReport {
  bool is_equidistant = false;
  double overlap_magnitude = 0.0;   // mean pairwise |<psi_i|psi_j>|
  double magnitude_spread = 0.0;    // max - min of the pairwise magnitudes
  double completeness_residual = 0.0;
  std::vector<double> overlap_phases;  // arg <psi_i|psi_j> for i < j, row-major
};

/// Checks the defining symmetry of a candidate SIC set: all pairwise overlap
/// magnitudes equal (within 1e-10) and (1/3) sum |psi><psi| equal to the
/// identity. Phases are reported but not constrained, since the generating
/// states realize the common magnitude with several distinct phases.
SicReport verify_sic(const std::vector<Ket>& states);

}  // namespace tomolab
