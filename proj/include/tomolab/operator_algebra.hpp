#pragma once

#include <vector>

#include "tomolab/core.hpp"

namespace tomolab {

/// Pure-state amplitude vector. Unit Euclidean norm is enforced at
/// construction; use `normalized` to rescale arbitrary input.
class Ket {
 public:
  explicit Ket(CVector amplitudes);
  static Ket normalized(CVector amplitudes);

  Eigen::Index dim() const { return amplitudes_.size(); }
  const CVector& amplitudes() const { return amplitudes_; }
  Complex amplitude(Eigen::Index i) const { return amplitudes_(i); }

 private:
  struct Prechecked {};
  Ket(CVector amplitudes, Prechecked) : amplitudes_(std::move(amplitudes)) {}

  CVector amplitudes_;
};

/// Complex square matrix with A = A^dagger. The stored matrix is exactly
/// symmetrized, so the invariant holds to the last bit.
class HermitianOperator {
 public:
  explicit HermitianOperator(const CMatrix& entries);

  Eigen::Index dim() const { return entries_.rows(); }
  const CMatrix& matrix() const { return entries_; }
  double trace() const { return entries_.trace().real(); }

 private:
  CMatrix entries_;
};

/// |psi><psi|
HermitianOperator projector(const Ket& psi);

/// Unit-trace positive operator.
class DensityOperator {
 public:
  explicit DensityOperator(HermitianOperator op);

  const HermitianOperator& op() const { return op_; }
  const CMatrix& matrix() const { return op_.matrix(); }
  Eigen::Index dim() const { return op_.dim(); }

 private:
  HermitianOperator op_;
};

enum class Subsystem { first, second };
enum class FidelityConvention { overlap, sqrt_overlap };

/// Kronecker product. Basis convention for qutrit pairs: |jk> sits at
/// row 3j+k, with `a` acting on the first (signal) factor.
HermitianOperator tensor(const HermitianOperator& a, const HermitianOperator& b);

/// Transpose of one 3-dimensional factor of a 9-dimensional operator.
HermitianOperator partial_transpose(const HermitianOperator& rho, Subsystem subsystem);

struct Eigensystem {
  RVector eigenvalues;            // ascending
  std::vector<Ket> eigenvectors;  // orthonormal; first significant component real-positive
};

Eigensystem hermitian_eigensystem(const HermitianOperator& a);

/// Sum of absolute eigenvalues.
double trace_norm(const HermitianOperator& a);

/// <psi|rho|psi> (overlap) or its square root (sqrt_overlap, the Uhlmann
/// fidelity against a pure reference).
double pure_fidelity(const DensityOperator& rho, const Ket& psi,
                     FidelityConvention convention = FidelityConvention::sqrt_overlap);

/// Symmetrize, rescale the trace to 1, then project the spectrum onto the
/// probability simplex in the fixed eigenbasis. Intended for ingesting
/// near-density matrices (e.g. rounded published tomograms).
DensityOperator nearest_density_operator(const HermitianOperator& h);

/// Singular values (descending) of the 3x3 amplitude matrix of a
/// two-qutrit pure state.
Eigen::Vector3d schmidt_coefficients(const Ket& psi);

namespace detail {

/// Euclidean projection onto {x : x >= 0, sum x = 1}.
RVector project_onto_simplex(const RVector& v);

/// Exact Frobenius-metric projection onto the density-operator set:
/// symmetrize, then simplex-project the spectrum. Unlike
/// nearest_density_operator there is no trace pre-rescaling, which makes the
/// map nonexpansive (required by the projected-gradient solver).
CMatrix project_to_density_cone(const CMatrix& h);

}  // namespace detail

}  // namespace tomolab
