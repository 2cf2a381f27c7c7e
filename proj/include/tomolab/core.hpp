#pragma once

#include <complex>

#include <Eigen/Dense>

namespace tomolab {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;

/// Numerical contract constants shared across the library.
struct Tolerances {
  /// Max deviation from unit norm / exact hermiticity accepted at construction.
  static constexpr double construction = 1e-12;
  /// Most negative eigenvalue accepted for a density operator.
  static constexpr double density_eigenvalue = 1e-10;
  /// Max |trace - 1| accepted for a density operator.
  static constexpr double density_trace = 1e-10;
  /// Max-abs entry error of an eigensystem resynthesis.
  static constexpr double eigen_reconstruction = 1e-9;
  /// Most negative eigenvalue accepted for a POVM element.
  static constexpr double povm_positivity = 1e-12;
  /// Max-abs entry of (sum of POVM elements - identity) for a complete set.
  static constexpr double povm_completeness = 1e-10;
};

}  // namespace tomolab
