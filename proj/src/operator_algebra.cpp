#include "tomolab/operator_algebra.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace tomolab {

namespace {

void require_finite(const CMatrix& m, const char* what) {
  if (!m.allFinite()) {
    throw std::invalid_argument(std::string(what) + ": non-finite entries");
  }
}

}  // namespace

Ket::Ket(CVector amplitudes) : amplitudes_(std::move(amplitudes)) {
  if (amplitudes_.size() == 0) {
    throw std::invalid_argument("Ket: empty amplitude vector");
  }
  if (!amplitudes_.allFinite()) {
    throw std::invalid_argument("Ket: non-finite amplitudes");
  }
  if (std::abs(amplitudes_.norm() - 1.0) > Tolerances::construction) {
    throw std::invalid_argument("Ket: amplitudes are not unit-norm; use Ket::normalized");
  }
}

Ket Ket::normalized(CVector amplitudes) {
  if (amplitudes.size() == 0) {
    throw std::invalid_argument("Ket::normalized: empty amplitude vector");
  }
  if (!amplitudes.allFinite()) {
    throw std::invalid_argument("Ket::normalized: non-finite amplitudes");
  }
  const double norm = amplitudes.norm();
  if (norm <= 0.0) {
    throw std::invalid_argument("Ket::normalized: zero vector");
  }
  amplitudes /= norm;
  return Ket(std::move(amplitudes), Prechecked{});
}

HermitianOperator::HermitianOperator(const CMatrix& entries) {
  if (entries.rows() != entries.cols() || entries.rows() == 0) {
    throw std::invalid_argument("HermitianOperator: matrix must be square and non-empty");
  }
  require_finite(entries, "HermitianOperator");
  const double asym = (entries - entries.adjoint()).cwiseAbs().maxCoeff();
  if (asym > Tolerances::construction) {
    throw std::invalid_argument("HermitianOperator: matrix is not Hermitian");
  }
  entries_ = 0.5 * (entries + entries.adjoint());
}

HermitianOperator projector(const Ket& psi) {
  return HermitianOperator(psi.amplitudes() * psi.amplitudes().adjoint());
}

DensityOperator::DensityOperator(HermitianOperator op) : op_(std::move(op)) {
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(op_.matrix(), Eigen::EigenvaluesOnly);
  if (solver.eigenvalues().minCoeff() < -Tolerances::density_eigenvalue) {
    throw std::invalid_argument("DensityOperator: negative eigenvalue");
  }
  if (std::abs(op_.trace() - 1.0) > Tolerances::density_trace) {
    throw std::invalid_argument("DensityOperator: trace differs from 1");
  }
}

HermitianOperator tensor(const HermitianOperator& a, const HermitianOperator& b) {
  const Eigen::Index na = a.dim(), nb = b.dim();
  CMatrix out(na * nb, na * nb);
  for (Eigen::Index i = 0; i < na; ++i) {
    for (Eigen::Index j = 0; j < na; ++j) {
      out.block(i * nb, j * nb, nb, nb) = a.matrix()(i, j) * b.matrix();
    }
  }
  return HermitianOperator(out);
}

HermitianOperator partial_transpose(const HermitianOperator& rho, Subsystem subsystem) {
  if (rho.dim() != 9) {
    throw std::invalid_argument("partial_transpose: operator must be 9-dimensional");
  }
  const CMatrix& m = rho.matrix();
  CMatrix out(9, 9);
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) {
      for (int c = 0; c < 3; ++c) {
        for (int d = 0; d < 3; ++d) {
          // entry (a,b),(c,d) of the result
          if (subsystem == Subsystem::second) {
            out(3 * a + b, 3 * c + d) = m(3 * a + d, 3 * c + b);
          } else {
            out(3 * a + b, 3 * c + d) = m(3 * c + b, 3 * a + d);
          }
        }
      }
    }
  }
  return HermitianOperator(out);
}

Eigensystem hermitian_eigensystem(const HermitianOperator& a) {
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(a.matrix());
  Eigensystem out;
  out.eigenvalues = solver.eigenvalues();
  out.eigenvectors.reserve(static_cast<std::size_t>(a.dim()));
  for (Eigen::Index k = 0; k < a.dim(); ++k) {
    CVector v = solver.eigenvectors().col(k);
    // deterministic phase: first significant component made real-positive
    for (Eigen::Index i = 0; i < v.size(); ++i) {
      const double mag = std::abs(v(i));
      if (mag > 1e-9) {
        v *= std::conj(v(i)) / mag;
        break;
      }
    }
    out.eigenvectors.push_back(Ket::normalized(std::move(v)));
  }
  return out;
}

double trace_norm(const HermitianOperator& a) {
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(a.matrix(), Eigen::EigenvaluesOnly);
  return solver.eigenvalues().cwiseAbs().sum();
}

double pure_fidelity(const DensityOperator& rho, const Ket& psi, FidelityConvention convention) {
  if (rho.dim() != psi.dim()) {
    throw std::invalid_argument("pure_fidelity: dimension mismatch");
  }
  const CVector& v = psi.amplitudes();
  double overlap = (v.adjoint() * rho.matrix() * v)(0, 0).real();
  overlap = std::clamp(overlap, 0.0, 1.0);
  return convention == FidelityConvention::overlap ? overlap : std::sqrt(overlap);
}

namespace detail {

RVector project_onto_simplex(const RVector& v) {
  const Eigen::Index n = v.size();
  std::vector<double> u(v.data(), v.data() + n);
  std::sort(u.begin(), u.end(), std::greater<double>());
  double cumulative = 0.0;
  double tau = 0.0;
  for (Eigen::Index k = 0; k < n; ++k) {
    cumulative += u[static_cast<std::size_t>(k)];
    const double candidate = (cumulative - 1.0) / static_cast<double>(k + 1);
    if (u[static_cast<std::size_t>(k)] - candidate > 0.0) {
      tau = candidate;
    }
  }
  return (v.array() - tau).max(0.0);
}

CMatrix project_to_density_cone(const CMatrix& h) {
  const CMatrix sym = 0.5 * (h + h.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(sym);
  const RVector lam = project_onto_simplex(solver.eigenvalues());
  return solver.eigenvectors() * lam.asDiagonal() * solver.eigenvectors().adjoint();
}

}  // namespace detail

DensityOperator nearest_density_operator(const HermitianOperator& h) {
  const double tr = h.trace();
  if (std::abs(tr) < 1e-12) {
    throw std::invalid_argument("nearest_density_operator: zero trace");
  }
  const CMatrix scaled = h.matrix() / tr;
  return DensityOperator(HermitianOperator(detail::project_to_density_cone(scaled)));
}

Eigen::Vector3d schmidt_coefficients(const Ket& psi) {
  if (psi.dim() != 9) {
    throw std::invalid_argument("schmidt_coefficients: state must be 9-dimensional");
  }
  Eigen::Matrix3cd amp;
  for (int j = 0; j < 3; ++j) {
    for (int k = 0; k < 3; ++k) {
      amp(j, k) = psi.amplitude(3 * j + k);
    }
  }
  Eigen::JacobiSVD<Eigen::Matrix3cd> svd(amp);
  return svd.singularValues();
}

}  // namespace tomolab
