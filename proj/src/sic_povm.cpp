#include "tomolab/sic_povm.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <utility>

namespace tomolab {

namespace {

CMatrix element_sum(const std::vector<PovmElement>& elements, Eigen::Index dim) {
  CMatrix sum = CMatrix::Zero(dim, dim);
  for (const auto& e : elements) {
    sum += e.op.matrix();
  }
  return sum;
}

}  // namespace

PovmSet::PovmSet(std::vector<PovmElement> elements, Eigen::Index dim)
    : elements_(std::move(elements)), dim_(dim) {
  if (dim_ <= 0) {
    throw std::invalid_argument("PovmSet: dimension must be positive");
  }
  for (const auto& e : elements_) {
    if (e.op.dim() != dim_) {
      throw std::invalid_argument("PovmSet: element '" + e.label + "' has wrong dimension");
    }
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(e.op.matrix(), Eigen::EigenvaluesOnly);
    if (solver.eigenvalues().minCoeff() < -Tolerances::povm_positivity) {
      throw std::invalid_argument("PovmSet: element '" + e.label + "' is not positive");
    }
  }
  completeness_residual_ = elements_.empty()
                               ? 1.0
                               : (element_sum(elements_, dim_) - CMatrix::Identity(dim_, dim_))
                                     .cwiseAbs()
                                     .maxCoeff();
}

PovmSet PovmSet::prefix(std::size_t n) const {
  if (n > elements_.size()) {
    throw std::invalid_argument("PovmSet::prefix: size exceeds element count");
  }
  return PovmSet(std::vector<PovmElement>(elements_.begin(), elements_.begin() + static_cast<std::ptrdiff_t>(n)),
                 dim_);
}

PovmSet PovmSet::reordered(const std::vector<std::size_t>& order) const {
  std::vector<PovmElement> out;
  out.reserve(order.size());
  for (std::size_t i : order) {
    out.push_back(elements_.at(i));
  }
  return PovmSet(std::move(out), dim_);
}

std::vector<Ket> sic_states() {
  const Complex w = std::polar(1.0, 2.0 * std::numbers::pi / 3.0);
  const Complex wc = std::conj(w);
  const double s = 1.0 / std::numbers::sqrt2;

  // Pairs of occupied basis states per triple: (0,2), (1,0), (2,1).
  const std::array<std::pair<int, int>, 3> support{{{0, 2}, {1, 0}, {2, 1}}};
  const std::array<std::pair<Complex, Complex>, 3> phases{{{1.0, 1.0}, {w, wc}, {wc, w}}};

  std::vector<Ket> states;
  states.reserve(9);
  for (const auto& [first, second] : support) {
    for (const auto& [pa, pb] : phases) {
      CVector v = CVector::Zero(3);
      v(first) = s * pa;
      v(second) = s * pb;
      states.push_back(Ket(std::move(v)));
    }
  }
  return states;
}

PovmSet sic_povm() {
  std::vector<PovmElement> elements;
  elements.reserve(9);
  int j = 1;
  for (const Ket& psi : sic_states()) {
    elements.push_back({"Pi_" + std::to_string(j++),
                        HermitianOperator(projector(psi).matrix() / 3.0)});
  }
  return PovmSet(std::move(elements), 3);
}

PovmSet product_povm(const PovmSet& a, const PovmSet& b) {
  if (!a.is_complete() || !b.is_complete()) {
    throw std::invalid_argument("product_povm: both factor sets must be complete");
  }
  std::vector<PovmElement> elements;
  elements.reserve(a.size() * b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) {
      elements.push_back({"Pi_" + std::to_string(i + 1) + "_" + std::to_string(j + 1),
                          tensor(a.element(i).op, b.element(j).op)});
    }
  }
  return PovmSet(std::move(elements), a.dim() * b.dim());
}

CMatrix path_phase_unitary(double phi_e) {
  if (!std::isfinite(phi_e)) {
    throw std::invalid_argument("path_phase_unitary: phase must be finite");
  }
  CMatrix u = CMatrix::Zero(3, 3);
  const Complex outer = std::polar(1.0, phi_e);
  u(0, 0) = outer;
  u(1, 1) = 1.0;
  u(2, 2) = outer;
  return u;
}

PovmSet conjugate_povm(const PovmSet& p, const CMatrix& u_first, const CMatrix& u_second) {
  if (u_first.rows() != 3 || u_first.cols() != 3 || u_second.rows() != 3 || u_second.cols() != 3) {
    throw std::invalid_argument("conjugate_povm: unitaries must be 3x3");
  }
  if (p.dim() != 9) {
    throw std::invalid_argument("conjugate_povm: POVM must act on the 9-dimensional product space");
  }
  CMatrix u(9, 9);
  for (Eigen::Index i = 0; i < 3; ++i) {
    for (Eigen::Index j = 0; j < 3; ++j) {
      u.block(i * 3, j * 3, 3, 3) = u_first(i, j) * u_second;
    }
  }
  std::vector<PovmElement> elements;
  elements.reserve(p.size());
  for (const auto& e : p.elements()) {
    elements.push_back({e.label, HermitianOperator(u.adjoint() * e.op.matrix() * u)});
  }
  return PovmSet(std::move(elements), p.dim());
}

SicReport verify_sic(const std::vector<Ket>& states) {
  if (states.size() != 9) {
    throw std::invalid_argument("verify_sic: expected nine states");
  }
  for (const Ket& k : states) {
    if (k.dim() != 3) {
      throw std::invalid_argument("verify_sic: states must be qutrits");
    }
  }

  SicReport report;
  double min_mag = 1.0, max_mag = 0.0, mag_sum = 0.0;
  int pairs = 0;
  for (std::size_t i = 0; i < 9; ++i) {
    for (std::size_t j = i + 1; j < 9; ++j) {
      const Complex overlap = (states[i].amplitudes().adjoint() * states[j].amplitudes())(0, 0);
      const double mag = std::abs(overlap);
      min_mag = std::min(min_mag, mag);
      max_mag = std::max(max_mag, mag);
      mag_sum += mag;
      report.overlap_phases.push_back(std::arg(overlap));
      ++pairs;
    }
  }
  report.overlap_magnitude = mag_sum / pairs;
  report.magnitude_spread = max_mag - min_mag;
  report.is_equidistant = report.magnitude_spread <= 1e-10;

  CMatrix sum = CMatrix::Zero(3, 3);
  for (const Ket& k : states) {
    sum += k.amplitudes() * k.amplitudes().adjoint() / 3.0;
  }
  report.completeness_residual = (sum - CMatrix::Identity(3, 3)).cwiseAbs().maxCoeff();
  return report;
}

}  // namespace tomolab
