#include "tomolab/experiment.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace tomolab {

SlmMask::SlmMask(Complex t0, Complex t1, Complex t2) : transmissions_{t0, t1, t2} {
  for (const Complex& t : transmissions_) {
    if (!std::isfinite(t.real()) || !std::isfinite(t.imag())) {
      throw std::invalid_argument("SlmMask: non-finite transmission");
    }
    if (std::abs(t) > 1.0 + 1e-12) {
      throw std::invalid_argument("SlmMask: transmission magnitude exceeds 1");
    }
  }
}

CMatrix SlmMask::as_diagonal() const {
  CMatrix m = CMatrix::Zero(3, 3);
  for (int l = 0; l < 3; ++l) {
    m(l, l) = transmissions_[static_cast<std::size_t>(l)];
  }
  return m;
}

Ket theoretical_state(double phi) {
  if (!std::isfinite(phi)) {
    throw std::invalid_argument("theoretical_state: phase must be finite");
  }
  const double s = 1.0 / std::numbers::sqrt3;
  const Complex outer = std::polar(s, phi);
  CVector v = CVector::Zero(9);
  v(2) = outer;  // |02>
  v(4) = s;      // |11>
  v(6) = outer;  // |20>
  return Ket(std::move(v));
}

HermitianOperator fourier_point_projector(const std::array<double, 3>& static_phases) {
  CVector plus(3);
  for (int l = 0; l < 3; ++l) {
    plus(l) = std::polar(1.0 / std::numbers::sqrt3, static_phases[static_cast<std::size_t>(l)]);
  }
  return projector(Ket(std::move(plus)));
}

HermitianOperator effective_element(const SlmMask& mask_s, const SlmMask& mask_i,
                                    const HermitianOperator& p) {
  if (p.dim() != 3) {
    throw std::invalid_argument("effective_element: projector must be 3-dimensional");
  }
  const CMatrix ms = mask_s.as_diagonal();
  const CMatrix mi = mask_i.as_diagonal();
  const HermitianOperator side_s(ms.adjoint() * p.matrix() * ms);
  const HermitianOperator side_i(mi.adjoint() * p.matrix() * mi);
  return tensor(side_s, side_i);
}

SlmMask synthesize_mask_for_element(int sic_index, const std::array<double, 3>& static_phases,
                                    double phi_e) {
  if (sic_index < 1 || sic_index > 9) {
    throw std::invalid_argument("synthesize_mask_for_element: index must be in 1..9");
  }
  const Ket psi = sic_states()[static_cast<std::size_t>(sic_index - 1)];
  // The effective one-side element of mask m is |w><w| with
  // w_l = conj(m_l) e^{i delta_l} / sqrt3; choosing
  // m_l = sqrt2 e^{i delta_l} e^{i phi_e g_l} conj(psi_l), g = (1,0,1),
  // aligns w with U_e^dagger psi and saturates |m| = 1 on the open slits.
  std::array<Complex, 3> m;
  for (int l = 0; l < 3; ++l) {
    const double path = (l == 1) ? 0.0 : phi_e;
    m[static_cast<std::size_t>(l)] =
        std::numbers::sqrt2 * std::polar(1.0, static_phases[static_cast<std::size_t>(l)] + path) *
        std::conj(psi.amplitude(l));
  }
  return SlmMask(m[0], m[1], m[2]);
}

std::vector<double> born_probabilities(const DensityOperator& rho, const PovmSet& p) {
  if (rho.dim() != p.dim()) {
    throw std::invalid_argument("born_probabilities: dimension mismatch");
  }
  std::vector<double> probs;
  probs.reserve(p.size());
  for (const auto& e : p.elements()) {
    probs.push_back((e.op.matrix() * rho.matrix()).trace().real());
  }
  return probs;
}

std::vector<MeasurementRecord> sample_counts(std::span<const double> probs,
                                             std::span<const std::string> labels,
                                             double mean_total, std::uint64_t seed,
                                             double duration_s) {
  if (probs.size() != labels.size()) {
    throw std::invalid_argument("sample_counts: probability/label count mismatch");
  }
  if (!(mean_total >= 0.0)) {
    throw std::invalid_argument("sample_counts: mean_total must be non-negative");
  }
  std::vector<MeasurementRecord> records;
  records.reserve(probs.size());
  for (std::size_t m = 0; m < probs.size(); ++m) {
    double pm = probs[m];
    if (pm < -1e-12) {
      throw std::invalid_argument("sample_counts: negative probability");
    }
    pm = std::max(pm, 0.0);
    const double mu = mean_total * pm;
    std::uint64_t counts = 0;
    if (mu > 0.0) {
      // splitmix-style mix so each element owns an independent stream
      std::uint64_t derived = seed ^ (0x9e3779b97f4a7c15ULL * (m + 1));
      std::mt19937_64 rng(derived);
      counts = std::poisson_distribution<std::uint64_t>(mu)(rng);
    }
    records.push_back({labels[m], counts, duration_s});
  }
  return records;
}

std::vector<MeasurementRecord> sample_counts(std::span<const double> probs, const PovmSet& p,
                                             double mean_total, std::uint64_t seed,
                                             double duration_s) {
  std::vector<std::string> labels;
  labels.reserve(p.size());
  for (const auto& e : p.elements()) {
    labels.push_back(e.label);
  }
  return sample_counts(probs, labels, mean_total, seed, duration_s);
}

}  // namespace tomolab
