#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "tomolab/sic_povm.hpp"

namespace tomolab {

/// Relative phase of the outer-slit amplitudes in the source pair state (rad).
inline constexpr double kPairStatePhase = 1.94;
/// Static path phase acquired on the way to either outer slit (rad).
inline constexpr double kSlitPathPhase = 0.922;
/// Per-slit phases of the Fourier-point detection ket (rad).
inline constexpr std::array<double, 3> kFourierPointPhases{0.81, 0.0, 0.81};
/// Default acquisition time per measurement setting (s).
inline constexpr double kAcquisitionSeconds = 1500.0;

/// Per-slit complex transmissions imposed by the modulator, |t| <= 1.
class SlmMask {
 public:
  SlmMask(Complex t0, Complex t1, Complex t2);
  static SlmMask open() { return SlmMask(1.0, 1.0, 1.0); }

  Complex transmission(int slit) const { return transmissions_.at(static_cast<std::size_t>(slit)); }
  CMatrix as_diagonal() const;

 private:
  std::array<Complex, 3> transmissions_;
};

struct MeasurementRecord {
  std::string element_label;
  std::uint64_t counts = 0;
  double duration_s = kAcquisitionSeconds;
};

/// (1/sqrt3) (e^{i phi}|02> + |11> + e^{i phi}|20>), the pair state produced
/// behind the triple slit. Basis index of |jk> is 3j+k, signal first.
Ket theoretical_state(double phi = kPairStatePhase);

/// Rank-one operator |+><+| with |+> = (1/sqrt3) sum_l e^{i delta_l} |l>,
/// implemented by detecting at the optical axis of the Fourier lens.
HermitianOperator fourier_point_projector(
    const std::array<double, 3>& static_phases = kFourierPointPhases);

/// (M_s (x) M_i)^dagger (P (x) P) (M_s (x) M_i) for diagonal mask matrices M.
HermitianOperator effective_element(const SlmMask& mask_s, const SlmMask& mask_i,
                                    const HermitianOperator& p);

/// Mask that blocks the slit absent from |psi_j> and sets the remaining two
/// phases so that the effective one-side element is proportional to
/// U_e^dagger Pi_j U_e. sic_index is 1-based.
SlmMask synthesize_mask_for_element(int sic_index,
                                    const std::array<double, 3>& static_phases = kFourierPointPhases,
                                    double phi_e = kSlitPathPhase);

/// p_m = Tr(Pi_m rho).
std::vector<double> born_probabilities(const DensityOperator& rho, const PovmSet& p);

/// Independent Poisson counts with mean mean_total * p_m per element.
/// Deterministic for a fixed seed; element m uses a generator derived from
/// (seed, m) so records are independent of evaluation order.
std::vector<MeasurementRecord> sample_counts(std::span<const double> probs,
                                             std::span<const std::string> labels,
                                             double mean_total, std::uint64_t seed,
                                             double duration_s = kAcquisitionSeconds);
std::vector<MeasurementRecord> sample_counts(std::span<const double> probs, const PovmSet& p,
                                             double mean_total, std::uint64_t seed,
                                             double duration_s = kAcquisitionSeconds);

}  // namespace tomolab
