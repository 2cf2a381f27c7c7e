#pragma once

#include <array>
#include <span>
#include <vector>

#include "tomolab/experiment.hpp"

namespace tomolab {

/// Triple-slit / Fourier-lens geometry. Defaults match the tabletop setup:
/// 100 um slits every 250 um, 810 nm light, 200 mm lenses, 100 um detector
/// slits.
struct ExperimentGeometry {
  double slit_half_width = 50e-6;
  double slit_spacing = 250e-6;  // centre to centre
  double wavelength = 810e-9;
  double focal_length = 0.2;
  double detector_half_width = 50e-6;
  std::array<double, 3> static_phases = kFourierPointPhases;

  double wavenumber() const;
  /// Spacing of adjacent interference maxima: wavelength * focal_length / slit_spacing.
  double fringe_period() const;
  void validate() const;
};

/// Detection operator of a detector-slit window centred at x in the Fourier
/// plane: the windowed integral of sinc^2(k a x'/2f) sum_lm e^{i k d (l-m) x'/f}
/// |l><m|, evaluated by Gauss-Legendre quadrature and conjugated by the
/// static path phases. Positive semidefinite by construction.
HermitianOperator detection_operator(double x, const ExperimentGeometry& g = {}, int n_quad = 64);

/// Coincidence rate Tr[(Pi_s(x_s) (x) Pi_i(x_i)) rho] for each x_s on the
/// grid, with the idler detector fixed at x_i.
std::vector<double> interference_pattern(const DensityOperator& rho, double x_i,
                                         std::span<const double> xs_grid,
                                         const ExperimentGeometry& g = {}, int n_quad = 64);

/// Phase difference (b minus a, wrapped to (-pi, pi]) of the fundamental
/// fringe component at spatial frequency slit_spacing / (wavelength *
/// focal_length). The patterns must share a uniform grid spanning at least
/// two fringe periods.
double fringe_shift(std::span<const double> xs_grid, std::span<const double> pattern_a,
                    std::span<const double> pattern_b, const ExperimentGeometry& g = {});

}  // namespace tomolab
