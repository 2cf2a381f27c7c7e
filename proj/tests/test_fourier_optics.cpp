#include <doctest.h>

#include <cmath>
#include <numbers>

#include "test_support.hpp"
#include "tomolab/fourier_optics.hpp"

using namespace tomolab;

namespace {

std::vector<double> uniform_grid(double lo, double hi, int n) {
  std::vector<double> g(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    g[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (n - 1);
  }
  return g;
}

// Product state: signal photon behind a two-slit mask with relative phase
// beta (third slit blocked), idler balanced.
DensityOperator two_slit_state(double beta) {
  CVector ws = CVector::Zero(3);
  ws(0) = 1.0 / std::numbers::sqrt2;
  ws(1) = std::polar(1.0 / std::numbers::sqrt2, beta);
  CVector wi(3);
  wi.setConstant(Complex(1.0 / std::numbers::sqrt3, 0.0));
  CVector joint(9);
  for (int j = 0; j < 3; ++j) {
    for (int k = 0; k < 3; ++k) {
      joint(3 * j + k) = ws(j) * wi(k);
    }
  }
  return DensityOperator(projector(Ket(std::move(joint))));
}

// Magnitude of the fundamental fringe component relative to the mean.
double visibility(const std::vector<double>& xs, const std::vector<double>& pattern,
                  const ExperimentGeometry& g) {
  const double nu = g.slit_spacing / (g.wavelength * g.focal_length);
  double mean = 0.0;
  for (const double v : pattern) {
    mean += v;
  }
  mean /= static_cast<double>(pattern.size());
  Complex coeff = 0.0;
  for (std::size_t i = 0; i < pattern.size(); ++i) {
    coeff += (pattern[i] - mean) * std::polar(1.0, -2.0 * std::numbers::pi * nu * xs[i]);
  }
  return std::abs(coeff) / (mean * static_cast<double>(pattern.size()));
}

}  // namespace

TEST_CASE("geometry defaults and validation") {
  const ExperimentGeometry g;
  CHECK(g.fringe_period() == doctest::Approx(648e-6).epsilon(1e-12));
  CHECK(g.wavenumber() == doctest::Approx(2.0 * std::numbers::pi / 810e-9).epsilon(1e-12));
  ExperimentGeometry bad;
  bad.focal_length = 0.0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  CHECK_THROWS_AS(detection_operator(0.0, ExperimentGeometry{}, 4), std::invalid_argument);
}

TEST_CASE("detection operator approaches the flat projector for a narrow window") {
  ExperimentGeometry g;
  g.detector_half_width = 3e-8;
  g.static_phases = {0.0, 0.0, 0.0};
  const CMatrix pi = detection_operator(0.0, g, 64).matrix();
  const double scale = std::abs(pi(0, 0));
  for (Eigen::Index l = 0; l < 3; ++l) {
    for (Eigen::Index m = 0; m < 3; ++m) {
      CHECK(std::abs(pi(l, m) - pi(0, 0)) / scale < 1e-6);
    }
  }
}

TEST_CASE("quadrature converges under node doubling") {
  const ExperimentGeometry g;
  for (const double x : {0.0, 137e-6, 529e-6}) {
    const CMatrix coarse = detection_operator(x, g, 32).matrix();
    const CMatrix fine = detection_operator(x, g, 64).matrix();
    CHECK((coarse - fine).cwiseAbs().maxCoeff() < 1e-10 * fine.cwiseAbs().maxCoeff());
  }
}

TEST_CASE("detection operator is positive with an envelope-only diagonal") {
  const ExperimentGeometry g;
  for (const double x : {-420e-6, 0.0, 333e-6}) {
    const HermitianOperator pi = detection_operator(x, g);
    const Eigensystem eig = hermitian_eigensystem(pi);
    CHECK(eig.eigenvalues.minCoeff() >= -1e-12 * eig.eigenvalues.maxCoeff());
    for (Eigen::Index l = 0; l < 3; ++l) {
      CHECK(pi.matrix()(l, l).real() > 0.0);
      CHECK(std::abs(pi.matrix()(l, l).imag()) < 1e-20);
      // the diagonal carries no fringe: all slots see the same envelope
      CHECK(pi.matrix()(l, l) == pi.matrix()(0, 0));
    }
  }
}

TEST_CASE("off-diagonal phase advances a full turn per fringe period") {
  const ExperimentGeometry g;
  const double period = g.fringe_period();
  const double x0 = 50e-6;
  const auto phase_01 = [&](double x) {
    return std::arg(detection_operator(x, g).matrix()(0, 1));
  };
  const double full = std::remainder(phase_01(x0 + period) - phase_01(x0), 2.0 * std::numbers::pi);
  CHECK(std::abs(full) < 1e-2);
  const double quarter = phase_01(x0 + period / 4.0) - phase_01(x0);
  CHECK(std::abs(std::abs(std::remainder(quarter, 2.0 * std::numbers::pi)) -
                 std::numbers::pi / 2.0) < 1e-2);
}

TEST_CASE("uniform state shows the envelope but no fringes") {
  const ExperimentGeometry g;
  const DensityOperator uniform(HermitianOperator(CMatrix::Identity(9, 9) / 9.0));
  const std::vector<double> xs = uniform_grid(-1.3e-3, 1.3e-3, 401);
  const std::vector<double> pattern = interference_pattern(uniform, 0.0, xs, g);
  // dividing out the single-slit envelope must leave a constant
  double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double envelope = detection_operator(xs[i], g).matrix()(0, 0).real();
    const double level = pattern[i] / envelope;
    lo = std::min(lo, level);
    hi = std::max(hi, level);
  }
  CHECK((hi - lo) / (hi + lo) < 1e-6);
}

TEST_CASE("pair-state conditional patterns shift with the idler position") {
  const ExperimentGeometry g;
  const DensityOperator rho(projector(theoretical_state()));
  const std::vector<double> xs = uniform_grid(-1.3e-3, 1.3e-3, 401);
  const std::vector<double> at_zero = interference_pattern(rho, 0.0, xs, g);
  const std::vector<double> at_350 = interference_pattern(rho, 350e-6, xs, g);
  CHECK(visibility(xs, at_zero, g) > 0.1);  // conditional fringes are visible
  const double shift = fringe_shift(xs, at_zero, at_350, g);
  CHECK(std::abs(shift) > 0.5);  // far detector positions give distinct fringes
}

TEST_CASE("patterns are non-negative for random states") {
  std::mt19937_64 rng(71);
  const ExperimentGeometry g;
  const std::vector<double> xs = uniform_grid(-600e-6, 600e-6, 5);
  for (int trial = 0; trial < 200; ++trial) {
    const DensityOperator rho = testing::random_density(9, rng);
    for (const double v : interference_pattern(rho, 120e-6, xs, g, 32)) {
      CHECK(v >= -1e-12);
    }
  }
}

TEST_CASE("interference pattern is linear in the state") {
  std::mt19937_64 rng(72);
  const ExperimentGeometry g;
  const std::vector<double> xs = uniform_grid(-500e-6, 500e-6, 7);
  const DensityOperator rho1 = testing::random_density(9, rng);
  const DensityOperator rho2 = testing::random_density(9, rng);
  const double p = 0.3;
  const DensityOperator mix(HermitianOperator(p * rho1.matrix() + (1.0 - p) * rho2.matrix()));
  const std::vector<double> ip1 = interference_pattern(rho1, 0.0, xs, g);
  const std::vector<double> ip2 = interference_pattern(rho2, 0.0, xs, g);
  const std::vector<double> ipm = interference_pattern(mix, 0.0, xs, g);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    CHECK(std::abs(ipm[i] - (p * ip1[i] + (1.0 - p) * ip2[i])) < 1e-12);
  }
}

TEST_CASE("coherence magnitudes bound the pattern") {
  std::mt19937_64 rng(73);
  const ExperimentGeometry g;
  g.validate();
  const std::vector<double> xs = uniform_grid(-500e-6, 500e-6, 7);
  const HermitianOperator idler = detection_operator(240e-6, g);
  for (int trial = 0; trial < 20; ++trial) {
    const DensityOperator rho = testing::random_density(9, rng);
    for (const double x : xs) {
      const HermitianOperator signal = detection_operator(x, g);
      const CMatrix joint = tensor(signal, idler).matrix();
      const double ip = (joint * rho.matrix()).trace().real();
      const double bound = (joint.cwiseAbs() * rho.matrix().cwiseAbs()).trace();
      CHECK(ip <= bound + 1e-15);
    }
  }
}

TEST_CASE("fringe_shift: identity, antisymmetry, two-thirds-pi mask") {
  const ExperimentGeometry g;
  const std::vector<double> xs = uniform_grid(-1.296e-3, 1.296e-3, 601);

  const std::vector<double> base =
      interference_pattern(two_slit_state(0.0), 0.0, xs, g);
  CHECK(fringe_shift(xs, base, base, g) == doctest::Approx(0.0).epsilon(1e-12));

  const std::vector<double> shifted =
      interference_pattern(two_slit_state(2.0 * std::numbers::pi / 3.0), 0.0, xs, g);
  const double delta = fringe_shift(xs, base, shifted, g);
  CHECK(std::abs(std::abs(delta) - 2.0 * std::numbers::pi / 3.0) < 0.02);
  CHECK(fringe_shift(xs, shifted, base, g) == doctest::Approx(-delta).epsilon(1e-12));
}

TEST_CASE("fringe_shift rejects bad grids") {
  const ExperimentGeometry g;
  const std::vector<double> xs = uniform_grid(-200e-6, 200e-6, 101);  // < 2 periods
  const std::vector<double> flat(101, 1.0);
  CHECK_THROWS_AS(fringe_shift(xs, flat, flat, g), std::invalid_argument);
  const std::vector<double> long_grid = uniform_grid(-1.3e-3, 1.3e-3, 101);
  CHECK_THROWS_AS(fringe_shift(long_grid, flat, std::vector<double>(100, 1.0), g),
                  std::invalid_argument);
}
