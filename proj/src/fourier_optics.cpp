#include "tomolab/fourier_optics.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace tomolab {

namespace {

struct Quadrature {
  std::vector<double> nodes;    // on [-1, 1]
  std::vector<double> weights;  // positive
};

// Gauss-Legendre nodes by Newton iteration on the Legendre polynomial.
Quadrature gauss_legendre(int n) {
  Quadrature q;
  q.nodes.resize(static_cast<std::size_t>(n));
  q.weights.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) {
        break;
      }
    }
    q.nodes[static_cast<std::size_t>(n - 1 - i)] = x;
    q.weights[static_cast<std::size_t>(n - 1 - i)] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  return q;
}

const Quadrature& cached_gauss_legendre(int n) {
  static std::mutex mutex;
  static std::map<int, Quadrature> cache;
  std::scoped_lock lock(mutex);
  auto [it, inserted] = cache.try_emplace(n);
  if (inserted) {
    it->second = gauss_legendre(n);
  }
  return it->second;
}

double sinc(double u) { return u == 0.0 ? 1.0 : std::sin(u) / u; }

}  // namespace

double ExperimentGeometry::wavenumber() const { return 2.0 * std::numbers::pi / wavelength; }

double ExperimentGeometry::fringe_period() const {
  return wavelength * focal_length / slit_spacing;
}

void ExperimentGeometry::validate() const {
  const bool ok = slit_half_width > 0.0 && slit_spacing > 0.0 && wavelength > 0.0 &&
                  focal_length > 0.0 && detector_half_width > 0.0;
  if (!ok) {
    throw std::invalid_argument("ExperimentGeometry: all lengths must be positive");
  }
}

HermitianOperator detection_operator(double x, const ExperimentGeometry& g, int n_quad) {
  g.validate();
  if (n_quad < 8) {
    throw std::invalid_argument("detection_operator: n_quad must be at least 8");
  }
  const Quadrature& q = cached_gauss_legendre(n_quad);
  const double k = g.wavenumber();
  const double b = g.detector_half_width;

  CMatrix out = CMatrix::Zero(3, 3);
  for (int node = 0; node < n_quad; ++node) {
    const double xp = x + b * q.nodes[static_cast<std::size_t>(node)];
    const double w = b * q.weights[static_cast<std::size_t>(node)];
    const double envelope = sinc(k * g.slit_half_width * xp / (2.0 * g.focal_length));
    const double amp = w * envelope * envelope;
    // phase advance per slit index: k d x' / f, so adjacent maxima sit
    // lambda f / d apart
    const double slit_phase = k * g.slit_spacing * xp / g.focal_length;
    for (int l = 0; l < 3; ++l) {
      for (int m = 0; m < 3; ++m) {
        out(l, m) += amp * std::polar(1.0, slit_phase * (l - m));
      }
    }
  }
  for (int l = 0; l < 3; ++l) {
    for (int m = 0; m < 3; ++m) {
      out(l, m) *= std::polar(1.0, g.static_phases[static_cast<std::size_t>(l)] -
                                       g.static_phases[static_cast<std::size_t>(m)]);
    }
  }
  return HermitianOperator(out);
}

std::vector<double> interference_pattern(const DensityOperator& rho, double x_i,
                                         std::span<const double> xs_grid,
                                         const ExperimentGeometry& g, int n_quad) {
  if (rho.dim() != 9) {
    throw std::invalid_argument("interference_pattern: state must be 9-dimensional");
  }
  if (xs_grid.empty()) {
    throw std::invalid_argument("interference_pattern: empty grid");
  }
  const HermitianOperator idler = detection_operator(x_i, g, n_quad);
  std::vector<double> pattern;
  pattern.reserve(xs_grid.size());
  for (const double xs : xs_grid) {
    const HermitianOperator signal = detection_operator(xs, g, n_quad);
    const HermitianOperator joint = tensor(signal, idler);
    pattern.push_back((joint.matrix() * rho.matrix()).trace().real());
  }
  return pattern;
}

double fringe_shift(std::span<const double> xs_grid, std::span<const double> pattern_a,
                    std::span<const double> pattern_b, const ExperimentGeometry& g) {
  g.validate();
  if (xs_grid.size() != pattern_a.size() || xs_grid.size() != pattern_b.size()) {
    throw std::invalid_argument("fringe_shift: grid and patterns must have equal length");
  }
  if (xs_grid.size() < 4) {
    throw std::invalid_argument("fringe_shift: grid too short");
  }
  const double span = xs_grid.back() - xs_grid.front();
  if (span < 2.0 * g.fringe_period()) {
    throw std::invalid_argument("fringe_shift: grid spans fewer than two fringe periods");
  }

  const double nu = g.slit_spacing / (g.wavelength * g.focal_length);
  const auto fundamental_phase = [&](std::span<const double> pattern) {
    double mean = 0.0;
    for (const double v : pattern) {
      mean += v;
    }
    mean /= static_cast<double>(pattern.size());
    Complex coeff = 0.0;
    for (std::size_t i = 0; i < pattern.size(); ++i) {
      coeff += (pattern[i] - mean) * std::polar(1.0, -2.0 * std::numbers::pi * nu * xs_grid[i]);
    }
    return std::arg(coeff);
  };

  double shift = fundamental_phase(pattern_b) - fundamental_phase(pattern_a);
  while (shift > std::numbers::pi) {
    shift -= 2.0 * std::numbers::pi;
  }
  while (shift <= -std::numbers::pi) {
    shift += 2.0 * std::numbers::pi;
  }
  return shift;
}

}  // namespace tomolab
