#include "tomolab/io.hpp"

namespace tomolab {

namespace {

// Published two-qutrit tomogram in the {|00>,...,|22>} basis, two-decimal
// precision as printed.
constexpr double kFixtureRe[9][9] = {
    {0.04, -0.02, 0.01, 0.00, 0.03, -0.01, 0.02, -0.03, 0.01},
    {-0.02, 0.02, 0.00, 0.01, -0.01, 0.00, -0.01, 0.00, -0.02},
    {0.01, 0.00, 0.18, 0.01, 0.18, 0.03, 0.21, 0.04, 0.00},
    {0.00, 0.01, 0.01, 0.04, 0.01, 0.00, 0.05, 0.01, -0.01},
    {0.03, -0.01, 0.18, 0.01, 0.24, 0.03, 0.18, 0.03, 0.01},
    {-0.01, 0.00, 0.03, 0.00, 0.03, 0.02, 0.04, 0.03, 0.01},
    {0.02, -0.01, 0.21, 0.05, 0.18, 0.04, 0.34, 0.05, 0.02},
    {-0.03, 0.00, 0.04, 0.01, 0.03, 0.03, 0.05, 0.10, 0.03},
    {0.01, -0.02, 0.00, -0.01, 0.01, 0.01, 0.02, 0.03, 0.03},
};

constexpr double kFixtureIm[9][9] = {
    {0.00, 0.00, 0.00, -0.03, -0.01, 0.00, -0.04, -0.02, -0.01},
    {0.00, 0.00, -0.01, 0.02, 0.00, 0.01, 0.02, 0.02, 0.01},
    {0.00, 0.01, 0.00, 0.00, 0.09, 0.00, -0.09, 0.00, -0.01},
    {0.03, -0.02, 0.00, 0.00, 0.03, 0.01, 0.02, -0.02, 0.02},
    {0.01, 0.00, -0.09, -0.03, 0.00, -0.02, -0.22, -0.03, -0.01},
    {0.00, -0.01, 0.00, -0.01, 0.02, 0.00, -0.02, 0.02, 0.01},
    {0.04, -0.02, 0.09, -0.02, 0.22, 0.02, 0.00, 0.00, 0.02},
    {0.02, -0.02, 0.00, 0.02, 0.03, -0.02, 0.00, 0.00, 0.00},
    {0.01, -0.01, 0.01, -0.02, 0.01, -0.01, -0.02, 0.00, 0.00},
};

}  // namespace

const CMatrix& paper_rho_raw() {
  static const CMatrix fixture = [] {
    CMatrix m(9, 9);
    for (int i = 0; i < 9; ++i) {
      for (int j = 0; j < 9; ++j) {
        m(i, j) = Complex(kFixtureRe[i][j], kFixtureIm[i][j]);
      }
    }
    return m;
  }();
  return fixture;
}

DensityOperator load_paper_rho() {
  const CMatrix& raw = paper_rho_raw();
  return nearest_density_operator(HermitianOperator(0.5 * (raw + raw.adjoint())));
}

}  // namespace tomolab
