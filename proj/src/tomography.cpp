#include "tomolab/tomography.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

#include "tomolab/entanglement.hpp"

namespace tomolab {

namespace {

double rms_misfit(const CMatrix& rho, std::span<const double> freqs, const PovmSet& p) {
  double ss = 0.0;
  for (std::size_t m = 0; m < p.size(); ++m) {
    const double d = (p.element(m).op.matrix() * rho).trace().real() - freqs[m];
    ss += d * d;
  }
  return std::sqrt(ss / static_cast<double>(p.size()));
}

double objective(const CMatrix& rho, std::span<const double> freqs, const PovmSet& p) {
  double ss = 0.0;
  for (std::size_t m = 0; m < p.size(); ++m) {
    const double d = (p.element(m).op.matrix() * rho).trace().real() - freqs[m];
    ss += d * d;
  }
  return ss;
}

/// Orthonormal basis of the Hermitian matrices under Tr(AB): diagonal units,
/// then (E_ij + E_ji)/sqrt2 and i(E_ij - E_ji)/sqrt2 for i < j.
std::vector<CMatrix> hermitian_basis(Eigen::Index n) {
  std::vector<CMatrix> basis;
  basis.reserve(static_cast<std::size_t>(n * n));
  const double s = 1.0 / std::sqrt(2.0);
  for (Eigen::Index i = 0; i < n; ++i) {
    CMatrix e = CMatrix::Zero(n, n);
    e(i, i) = 1.0;
    basis.push_back(std::move(e));
  }
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      CMatrix sym = CMatrix::Zero(n, n);
      sym(i, j) = s;
      sym(j, i) = s;
      basis.push_back(std::move(sym));
      CMatrix asym = CMatrix::Zero(n, n);
      asym(i, j) = Complex(0.0, s);
      asym(j, i) = Complex(0.0, -s);
      basis.push_back(std::move(asym));
    }
  }
  return basis;
}

double gram_largest_eigenvalue(const PovmSet& p) {
  const std::size_t n = p.size();
  Eigen::MatrixXd gram(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      const double g = (p.element(i).op.matrix() * p.element(j).op.matrix()).trace().real();
      gram(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = g;
      gram(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) = g;
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(gram, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().maxCoeff();
}

}  // namespace

ReconstructionResult linear_inversion(std::span<const double> freqs, const PovmSet& p) {
  if (freqs.size() != p.size()) {
    throw std::invalid_argument("linear_inversion: frequency/element count mismatch");
  }
  const Eigen::Index dim = p.dim();
  const std::vector<CMatrix> basis = hermitian_basis(dim);
  const Eigen::Index nb = static_cast<Eigen::Index>(basis.size());
  const Eigen::Index nm = static_cast<Eigen::Index>(p.size());

  Eigen::MatrixXd design(nm, nb);
  for (Eigen::Index m = 0; m < nm; ++m) {
    const CMatrix& pi = p.element(static_cast<std::size_t>(m)).op.matrix();
    for (Eigen::Index k = 0; k < nb; ++k) {
      design(m, k) = (pi * basis[static_cast<std::size_t>(k)]).trace().real();
    }
  }

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(design, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const double smax = svd.singularValues()(0);
  const double smin = svd.singularValues()(svd.singularValues().size() - 1);
  if (nm < nb || smin <= smax * 1e-10) {
    throw std::invalid_argument("linear_inversion: measurement map is rank-deficient");
  }

  Eigen::VectorXd f(nm);
  for (Eigen::Index m = 0; m < nm; ++m) {
    f(m) = freqs[static_cast<std::size_t>(m)];
  }
  const Eigen::VectorXd coeffs = svd.solve(f);

  CMatrix h = CMatrix::Zero(dim, dim);
  for (Eigen::Index k = 0; k < nb; ++k) {
    h += coeffs(k) * basis[static_cast<std::size_t>(k)];
  }

  ReconstructionResult result{nearest_density_operator(HermitianOperator(h)), 0.0, 0,
                              static_cast<int>(p.size()), true};
  result.residual = rms_misfit(result.rho.matrix(), freqs, p);
  return result;
}

ReconstructionResult variational_reconstruct(std::span<const double> freqs, const PovmSet& p,
                                             const VariationalOptions& opts) {
  if (freqs.size() != p.size()) {
    throw std::invalid_argument("variational_reconstruct: frequency/element count mismatch");
  }
  if (p.size() == 0) {
    throw std::invalid_argument("variational_reconstruct: at least one element required");
  }
  const Eigen::Index dim = p.dim();
  const double base_step = opts.step > 0.0 ? opts.step : 0.5 / gram_largest_eigenvalue(p);

  CMatrix rho = CMatrix::Identity(dim, dim) / static_cast<double>(dim);
  double obj = objective(rho, freqs, p);

  int evals = 1;
  int accepted = 0;
  bool converged = false;
  while (evals < opts.max_iters) {
    CMatrix grad = CMatrix::Zero(dim, dim);
    for (std::size_t m = 0; m < p.size(); ++m) {
      const double r = (p.element(m).op.matrix() * rho).trace().real() - freqs[m];
      grad += (2.0 * r) * p.element(m).op.matrix();
    }

    double step = base_step;
    bool improved = false;
    double decrease = 0.0;
    while (evals < opts.max_iters && step > base_step * 0x1p-50) {
      const CMatrix candidate = detail::project_to_density_cone(rho - step * grad);
      const double cobj = objective(candidate, freqs, p);
      ++evals;
      if (cobj < obj) {
        decrease = obj - cobj;
        rho = candidate;
        obj = cobj;
        improved = true;
        ++accepted;
        if (opts.on_accept) {
          opts.on_accept(accepted, obj);
        }
        break;
      }
      step *= 0.5;
    }
    if (!improved) {
      // no step of any size improves: stationary, hence optimal for this
      // convex objective
      converged = step <= base_step * 0x1p-50;
      break;
    }
    if (decrease < opts.tol) {
      converged = true;
      break;
    }
  }

  ReconstructionResult result{DensityOperator(HermitianOperator(rho)), 0.0, evals,
                              static_cast<int>(p.size()), converged};
  result.residual = rms_misfit(result.rho.matrix(), freqs, p);
  return result;
}

ReconstructionResult variational_reconstruct(std::span<const MeasurementRecord> records,
                                             const PovmSet& p, const VariationalOptions& opts) {
  if (records.size() != p.size()) {
    throw std::invalid_argument("variational_reconstruct: record/element count mismatch");
  }
  double total = 0.0;
  for (const auto& r : records) {
    total += static_cast<double>(r.counts);
  }
  if (total <= 0.0) {
    throw std::invalid_argument("variational_reconstruct: no counts");
  }
  std::vector<double> freqs;
  freqs.reserve(records.size());
  for (std::size_t m = 0; m < records.size(); ++m) {
    if (records[m].element_label != p.element(m).label) {
      throw std::invalid_argument("variational_reconstruct: record label '" +
                                  records[m].element_label + "' does not match element '" +
                                  p.element(m).label + "'");
    }
    freqs.push_back(static_cast<double>(records[m].counts) / total);
  }
  return variational_reconstruct(freqs, p, opts);
}

std::vector<CurvePoint> entanglement_curve(std::span<const double> freqs, const PovmSet& p,
                                           const CurveOptions& opts) {
  if (freqs.size() != p.size()) {
    throw std::invalid_argument("entanglement_curve: full frequency vector required");
  }
  const int n_total = static_cast<int>(p.size());
  const int n_max = opts.n_max > 0 ? std::min(opts.n_max, n_total) : n_total;
  if (opts.n_min < 1 || opts.n_min > n_max || opts.n_step < 1) {
    throw std::invalid_argument("entanglement_curve: bad N grid");
  }

  std::vector<std::vector<std::size_t>> orderings;
  if (opts.ordering == CurveOrdering::canonical) {
    std::vector<std::size_t> identity(static_cast<std::size_t>(n_total));
    std::iota(identity.begin(), identity.end(), 0u);
    orderings.push_back(std::move(identity));
  } else {
    std::mt19937_64 rng(opts.seed);
    for (int k = 0; k < opts.n_permutations; ++k) {
      std::vector<std::size_t> perm(static_cast<std::size_t>(n_total));
      std::iota(perm.begin(), perm.end(), 0u);
      std::shuffle(perm.begin(), perm.end(), rng);
      orderings.push_back(std::move(perm));
    }
  }

  std::vector<CurvePoint> curve;
  for (int n = opts.n_min; n <= n_max; n += opts.n_step) {
    CurvePoint point{n, 0.0, 0.0};
    for (const auto& order : orderings) {
      std::vector<PovmElement> subset_elements;
      std::vector<double> subset_freqs;
      subset_elements.reserve(static_cast<std::size_t>(n));
      subset_freqs.reserve(static_cast<std::size_t>(n));
      for (int i = 0; i < n; ++i) {
        const std::size_t idx = order[static_cast<std::size_t>(i)];
        subset_elements.push_back(p.element(idx));
        subset_freqs.push_back(freqs[idx]);
      }
      const PovmSet subset(std::move(subset_elements), p.dim());
      const ReconstructionResult rec = variational_reconstruct(subset_freqs, subset,
                                                               opts.reconstruction);
      point.negativity += negativity(rec.rho);
      point.robustness += generalized_robustness_ppt(rec.rho, opts.robustness_tol).value;
    }
    const double norm = static_cast<double>(orderings.size());
    point.negativity /= norm;
    point.robustness /= norm;
    curve.push_back(point);
  }
  return curve;
}

FidelityScanResult fidelity_scan(const DensityOperator& rho, std::span<const double> phi_grid,
                                 FidelityConvention convention) {
  if (phi_grid.empty()) {
    throw std::invalid_argument("fidelity_scan: empty grid");
  }
  FidelityScanResult result;
  result.curve.reserve(phi_grid.size());
  std::size_t best = 0;
  for (std::size_t i = 0; i < phi_grid.size(); ++i) {
    const double f = pure_fidelity(rho, theoretical_state(phi_grid[i]), convention);
    result.curve.emplace_back(phi_grid[i], f);
    if (f > result.curve[best].second) {
      best = i;
    }
  }
  result.phi_star = result.curve[best].first;
  result.f_star = result.curve[best].second;

  if (best > 0 && best + 1 < phi_grid.size()) {
    // quadratic refinement through the maximum and its neighbours
    const auto [x0, y0] = result.curve[best - 1];
    const auto [x1, y1] = result.curve[best];
    const auto [x2, y2] = result.curve[best + 1];
    const double denom = (x0 - x1) * (x0 - x2) * (x1 - x2);
    if (std::abs(denom) > 0.0) {
      const double a = (x2 * (y1 - y0) + x1 * (y0 - y2) + x0 * (y2 - y1)) / denom;
      const double b =
          (x2 * x2 * (y0 - y1) + x1 * x1 * (y2 - y0) + x0 * x0 * (y1 - y2)) / denom;
      if (a < 0.0) {
        const double vertex = std::clamp(-b / (2.0 * a), x0, x2);
        const double f = pure_fidelity(rho, theoretical_state(vertex), convention);
        if (f >= result.f_star) {
          result.phi_star = vertex;
          result.f_star = f;
        }
      }
    }
  }
  return result;
}

}  // namespace tomolab
