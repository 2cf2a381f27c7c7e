// tomolab: simulate, reconstruct and analyse two-qutrit path tomography data.

#include <cstdio>
#include <iostream>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "tomolab/entanglement.hpp"
#include "tomolab/fourier_optics.hpp"
#include "tomolab/io.hpp"
#include "tomolab/tomography.hpp"

namespace {

using nlohmann::json;
using namespace tomolab;

constexpr int kExitOk = 0;
constexpr int kExitValidation = 2;
constexpr int kExitNoConvergence = 3;

struct GridSpec {
  double lo = 0.0;
  double hi = 2.0 * std::numbers::pi;
  int points = 629;
};

GridSpec parse_grid(const std::string& text) {
  GridSpec g;
  const std::size_t c1 = text.find(':');
  const std::size_t c2 = text.find(':', c1 + 1);
  if (c1 == std::string::npos || c2 == std::string::npos) {
    throw std::invalid_argument("grid must look like '<lo>:<hi>:<points>'");
  }
  try {
    g.lo = std::stod(text.substr(0, c1));
    g.hi = std::stod(text.substr(c1 + 1, c2 - c1 - 1));
    g.points = std::stoi(text.substr(c2 + 1));
  } catch (const std::exception&) {
    throw std::invalid_argument("grid must look like '<lo>:<hi>:<points>'");
  }
  if (g.points < 2 || !(g.hi > g.lo)) {
    throw std::invalid_argument("grid needs hi > lo and at least two points");
  }
  return g;
}

std::vector<double> grid_values(const GridSpec& g) {
  std::vector<double> values(static_cast<std::size_t>(g.points));
  for (int i = 0; i < g.points; ++i) {
    values[static_cast<std::size_t>(i)] = g.lo + (g.hi - g.lo) * i / (g.points - 1);
  }
  return values;
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
  } else {
    atomic_write_file(out_path, text);
  }
}

const PovmSet& canonical_product_povm() {
  static const PovmSet set = product_povm(sic_povm(), sic_povm());
  return set;
}

/// Counts file -> frequencies in canonical element order. Requires a full
/// 81-label run; the grand total estimates the photon flux.
std::vector<double> frequencies_from_file(const std::string& path) {
  const std::vector<MeasurementRecord> records = read_counts_csv(path);
  const PovmSet& povm = canonical_product_povm();
  if (records.size() != povm.size()) {
    throw std::invalid_argument(path + ": expected " + std::to_string(povm.size()) +
                                " count records, found " + std::to_string(records.size()));
  }
  double total = 0.0;
  for (const auto& r : records) {
    total += static_cast<double>(r.counts);
  }
  if (total <= 0.0) {
    throw std::invalid_argument(path + ": all counts are zero");
  }
  std::vector<double> freqs(povm.size(), -1.0);
  for (const auto& r : records) {
    bool matched = false;
    for (std::size_t m = 0; m < povm.size(); ++m) {
      if (povm.element(m).label == r.element_label) {
        freqs[m] = static_cast<double>(r.counts) / total;
        matched = true;
        break;
      }
    }
    if (!matched) {
      throw std::invalid_argument(path + ": unknown element label '" + r.element_label + "'");
    }
  }
  return freqs;
}

DensityOperator density_from_file(const std::string& path) {
  const MatrixFile f = read_matrix_json(path);
  if (f.re.rows() != 9 || f.re.cols() != 9) {
    throw std::invalid_argument(path + ": expected a 9x9 matrix");
  }
  return ingest_density(f);
}

json report_json(const SicReport& report) {
  return json{{"is_equidistant", report.is_equidistant},
              {"overlap_magnitude", report.overlap_magnitude},
              {"magnitude_spread", report.magnitude_spread},
              {"completeness_residual", report.completeness_residual},
              {"overlap_phases", report.overlap_phases}};
}

int run_povm(bool product, const std::string& out) {
  const SicReport report = verify_sic(sic_states());
  json summary = report_json(report);
  if (!out.empty()) {
    write_povm_json(out, product ? canonical_product_povm() : sic_povm());
    summary["written"] = out;
    summary["elements"] = product ? 81 : 9;
  }
  std::cout << summary.dump(2) << '\n';
  return kExitOk;
}

int run_simulate(double phi, double mean_total, std::uint64_t seed, double duration,
                 const std::string& out) {
  const PovmSet& povm = canonical_product_povm();
  const DensityOperator rho(projector(theoretical_state(phi)));
  const std::vector<double> probs = born_probabilities(rho, povm);
  const auto records = sample_counts(probs, povm, mean_total, seed, duration);
  emit(counts_csv_string(records), out);
  return kExitOk;
}

int run_reconstruct(const std::string& counts_path, int subset, const std::string& method,
                    int max_iters, double tol, const std::string& out) {
  const std::vector<double> freqs = frequencies_from_file(counts_path);
  const PovmSet& povm = canonical_product_povm();
  if (subset < 1 || subset > static_cast<int>(povm.size())) {
    throw std::invalid_argument("--subset must be in 1.." + std::to_string(povm.size()));
  }

  ReconstructionResult result = [&] {
    if (method == "linear") {
      if (subset != static_cast<int>(povm.size())) {
        throw std::invalid_argument("linear inversion needs the full element set");
      }
      return linear_inversion(freqs, povm);
    }
    VariationalOptions opts;
    opts.max_iters = max_iters;
    opts.tol = tol;
    return variational_reconstruct(std::span(freqs).first(static_cast<std::size_t>(subset)),
                                   povm.prefix(static_cast<std::size_t>(subset)), opts);
  }();

  json summary{{"method", method},
               {"residual", result.residual},
               {"iterations", result.iterations},
               {"n_elements_used", result.n_elements_used},
               {"converged", result.converged}};
  if (!out.empty()) {
    write_matrix_json(out, result.rho.matrix());
    summary["written"] = out;
  } else {
    json re = json::array(), im = json::array();
    for (Eigen::Index i = 0; i < 9; ++i) {
      json re_row = json::array(), im_row = json::array();
      for (Eigen::Index j = 0; j < 9; ++j) {
        re_row.push_back(result.rho.matrix()(i, j).real());
        im_row.push_back(result.rho.matrix()(i, j).imag());
      }
      re.push_back(std::move(re_row));
      im.push_back(std::move(im_row));
    }
    summary["rho"] = json{{"dim", {9, 9}}, {"re", std::move(re)}, {"im", std::move(im)}};
  }
  std::cout << summary.dump(2) << '\n';
  return result.converged ? kExitOk : kExitNoConvergence;
}

int run_entangle(const std::string& rho_path, double tol, const std::string& out) {
  const DensityOperator rho = density_from_file(rho_path);
  const EntanglementReport report = entanglement_report(rho, tol);
  const json j{{"negativity", report.negativity},
               {"robustness_ppt", report.robustness_ppt},
               {"solver_tol", report.solver_tol},
               {"converged", report.converged}};
  emit(j.dump(2) + "\n", out);
  return report.converged ? kExitOk : kExitNoConvergence;
}

int run_curve(const std::string& counts_path, const std::string& orderings, std::uint64_t seed,
              int permutations, int n_min, int n_max, int n_step, double robustness_tol,
              const std::string& out) {
  const std::vector<double> freqs = frequencies_from_file(counts_path);
  CurveOptions opts;
  opts.ordering = orderings == "random" ? CurveOrdering::random : CurveOrdering::canonical;
  opts.seed = seed;
  opts.n_permutations = permutations;
  opts.n_min = n_min;
  opts.n_max = n_max;
  opts.n_step = n_step;
  opts.robustness_tol = robustness_tol;
  const std::vector<CurvePoint> curve =
      entanglement_curve(freqs, canonical_product_povm(), opts);
  emit(curve_csv_string(curve), out);
  return kExitOk;
}

int run_interfere(const std::string& rho_path, double xi, double xs_min, double xs_max,
                  int points, int n_quad, const std::string& out) {
  const DensityOperator rho = density_from_file(rho_path);
  GridSpec spec;
  spec.lo = xs_min;
  spec.hi = xs_max;
  spec.points = points;
  if (points < 2 || !(xs_max > xs_min)) {
    throw std::invalid_argument("--xs-min/--xs-max/--points do not form a grid");
  }
  const std::vector<double> xs = grid_values(spec);
  const std::vector<double> pattern = interference_pattern(rho, xi, xs, {}, n_quad);
  emit(pattern_csv_string(xs, pattern), out);
  return kExitOk;
}

int run_fidelity_scan(const std::string& rho_path, const std::string& grid_text,
                      const std::string& convention, const std::string& out) {
  const DensityOperator rho = density_from_file(rho_path);
  const GridSpec grid = parse_grid(grid_text);
  const FidelityConvention conv = convention == "overlap" ? FidelityConvention::overlap
                                                          : FidelityConvention::sqrt_overlap;
  const FidelityScanResult scan = fidelity_scan(rho, grid_values(grid), conv);
  if (!out.empty()) {
    write_fidelity_csv(out, scan.curve);
  }
  const json j{{"phi_star", scan.phi_star},
               {"f_star", scan.f_star},
               {"convention", convention},
               {"grid_points", grid.points}};
  std::cout << j.dump(2) << '\n';
  return kExitOk;
}

int run_paper_repro(const std::string& out_dir, double robustness_tol) {
  const SicReport sic = verify_sic(sic_states());
  const DensityOperator rho = load_paper_rho();

  GridSpec grid;
  grid.points = 6284;
  const FidelityScanResult scan = fidelity_scan(rho, grid_values(grid));
  const double neg = negativity(rho);
  const RobustnessResult rob = generalized_robustness_ppt(rho, robustness_tol);

  const json j{{"povm_overlap_magnitude", sic.overlap_magnitude},
               {"povm_completeness_residual", sic.completeness_residual},
               {"f_star", scan.f_star},
               {"phi_star", scan.phi_star},
               {"negativity", neg},
               {"robustness_ppt", rob.value},
               {"solver_tol", robustness_tol},
               {"converged", rob.converged}};
  if (!out_dir.empty()) {
    std::filesystem::create_directories(out_dir);
    const std::filesystem::path dir(out_dir);
    write_matrix_json(dir / "rho_projected.json", rho.matrix());
    write_fidelity_csv(dir / "fidelity_scan.csv", scan.curve);
    write_povm_json(dir / "product_povm.json", canonical_product_povm());
  }
  std::cout << j.dump(2) << '\n';
  return rob.converged ? kExitOk : kExitNoConvergence;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"two-qutrit SIC-POVM tomography toolkit"};
  app.require_subcommand(1);

  // povm
  auto* povm = app.add_subcommand("povm", "emit the SIC / product POVM and a verification report");
  bool povm_product = false;
  std::string povm_out;
  povm->add_flag("--product", povm_product, "emit the 81-element product set");
  povm->add_option("--out", povm_out, "POVM JSON destination");

  // simulate
  auto* simulate = app.add_subcommand("simulate", "sample poisson counts from the source model");
  double sim_phi = kPairStatePhase;
  double sim_mean_total = 1e4;
  std::uint64_t sim_seed = 0;
  double sim_duration = kAcquisitionSeconds;
  std::string sim_out;
  simulate->add_option("--phi", sim_phi, "pair-state phase (rad)");
  simulate->add_option("--mean-total", sim_mean_total, "expected total counts over all settings")
      ->check(CLI::NonNegativeNumber);
  simulate->add_option("--seed", sim_seed, "RNG seed")->envname("TOMOLAB_SEED");
  simulate->add_option("--duration", sim_duration, "acquisition time per setting (s)");
  simulate->add_option("--out", sim_out, "counts CSV destination (stdout when omitted)");

  // reconstruct
  auto* reconstruct = app.add_subcommand("reconstruct", "density operator from a counts file");
  std::string rec_counts;
  int rec_subset = 81;
  std::string rec_method = "linear";
  int rec_max_iters = 20000;
  double rec_tol = 1e-12;
  std::string rec_out;
  reconstruct->add_option("--counts", rec_counts, "counts CSV (full 81-element run)")->required();
  reconstruct->add_option("--subset", rec_subset, "use the first N canonical elements");
  reconstruct->add_option("--method", rec_method, "linear | variational")
      ->check(CLI::IsMember({"linear", "variational"}));
  reconstruct->add_option("--max-iters", rec_max_iters, "variational iteration budget");
  reconstruct->add_option("--tol", rec_tol, "variational objective-decrease tolerance");
  reconstruct->add_option("--out", rec_out, "matrix JSON destination");

  // entangle
  auto* entangle = app.add_subcommand("entangle", "entanglement quantifiers of a density matrix");
  std::string ent_rho;
  double ent_tol = 1e-4;
  std::string ent_out;
  entangle->add_option("--rho", ent_rho, "matrix JSON")->required();
  entangle->add_option("--tol", ent_tol, "robustness solver tolerance");
  entangle->add_option("--out", ent_out, "report JSON destination (stdout when omitted)");

  // curve
  auto* curve = app.add_subcommand("curve", "entanglement versus number of POVM elements");
  std::string cur_counts;
  std::string cur_orderings = "canonical";
  std::uint64_t cur_seed = 0;
  int cur_permutations = 10;
  int cur_n_min = 1, cur_n_max = 81, cur_n_step = 1;
  double cur_rob_tol = 1e-3;
  std::string cur_out;
  curve->add_option("--counts", cur_counts, "counts CSV (full 81-element run)")->required();
  curve->add_option("--orderings", cur_orderings, "canonical | random")
      ->check(CLI::IsMember({"canonical", "random"}));
  curve->add_option("--seed", cur_seed, "permutation seed")->envname("TOMOLAB_SEED");
  curve->add_option("--permutations", cur_permutations, "random orderings to average");
  curve->add_option("--n-min", cur_n_min, "first N");
  curve->add_option("--n-max", cur_n_max, "last N");
  curve->add_option("--n-step", cur_n_step, "N increment");
  curve->add_option("--robustness-tol", cur_rob_tol, "robustness solver tolerance");
  curve->add_option("--out", cur_out, "curve CSV destination (stdout when omitted)");

  // interfere
  auto* interfere = app.add_subcommand("interfere", "conditional interference pattern");
  std::string int_rho;
  double int_xi = 0.0;
  double int_xs_min = -2e-3, int_xs_max = 2e-3;
  int int_points = 401;
  int int_n_quad = 64;
  std::string int_out;
  interfere->add_option("--rho", int_rho, "matrix JSON")->required();
  interfere->add_option("--xi", int_xi, "idler detector position (m)");
  interfere->add_option("--xs-min", int_xs_min, "signal scan start (m)");
  interfere->add_option("--xs-max", int_xs_max, "signal scan end (m)");
  interfere->add_option("--points", int_points, "grid points");
  interfere->add_option("--n-quad", int_n_quad, "quadrature nodes per window");
  interfere->add_option("--out", int_out, "pattern CSV destination (stdout when omitted)");

  // fidelity-scan
  auto* scan = app.add_subcommand("fidelity-scan", "fidelity against the source state over phi");
  std::string scan_rho;
  std::string scan_grid = "0:6.2832:629";
  std::string scan_convention = "sqrt_overlap";
  std::string scan_out;
  scan->add_option("--rho", scan_rho, "matrix JSON")->required();
  scan->add_option("--grid", scan_grid, "phi grid '<lo>:<hi>:<points>'");
  scan->add_option("--convention", scan_convention, "sqrt_overlap | overlap")
      ->check(CLI::IsMember({"sqrt_overlap", "overlap"}));
  scan->add_option("--out", scan_out, "curve CSV destination");

  // paper-repro
  auto* repro = app.add_subcommand("paper-repro", "analysis pipeline on the built-in tomogram");
  std::string repro_out_dir;
  double repro_tol = 1e-4;
  repro->add_option("--out-dir", repro_out_dir, "artifact directory");
  repro->add_option("--robustness-tol", repro_tol, "robustness solver tolerance");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitValidation;
  }

  try {
    if (povm->parsed()) {
      return run_povm(povm_product, povm_out);
    }
    if (simulate->parsed()) {
      return run_simulate(sim_phi, sim_mean_total, sim_seed, sim_duration, sim_out);
    }
    if (reconstruct->parsed()) {
      return run_reconstruct(rec_counts, rec_subset, rec_method, rec_max_iters, rec_tol, rec_out);
    }
    if (entangle->parsed()) {
      return run_entangle(ent_rho, ent_tol, ent_out);
    }
    if (curve->parsed()) {
      return run_curve(cur_counts, cur_orderings, cur_seed, cur_permutations, cur_n_min,
                       cur_n_max, cur_n_step, cur_rob_tol, cur_out);
    }
    if (interfere->parsed()) {
      return run_interfere(int_rho, int_xi, int_xs_min, int_xs_max, int_points, int_n_quad,
                           int_out);
    }
    if (scan->parsed()) {
      return run_fidelity_scan(scan_rho, scan_grid, scan_convention, scan_out);
    }
    if (repro->parsed()) {
      return run_paper_repro(repro_out_dir, repro_tol);
    }
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  }
  return kExitOk;
}
