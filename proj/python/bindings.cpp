#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "tomolab/entanglement.hpp"
#include "tomolab/fourier_optics.hpp"
#include "tomolab/io.hpp"
#include "tomolab/tomography.hpp"

namespace py = pybind11;
using namespace tomolab;

namespace {

DensityOperator to_density(const CMatrix& m) {
  return DensityOperator(HermitianOperator(m));
}

Ket to_ket(const CVector& v) { return Ket(v); }

SlmMask to_mask(const std::array<Complex, 3>& t) { return SlmMask(t[0], t[1], t[2]); }

FidelityConvention to_convention(const std::string& name) {
  if (name == "overlap") {
    return FidelityConvention::overlap;
  }
  if (name == "sqrt_overlap") {
    return FidelityConvention::sqrt_overlap;
  }
  throw std::invalid_argument("convention must be 'overlap' or 'sqrt_overlap'");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Minimum two-qutrit state tomography with local SIC-POVMs";

  m.attr("PAIR_STATE_PHASE") = kPairStatePhase;
  m.attr("SLIT_PATH_PHASE") = kSlitPathPhase;
  m.attr("FOURIER_POINT_PHASES") = kFourierPointPhases;

  py::class_<PovmSet>(m, "PovmSet")
      .def("__len__", &PovmSet::size)
      .def_property_readonly("dim", &PovmSet::dim)
      .def("labels",
           [](const PovmSet& p) {
             std::vector<std::string> out;
             for (const auto& e : p.elements()) {
               out.push_back(e.label);
             }
             return out;
           })
      .def("matrices",
           [](const PovmSet& p) {
             std::vector<CMatrix> out;
             for (const auto& e : p.elements()) {
               out.push_back(e.op.matrix());
             }
             return out;
           })
      .def("completeness_residual", &PovmSet::completeness_residual)
      .def("is_complete", &PovmSet::is_complete)
      .def("prefix", &PovmSet::prefix, py::arg("n"));

  py::class_<MeasurementRecord>(m, "MeasurementRecord")
      .def_readonly("element_label", &MeasurementRecord::element_label)
      .def_readonly("counts", &MeasurementRecord::counts)
      .def_readonly("duration_s", &MeasurementRecord::duration_s)
      .def("__repr__", [](const MeasurementRecord& r) {
        return "MeasurementRecord('" + r.element_label + "', " + std::to_string(r.counts) + ")";
      });

  py::class_<ReconstructionResult>(m, "ReconstructionResult")
      .def_property_readonly("rho",
                             [](const ReconstructionResult& r) { return r.rho.matrix(); })
      .def_readonly("residual", &ReconstructionResult::residual)
      .def_readonly("iterations", &ReconstructionResult::iterations)
      .def_readonly("n_elements_used", &ReconstructionResult::n_elements_used)
      .def_readonly("converged", &ReconstructionResult::converged);

  py::class_<RobustnessResult>(m, "RobustnessResult")
      .def_readonly("value", &RobustnessResult::value)
      .def_readonly("converged", &RobustnessResult::converged);

  py::class_<EntanglementReport>(m, "EntanglementReport")
      .def_readonly("negativity", &EntanglementReport::negativity)
      .def_readonly("robustness_ppt", &EntanglementReport::robustness_ppt)
      .def_readonly("solver_tol", &EntanglementReport::solver_tol)
      .def_readonly("converged", &EntanglementReport::converged);

  py::class_<FidelityScanResult>(m, "FidelityScanResult")
      .def_readonly("phi_star", &FidelityScanResult::phi_star)
      .def_readonly("f_star", &FidelityScanResult::f_star)
      .def_readonly("curve", &FidelityScanResult::curve);

  py::class_<ExperimentGeometry>(m, "ExperimentGeometry")
      .def(py::init<>())
      .def_readwrite("slit_half_width", &ExperimentGeometry::slit_half_width)
      .def_readwrite("slit_spacing", &ExperimentGeometry::slit_spacing)
      .def_readwrite("wavelength", &ExperimentGeometry::wavelength)
      .def_readwrite("focal_length", &ExperimentGeometry::focal_length)
      .def_readwrite("detector_half_width", &ExperimentGeometry::detector_half_width)
      .def_readwrite("static_phases", &ExperimentGeometry::static_phases)
      .def("fringe_period", &ExperimentGeometry::fringe_period);

  // construction
  m.def("sic_states", [] {
    std::vector<CVector> out;
    for (const Ket& k : sic_states()) {
      out.push_back(k.amplitudes());
    }
    return out;
  });
  m.def("sic_povm", &sic_povm);
  m.def("product_povm", &product_povm, py::arg("a"), py::arg("b"));
  m.def("path_phase_unitary", &path_phase_unitary, py::arg("phi_e"));
  m.def("conjugate_povm", &conjugate_povm, py::arg("p"), py::arg("u_first"), py::arg("u_second"));
  m.def(
      "verify_sic",
      [](const std::vector<CVector>& states) {
        std::vector<Ket> kets;
        for (const CVector& v : states) {
          kets.push_back(Ket(v));
        }
        const SicReport r = verify_sic(kets);
        py::dict out;
        out["is_equidistant"] = r.is_equidistant;
        out["overlap_magnitude"] = r.overlap_magnitude;
        out["magnitude_spread"] = r.magnitude_spread;
        out["completeness_residual"] = r.completeness_residual;
        out["overlap_phases"] = r.overlap_phases;
        return out;
      },
      py::arg("states"));

  // source + measurement model
  m.def(
      "theoretical_state",
      [](double phi) { return theoretical_state(phi).amplitudes(); },
      py::arg("phi") = kPairStatePhase);
  m.def(
      "fourier_point_projector",
      [](const std::array<double, 3>& phases) {
        return fourier_point_projector(phases).matrix();
      },
      py::arg("static_phases") = kFourierPointPhases);
  m.def(
      "effective_element",
      [](const std::array<Complex, 3>& mask_s, const std::array<Complex, 3>& mask_i,
         const CMatrix& p) {
        return effective_element(to_mask(mask_s), to_mask(mask_i), HermitianOperator(p)).matrix();
      },
      py::arg("mask_s"), py::arg("mask_i"), py::arg("projector"));
  m.def(
      "synthesize_mask_for_element",
      [](int j, const std::array<double, 3>& phases, double phi_e) {
        const SlmMask mask = synthesize_mask_for_element(j, phases, phi_e);
        return std::array<Complex, 3>{mask.transmission(0), mask.transmission(1),
                                      mask.transmission(2)};
      },
      py::arg("sic_index"), py::arg("static_phases") = kFourierPointPhases,
      py::arg("phi_e") = kSlitPathPhase);
  m.def(
      "born_probabilities",
      [](const CMatrix& rho, const PovmSet& p) { return born_probabilities(to_density(rho), p); },
      py::arg("rho"), py::arg("povm"));
  m.def(
      "sample_counts",
      [](const std::vector<double>& probs, const PovmSet& p, double mean_total,
         std::uint64_t seed, double duration_s) {
        return sample_counts(probs, p, mean_total, seed, duration_s);
      },
      py::arg("probs"), py::arg("povm"), py::arg("mean_total"), py::arg("seed"),
      py::arg("duration_s") = kAcquisitionSeconds);

  // operator algebra
  m.def(
      "partial_transpose",
      [](const CMatrix& rho, const std::string& subsystem) {
        const Subsystem s = subsystem == "first" ? Subsystem::first : Subsystem::second;
        return partial_transpose(HermitianOperator(rho), s).matrix();
      },
      py::arg("rho"), py::arg("subsystem") = "second");
  m.def("trace_norm",
        [](const CMatrix& a) { return trace_norm(HermitianOperator(a)); }, py::arg("a"));
  m.def(
      "pure_fidelity",
      [](const CMatrix& rho, const CVector& psi, const std::string& convention) {
        return pure_fidelity(to_density(rho), to_ket(psi), to_convention(convention));
      },
      py::arg("rho"), py::arg("psi"), py::arg("convention") = "sqrt_overlap");
  m.def(
      "nearest_density_operator",
      [](const CMatrix& h) { return nearest_density_operator(HermitianOperator(h)).matrix(); },
      py::arg("h"));
  m.def(
      "schmidt_coefficients",
      [](const CVector& psi) { return schmidt_coefficients(to_ket(psi)); }, py::arg("psi"));

  // tomography
  m.def(
      "linear_inversion",
      [](const std::vector<double>& freqs, const PovmSet& p) { return linear_inversion(freqs, p); },
      py::arg("freqs"), py::arg("povm"));
  m.def(
      "variational_reconstruct",
      [](const std::vector<double>& freqs, const PovmSet& p, int max_iters, double step,
         double tol) {
        VariationalOptions opts;
        opts.max_iters = max_iters;
        opts.step = step;
        opts.tol = tol;
        return variational_reconstruct(freqs, p, opts);
      },
      py::arg("freqs"), py::arg("povm"), py::arg("max_iters") = 20000, py::arg("step") = 0.0,
      py::arg("tol") = 1e-12);
  m.def(
      "entanglement_curve",
      [](const std::vector<double>& freqs, const PovmSet& p, const std::string& ordering,
         std::uint64_t seed, int n_permutations, int n_min, int n_max, int n_step,
         double robustness_tol) {
        CurveOptions opts;
        opts.ordering = ordering == "random" ? CurveOrdering::random : CurveOrdering::canonical;
        opts.seed = seed;
        opts.n_permutations = n_permutations;
        opts.n_min = n_min;
        opts.n_max = n_max;
        opts.n_step = n_step;
        opts.robustness_tol = robustness_tol;
        const std::vector<CurvePoint> curve = entanglement_curve(freqs, p, opts);
        Eigen::MatrixXd out(static_cast<Eigen::Index>(curve.size()), 3);
        for (std::size_t i = 0; i < curve.size(); ++i) {
          out(static_cast<Eigen::Index>(i), 0) = curve[i].n;
          out(static_cast<Eigen::Index>(i), 1) = curve[i].negativity;
          out(static_cast<Eigen::Index>(i), 2) = curve[i].robustness;
        }
        return out;
      },
      py::arg("freqs"), py::arg("povm"), py::arg("ordering") = "canonical", py::arg("seed") = 0,
      py::arg("n_permutations") = 10, py::arg("n_min") = 1, py::arg("n_max") = 0,
      py::arg("n_step") = 1, py::arg("robustness_tol") = 1e-3);
  m.def(
      "fidelity_scan",
      [](const CMatrix& rho, const std::vector<double>& grid, const std::string& convention) {
        return fidelity_scan(to_density(rho), grid, to_convention(convention));
      },
      py::arg("rho"), py::arg("phi_grid"), py::arg("convention") = "sqrt_overlap");

  // entanglement
  m.def("negativity", [](const CMatrix& rho) { return negativity(to_density(rho)); },
        py::arg("rho"));
  m.def(
      "generalized_robustness_ppt",
      [](const CMatrix& rho, double tol) { return generalized_robustness_ppt(to_density(rho), tol); },
      py::arg("rho"), py::arg("tol") = 1e-6);
  m.def("pure_state_robustness",
        [](const CVector& psi) { return pure_state_robustness(to_ket(psi)); }, py::arg("psi"));
  m.def(
      "entanglement_report",
      [](const CMatrix& rho, double tol) { return entanglement_report(to_density(rho), tol); },
      py::arg("rho"), py::arg("tol") = 1e-6);

  // diffraction model
  m.def(
      "detection_operator",
      [](double x, const ExperimentGeometry& g, int n_quad) {
        return detection_operator(x, g, n_quad).matrix();
      },
      py::arg("x"), py::arg("geometry") = ExperimentGeometry{}, py::arg("n_quad") = 64);
  m.def(
      "interference_pattern",
      [](const CMatrix& rho, double x_i, const std::vector<double>& xs,
         const ExperimentGeometry& g, int n_quad) {
        return interference_pattern(to_density(rho), x_i, xs, g, n_quad);
      },
      py::arg("rho"), py::arg("x_i"), py::arg("xs_grid"),
      py::arg("geometry") = ExperimentGeometry{}, py::arg("n_quad") = 64);
  m.def(
      "fringe_shift",
      [](const std::vector<double>& xs, const std::vector<double>& a,
         const std::vector<double>& b, const ExperimentGeometry& g) {
        return fringe_shift(xs, a, b, g);
      },
      py::arg("xs_grid"), py::arg("pattern_a"), py::arg("pattern_b"),
      py::arg("geometry") = ExperimentGeometry{});

  // built-in tomogram
  m.def("paper_rho_raw", [] { return paper_rho_raw(); });
  m.def("load_paper_rho", [] { return load_paper_rho().matrix(); });
}
