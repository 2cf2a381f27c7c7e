#pragma once

#include <filesystem>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "tomolab/experiment.hpp"
#include "tomolab/tomography.hpp"

namespace tomolab {

/// File-format or file-system failure; the message carries the path and a
/// line number when one is known.
class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& message) : std::runtime_error(message) {}
};

/// On-disk matrix representation: real and imaginary parts, row-major.
struct MatrixFile {
  Eigen::MatrixXd re;
  Eigen::MatrixXd im;

  CMatrix to_complex() const;
};

void write_matrix_json(const std::filesystem::path& path, const CMatrix& m);
MatrixFile read_matrix_json(const std::filesystem::path& path);

/// Interprets a matrix file as a density operator: requires hermiticity
/// within 0.011 (two-decimal rounding of published tomograms), then
/// symmetrizes and projects with nearest_density_operator.
DensityOperator ingest_density(const MatrixFile& f);

void write_povm_json(const std::filesystem::path& path, const PovmSet& p);

std::string counts_csv_string(std::span<const MeasurementRecord> records);
std::string curve_csv_string(std::span<const CurvePoint> curve);
std::string pattern_csv_string(std::span<const double> xs, std::span<const double> intensity);
std::string fidelity_csv_string(const std::vector<std::pair<double, double>>& curve);

void write_counts_csv(const std::filesystem::path& path, std::span<const MeasurementRecord> records);
std::vector<MeasurementRecord> read_counts_csv(const std::filesystem::path& path);

void write_curve_csv(const std::filesystem::path& path, std::span<const CurvePoint> curve);
void write_pattern_csv(const std::filesystem::path& path, std::span<const double> xs,
                       std::span<const double> intensity);
void write_fidelity_csv(const std::filesystem::path& path,
                        const std::vector<std::pair<double, double>>& curve);

/// Writes through a temporary file in the same directory and renames, so a
/// failed run never leaves a partial file at the destination.
void atomic_write_file(const std::filesystem::path& path, const std::string& contents);

/// The published two-qutrit tomogram, exactly as printed (trace 1.01, mildly
/// indefinite from rounding).
const CMatrix& paper_rho_raw();

/// The tomogram after symmetrization and projection to the closest density
/// operator; the reference state for the reproduction pipeline.
DensityOperator load_paper_rho();

}  // namespace tomolab
