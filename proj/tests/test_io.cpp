#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>

#include "test_support.hpp"
#include "tomolab/io.hpp"

using namespace tomolab;

namespace {

struct TempDir {
  std::filesystem::path path;
  TempDir() {
    path = std::filesystem::temp_directory_path() /
           ("tomolab-test-" + std::to_string(std::random_device{}()));
    std::filesystem::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path, ec);
  }
};

}  // namespace

TEST_CASE("matrix json round trip is bit exact") {
  TempDir tmp;
  std::mt19937_64 rng(81);
  std::normal_distribution<double> normal(0.0, 1e3);
  CMatrix m(9, 9);
  for (Eigen::Index i = 0; i < 9; ++i) {
    for (Eigen::Index j = 0; j < 9; ++j) {
      m(i, j) = Complex(normal(rng), normal(rng));
    }
  }
  m(0, 0) = Complex(1.0 / 3.0, -0.0);
  m(1, 1) = Complex(1e-308, 2.2250738585072014e-308);

  const std::filesystem::path file = tmp.path / "m.json";
  write_matrix_json(file, m);
  const MatrixFile back = read_matrix_json(file);
  REQUIRE(back.re.rows() == 9);
  for (Eigen::Index i = 0; i < 9; ++i) {
    for (Eigen::Index j = 0; j < 9; ++j) {
      CHECK(back.re(i, j) == m(i, j).real());
      CHECK(back.im(i, j) == m(i, j).imag());
    }
  }
}

TEST_CASE("matrix json diagnostics carry line numbers") {
  TempDir tmp;
  const std::filesystem::path file = tmp.path / "broken.json";
  {
    std::ofstream out(file);
    out << "{\n  \"dim\": [3, 3],\n  \"re\": [[1, 0, 0],\n";  // truncated
  }
  try {
    read_matrix_json(file);
    FAIL("expected IoError");
  } catch (const IoError& e) {
    CHECK(std::string(e.what()).find("broken.json:4") != std::string::npos);
  }

  {
    std::ofstream out(file);
    out << "{\"dim\": [2, 2], \"re\": [[1, 0], [0, 1]], \"im\": [[0, \"x\"], [0, 0]]}";
  }
  CHECK_THROWS_AS(read_matrix_json(file), IoError);
}

TEST_CASE("ingest_density symmetrizes and projects") {
  MatrixFile f;
  f.re = paper_rho_raw().real();
  f.im = paper_rho_raw().imag();
  const DensityOperator rho = ingest_density(f);
  CHECK(rho.matrix().trace().real() == doctest::Approx(1.0).epsilon(1e-10));

  f.im(0, 1) += 0.1;  // way outside the rounding budget
  CHECK_THROWS_AS(ingest_density(f), std::invalid_argument);
}

TEST_CASE("counts csv round trip and diagnostics") {
  TempDir tmp;
  std::vector<MeasurementRecord> records;
  for (int m = 0; m < 5; ++m) {
    records.push_back({"Pi_1_" + std::to_string(m + 1), static_cast<std::uint64_t>(m * 1000), 1500.0});
  }
  const std::filesystem::path file = tmp.path / "counts.csv";
  write_counts_csv(file, records);
  const std::vector<MeasurementRecord> back = read_counts_csv(file);
  REQUIRE(back.size() == records.size());
  for (std::size_t i = 0; i < records.size(); ++i) {
    CHECK(back[i].element_label == records[i].element_label);
    CHECK(back[i].counts == records[i].counts);
  }

  {
    std::ofstream out(file);
    out << "element,counts\nPi_1_1,12\nPi_1_2,-4\n";
  }
  try {
    read_counts_csv(file);
    FAIL("expected IoError");
  } catch (const IoError& e) {
    CHECK(std::string(e.what()).find(":3:") != std::string::npos);
  }

  {
    std::ofstream out(file);
    out << "element,counts\nPi_1_1,12\nPi_1_1,13\n";
  }
  CHECK_THROWS_AS(read_counts_csv(file), IoError);

  {
    std::ofstream out(file);
    out << "wrong,header\n";
  }
  CHECK_THROWS_AS(read_counts_csv(file), IoError);
}

TEST_CASE("failed writes leave no partial output") {
  TempDir tmp;
  const std::filesystem::path missing_dir = tmp.path / "nope" / "file.json";
  CHECK_THROWS_AS(write_matrix_json(missing_dir, CMatrix::Identity(3, 3)), IoError);
  CHECK(!std::filesystem::exists(missing_dir));
  CHECK(!std::filesystem::exists(tmp.path / "nope"));
}

TEST_CASE("povm json carries labels and residual") {
  TempDir tmp;
  const std::filesystem::path file = tmp.path / "povm.json";
  write_povm_json(file, sic_povm());
  std::ifstream in(file);
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  CHECK(text.find("\"Pi_1\"") != std::string::npos);
  CHECK(text.find("completeness_residual") != std::string::npos);
}

TEST_CASE("curve, pattern and fidelity csv writers") {
  TempDir tmp;
  const std::vector<CurvePoint> curve{{1, 0.0, 0.0}, {2, 0.5, 0.25}};
  write_curve_csv(tmp.path / "curve.csv", curve);
  std::ifstream in(tmp.path / "curve.csv");
  std::string header;
  std::getline(in, header);
  CHECK(header == "n,negativity,robustness");

  const std::vector<double> xs{0.0, 1e-4};
  const std::vector<double> intensity{1.0, 0.5};
  write_pattern_csv(tmp.path / "pattern.csv", xs, intensity);
  std::ifstream pin(tmp.path / "pattern.csv");
  std::getline(pin, header);
  CHECK(header == "x_s_m,intensity");
  CHECK_THROWS_AS(write_pattern_csv(tmp.path / "bad.csv", xs, std::vector<double>{1.0}),
                  std::invalid_argument);

  write_fidelity_csv(tmp.path / "fid.csv", {{0.0, 0.3}, {0.1, 0.4}});
  std::ifstream fin(tmp.path / "fid.csv");
  std::getline(fin, header);
  CHECK(header == "phi_rad,fidelity");
}

TEST_CASE("published tomogram fixture") {
  const CMatrix& raw = paper_rho_raw();
  CHECK(raw(6, 6).real() == 0.34);
  CHECK(raw.trace().real() == doctest::Approx(1.01).epsilon(1e-14));
  const double diag[9] = {0.04, 0.02, 0.18, 0.04, 0.24, 0.02, 0.34, 0.10, 0.03};
  for (int i = 0; i < 9; ++i) {
    CHECK(raw(i, i).real() == diag[i]);
    CHECK(raw(i, i).imag() == 0.0);
  }
  CHECK((raw - raw.adjoint()).cwiseAbs().maxCoeff() == 0.0);

  const DensityOperator projected = load_paper_rho();
  const Eigensystem eig = hermitian_eigensystem(projected.op());
  CHECK(eig.eigenvalues.minCoeff() >= -Tolerances::density_eigenvalue);
}
