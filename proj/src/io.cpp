#include "tomolab/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace tomolab {

namespace {

using nlohmann::json;

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IoError(path.string() + ": cannot open for reading");
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::size_t line_of_byte(const std::string& text, std::size_t byte) {
  std::size_t line = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
    }
  }
  return line;
}

json parse_json(const std::filesystem::path& path, const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw IoError(path.string() + ":" + std::to_string(line_of_byte(text, e.byte)) +
                  ": " + e.what());
  }
}

json matrix_to_json(const CMatrix& m) {
  json re = json::array();
  json im = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json re_row = json::array();
    json im_row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      re_row.push_back(m(i, j).real());
      im_row.push_back(m(i, j).imag());
    }
    re.push_back(std::move(re_row));
    im.push_back(std::move(im_row));
  }
  return json{{"dim", {m.rows(), m.cols()}}, {"re", std::move(re)}, {"im", std::move(im)}};
}

Eigen::MatrixXd json_to_real_matrix(const std::filesystem::path& path, const json& j,
                                    Eigen::Index rows, Eigen::Index cols, const char* field) {
  if (!j.is_array() || static_cast<Eigen::Index>(j.size()) != rows) {
    throw IoError(path.string() + ": field '" + field + "' must have " + std::to_string(rows) +
                  " rows");
  }
  Eigen::MatrixXd out(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const json& row = j[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) {
      throw IoError(path.string() + ": field '" + field + "' row " + std::to_string(i) +
                    " must have " + std::to_string(cols) + " entries");
    }
    for (Eigen::Index k = 0; k < cols; ++k) {
      const json& v = row[static_cast<std::size_t>(k)];
      if (!v.is_number()) {
        throw IoError(path.string() + ": field '" + field + "' entry (" + std::to_string(i) +
                      "," + std::to_string(k) + ") is not a number");
      }
      out(i, k) = v.get<double>();
    }
  }
  return out;
}

}  // namespace

CMatrix MatrixFile::to_complex() const {
  return re.cast<Complex>() + Complex(0.0, 1.0) * im.cast<Complex>();
}

void atomic_write_file(const std::filesystem::path& path, const std::string& contents) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) {
      throw IoError(path.string() + ": cannot open for writing");
    }
    out << contents;
    out.flush();
    if (!out) {
      std::error_code ec;
      std::filesystem::remove(tmp, ec);
      throw IoError(path.string() + ": write failed");
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw IoError(path.string() + ": rename failed: " + ec.message());
  }
}

void write_matrix_json(const std::filesystem::path& path, const CMatrix& m) {
  atomic_write_file(path, matrix_to_json(m).dump(2) + "\n");
}

MatrixFile read_matrix_json(const std::filesystem::path& path) {
  const std::string text = read_file(path);
  const json j = parse_json(path, text);
  if (!j.is_object() || !j.contains("dim") || !j.contains("re") || !j.contains("im")) {
    throw IoError(path.string() + ": expected an object with 'dim', 're' and 'im'");
  }
  const json& dim = j["dim"];
  if (!dim.is_array() || dim.size() != 2 || !dim[0].is_number_integer() ||
      !dim[1].is_number_integer()) {
    throw IoError(path.string() + ": 'dim' must be a pair of integers");
  }
  const Eigen::Index rows = dim[0].get<Eigen::Index>();
  const Eigen::Index cols = dim[1].get<Eigen::Index>();
  if (rows <= 0 || cols <= 0) {
    throw IoError(path.string() + ": 'dim' must be positive");
  }
  MatrixFile out;
  out.re = json_to_real_matrix(path, j["re"], rows, cols, "re");
  out.im = json_to_real_matrix(path, j["im"], rows, cols, "im");
  return out;
}

DensityOperator ingest_density(const MatrixFile& f) {
  if (f.re.rows() != f.re.cols()) {
    throw std::invalid_argument("ingest_density: matrix must be square");
  }
  const CMatrix m = f.to_complex();
  const double asym = (m - m.adjoint()).cwiseAbs().maxCoeff();
  if (asym > 0.011) {
    throw std::invalid_argument("ingest_density: matrix is not Hermitian within 0.011");
  }
  return nearest_density_operator(HermitianOperator(0.5 * (m + m.adjoint())));
}

void write_povm_json(const std::filesystem::path& path, const PovmSet& p) {
  json elements = json::array();
  for (const auto& e : p.elements()) {
    json entry = matrix_to_json(e.op.matrix());
    entry["label"] = e.label;
    elements.push_back(std::move(entry));
  }
  const json j{{"dim", p.dim()},
               {"completeness_residual", p.completeness_residual()},
               {"elements", std::move(elements)}};
  atomic_write_file(path, j.dump(2) + "\n");
}

std::string counts_csv_string(std::span<const MeasurementRecord> records) {
  std::ostringstream out;
  out << "element,counts\n";
  for (const auto& r : records) {
    out << r.element_label << ',' << r.counts << '\n';
  }
  return out.str();
}

void write_counts_csv(const std::filesystem::path& path,
                      std::span<const MeasurementRecord> records) {
  atomic_write_file(path, counts_csv_string(records));
}

std::vector<MeasurementRecord> read_counts_csv(const std::filesystem::path& path) {
  const std::string text = read_file(path);
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  std::vector<MeasurementRecord> records;
  std::vector<std::string> seen;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') {
      line.pop_back();
    }
    if (line.empty()) {
      continue;
    }
    if (line_no == 1) {
      if (line != "element,counts") {
        throw IoError(path.string() + ":1: expected header 'element,counts'");
      }
      continue;
    }
    const std::size_t comma = line.find(',');
    if (comma == std::string::npos || comma == 0) {
      throw IoError(path.string() + ":" + std::to_string(line_no) +
                    ": expected '<label>,<counts>'");
    }
    MeasurementRecord record;
    record.element_label = line.substr(0, comma);
    const std::string_view count_text = std::string_view(line).substr(comma + 1);
    const auto [ptr, ec] = std::from_chars(count_text.data(),
                                           count_text.data() + count_text.size(), record.counts);
    if (ec != std::errc{} || ptr != count_text.data() + count_text.size()) {
      throw IoError(path.string() + ":" + std::to_string(line_no) +
                    ": counts must be a non-negative integer");
    }
    record.duration_s = 0.0;  // not part of the file format
    for (const auto& label : seen) {
      if (label == record.element_label) {
        throw IoError(path.string() + ":" + std::to_string(line_no) + ": duplicate label '" +
                      record.element_label + "'");
      }
    }
    seen.push_back(record.element_label);
    records.push_back(std::move(record));
  }
  if (records.empty()) {
    throw IoError(path.string() + ": no count records");
  }
  return records;
}

std::string curve_csv_string(std::span<const CurvePoint> curve) {
  std::ostringstream out;
  out << "n,negativity,robustness\n";
  out.precision(17);
  for (const auto& point : curve) {
    out << point.n << ',' << point.negativity << ',' << point.robustness << '\n';
  }
  return out.str();
}

std::string pattern_csv_string(std::span<const double> xs, std::span<const double> intensity) {
  if (xs.size() != intensity.size()) {
    throw std::invalid_argument("pattern_csv_string: grid/intensity size mismatch");
  }
  std::ostringstream out;
  out << "x_s_m,intensity\n";
  out.precision(17);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    out << xs[i] << ',' << intensity[i] << '\n';
  }
  return out.str();
}

std::string fidelity_csv_string(const std::vector<std::pair<double, double>>& curve) {
  std::ostringstream out;
  out << "phi_rad,fidelity\n";
  out.precision(17);
  for (const auto& [phi, f] : curve) {
    out << phi << ',' << f << '\n';
  }
  return out.str();
}

void write_curve_csv(const std::filesystem::path& path, std::span<const CurvePoint> curve) {
  atomic_write_file(path, curve_csv_string(curve));
}

void write_pattern_csv(const std::filesystem::path& path, std::span<const double> xs,
                       std::span<const double> intensity) {
  atomic_write_file(path, pattern_csv_string(xs, intensity));
}

void write_fidelity_csv(const std::filesystem::path& path,
                        const std::vector<std::pair<double, double>>& curve) {
  atomic_write_file(path, fidelity_csv_string(curve));
}

}  // namespace tomolab
