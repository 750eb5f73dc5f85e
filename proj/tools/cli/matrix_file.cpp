#include "matrix_file.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string_view>

#include <json.hpp>

namespace qfid::cli {
namespace {

using nlohmann::json;

void append_number(std::string& out, double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  out += buf;
  // JSON readers treat "-0" as an integer and drop the sign.
  if (std::string_view(buf).find_first_of(".en") == std::string_view::npos) out += ".0";
}

double as_number(const json& j, const char* what) {
  if (!j.is_number()) throw MatrixFileError(std::string(what) + " must be a number");
  return j.get<double>();
}

MatrixFile read_checked(const std::filesystem::path& path, MatrixKind expected) {
  MatrixFile file = read_matrix_file(path);
  if (file.kind && *file.kind != expected) {
    throw MatrixFileError(path.string() + ": expected kind \"" + std::string(to_string(expected)) + "\", found \"" +
                          std::string(to_string(*file.kind)) + "\"");
  }
  return file;
}

template <typename F>
auto with_path(const std::filesystem::path& path, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const MatrixFileError&) {
    throw;
  } catch (const Error& e) {
    throw MatrixFileError(path.string() + ": " + e.what());
  }
}

}  // namespace

std::string_view to_string(MatrixKind kind) noexcept {
  switch (kind) {
    case MatrixKind::density:
      return "density";
    case MatrixKind::hamiltonian:
      return "hamiltonian";
    case MatrixKind::unitary:
      return "unitary";
    case MatrixKind::raw:
      return "raw";
  }
  return "raw";
}

std::optional<MatrixKind> parse_matrix_kind(std::string_view name) noexcept {
  for (MatrixKind k : {MatrixKind::density, MatrixKind::hamiltonian, MatrixKind::unitary, MatrixKind::raw}) {
    if (to_string(k) == name) return k;
  }
  return std::nullopt;
}

MatrixFile parse_matrix_file(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw MatrixFileError(std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) throw MatrixFileError("matrix file must be a JSON object");
  if (!doc.contains("dim") || !doc["dim"].is_number_integer() || doc["dim"].get<long long>() < 1) {
    throw MatrixFileError("\"dim\" must be a positive integer");
  }
  const auto dim = static_cast<std::size_t>(doc["dim"].get<long long>());
  if (!doc.contains("data") || !doc["data"].is_array() || doc["data"].size() != dim) {
    throw MatrixFileError("\"data\" must be an array of " + std::to_string(dim) + " rows");
  }
  std::vector<Complex> entries;
  entries.reserve(dim * dim);
  for (const json& row : doc["data"]) {
    if (!row.is_array() || row.size() != dim) {
      throw MatrixFileError("every row of \"data\" must hold " + std::to_string(dim) + " entries");
    }
    for (const json& entry : row) {
      if (!entry.is_array() || entry.size() != 2) throw MatrixFileError("entries must be [re, im] pairs");
      entries.emplace_back(as_number(entry[0], "real part"), as_number(entry[1], "imaginary part"));
    }
  }
  std::optional<MatrixKind> kind;
  if (doc.contains("kind")) {
    if (!doc["kind"].is_string()) throw MatrixFileError("\"kind\" must be a string");
    kind = parse_matrix_kind(doc["kind"].get<std::string>());
    if (!kind) throw MatrixFileError("unknown kind \"" + doc["kind"].get<std::string>() + "\"");
  }
  try {
    return MatrixFile{ComplexMatrix(dim, std::move(entries)), kind};
  } catch (const NotFinite& e) {
    throw MatrixFileError(e.what());
  }
}

std::string write_matrix_file(const MatrixFile& file) {
  const ComplexMatrix& m = file.matrix;
  std::string out = "{\n  \"dim\": " + std::to_string(m.dim()) + ",\n";
  if (file.kind) out += "  \"kind\": \"" + std::string(to_string(*file.kind)) + "\",\n";
  out += "  \"data\": [\n";
  for (std::size_t i = 0; i < m.dim(); ++i) {
    out += "    [";
    for (std::size_t j = 0; j < m.dim(); ++j) {
      if (j != 0) out += ", ";
      out += '[';
      append_number(out, m(i, j).real());
      out += ", ";
      append_number(out, m(i, j).imag());
      out += ']';
    }
    out += i + 1 < m.dim() ? "],\n" : "]\n";
  }
  out += "  ]\n}\n";
  return out;
}

MatrixFile read_matrix_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw MatrixFileError(path.string() + ": cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_matrix_file(buf.str());
  } catch (const MatrixFileError& e) {
    throw MatrixFileError(path.string() + ": " + e.what());
  }
}

DensityMatrix load_density(const std::filesystem::path& path) {
  const MatrixFile file = read_checked(path, MatrixKind::density);
  return with_path(path, [&] { return density_from_matrix(file.matrix); });
}

Hamiltonian load_hamiltonian(const std::filesystem::path& path) {
  const MatrixFile file = read_checked(path, MatrixKind::hamiltonian);
  return with_path(path, [&] { return Hamiltonian(file.matrix); });
}

ComplexMatrix load_unitary(const std::filesystem::path& path) {
  const MatrixFile file = read_checked(path, MatrixKind::unitary);
  const double dev = unitarity_deviation(file.matrix);
  if (!(dev <= 1e-8)) throw MatrixFileError(path.string() + ": " + NotUnitary(dev).what());
  return file.matrix;
}

ComplexMatrix load_raw(const std::filesystem::path& path) { return read_matrix_file(path).matrix; }

}  // namespace qfid::cli
