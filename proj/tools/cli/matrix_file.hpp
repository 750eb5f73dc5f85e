#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "quditfid/error.hpp"
#include "quditfid/linalg.hpp"
#include "quditfid/states.hpp"

namespace qfid::cli {

enum class MatrixKind { density, hamiltonian, unitary, raw };

std::string_view to_string(MatrixKind kind) noexcept;
std::optional<MatrixKind> parse_matrix_kind(std::string_view name) noexcept;

/// On-disk matrix: {"dim": d, "kind": "...", "data": [[[re, im], ...], ...]}.
struct MatrixFile {
  ComplexMatrix matrix;
  std::optional<MatrixKind> kind;
};

class MatrixFileError : public Error {
 public:
  using Error::Error;
};

/// Parses the JSON text; checks shape only, not `kind`.
MatrixFile parse_matrix_file(std::string_view text);
/// Numbers are written with 17 significant digits, so parsing the result
/// reproduces every entry bit for bit.
std::string write_matrix_file(const MatrixFile& file);

/// Reads and parses `path`; errors name the file.
MatrixFile read_matrix_file(const std::filesystem::path& path);

/// Loaders that also enforce the invariant of the expected kind. A file whose
/// own `kind` disagrees is rejected; a file without `kind` is accepted.
DensityMatrix load_density(const std::filesystem::path& path);
Hamiltonian load_hamiltonian(const std::filesystem::path& path);
ComplexMatrix load_unitary(const std::filesystem::path& path);
ComplexMatrix load_raw(const std::filesystem::path& path);

}  // namespace qfid::cli
