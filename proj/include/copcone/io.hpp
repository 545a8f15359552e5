#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "json.hpp"

#include "copcone/matrix.hpp"
#include "copcone/nonneg_factor.hpp"

namespace copcone {

/// Malformed or inconsistent input file.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Contents of a matrix file: JSON {"n", "data", "factor"} or plain text
/// (n followed by n*n row-major values). A factor-only JSON file omits "data".
struct MatrixFile {
  std::size_t n = 0;
  std::optional<SymMat> matrix;
  std::optional<NonnegFactor> factor;
  std::string digest;  // FNV-1a of the raw bytes, 16 hex digits
};

MatrixFile parse_matrix_file(std::string_view text);
MatrixFile read_matrix_file(const std::string& path);

std::string fnv1a_hex(std::string_view bytes);

/// Sorted keys, no whitespace, floats as %.17g, trailing newline.
std::string canonical_json(const nlohmann::json& j);

nlohmann::json to_json(const Matrix& m);  // nested rows
nlohmann::json to_json(const SymMat& m);

}  // namespace copcone
