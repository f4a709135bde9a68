#pragma once

#include "uoi/types.hpp"

#include <stdexcept>
#include <string>

namespace uoi {

/// Parse failure with file and line context.
class CsvError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Dense numeric CSV. A single non-numeric leading row is treated as a
/// header and skipped. Ragged rows or non-numeric cells raise CsvError
/// with the offending location.
Matrix load_csv_matrix(const std::string& path);

/// Single-column (or single-row) numeric CSV.
Vector load_csv_vector(const std::string& path);

/// Writes with 17 significant digits so a read-back is value-identical.
void write_csv_matrix(const std::string& path, const Matrix& m);
void write_csv_vector(const std::string& path, const Vector& v);

}  // namespace uoi
