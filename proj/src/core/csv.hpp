#ifndef NBMF_CORE_CSV_HPP
#define NBMF_CORE_CSV_HPP

#include <string>

#include "core/matrix.hpp"

namespace nbmf {

// Matrix file format: UTF-8 CSV, one matrix row per line, LF endings,
// '.' decimal separator, no header. Readers reject NaN/Inf and, when
// require_nonneg is set, negative entries.
Matrix read_matrix_csv(const std::string& path, bool require_nonneg);
void write_matrix_csv(const Matrix& M, const std::string& path);

// Writes content to a temp file in the target directory and renames it into
// place, so interrupted runs never leave half-written files.
void write_file_atomic(const std::string& path, const std::string& content);

// Shortest decimal form that parses back to the same double.
std::string format_double(double x);

}  // namespace nbmf

#endif
