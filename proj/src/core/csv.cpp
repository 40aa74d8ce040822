#include "core/csv.hpp"

#include <cerrno>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <system_error>
#include <vector>

#include "core/error.hpp"

namespace nbmf {

std::string format_double(double x) {
  char buf[32];
  // round-trip exact; %g drops trailing zeros
  for (int prec = 1; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof(buf), "%.*g", prec, x);
    if (std::strtod(buf, nullptr) == x) break;
  }
  return buf;
}

Matrix read_matrix_csv(const std::string& path, bool require_nonneg) {
  std::ifstream in(path);
  require(in.good(), ErrorCode::Io, "cannot open " + path);

  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<double> row;
    const char* p = line.data();
    const char* end = line.data() + line.size();
    while (p < end) {
      const char* field_end = static_cast<const char*>(std::memchr(p, ',', end - p));
      if (field_end == nullptr) field_end = end;
      double value = 0.0;
      auto [ptr, ec] = std::from_chars(p, field_end, value);
      if (ec != std::errc{} || ptr != field_end) {
        throw Error(ErrorCode::Io, path + ":" + std::to_string(lineno) +
                                       ": cannot parse field '" +
                                       std::string(p, field_end) + "'");
      }
      if (!std::isfinite(value)) {
        throw Error(ErrorCode::Domain, path + ":" + std::to_string(lineno) +
                                           ": non-finite entry rejected");
      }
      if (require_nonneg && value < 0.0) {
        throw Error(ErrorCode::Domain, path + ":" + std::to_string(lineno) +
                                           ": negative entry " + format_double(value) +
                                           " rejected");
      }
      row.push_back(value);
      p = field_end < end ? field_end + 1 : end;
    }
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw Error(ErrorCode::Dimension,
                  path + ":" + std::to_string(lineno) + ": row has " +
                      std::to_string(row.size()) + " fields, expected " +
                      std::to_string(rows.front().size()));
    }
    rows.push_back(std::move(row));
  }
  require(!rows.empty(), ErrorCode::Io, path + ": empty matrix file");

  Matrix M(static_cast<Eigen::Index>(rows.size()),
           static_cast<Eigen::Index>(rows.front().size()));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows.front().size(); ++j)
      M(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
  return M;
}

void write_matrix_csv(const Matrix& M, const std::string& path) {
  std::ostringstream out;
  for (Eigen::Index i = 0; i < M.rows(); ++i) {
    for (Eigen::Index j = 0; j < M.cols(); ++j) {
      if (j > 0) out << ',';
      out << format_double(M(i, j));
    }
    out << '\n';
  }
  write_file_atomic(path, out.str());
}

void write_file_atomic(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    require(out.good(), ErrorCode::Io, "cannot open " + tmp.string() + " for writing");
    out << content;
    out.flush();
    require(out.good(), ErrorCode::Io, "write failed for " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp);
    throw Error(ErrorCode::Io, "rename to " + path + " failed: " + ec.message());
  }
}

}  // namespace nbmf
