#include "core/matrix.hpp"

#include <cmath>
#include <sstream>

#include "core/error.hpp"

namespace nbmf {

namespace {

std::string shape_of(const Matrix& m) {
  std::ostringstream os;
  os << m.rows() << "x" << m.cols();
  return os.str();
}

}  // namespace

double frobenius_error(const Matrix& V, const Matrix& W, const Matrix& H) {
  if (W.rows() != V.rows() || H.cols() != V.cols() || W.cols() != H.rows()) {
    throw Error(ErrorCode::Dimension,
                "frobenius_error: shapes do not conform: V=" + shape_of(V) +
                    " W=" + shape_of(W) + " H=" + shape_of(H));
  }
  return (V - W * H).squaredNorm();
}

Vector column(const Matrix& M, Eigen::Index j) {
  require(j >= 0 && j < M.cols(), ErrorCode::Dimension,
          "column: index " + std::to_string(j) + " out of range for " +
              std::to_string(M.cols()) + " columns");
  return M.col(j);
}

bool is_binary(const Matrix& M) {
  for (Eigen::Index i = 0; i < M.size(); ++i) {
    const double x = M.data()[i];
    if (x != 0.0 && x != 1.0) return false;
  }
  return true;
}

bool has_negative(const Matrix& M) { return (M.array() < 0.0).any(); }

bool all_finite(const Matrix& M) { return M.allFinite(); }

BinaryVector to_binary(const Vector& v) {
  BinaryVector bits(static_cast<std::size_t>(v.size()));
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    require(v[i] == 0.0 || v[i] == 1.0, ErrorCode::Domain,
            "to_binary: entry is not 0 or 1");
    bits[static_cast<std::size_t>(i)] = v[i] == 1.0 ? 1 : 0;
  }
  return bits;
}

Vector to_real(const BinaryVector& bits) {
  Vector v(static_cast<Eigen::Index>(bits.size()));
  for (std::size_t i = 0; i < bits.size(); ++i) v[static_cast<Eigen::Index>(i)] = bits[i] ? 1.0 : 0.0;
  return v;
}

void set_column(Matrix& M, Eigen::Index j, const BinaryVector& bits) {
  require(j >= 0 && j < M.cols(), ErrorCode::Dimension, "set_column: index out of range");
  require(static_cast<Eigen::Index>(bits.size()) == M.rows(), ErrorCode::Dimension,
          "set_column: length mismatch");
  for (Eigen::Index i = 0; i < M.rows(); ++i) M(i, j) = bits[static_cast<std::size_t>(i)] ? 1.0 : 0.0;
}

BinaryVector binary_column(const Matrix& M, Eigen::Index j) {
  return to_binary(column(M, j));
}

Matrix from_row_major(Eigen::Index rows, Eigen::Index cols, const double* data) {
  Matrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = data[i * cols + j];
  return m;
}

void to_row_major(const Matrix& M, double* out) {
  for (Eigen::Index i = 0; i < M.rows(); ++i)
    for (Eigen::Index j = 0; j < M.cols(); ++j) out[i * M.cols() + j] = M(i, j);
}

}  // namespace nbmf
