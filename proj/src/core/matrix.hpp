#ifndef NBMF_CORE_MATRIX_HPP
#define NBMF_CORE_MATRIX_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

namespace nbmf {

// Dense double-precision matrices throughout. External surfaces (CSV files,
// the C API) exchange row-major buffers; internally Eigen's layout is used.
using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// Binary column state as handled by the QUBO solvers; every entry is 0 or 1.
using BinaryVector = std::vector<std::uint8_t>;

// ||V - W*H||_F^2. Throws ErrorCode::Dimension when shapes do not conform.
double frobenius_error(const Matrix& V, const Matrix& W, const Matrix& H);

// Copy of column j; throws ErrorCode::Dimension when j is out of range.
Vector column(const Matrix& M, Eigen::Index j);

// True when every entry is exactly 0.0 or 1.0.
bool is_binary(const Matrix& M);
bool has_negative(const Matrix& M);
bool all_finite(const Matrix& M);

// Conversions between binary column states and real vectors/columns.
BinaryVector to_binary(const Vector& v);
Vector to_real(const BinaryVector& bits);
void set_column(Matrix& M, Eigen::Index j, const BinaryVector& bits);
BinaryVector binary_column(const Matrix& M, Eigen::Index j);

Matrix from_row_major(Eigen::Index rows, Eigen::Index cols, const double* data);
void to_row_major(const Matrix& M, double* out);

}  // namespace nbmf

#endif
