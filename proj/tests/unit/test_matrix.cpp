#include "core/matrix.hpp"

#include "core/error.hpp"
#include "core/rng.hpp"
#include "doctest.h"
#include "support/oracles.hpp"

using namespace nbmf;

TEST_CASE("frobenius_error is zero on an exact factorization") {
  Matrix W(3, 2), H(2, 4);
  W << 1, 2, 0, 1, 3, 0;
  H << 1, 0, 1, 1, 0, 1, 1, 0;
  const Matrix V = W * H;
  CHECK(frobenius_error(V, W, H) == doctest::Approx(0.0));
}

TEST_CASE("frobenius_error counts one unmatched unit entry") {
  Matrix V(2, 2), W(2, 1), H(1, 2);
  V << 1, 0, 0, 1;
  W << 1, 0;
  H << 1, 0;
  CHECK(frobenius_error(V, W, H) == doctest::Approx(1.0));
}

TEST_CASE("frobenius_error matches the naive triple loop") {
  Rng rng({11, 0});
  for (int trial = 0; trial < 20; ++trial) {
    Matrix V(5, 4), W(5, 2), H(2, 4);
    for (Eigen::Index i = 0; i < V.size(); ++i) V.data()[i] = rng.uniform01();
    for (Eigen::Index i = 0; i < W.size(); ++i) W.data()[i] = rng.uniform01();
    for (Eigen::Index i = 0; i < H.size(); ++i) H.data()[i] = rng.uniform01();
    const double expected = oracles::frobenius_naive(V, W, H);
    CHECK(frobenius_error(V, W, H) == doctest::Approx(expected).epsilon(1e-12));
  }
}

TEST_CASE("frobenius_error rejects nonconforming shapes") {
  const Matrix V = Matrix::Zero(3, 3);
  const Matrix W = Matrix::Zero(3, 2);
  const Matrix H = Matrix::Zero(3, 3);  // wrong inner dimension
  CHECK_THROWS_AS(frobenius_error(V, W, H), Error);
  try {
    frobenius_error(V, W, H);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Dimension);
    CHECK(std::string(e.what()).find("3x3") != std::string::npos);
  }
}

TEST_CASE("column extraction") {
  CHECK(column(Matrix::Identity(3, 3), 1) == Vector({{0.0, 1.0, 0.0}}));
  Matrix M(2, 2);
  M << 1, 2, 3, 4;
  const Vector c = column(M, 0);
  CHECK(c[0] == 1.0);
  CHECK(c[1] == 3.0);
  CHECK_THROWS_AS(column(M, 2), Error);  // j == cols
  CHECK_THROWS_AS(column(M, -1), Error);
}

TEST_CASE("column returns a copy") {
  Matrix M = Matrix::Ones(2, 2);
  Vector c = column(M, 0);
  c[0] = 42.0;
  CHECK(M(0, 0) == 1.0);
}

TEST_CASE("frobenius error decomposes over columns") {
  Rng rng({12, 0});
  for (int trial = 0; trial < 10; ++trial) {
    Matrix V(6, 5), W(6, 3), H(3, 5);
    for (Eigen::Index i = 0; i < V.size(); ++i) V.data()[i] = rng.uniform01();
    for (Eigen::Index i = 0; i < W.size(); ++i) W.data()[i] = rng.uniform01();
    for (Eigen::Index i = 0; i < H.size(); ++i) H.data()[i] = rng.uniform01();
    double by_columns = 0.0;
    for (Eigen::Index j = 0; j < V.cols(); ++j)
      by_columns += (V.col(j) - W * H.col(j)).squaredNorm();
    const double full = frobenius_error(V, W, H);
    CHECK(full == doctest::Approx(by_columns).epsilon(1e-9));
  }
}

TEST_CASE("binary conversions round-trip and validate") {
  BinaryVector bits{1, 0, 1};
  const Vector v = to_real(bits);
  CHECK(to_binary(v) == bits);
  Vector bad(2);
  bad << 0.5, 1.0;
  CHECK_THROWS_AS(to_binary(bad), Error);
}

TEST_CASE("row-major copies preserve layout") {
  const double data[6] = {1, 2, 3, 4, 5, 6};
  const Matrix M = from_row_major(2, 3, data);
  CHECK(M(0, 2) == 3.0);
  CHECK(M(1, 0) == 4.0);
  double out[6];
  to_row_major(M, out);
  for (int i = 0; i < 6; ++i) CHECK(out[i] == data[i]);
}
