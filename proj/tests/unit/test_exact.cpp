#include <cmath>

#include "core/error.hpp"
#include "core/rng.hpp"
#include "core/solvers.hpp"
#include "doctest.h"
#include "support/oracles.hpp"

using namespace nbmf;

TEST_CASE("solve_exact finds the minimizer of the orthonormal example") {
  const Matrix W = Matrix::Identity(2, 2);
  Vector v(2);
  v << 1, 0;
  const SolveReport report = solve_exact(build_qubo(W, v));
  CHECK(report.best_state == BinaryVector{1, 0});
  CHECK(report.best_objective == doctest::Approx(0.0));
  CHECK(report.optimal);
}

TEST_CASE("solve_exact breaks ties toward the lexicographic minimum") {
  QuboInstance q;
  q.q = Matrix::Zero(3, 3);
  SolveReport report = solve_exact(q);
  CHECK(report.best_state == BinaryVector{0, 0, 0});
  CHECK(report.degenerate);

  // optima {01, 10} at energy -1; 01 is lexicographically smaller
  q.q = Matrix(2, 2);
  q.q << -1, 1, 1, -1;
  report = solve_exact(q);
  CHECK(report.best_state == BinaryVector{0, 1});
  CHECK(report.best_energy == doctest::Approx(-1.0));
  CHECK(report.degenerate);
}

TEST_CASE("solve_exact matches independent enumeration on random k=12 instances") {
  Rng rng({101, 0});
  for (int trial = 0; trial < 20; ++trial) {
    const auto inst = oracles::random_column_instance(8, 12, rng);
    const QuboInstance q = build_qubo(inst.W, inst.v);
    const auto expected = oracles::exhaustive_min(q.q);
    const SolveReport report = solve_exact(q);
    CHECK(report.best_energy == doctest::Approx(expected.energy).epsilon(1e-12));
    CHECK(report.best_state == expected.state);
    CHECK(report.optimal);
  }
}

TEST_CASE("branch and bound agrees with enumeration") {
  Rng rng({102, 0});
  for (int trial = 0; trial < 20; ++trial) {
    const auto inst = oracles::random_column_instance(6, 12, rng);
    const QuboInstance q = build_qubo(inst.W, inst.v);
    const auto expected = oracles::exhaustive_min(q.q);
    const SolveReport report = solve_exact_branch_bound(q, 60.0);
    CHECK(report.best_energy == doctest::Approx(expected.energy).epsilon(1e-12));
    CHECK(report.best_state == expected.state);
    CHECK(report.optimal);
  }
}

TEST_CASE("branch and bound handles mixed-sign couplings") {
  Rng rng({103, 0});
  for (int trial = 0; trial < 20; ++trial) {
    QuboInstance q;
    q.q = Matrix(10, 10);
    for (Eigen::Index i = 0; i < 10; ++i)
      for (Eigen::Index j = 0; j <= i; ++j) {
        const double value = 2.0 * rng.uniform01() - 1.0;
        q.q(i, j) = value;
        q.q(j, i) = value;
      }
    const auto expected = oracles::exhaustive_min(q.q);
    const SolveReport report = solve_exact_branch_bound(q, 60.0);
    CHECK(report.best_energy == doctest::Approx(expected.energy).epsilon(1e-12));
    CHECK(report.best_state == expected.state);
  }
}

TEST_CASE("solve_exact enforces the size cap") {
  QuboInstance q;
  q.q = Matrix::Zero(41, 41);
  CHECK_THROWS_AS(solve_exact(q), Error);
  try {
    solve_exact(q);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Capacity);
  }
}

TEST_CASE("solve_exact respects the time limit and flags the incumbent") {
  Rng rng({104, 0});
  QuboInstance q;
  q.q = Matrix(26, 26);
  for (Eigen::Index i = 0; i < 26; ++i)
    for (Eigen::Index j = 0; j <= i; ++j) {
      const double value = 2.0 * rng.uniform01() - 1.0;
      q.q(i, j) = value;
      q.q(j, i) = value;
    }
  ExactOptions options;
  options.time_limit_seconds = 1e-4;
  const SolveReport report = solve_exact(q, options);
  CHECK(!report.optimal);
  CHECK(report.best_state.size() == 26);
}
