#include "core/qubo.hpp"

#include <filesystem>

#include "core/error.hpp"
#include "core/rng.hpp"
#include "doctest.h"
#include "support/oracles.hpp"

using namespace nbmf;

TEST_CASE("build_qubo on orthonormal columns") {
  const Matrix W = Matrix::Identity(2, 2);
  Vector v(2);
  v << 1, 0;
  const QuboInstance q = build_qubo(W, v);
  CHECK(q.q(0, 0) == doctest::Approx(-1.0));
  CHECK(q.q(1, 1) == doctest::Approx(1.0));
  CHECK(q.q(0, 1) == doctest::Approx(0.0));
  CHECK(q.offset == doctest::Approx(1.0));
  CHECK(qubo_energy(q, {1, 0}) == doctest::Approx(-1.0));
  CHECK(qubo_objective(q, {1, 0}) == doctest::Approx(0.0));
}

TEST_CASE("build_qubo with a zero target") {
  Rng rng({7, 0});
  const auto inst = oracles::random_column_instance(4, 3, rng);
  const QuboInstance q = build_qubo(inst.W, Vector::Zero(4));
  CHECK(q.offset == 0.0);
  const Matrix gram = inst.W.transpose() * inst.W;
  CHECK((q.q - gram).cwiseAbs().maxCoeff() == doctest::Approx(0.0));
  CHECK(qubo_energy(q, {0, 0, 0}) == 0.0);
}

TEST_CASE("qubo objective identity over all assignments") {
  Rng rng({8, 0});
  for (int trial = 0; trial < 50; ++trial) {
    const auto inst = oracles::random_column_instance(4, 3, rng);
    const QuboInstance q = build_qubo(inst.W, inst.v);
    for (std::uint64_t code = 0; code < 8; ++code) {
      const BinaryVector h = oracles::bits_of(code, 3);
      const double direct = oracles::column_objective(inst.W, inst.v, h);
      const double via_qubo = qubo_energy(q, h) + q.offset;
      CHECK(via_qubo == doctest::Approx(direct).epsilon(1e-9));
    }
  }
}

TEST_CASE("qubo_energy matches the naive double loop") {
  Rng rng({9, 0});
  for (int trial = 0; trial < 20; ++trial) {
    QuboInstance q;
    q.q = Matrix(5, 5);
    for (Eigen::Index i = 0; i < 5; ++i)
      for (Eigen::Index j = 0; j <= i; ++j) {
        const double value = 2.0 * rng.uniform01() - 1.0;
        q.q(i, j) = value;
        q.q(j, i) = value;
      }
    for (std::uint64_t code = 0; code < 32; ++code) {
      const BinaryVector h = oracles::bits_of(code, 5);
      CHECK(qubo_energy(q, h) ==
            doctest::Approx(oracles::qubo_energy_naive(q.q, h)).epsilon(1e-12));
    }
  }
  QuboInstance q;
  q.q = Matrix::Zero(3, 3);
  CHECK_THROWS_AS(qubo_energy(q, {1, 0}), Error);  // length mismatch
}

TEST_CASE("single-variable ising conversion constants") {
  QuboInstance q;
  q.q = Matrix(1, 1);
  q.q << 3.0;
  const IsingInstance ising = qubo_to_ising(q);
  CHECK(ising.biases[0] == doctest::Approx(-1.5));
  CHECK(ising.constant == doctest::Approx(1.5));
  CHECK(ising.couplings(0, 0) == 0.0);
}

TEST_CASE("zero qubo converts to zero ising") {
  QuboInstance q;
  q.q = Matrix::Zero(3, 3);
  const IsingInstance ising = qubo_to_ising(q);
  CHECK(ising.couplings.cwiseAbs().maxCoeff() == 0.0);
  CHECK(ising.biases.cwiseAbs().maxCoeff() == 0.0);
  CHECK(ising.constant == 0.0);
}

TEST_CASE("ising energies agree with qubo energies over all assignments") {
  Rng rng({10, 0});
  for (int trial = 0; trial < 20; ++trial) {
    QuboInstance q;
    q.q = Matrix(3, 3);
    for (Eigen::Index i = 0; i < 3; ++i)
      for (Eigen::Index j = 0; j <= i; ++j) {
        const double value = 4.0 * rng.uniform01() - 2.0;
        q.q(i, j) = value;
        q.q(j, i) = value;
      }
    const IsingInstance ising = qubo_to_ising(q);
    for (std::uint64_t code = 0; code < 8; ++code) {
      const BinaryVector h = oracles::bits_of(code, 3);
      std::vector<int> spins(3);
      for (int i = 0; i < 3; ++i) spins[i] = h[i] ? 1 : -1;
      CHECK(qubo_energy(q, h) ==
            doctest::Approx(ising_energy(ising, spins)).epsilon(1e-12));
    }
  }
}

TEST_CASE("argmin sets correspond under the spin map") {
  Rng rng({13, 0});
  for (int trial = 0; trial < 10; ++trial) {
    const auto inst = oracles::random_column_instance(6, 8, rng);
    const QuboInstance q = build_qubo(inst.W, inst.v);
    const IsingInstance ising = qubo_to_ising(q);
    double best_q = 1e300, best_i = 1e300;
    std::uint64_t argmin_q = 0, argmin_i = 0;
    for (std::uint64_t code = 0; code < (1ULL << 8); ++code) {
      const BinaryVector h = oracles::bits_of(code, 8);
      std::vector<int> spins(8);
      for (int i = 0; i < 8; ++i) spins[i] = h[i] ? 1 : -1;
      const double eq = qubo_energy(q, h);
      const double ei = ising_energy(ising, spins);
      if (eq < best_q) {
        best_q = eq;
        argmin_q = code;
      }
      if (ei < best_i) {
        best_i = ei;
        argmin_i = code;
      }
    }
    CHECK(argmin_q == argmin_i);
  }
}

TEST_CASE("qubo text format round trips") {
  Rng rng({14, 0});
  const auto inst = oracles::random_column_instance(5, 4, rng);
  const QuboInstance q = build_qubo(inst.W, inst.v);
  const std::string text = qubo_to_text(q);
  const QuboInstance back = parse_qubo_text(text, "mem");
  CHECK(back.size() == q.size());
  CHECK(back.offset == q.offset);
  for (std::uint64_t code = 0; code < 16; ++code) {
    const BinaryVector h = oracles::bits_of(code, 4);
    CHECK(qubo_energy(back, h) == doctest::Approx(qubo_energy(q, h)).epsilon(1e-12));
  }
}

TEST_CASE("qubo parser reports the offending line") {
  try {
    parse_qubo_text("garbage here\n", "f");
    FAIL("expected parse error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Io);
    CHECK(std::string(e.what()).find("f:1") != std::string::npos);
  }
  try {
    parse_qubo_text("2 0\n0 5 1.0\n", "f");
    FAIL("expected parse error");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("f:2") != std::string::npos);
  }
  // lower-triangular entries are rejected
  CHECK_THROWS_AS(parse_qubo_text("2 0\n1 0 1.0\n", "f"), Error);
}

TEST_CASE("build_qubo validates inputs") {
  const Matrix W = Matrix::Ones(3, 2);
  CHECK_THROWS_AS(build_qubo(W, Vector::Zero(2)), Error);  // length mismatch
  Vector neg(3);
  neg << 1, -1, 0;
  CHECK_THROWS_AS(build_qubo(W, neg), Error);
}
