// Exercises the shared-library surface end to end: handles, status codes,
// and the per-thread error message.
#include "nbmf/nbmf.h"

#include <cstring>
#include <string>
#include <vector>

#include "doctest.h"

namespace {

struct Matrix {
  nbmf_matrix* ptr = nullptr;
  ~Matrix() { nbmf_matrix_destroy(ptr); }
};

struct Qubo {
  nbmf_qubo* ptr = nullptr;
  ~Qubo() { nbmf_qubo_destroy(ptr); }
};

struct Run {
  nbmf_run* ptr = nullptr;
  ~Run() { nbmf_run_destroy(ptr); }
};

}  // namespace

TEST_CASE("version and status names") {
  CHECK(std::string(nbmf_version()) == "0.1.0");
  CHECK(std::string(nbmf_status_name(NBMF_OK)) == "ok");
  CHECK(std::string(nbmf_status_name(NBMF_ERROR_DIMENSION)) == "dimension mismatch");
}

TEST_CASE("matrix lifecycle and row-major copies") {
  const double data[6] = {1, 2, 3, 4, 5, 6};
  Matrix m;
  REQUIRE(nbmf_matrix_create(2, 3, data, &m.ptr) == NBMF_OK);
  CHECK(nbmf_matrix_rows(m.ptr) == 2);
  CHECK(nbmf_matrix_cols(m.ptr) == 3);
  double value = 0.0;
  CHECK(nbmf_matrix_get(m.ptr, 1, 0, &value) == NBMF_OK);
  CHECK(value == 4.0);
  double out[6] = {0};
  CHECK(nbmf_matrix_copy(m.ptr, out) == NBMF_OK);
  for (int i = 0; i < 6; ++i) CHECK(out[i] == data[i]);
  CHECK(nbmf_matrix_get(m.ptr, 2, 0, &value) == NBMF_ERROR_DIMENSION);
}

TEST_CASE("null arguments and error messages") {
  CHECK(nbmf_matrix_create(2, 2, nullptr, nullptr) == NBMF_ERROR_INVALID_ARGUMENT);
  Matrix m;
  CHECK(nbmf_matrix_read_csv("/nonexistent/nbmf.csv", 1, &m.ptr) == NBMF_ERROR_IO);
  CHECK(std::strlen(nbmf_last_error()) > 0);
}

TEST_CASE("frobenius error through the c api") {
  const double v_data[4] = {1, 0, 0, 1};
  const double w_data[2] = {1, 0};
  const double h_data[2] = {1, 0};
  Matrix V, W, H;
  REQUIRE(nbmf_matrix_create(2, 2, v_data, &V.ptr) == NBMF_OK);
  REQUIRE(nbmf_matrix_create(2, 1, w_data, &W.ptr) == NBMF_OK);
  REQUIRE(nbmf_matrix_create(1, 2, h_data, &H.ptr) == NBMF_OK);
  double error = 0.0;
  REQUIRE(nbmf_frobenius_error(V.ptr, W.ptr, H.ptr, &error) == NBMF_OK);
  CHECK(error == doctest::Approx(1.0));
  // wrong shapes surface as dimension errors with a message
  CHECK(nbmf_frobenius_error(V.ptr, H.ptr, W.ptr, &error) == NBMF_ERROR_DIMENSION);
  CHECK(std::strlen(nbmf_last_error()) > 0);
}

TEST_CASE("qubo build, energy and exact solve") {
  const double w_data[4] = {1, 0, 0, 1};
  Matrix W;
  REQUIRE(nbmf_matrix_create(2, 2, w_data, &W.ptr) == NBMF_OK);
  const double v[2] = {1, 0};
  Qubo q;
  REQUIRE(nbmf_qubo_build(W.ptr, v, 2, &q.ptr) == NBMF_OK);
  CHECK(nbmf_qubo_size(q.ptr) == 2);
  CHECK(nbmf_qubo_offset(q.ptr) == doctest::Approx(1.0));
  double coeff = 0.0;
  CHECK(nbmf_qubo_coeff(q.ptr, 0, 0, &coeff) == NBMF_OK);
  CHECK(coeff == doctest::Approx(-1.0));

  const uint8_t state10[2] = {1, 0};
  double energy = 0.0;
  CHECK(nbmf_qubo_energy(q.ptr, state10, &energy) == NBMF_OK);
  CHECK(energy == doctest::Approx(-1.0));

  uint8_t best[2] = {9, 9};
  nbmf_solve_report report;
  REQUIRE(nbmf_solve_exact(q.ptr, 10.0, best, &report) == NBMF_OK);
  CHECK(best[0] == 1);
  CHECK(best[1] == 0);
  CHECK(report.best_objective == doctest::Approx(0.0));
  CHECK(report.optimal == 1);

  // ising conversion of the same instance
  double couplings[4], biases[2], constant;
  REQUIRE(nbmf_qubo_to_ising(q.ptr, couplings, biases, &constant) == NBMF_OK);
  CHECK(biases[0] == doctest::Approx(0.5));
  CHECK(biases[1] == doctest::Approx(-0.5));
}

TEST_CASE("annealers through the c api are deterministic") {
  const double w_data[12] = {1, 0.2, 0.4, 0.5, 0.9, 0.1, 0.3, 0.7, 0.8, 0.2, 0.6, 0.4};
  Matrix W;
  REQUIRE(nbmf_matrix_create(4, 3, w_data, &W.ptr) == NBMF_OK);
  const double v[4] = {1.2, 0.4, 0.9, 0.3};
  Qubo q;
  REQUIRE(nbmf_qubo_build(W.ptr, v, 4, &q.ptr) == NBMF_OK);

  nbmf_anneal_schedule schedule;
  nbmf_anneal_schedule_default(&schedule);
  schedule.reads = 5;
  schedule.sweeps = 40;

  uint8_t a[3], b[3];
  nbmf_solve_report ra_report, rb_report;
  REQUIRE(nbmf_solve_fa(q.ptr, &schedule, 7, 1, a, &ra_report) == NBMF_OK);
  REQUIRE(nbmf_solve_fa(q.ptr, &schedule, 7, 1, b, &rb_report) == NBMF_OK);
  CHECK(std::memcmp(a, b, 3) == 0);
  CHECK(ra_report.best_energy == rb_report.best_energy);

  // reversal distance zero freezes the initial state
  schedule.reversal_distance = 0.0;
  const uint8_t initial[3] = {1, 1, 0};
  uint8_t frozen[3];
  REQUIRE(nbmf_solve_ra(q.ptr, initial, &schedule, 7, 2, frozen, nullptr) == NBMF_OK);
  CHECK(std::memcmp(frozen, initial, 3) == 0);

  // malformed binary input is a domain error
  const uint8_t bad[3] = {2, 0, 0};
  double energy = 0.0;
  CHECK(nbmf_qubo_energy(q.ptr, bad, &energy) == NBMF_ERROR_DOMAIN);
}

TEST_CASE("solver config defaults mirror the method budgets") {
  nbmf_solver_config config;
  nbmf_solver_config_default(&config, NBMF_SOLVER_RA_PGD);
  CHECK(config.fa.reads == 1000);
  CHECK(config.ra.reads == 240);
  CHECK(config.kind == NBMF_SOLVER_RA_PGD);
  int up = 0, pause = 0, down = 0;
  nbmf_anneal_schedule s = config.ra;
  s.sweeps = 90;
  REQUIRE(nbmf_ra_segments(&s, &up, &pause, &down) == NBMF_OK);
  CHECK(up + pause + down == 90);
}

TEST_CASE("synthetic generation and ALS runs through the c api") {
  nbmf_synth_spec spec{40, 4, 0.5, 1.0, 99};
  uint64_t m = 0;
  REQUIRE(nbmf_synth_m(&spec, &m) == NBMF_OK);
  CHECK(m == 10);

  Matrix V, Wt, Ht;
  REQUIRE(nbmf_generate_dataset(&spec, &V.ptr, &Wt.ptr, &Ht.ptr) == NBMF_OK);
  CHECK(nbmf_matrix_rows(V.ptr) == 10);
  CHECK(nbmf_matrix_cols(V.ptr) == 40);

  nbmf_als_config config;
  nbmf_als_config_default(&config);
  config.rank = 4;
  config.max_iterations = 3;
  config.rel_tol = 0.0;
  config.solver.kind = NBMF_SOLVER_PGD;
  config.seed = 5;

  Run run;
  REQUIRE(nbmf_als_nbmf(V.ptr, &config, &run.ptr) == NBMF_OK);
  const size_t len = nbmf_run_length(run.ptr);
  REQUIRE(len == 4);  // init + 3 iterations
  double prev = 0.0;
  REQUIRE(nbmf_run_error(run.ptr, 0, &prev) == NBMF_OK);
  for (size_t t = 1; t < len; ++t) {
    double err = 0.0;
    REQUIRE(nbmf_run_error(run.ptr, t, &err) == NBMF_OK);
    CHECK(err <= prev + 1e-9 * (1.0 + prev));
    prev = err;
  }

  Matrix W1, H1, R1;
  REQUIRE(nbmf_run_w(run.ptr, 1, &W1.ptr) == NBMF_OK);
  REQUIRE(nbmf_run_h(run.ptr, 1, &H1.ptr) == NBMF_OK);
  CHECK(nbmf_matrix_rows(W1.ptr) == 10);
  CHECK(nbmf_matrix_cols(H1.ptr) == 40);
  REQUIRE(nbmf_run_relaxed(run.ptr, 1, &R1.ptr) == NBMF_OK);
  CHECK(nbmf_matrix_rows(R1.ptr) == 4);
  CHECK(nbmf_run_error(run.ptr, len, &prev) == NBMF_ERROR_INVALID_ARGUMENT);

  // exact runs record no relaxation
  config.solver.kind = NBMF_SOLVER_EXACT;
  Run exact_run;
  REQUIRE(nbmf_als_nbmf(V.ptr, &config, &exact_run.ptr) == NBMF_OK);
  Matrix none;
  CHECK(nbmf_run_relaxed(exact_run.ptr, 1, &none.ptr) == NBMF_ERROR_INVALID_ARGUMENT);
}

TEST_CASE("metrics helpers through the c api") {
  const uint8_t x[4] = {0, 1, 1, 0};
  const uint8_t y[4] = {1, 1, 0, 0};
  uint64_t distance = 0;
  REQUIRE(nbmf_hamming(x, y, 4, &distance) == NBMF_OK);
  CHECK(distance == 2);

  const double values[4] = {0.0, 0.5, 0.75, 1.0};
  uint64_t counts[4] = {0};
  REQUIRE(nbmf_histogram(values, 4, 4, counts) == NBMF_OK);
  CHECK(counts[0] == 1);
  CHECK(counts[2] == 1);
  CHECK(counts[3] == 2);

  const double bad[1] = {1.5};
  CHECK(nbmf_histogram(bad, 1, 4, counts) == NBMF_ERROR_DOMAIN);
}

TEST_CASE("evaluate_columns through the c api") {
  nbmf_synth_spec spec{20, 3, 0.5, 1.0, 17};
  Matrix V, Wt;
  REQUIRE(nbmf_generate_dataset(&spec, &V.ptr, &Wt.ptr, nullptr) == NBMF_OK);
  const size_t n = nbmf_matrix_cols(V.ptr);
  const size_t k = 3;

  // method H: per-column pgd rounding
  std::vector<double> h_data(k * n, 0.0);
  nbmf_pgd_config pgd;
  nbmf_pgd_config_default(&pgd);
  for (size_t j = 0; j < n; ++j) {
    std::vector<double> v(nbmf_matrix_rows(V.ptr));
    for (size_t i = 0; i < v.size(); ++i)
      REQUIRE(nbmf_matrix_get(V.ptr, i, j, &v[i]) == NBMF_OK);
    std::vector<uint8_t> state(k);
    REQUIRE(nbmf_solve_pgd_round(Wt.ptr, v.data(), v.size(), &pgd, state.data(), nullptr,
                                 nullptr) == NBMF_OK);
    for (size_t i = 0; i < k; ++i) h_data[i * n + j] = state[i];
  }
  Matrix H;
  REQUIRE(nbmf_matrix_create(k, n, h_data.data(), &H.ptr) == NBMF_OK);

  std::vector<double> obj_m(n), obj_o(n), ratio(n);
  std::vector<uint64_t> dist(n);
  std::vector<int> defined(n), optimal(n), degenerate(n);
  REQUIRE(nbmf_evaluate_columns(V.ptr, Wt.ptr, H.ptr, 10.0, 2, obj_m.data(), obj_o.data(),
                                dist.data(), ratio.data(), defined.data(), optimal.data(),
                                degenerate.data()) == NBMF_OK);
  for (size_t j = 0; j < n; ++j) {
    CHECK(obj_m[j] >= obj_o[j] - 1e-9);
    CHECK(optimal[j] == 1);
    if (defined[j]) CHECK(ratio[j] >= 1.0 - 1e-9);
  }
}
