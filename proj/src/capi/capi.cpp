// C shell around the core library: opaque handles, status codes, and a
// per-thread error message. Exceptions never cross this boundary.

#include "nbmf/nbmf.h"

#include <cstring>
#include <memory>
#include <string>

#include "core/als.hpp"
#include "core/csv.hpp"
#include "core/datagen.hpp"
#include "core/error.hpp"
#include "core/matrix.hpp"
#include "core/metrics.hpp"
#include "core/parallel.hpp"
#include "core/qubo.hpp"
#include "core/solvers.hpp"

struct nbmf_matrix {
  nbmf::Matrix m;
};

struct nbmf_qubo {
  nbmf::QuboInstance q;
};

struct nbmf_run {
  std::vector<nbmf::FactorizationState> states;
};

namespace {

thread_local std::string g_last_error;

void set_error(const std::string& message) { g_last_error = message; }

nbmf_status map_code(nbmf::ErrorCode code) {
  switch (code) {
    case nbmf::ErrorCode::InvalidArgument: return NBMF_ERROR_INVALID_ARGUMENT;
    case nbmf::ErrorCode::Dimension: return NBMF_ERROR_DIMENSION;
    case nbmf::ErrorCode::Domain: return NBMF_ERROR_DOMAIN;
    case nbmf::ErrorCode::Io: return NBMF_ERROR_IO;
    case nbmf::ErrorCode::Capacity: return NBMF_ERROR_CAPACITY;
    case nbmf::ErrorCode::Numeric: return NBMF_ERROR_NUMERIC;
    case nbmf::ErrorCode::Config: return NBMF_ERROR_CONFIG;
  }
  return NBMF_ERROR_INTERNAL;
}

template <typename Fn>
nbmf_status guarded(Fn&& fn) noexcept {
  try {
    fn();
    return NBMF_OK;
  } catch (const nbmf::Error& e) {
    set_error(e.what());
    return map_code(e.code());
  } catch (const std::exception& e) {
    set_error(e.what());
    return NBMF_ERROR_INTERNAL;
  } catch (...) {
    set_error("unknown error");
    return NBMF_ERROR_INTERNAL;
  }
}

nbmf_status invalid(const char* message) {
  set_error(message);
  return NBMF_ERROR_INVALID_ARGUMENT;
}

nbmf::PgdConfig to_core(const nbmf_pgd_config& c) {
  nbmf::PgdConfig out;
  out.max_iters = c.max_iters;
  out.tol = c.tol;
  out.beta = c.beta;
  out.sigma = c.sigma;
  out.alpha_init = c.alpha_init;
  return out;
}

nbmf::AnnealSchedule to_core(const nbmf_anneal_schedule& s) {
  nbmf::AnnealSchedule out;
  out.sweeps_total = s.sweeps;
  out.reads = s.reads;
  out.reversal_distance = s.reversal_distance;
  out.pause_fraction = s.pause_fraction;
  out.temp_max = s.temp_max;
  out.temp_min = s.temp_min;
  return out;
}

nbmf::SolverConfig to_core(const nbmf_solver_config& c) {
  nbmf::SolverConfig out;
  nbmf::require(c.kind >= NBMF_SOLVER_EXACT && c.kind <= NBMF_SOLVER_RA_PGD,
                nbmf::ErrorCode::Config, "unknown solver kind");
  out.kind = static_cast<nbmf::SolverKind>(c.kind);
  out.fa = to_core(c.fa);
  out.ra = to_core(c.ra);
  out.relax = to_core(c.relax);
  out.exact.time_limit_seconds = c.exact_time_limit_seconds;
  return out;
}

void fill_report(const nbmf::SolveReport& in, nbmf_solve_report* out) {
  if (out == nullptr) return;
  out->best_energy = in.best_energy;
  out->best_objective = in.best_objective;
  out->samples_evaluated = in.samples_evaluated;
  out->wall_seconds = in.wall_seconds;
  out->seed = in.seed.master_seed;
  out->stream = in.seed.stream_id;
  out->solver = static_cast<int>(in.solver);
  out->optimal = in.optimal ? 1 : 0;
  out->degenerate = in.degenerate ? 1 : 0;
}

void fill_state(const nbmf::BinaryVector& state, uint8_t* out) {
  std::memcpy(out, state.data(), state.size());
}

nbmf::BinaryVector read_state(const uint8_t* bits, size_t len) {
  nbmf::BinaryVector state(bits, bits + len);
  for (auto b : state)
    nbmf::require(b == 0 || b == 1, nbmf::ErrorCode::Domain,
                  "binary state entries must be 0 or 1");
  return state;
}

nbmf::SyntheticSpec to_core(const nbmf_synth_spec& s) {
  nbmf::SyntheticSpec spec;
  spec.n = static_cast<int>(s.n);
  spec.k = static_cast<int>(s.k);
  spec.rho = s.rho;
  spec.theta = s.theta;
  spec.seed = {s.seed, 0};
  return spec;
}

nbmf::AlsConfig als_to_core(const nbmf_als_config& c) {
  nbmf::AlsConfig out;
  out.rank = static_cast<int>(c.rank);
  out.max_iterations = c.max_iterations;
  out.rel_tol = c.rel_tol;
  out.solver = to_core(c.solver);
  out.seed = {c.seed, 0};
  out.w_pgd = to_core(c.w_pgd);
  out.h_pgd = to_core(c.h_pgd);
  out.threads = c.threads;
  return out;
}

const nbmf::FactorizationState* state_at(const nbmf_run* run, size_t t) {
  if (run == nullptr || t >= run->states.size()) return nullptr;
  return &run->states[t];
}

}  // namespace

extern "C" {

const char* nbmf_version(void) { return "0.1.0"; }

const char* nbmf_status_name(nbmf_status status) {
  switch (status) {
    case NBMF_OK: return "ok";
    case NBMF_ERROR_INVALID_ARGUMENT: return "invalid argument";
    case NBMF_ERROR_DIMENSION: return "dimension mismatch";
    case NBMF_ERROR_DOMAIN: return "domain error";
    case NBMF_ERROR_IO: return "io error";
    case NBMF_ERROR_CAPACITY: return "capacity exceeded";
    case NBMF_ERROR_NUMERIC: return "numeric error";
    case NBMF_ERROR_CONFIG: return "configuration error";
    case NBMF_ERROR_INTERNAL: return "internal error";
  }
  return "unknown";
}

const char* nbmf_last_error(void) { return g_last_error.c_str(); }

/* ---- matrices ---- */

nbmf_status nbmf_matrix_create(size_t rows, size_t cols, const double* data,
                               nbmf_matrix** out) {
  if (out == nullptr) return invalid("out must not be NULL");
  if (rows == 0 || cols == 0) return invalid("matrix dimensions must be positive");
  return guarded([&] {
    auto handle = std::make_unique<nbmf_matrix>();
    if (data == nullptr) {
      handle->m = nbmf::Matrix::Zero(static_cast<Eigen::Index>(rows),
                                     static_cast<Eigen::Index>(cols));
    } else {
      handle->m = nbmf::from_row_major(static_cast<Eigen::Index>(rows),
                                       static_cast<Eigen::Index>(cols), data);
    }
    *out = handle.release();
  });
}

void nbmf_matrix_destroy(nbmf_matrix* m) { delete m; }

size_t nbmf_matrix_rows(const nbmf_matrix* m) {
  return m == nullptr ? 0 : static_cast<size_t>(m->m.rows());
}

size_t nbmf_matrix_cols(const nbmf_matrix* m) {
  return m == nullptr ? 0 : static_cast<size_t>(m->m.cols());
}

nbmf_status nbmf_matrix_get(const nbmf_matrix* m, size_t row, size_t col, double* out) {
  if (m == nullptr || out == nullptr) return invalid("NULL argument");
  if (row >= static_cast<size_t>(m->m.rows()) || col >= static_cast<size_t>(m->m.cols())) {
    set_error("matrix index out of range");
    return NBMF_ERROR_DIMENSION;
  }
  *out = m->m(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col));
  return NBMF_OK;
}

nbmf_status nbmf_matrix_copy(const nbmf_matrix* m, double* out) {
  if (m == nullptr || out == nullptr) return invalid("NULL argument");
  nbmf::to_row_major(m->m, out);
  return NBMF_OK;
}

nbmf_status nbmf_matrix_read_csv(const char* path, int require_nonneg, nbmf_matrix** out) {
  if (path == nullptr || out == nullptr) return invalid("NULL argument");
  return guarded([&] {
    auto handle = std::make_unique<nbmf_matrix>();
    handle->m = nbmf::read_matrix_csv(path, require_nonneg != 0);
    *out = handle.release();
  });
}

nbmf_status nbmf_matrix_write_csv(const nbmf_matrix* m, const char* path) {
  if (m == nullptr || path == nullptr) return invalid("NULL argument");
  return guarded([&] { nbmf::write_matrix_csv(m->m, path); });
}

nbmf_status nbmf_frobenius_error(const nbmf_matrix* V, const nbmf_matrix* W,
                                 const nbmf_matrix* H, double* out) {
  if (V == nullptr || W == nullptr || H == nullptr || out == nullptr)
    return invalid("NULL argument");
  return guarded([&] { *out = nbmf::frobenius_error(V->m, W->m, H->m); });
}

/* ---- synthetic data ---- */

nbmf_status nbmf_synth_m(const nbmf_synth_spec* spec, uint64_t* m_out) {
  if (spec == nullptr || m_out == nullptr) return invalid("NULL argument");
  return guarded([&] { *m_out = static_cast<uint64_t>(nbmf::synthetic_m(to_core(*spec))); });
}

nbmf_status nbmf_generate_dataset(const nbmf_synth_spec* spec, nbmf_matrix** V_out,
                                  nbmf_matrix** W_out, nbmf_matrix** H_out) {
  if (spec == nullptr) return invalid("NULL argument");
  return guarded([&] {
    nbmf::SyntheticDataset data = nbmf::generate_dataset(to_core(*spec));
    if (V_out != nullptr) *V_out = new nbmf_matrix{std::move(data.V)};
    if (W_out != nullptr) *W_out = new nbmf_matrix{std::move(data.W_true)};
    if (H_out != nullptr) *H_out = new nbmf_matrix{std::move(data.H_relaxed)};
  });
}

nbmf_status nbmf_sample_gamma(double rho, double theta, size_t count, uint64_t seed,
                              uint64_t stream, double* out) {
  if (out == nullptr && count > 0) return invalid("out must not be NULL");
  return guarded([&] {
    const std::vector<double> values = nbmf::sample_gamma(rho, theta, count, {seed, stream});
    std::memcpy(out, values.data(), count * sizeof(double));
  });
}

nbmf_status nbmf_load_images(const char* dir, size_t side, nbmf_matrix** out) {
  if (dir == nullptr || out == nullptr) return invalid("NULL argument");
  return guarded([&] {
    auto handle = std::make_unique<nbmf_matrix>();
    handle->m = nbmf::load_images(dir, static_cast<int>(side));
    *out = handle.release();
  });
}

/* ---- qubo ---- */

nbmf_status nbmf_qubo_build(const nbmf_matrix* W, const double* v, size_t v_len,
                            nbmf_qubo** out) {
  if (W == nullptr || v == nullptr || out == nullptr) return invalid("NULL argument");
  return guarded([&] {
    const nbmf::Vector target =
        Eigen::Map<const nbmf::Vector>(v, static_cast<Eigen::Index>(v_len));
    auto handle = std::make_unique<nbmf_qubo>();
    handle->q = nbmf::build_qubo(W->m, target);
    *out = handle.release();
  });
}

void nbmf_qubo_destroy(nbmf_qubo* q) { delete q; }

size_t nbmf_qubo_size(const nbmf_qubo* q) {
  return q == nullptr ? 0 : static_cast<size_t>(q->q.size());
}

double nbmf_qubo_offset(const nbmf_qubo* q) { return q == nullptr ? 0.0 : q->q.offset; }

nbmf_status nbmf_qubo_coeff(const nbmf_qubo* q, size_t i, size_t j, double* out) {
  if (q == nullptr || out == nullptr) return invalid("NULL argument");
  if (i >= static_cast<size_t>(q->q.size()) || j >= static_cast<size_t>(q->q.size())) {
    set_error("qubo index out of range");
    return NBMF_ERROR_DIMENSION;
  }
  *out = q->q.q(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  return NBMF_OK;
}

nbmf_status nbmf_qubo_energy(const nbmf_qubo* q, const uint8_t* state, double* out) {
  if (q == nullptr || state == nullptr || out == nullptr) return invalid("NULL argument");
  return guarded([&] {
    *out = nbmf::qubo_energy(q->q, read_state(state, static_cast<size_t>(q->q.size())));
  });
}

nbmf_status nbmf_qubo_to_ising(const nbmf_qubo* q, double* couplings, double* biases,
                               double* constant) {
  if (q == nullptr) return invalid("NULL argument");
  return guarded([&] {
    const nbmf::IsingInstance ising = nbmf::qubo_to_ising(q->q);
    if (couplings != nullptr) nbmf::to_row_major(ising.couplings, couplings);
    if (biases != nullptr)
      std::memcpy(biases, ising.biases.data(),
                  static_cast<size_t>(ising.biases.size()) * sizeof(double));
    if (constant != nullptr) *constant = ising.constant;
  });
}

nbmf_status nbmf_qubo_read_file(const char* path, nbmf_qubo** out) {
  if (path == nullptr || out == nullptr) return invalid("NULL argument");
  return guarded([&] {
    auto handle = std::make_unique<nbmf_qubo>();
    handle->q = nbmf::read_qubo_file(path);
    *out = handle.release();
  });
}

nbmf_status nbmf_qubo_write_file(const nbmf_qubo* q, const char* path) {
  if (q == nullptr || path == nullptr) return invalid("NULL argument");
  return guarded([&] { nbmf::write_qubo_file(q->q, path); });
}

/* ---- solvers ---- */

void nbmf_pgd_config_default(nbmf_pgd_config* out) {
  if (out == nullptr) return;
  const nbmf::PgdConfig d;
  out->max_iters = d.max_iters;
  out->tol = d.tol;
  out->beta = d.beta;
  out->sigma = d.sigma;
  out->alpha_init = d.alpha_init;
}

void nbmf_anneal_schedule_default(nbmf_anneal_schedule* out) {
  if (out == nullptr) return;
  const nbmf::AnnealSchedule d;
  out->sweeps = d.sweeps_total;
  out->reads = d.reads;
  out->reversal_distance = d.reversal_distance;
  out->pause_fraction = d.pause_fraction;
  out->temp_max = d.temp_max;
  out->temp_min = d.temp_min;
}

nbmf_status nbmf_ra_segments(const nbmf_anneal_schedule* schedule, int* up, int* pause,
                             int* down) {
  if (schedule == nullptr) return invalid("NULL argument");
  return guarded([&] {
    const nbmf::RaSegments seg = nbmf::ra_segments(to_core(*schedule));
    if (up != nullptr) *up = seg.up;
    if (pause != nullptr) *pause = seg.pause;
    if (down != nullptr) *down = seg.down;
  });
}

void nbmf_solver_config_default(nbmf_solver_config* out, nbmf_solver_kind kind) {
  if (out == nullptr) return;
  out->kind = kind;
  nbmf_anneal_schedule_default(&out->fa);
  out->fa.reads = 1000;
  nbmf_anneal_schedule_default(&out->ra);
  out->ra.reads = 240;
  nbmf_pgd_config_default(&out->relax);
  out->exact_time_limit_seconds = 60.0;
}

nbmf_status nbmf_solve_exact(const nbmf_qubo* q, double time_limit_seconds,
                             uint8_t* state_out, nbmf_solve_report* report) {
  if (q == nullptr || state_out == nullptr) return invalid("NULL argument");
  return guarded([&] {
    nbmf::ExactOptions options;
    options.time_limit_seconds = time_limit_seconds;
    const nbmf::SolveReport result = nbmf::solve_exact(q->q, options);
    fill_state(result.best_state, state_out);
    fill_report(result, report);
  });
}

nbmf_status nbmf_solve_fa(const nbmf_qubo* q, const nbmf_anneal_schedule* schedule,
                          uint64_t seed, uint64_t stream, uint8_t* state_out,
                          nbmf_solve_report* report) {
  if (q == nullptr || schedule == nullptr || state_out == nullptr)
    return invalid("NULL argument");
  return guarded([&] {
    const nbmf::SolveReport result =
        nbmf::solve_fa(q->q, to_core(*schedule), {seed, stream});
    fill_state(result.best_state, state_out);
    fill_report(result, report);
  });
}

nbmf_status nbmf_solve_ra(const nbmf_qubo* q, const uint8_t* initial,
                          const nbmf_anneal_schedule* schedule, uint64_t seed,
                          uint64_t stream, uint8_t* state_out, nbmf_solve_report* report) {
  if (q == nullptr || initial == nullptr || schedule == nullptr || state_out == nullptr)
    return invalid("NULL argument");
  return guarded([&] {
    const nbmf::SolveReport result =
        nbmf::solve_ra(q->q, read_state(initial, static_cast<size_t>(q->q.size())),
                       to_core(*schedule), {seed, stream});
    fill_state(result.best_state, state_out);
    fill_report(result, report);
  });
}

nbmf_status nbmf_solve_pgd_round(const nbmf_matrix* W, const double* v, size_t v_len,
                                 const nbmf_pgd_config* config, uint8_t* state_out,
                                 double* relaxed_out, nbmf_solve_report* report) {
  if (W == nullptr || v == nullptr || config == nullptr || state_out == nullptr)
    return invalid("NULL argument");
  return guarded([&] {
    const nbmf::Vector target =
        Eigen::Map<const nbmf::Vector>(v, static_cast<Eigen::Index>(v_len));
    const nbmf::PgdRoundResult result =
        nbmf::solve_pgd_round(W->m, target, to_core(*config));
    fill_state(result.report.best_state, state_out);
    if (relaxed_out != nullptr)
      std::memcpy(relaxed_out, result.relaxed.data(),
                  static_cast<size_t>(result.relaxed.size()) * sizeof(double));
    fill_report(result.report, report);
  });
}

nbmf_status nbmf_solve_column(const nbmf_solver_config* config, const nbmf_matrix* W,
                              const double* v, size_t v_len, const uint8_t* previous,
                              uint64_t seed, uint64_t stream, uint8_t* state_out,
                              double* relaxed_out, nbmf_solve_report* report) {
  if (config == nullptr || W == nullptr || v == nullptr || state_out == nullptr)
    return invalid("NULL argument");
  return guarded([&] {
    const nbmf::Vector target =
        Eigen::Map<const nbmf::Vector>(v, static_cast<Eigen::Index>(v_len));
    nbmf::BinaryVector prev;
    const nbmf::BinaryVector* prev_ptr = nullptr;
    if (previous != nullptr) {
      prev = read_state(previous, static_cast<size_t>(W->m.cols()));
      prev_ptr = &prev;
    }
    const nbmf::ColumnResult result =
        nbmf::solve_column(to_core(*config), W->m, target, prev_ptr, {seed, stream});
    fill_state(result.report.best_state, state_out);
    if (relaxed_out != nullptr && result.relaxed.has_value())
      std::memcpy(relaxed_out, result.relaxed->data(),
                  static_cast<size_t>(result.relaxed->size()) * sizeof(double));
    fill_report(result.report, report);
  });
}

/* ---- als ---- */

void nbmf_als_config_default(nbmf_als_config* out) {
  if (out == nullptr) return;
  out->rank = 10;
  out->max_iterations = 20;
  out->rel_tol = 1e-4;
  nbmf_solver_config_default(&out->solver, NBMF_SOLVER_EXACT);
  out->seed = 0;
  nbmf_pgd_config_default(&out->w_pgd);
  nbmf_pgd_config_default(&out->h_pgd);
  out->threads = 1;
}

nbmf_status nbmf_als_nmf(const nbmf_matrix* V, const nbmf_als_config* config,
                         nbmf_run** out) {
  if (V == nullptr || config == nullptr || out == nullptr) return invalid("NULL argument");
  return guarded([&] {
    auto run = std::make_unique<nbmf_run>();
    run->states = nbmf::als_nmf(V->m, als_to_core(*config));
    *out = run.release();
  });
}

nbmf_status nbmf_als_nbmf(const nbmf_matrix* V, const nbmf_als_config* config,
                          nbmf_run** out) {
  if (V == nullptr || config == nullptr || out == nullptr) return invalid("NULL argument");
  return guarded([&] {
    auto run = std::make_unique<nbmf_run>();
    run->states = nbmf::als_nbmf(V->m, als_to_core(*config));
    *out = run.release();
  });
}

void nbmf_run_destroy(nbmf_run* run) { delete run; }

size_t nbmf_run_length(const nbmf_run* run) {
  return run == nullptr ? 0 : run->states.size();
}

nbmf_status nbmf_run_error(const nbmf_run* run, size_t t, double* out) {
  const auto* state = state_at(run, t);
  if (state == nullptr || out == nullptr) return invalid("bad run handle or index");
  *out = state->error;
  return NBMF_OK;
}

nbmf_status nbmf_run_error_after_w(const nbmf_run* run, size_t t, double* out) {
  const auto* state = state_at(run, t);
  if (state == nullptr || out == nullptr) return invalid("bad run handle or index");
  *out = state->error_after_w;
  return NBMF_OK;
}

nbmf_status nbmf_run_step_seconds(const nbmf_run* run, size_t t, double* w_seconds,
                                  double* h_seconds) {
  const auto* state = state_at(run, t);
  if (state == nullptr) return invalid("bad run handle or index");
  if (w_seconds != nullptr) *w_seconds = state->w_seconds;
  if (h_seconds != nullptr) *h_seconds = state->h_seconds;
  return NBMF_OK;
}

nbmf_status nbmf_run_w(const nbmf_run* run, size_t t, nbmf_matrix** out) {
  const auto* state = state_at(run, t);
  if (state == nullptr || out == nullptr) return invalid("bad run handle or index");
  *out = new nbmf_matrix{state->W};
  return NBMF_OK;
}

nbmf_status nbmf_run_h(const nbmf_run* run, size_t t, nbmf_matrix** out) {
  const auto* state = state_at(run, t);
  if (state == nullptr || out == nullptr) return invalid("bad run handle or index");
  *out = new nbmf_matrix{state->H};
  return NBMF_OK;
}

nbmf_status nbmf_run_relaxed(const nbmf_run* run, size_t t, nbmf_matrix** out) {
  const auto* state = state_at(run, t);
  if (state == nullptr || out == nullptr) return invalid("bad run handle or index");
  if (!state->relaxed.has_value())
    return invalid("no relaxed coefficients recorded for this state");
  *out = new nbmf_matrix{*state->relaxed};
  return NBMF_OK;
}

/* ---- metrics ---- */

nbmf_status nbmf_hamming(const uint8_t* x, const uint8_t* y, size_t len, uint64_t* out) {
  if (x == nullptr || y == nullptr || out == nullptr) return invalid("NULL argument");
  return guarded([&] { *out = nbmf::hamming(read_state(x, len), read_state(y, len)); });
}

nbmf_status nbmf_histogram(const double* values, size_t count, size_t bins,
                           uint64_t* counts) {
  if ((values == nullptr && count > 0) || counts == nullptr)
    return invalid("NULL argument");
  return guarded([&] {
    const std::vector<std::uint64_t> result =
        nbmf::histogram(std::span<const double>(values, count), bins);
    std::memcpy(counts, result.data(), result.size() * sizeof(std::uint64_t));
  });
}

nbmf_status nbmf_evaluate_columns(const nbmf_matrix* V, const nbmf_matrix* W,
                                  const nbmf_matrix* H_method,
                                  double exact_time_limit_seconds, int threads,
                                  double* objective_method, double* objective_opt,
                                  uint64_t* hamming, double* approx_ratio,
                                  int* ratio_defined, int* optimal_flag,
                                  int* degenerate) {
  if (V == nullptr || W == nullptr || H_method == nullptr)
    return invalid("NULL argument");
  return guarded([&] {
    const int n = static_cast<int>(V->m.cols());
    std::vector<nbmf::SolveReport> exact(static_cast<size_t>(n));
    nbmf::ExactOptions options;
    options.time_limit_seconds = exact_time_limit_seconds;
    nbmf::parallel_for(n, threads, [&](int j) {
      exact[static_cast<size_t>(j)] =
          nbmf::solve_exact(nbmf::build_qubo(W->m, V->m.col(j)), options);
    });
    const std::vector<nbmf::ColumnEval> evals =
        nbmf::evaluate_columns(V->m, W->m, H_method->m, exact);
    for (int j = 0; j < n; ++j) {
      const nbmf::ColumnEval& e = evals[static_cast<size_t>(j)];
      if (objective_method != nullptr) objective_method[j] = e.objective_method;
      if (objective_opt != nullptr) objective_opt[j] = e.objective_opt;
      if (hamming != nullptr) hamming[j] = e.hamming;
      if (approx_ratio != nullptr) approx_ratio[j] = e.ratio_defined ? e.approx_ratio : -1.0;
      if (ratio_defined != nullptr) ratio_defined[j] = e.ratio_defined ? 1 : 0;
      if (optimal_flag != nullptr) optimal_flag[j] = e.optimal_flag ? 1 : 0;
      if (degenerate != nullptr) degenerate[j] = e.degenerate ? 1 : 0;
    }
  });
}

} /* extern "C" */
