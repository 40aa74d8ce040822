/* nbmf — nonnegative/binary matrix factorization.
 *
 * C API of the shared library: opaque handles, status-code returns, and a
 * per-thread error message. All matrix buffers exchanged through this
 * interface are dense row-major doubles; binary column states are uint8_t
 * arrays of 0/1 values.
 */
#ifndef NBMF_H
#define NBMF_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum nbmf_status {
  NBMF_OK = 0,
  NBMF_ERROR_INVALID_ARGUMENT = 1,
  NBMF_ERROR_DIMENSION = 2, /* shapes do not conform */
  NBMF_ERROR_DOMAIN = 3,    /* values outside the allowed set */
  NBMF_ERROR_IO = 4,        /* file read/write/parse failure */
  NBMF_ERROR_CAPACITY = 5,  /* problem size over a hard cap */
  NBMF_ERROR_NUMERIC = 6,   /* non-finite values encountered */
  NBMF_ERROR_CONFIG = 7,    /* inconsistent configuration */
  NBMF_ERROR_INTERNAL = 8
} nbmf_status;

const char* nbmf_version(void);
const char* nbmf_status_name(nbmf_status status);
/* Message for the most recent failing call on this thread. */
const char* nbmf_last_error(void);

/* ------------------------------------------------------------------ */
/* Matrices                                                           */
/* ------------------------------------------------------------------ */

typedef struct nbmf_matrix nbmf_matrix;

/* data may be NULL for a zero matrix; otherwise rows*cols row-major. */
nbmf_status nbmf_matrix_create(size_t rows, size_t cols, const double* data,
                               nbmf_matrix** out);
void nbmf_matrix_destroy(nbmf_matrix* m);
size_t nbmf_matrix_rows(const nbmf_matrix* m);
size_t nbmf_matrix_cols(const nbmf_matrix* m);
nbmf_status nbmf_matrix_get(const nbmf_matrix* m, size_t row, size_t col, double* out);
/* out must hold rows*cols doubles; filled row-major. */
nbmf_status nbmf_matrix_copy(const nbmf_matrix* m, double* out);

/* CSV: one matrix row per line, no header, '.' decimal separator.
 * Readers reject NaN/Inf and, when require_nonneg != 0, negatives. */
nbmf_status nbmf_matrix_read_csv(const char* path, int require_nonneg, nbmf_matrix** out);
nbmf_status nbmf_matrix_write_csv(const nbmf_matrix* m, const char* path);

/* ||V - W*H||_F^2 */
nbmf_status nbmf_frobenius_error(const nbmf_matrix* V, const nbmf_matrix* W,
                                 const nbmf_matrix* H, double* out);

/* ------------------------------------------------------------------ */
/* Synthetic data and image ingestion                                 */
/* ------------------------------------------------------------------ */

typedef struct nbmf_synth_spec {
  uint64_t n;     /* data points; must exceed 2k */
  uint64_t k;     /* features */
  double rho;     /* gamma shape */
  double theta;   /* gamma scale */
  uint64_t seed;
} nbmf_synth_spec;

/* m = round(2nk / (n - 2k)) */
nbmf_status nbmf_synth_m(const nbmf_synth_spec* spec, uint64_t* m_out);
/* V = W_true * H_relaxed exactly; H_relaxed entries lie in [0,1]. Any of the
 * three outputs may be NULL when not needed. */
nbmf_status nbmf_generate_dataset(const nbmf_synth_spec* spec, nbmf_matrix** V_out,
                                  nbmf_matrix** W_out, nbmf_matrix** H_out);
nbmf_status nbmf_sample_gamma(double rho, double theta, size_t count, uint64_t seed,
                              uint64_t stream, double* out);
/* Stacks side x side PGM images (P2/P5) from dir, lexicographic filename
 * order, one flattened image per column, pixel values scaled to [0,1]. */
nbmf_status nbmf_load_images(const char* dir, size_t side, nbmf_matrix** out);

/* ------------------------------------------------------------------ */
/* QUBO instances                                                     */
/* ------------------------------------------------------------------ */

typedef struct nbmf_qubo nbmf_qubo;

/* Column subproblem min ||v - W h||^2 over binary h, encoded so that
 * energy(h) + offset equals the least-squares objective. */
nbmf_status nbmf_qubo_build(const nbmf_matrix* W, const double* v, size_t v_len,
                            nbmf_qubo** out);
void nbmf_qubo_destroy(nbmf_qubo* q);
size_t nbmf_qubo_size(const nbmf_qubo* q);
double nbmf_qubo_offset(const nbmf_qubo* q);
nbmf_status nbmf_qubo_coeff(const nbmf_qubo* q, size_t i, size_t j, double* out);
/* state: size() entries of 0/1. Returns h^T Q h (offset not included). */
nbmf_status nbmf_qubo_energy(const nbmf_qubo* q, const uint8_t* state, double* out);
/* Ising form under x = (1+s)/2. couplings: size*size row-major (may be NULL),
 * biases: size entries (may be NULL). */
nbmf_status nbmf_qubo_to_ising(const nbmf_qubo* q, double* couplings, double* biases,
                               double* constant);
/* Text format: header "N offset", one "i j value" line per nonzero
 * upper-triangular term. */
nbmf_status nbmf_qubo_read_file(const char* path, nbmf_qubo** out);
nbmf_status nbmf_qubo_write_file(const nbmf_qubo* q, const char* path);

/* ------------------------------------------------------------------ */
/* Column solvers                                                     */
/* ------------------------------------------------------------------ */

typedef enum nbmf_solver_kind {
  NBMF_SOLVER_EXACT = 0,
  NBMF_SOLVER_PGD = 1,    /* box relaxation + rounding */
  NBMF_SOLVER_FA = 2,     /* forward annealing analog */
  NBMF_SOLVER_RA = 3,     /* reverse annealing from the previous state */
  NBMF_SOLVER_RA_FA = 4,  /* reverse annealing seeded by forward annealing */
  NBMF_SOLVER_RA_PGD = 5  /* relaxation-assisted reverse annealing */
} nbmf_solver_kind;

typedef struct nbmf_pgd_config {
  int max_iters;
  double tol;        /* projected-gradient inf-norm stop threshold */
  double beta;       /* step shrink factor in (0,1) */
  double sigma;      /* sufficient-decrease constant in (0,1) */
  double alpha_init;
} nbmf_pgd_config;

typedef struct nbmf_anneal_schedule {
  int sweeps;               /* Metropolis sweeps per read */
  int reads;                /* independent repetitions */
  double reversal_distance; /* in [0,1]; RA only */
  double pause_fraction;    /* in [0,1); RA only */
  double temp_max;          /* <= 0: auto from the instance */
  double temp_min;          /* <= 0: auto, 1e-3 * temp_max */
} nbmf_anneal_schedule;

void nbmf_pgd_config_default(nbmf_pgd_config* out);
void nbmf_anneal_schedule_default(nbmf_anneal_schedule* out);
/* Sweep counts of the three RA phases implied by a schedule. */
nbmf_status nbmf_ra_segments(const nbmf_anneal_schedule* schedule, int* up, int* pause,
                             int* down);

typedef struct nbmf_solve_report {
  double best_energy;
  double best_objective; /* best_energy + offset */
  uint64_t samples_evaluated;
  double wall_seconds;
  uint64_t seed;
  uint64_t stream;
  int solver;     /* nbmf_solver_kind */
  int optimal;    /* exact solver proved optimality */
  int degenerate; /* exhaustive search saw multiple optima */
} nbmf_solve_report;

/* state_out must hold nbmf_qubo_size(q) bytes; report may be NULL. */
nbmf_status nbmf_solve_exact(const nbmf_qubo* q, double time_limit_seconds,
                             uint8_t* state_out, nbmf_solve_report* report);
nbmf_status nbmf_solve_fa(const nbmf_qubo* q, const nbmf_anneal_schedule* schedule,
                          uint64_t seed, uint64_t stream, uint8_t* state_out,
                          nbmf_solve_report* report);
/* The result never has a higher objective than the initial state. */
nbmf_status nbmf_solve_ra(const nbmf_qubo* q, const uint8_t* initial,
                          const nbmf_anneal_schedule* schedule, uint64_t seed,
                          uint64_t stream, uint8_t* state_out, nbmf_solve_report* report);
/* relaxed_out, if non-NULL, receives the k-vector relaxed solution. */
nbmf_status nbmf_solve_pgd_round(const nbmf_matrix* W, const double* v, size_t v_len,
                                 const nbmf_pgd_config* config, uint8_t* state_out,
                                 double* relaxed_out, nbmf_solve_report* report);

typedef struct nbmf_solver_config {
  int kind; /* nbmf_solver_kind */
  nbmf_anneal_schedule fa;
  nbmf_anneal_schedule ra;
  nbmf_pgd_config relax;
  double exact_time_limit_seconds;
} nbmf_solver_config;

void nbmf_solver_config_default(nbmf_solver_config* out, nbmf_solver_kind kind);

/* One column subproblem with the configured method. previous (k bytes) is
 * required for RA and RA_PGD and optional for PGD. */
nbmf_status nbmf_solve_column(const nbmf_solver_config* config, const nbmf_matrix* W,
                              const double* v, size_t v_len, const uint8_t* previous,
                              uint64_t seed, uint64_t stream, uint8_t* state_out,
                              double* relaxed_out, nbmf_solve_report* report);

/* ------------------------------------------------------------------ */
/* Alternating least squares                                          */
/* ------------------------------------------------------------------ */

typedef struct nbmf_als_config {
  uint64_t rank;
  int max_iterations;
  double rel_tol; /* 0 disables early stopping */
  nbmf_solver_config solver;
  uint64_t seed;
  nbmf_pgd_config w_pgd;
  nbmf_pgd_config h_pgd;
  int threads; /* worker threads for the column subproblems */
} nbmf_als_config;

void nbmf_als_config_default(nbmf_als_config* out);

typedef struct nbmf_run nbmf_run;

nbmf_status nbmf_als_nmf(const nbmf_matrix* V, const nbmf_als_config* config,
                         nbmf_run** out);
nbmf_status nbmf_als_nbmf(const nbmf_matrix* V, const nbmf_als_config* config,
                          nbmf_run** out);
void nbmf_run_destroy(nbmf_run* run);

/* Number of recorded states; index 0 is the initialization. */
size_t nbmf_run_length(const nbmf_run* run);
nbmf_status nbmf_run_error(const nbmf_run* run, size_t t, double* out);
nbmf_status nbmf_run_error_after_w(const nbmf_run* run, size_t t, double* out);
nbmf_status nbmf_run_step_seconds(const nbmf_run* run, size_t t, double* w_seconds,
                                  double* h_seconds);
nbmf_status nbmf_run_w(const nbmf_run* run, size_t t, nbmf_matrix** out);
nbmf_status nbmf_run_h(const nbmf_run* run, size_t t, nbmf_matrix** out);
/* Pre-rounding relaxed H; NBMF_ERROR_INVALID_ARGUMENT when the method has
 * no relaxation stage or t is the initialization. */
nbmf_status nbmf_run_relaxed(const nbmf_run* run, size_t t, nbmf_matrix** out);

/* ------------------------------------------------------------------ */
/* Metrics                                                            */
/* ------------------------------------------------------------------ */

nbmf_status nbmf_hamming(const uint8_t* x, const uint8_t* y, size_t len, uint64_t* out);
/* counts must hold `bins` entries; values must lie in [0,1]. */
nbmf_status nbmf_histogram(const double* values, size_t count, size_t bins,
                           uint64_t* counts);

/* Per-column comparison of H_method (k x n, binary) against per-column exact
 * solves of min ||V_j - W h||^2. Output arrays must hold n entries each; any
 * may be NULL. approx_ratio is objective_method / objective_opt where the
 * optimum is positive; ratio_defined marks those columns. */
nbmf_status nbmf_evaluate_columns(const nbmf_matrix* V, const nbmf_matrix* W,
                                  const nbmf_matrix* H_method,
                                  double exact_time_limit_seconds, int threads,
                                  double* objective_method, double* objective_opt,
                                  uint64_t* hamming, double* approx_ratio,
                                  int* ratio_defined, int* optimal_flag,
                                  int* degenerate);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* NBMF_H */
