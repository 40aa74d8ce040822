#ifndef NBMF_CORE_ALS_HPP
#define NBMF_CORE_ALS_HPP

#include <optional>
#include <vector>

#include "core/matrix.hpp"
#include "core/pgd.hpp"
#include "core/rng.hpp"
#include "core/solvers.hpp"

namespace nbmf {

struct AlsConfig {
  int rank = 10;
  int max_iterations = 20;
  double rel_tol = 1e-4;  // stop when the relative error improvement drops below
  SolverConfig solver;    // column solver for the binary H step
  RngSpec seed;
  PgdConfig w_pgd;
  PgdConfig h_pgd;  // continuous H step (NMF mode and the relaxation)
  int threads = 1;
};

// Snapshot after one full ALS iteration. Iteration 0 holds the random
// initialization; later entries record W and H after both block steps,
// the error after the W step alone, and wall time per step.
struct FactorizationState {
  int iteration = 0;
  Matrix W;
  Matrix H;
  double error = 0.0;
  double error_after_w = 0.0;
  double w_seconds = 0.0;
  double h_seconds = 0.0;
  std::optional<Matrix> relaxed;  // pre-rounding H for relaxation-based solvers
};

// Plain NMF: both block steps are nonnegativity-constrained least squares
// solved by projected gradient descent.
std::vector<FactorizationState> als_nmf(const Matrix& V, const AlsConfig& config);

// Binary-H variant: the W step is shared with NMF; the H step solves the n
// independent column subproblems with the configured solver, feeding each
// solver the previous iteration's column where the method uses it.
std::vector<FactorizationState> als_nbmf(const Matrix& V, const AlsConfig& config);

// Deterministic initialization shared by both modes and by the runner:
// W uniform on [0,1), H Bernoulli(0.5).
Matrix init_w(int m, int k, RngSpec seed);
Matrix init_h(int k, int n, RngSpec seed);

}  // namespace nbmf

#endif
