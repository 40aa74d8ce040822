#include "core/als.hpp"

#include <chrono>
#include <cmath>
#include <limits>

#include "core/error.hpp"
#include "core/parallel.hpp"

namespace nbmf {

namespace {

using Clock = std::chrono::steady_clock;

// Reserved stream offsets so the per-column streams (iteration * n + column)
// never collide with initialization or reinit draws.
constexpr std::uint64_t kStreamInitW = 1ULL << 60;
constexpr std::uint64_t kStreamInitH = (1ULL << 60) + 1;
constexpr std::uint64_t kStreamReinit = 1ULL << 61;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

void validate(const Matrix& V, const AlsConfig& config) {
  require(V.size() > 0, ErrorCode::InvalidArgument, "als: empty data matrix");
  require(all_finite(V) && !has_negative(V), ErrorCode::Domain,
          "als: data matrix must be finite and nonnegative");
  require(config.rank >= 1, ErrorCode::Config, "als: rank must be >= 1");
  require(config.rank < std::min(V.rows(), V.cols()), ErrorCode::Config,
          "als: rank " + std::to_string(config.rank) + " too large for a " +
              std::to_string(V.rows()) + "x" + std::to_string(V.cols()) + " matrix");
  require(config.max_iterations >= 1, ErrorCode::Config, "als: max_iterations must be >= 1");
  require(config.rel_tol >= 0.0, ErrorCode::Config, "als: rel_tol must be >= 0");
}

Matrix w_step(const Matrix& V, const Matrix& H, const Matrix& W_start,
              const PgdConfig& pgd) {
  LeastSquaresProblem problem{LsMode::WStep, V, H, 0.0,
                              std::numeric_limits<double>::infinity()};
  return pgd_solve(problem, W_start, pgd).solution;
}

// Feature i is dead when no column uses it; its basis column then no longer
// affects the product, so give it a fresh random draw to let later
// iterations pick it up again.
void reinit_dead_features(Matrix& W, const Matrix& H, const AlsConfig& config,
                          int iteration) {
  for (Eigen::Index i = 0; i < H.rows(); ++i) {
    if ((H.row(i).array() != 0.0).any()) continue;
    Rng rng({config.seed.master_seed,
             kStreamReinit + static_cast<std::uint64_t>(iteration) * H.rows() + i});
    for (Eigen::Index r = 0; r < W.rows(); ++r) W(r, i) = rng.uniform01();
  }
}

}  // namespace

Matrix init_w(int m, int k, RngSpec seed) {
  Rng rng({seed.master_seed, kStreamInitW + seed.stream_id});
  Matrix W(m, k);
  for (Eigen::Index i = 0; i < W.rows(); ++i)
    for (Eigen::Index j = 0; j < W.cols(); ++j) W(i, j) = rng.uniform01();
  return W;
}

Matrix init_h(int k, int n, RngSpec seed) {
  Rng rng({seed.master_seed, kStreamInitH + seed.stream_id});
  Matrix H(k, n);
  for (Eigen::Index i = 0; i < H.rows(); ++i)
    for (Eigen::Index j = 0; j < H.cols(); ++j) H(i, j) = rng.bernoulli(0.5) ? 1.0 : 0.0;
  return H;
}

std::vector<FactorizationState> als_nmf(const Matrix& V, const AlsConfig& config) {
  validate(V, config);
  const int k = config.rank;
  const int n = static_cast<int>(V.cols());
  const int m = static_cast<int>(V.rows());

  Matrix W = init_w(m, k, config.seed);
  Matrix H = init_h(k, n, config.seed);

  std::vector<FactorizationState> trajectory;
  trajectory.push_back({0, W, H, frobenius_error(V, W, H),
                        frobenius_error(V, W, H), 0.0, 0.0, std::nullopt});

  for (int t = 1; t <= config.max_iterations; ++t) {
    FactorizationState state;
    state.iteration = t;

    auto t0 = Clock::now();
    W = w_step(V, H, W, config.w_pgd);
    state.w_seconds = seconds_since(t0);
    state.error_after_w = frobenius_error(V, W, H);

    t0 = Clock::now();
    LeastSquaresProblem problem{LsMode::HStep, V, W, 0.0,
                                std::numeric_limits<double>::infinity()};
    H = pgd_solve(problem, H, config.h_pgd).solution;
    state.h_seconds = seconds_since(t0);

    state.W = W;
    state.H = H;
    state.error = frobenius_error(V, W, H);
    trajectory.push_back(std::move(state));

    const double prev = trajectory[trajectory.size() - 2].error;
    if (config.rel_tol > 0.0 && prev - trajectory.back().error < config.rel_tol * prev)
      break;
  }
  return trajectory;
}

std::vector<FactorizationState> als_nbmf(const Matrix& V, const AlsConfig& config) {
  validate(V, config);
  const int k = config.rank;
  const int n = static_cast<int>(V.cols());
  const int m = static_cast<int>(V.rows());
  const bool track_relaxed = config.solver.kind == SolverKind::PgdRound ||
                             config.solver.kind == SolverKind::RaPgd;

  Matrix W = init_w(m, k, config.seed);
  Matrix H = init_h(k, n, config.seed);

  std::vector<FactorizationState> trajectory;
  trajectory.push_back({0, W, H, frobenius_error(V, W, H),
                        frobenius_error(V, W, H), 0.0, 0.0, std::nullopt});

  for (int t = 1; t <= config.max_iterations; ++t) {
    FactorizationState state;
    state.iteration = t;

    auto t0 = Clock::now();
    W = w_step(V, H, W, config.w_pgd);
    state.w_seconds = seconds_since(t0);
    state.error_after_w = frobenius_error(V, W, H);

    // Independent column subproblems; stream ids depend only on (iteration,
    // column) so solve order and thread count cannot change the result.
    t0 = Clock::now();
    const Matrix h_prev = H;
    Matrix h_next(k, n);
    Matrix relaxed;
    if (track_relaxed) relaxed.resize(k, n);
    SolverConfig solver = config.solver;
    solver.relax = config.h_pgd;
    parallel_for(n, config.threads, [&](int j) {
      const Vector v = V.col(j);
      const BinaryVector prev = binary_column(h_prev, j);
      const BinaryVector* prev_ptr =
          solver_uses_previous(solver.kind) ? &prev : nullptr;
      const RngSpec column_seed{config.seed.master_seed,
                                static_cast<std::uint64_t>(t - 1) *
                                        static_cast<std::uint64_t>(n) +
                                    static_cast<std::uint64_t>(j)};
      ColumnResult result = solve_column(solver, W, v, prev_ptr, column_seed);
      set_column(h_next, j, result.report.best_state);
      if (track_relaxed) relaxed.col(j) = *result.relaxed;
    });
    H = std::move(h_next);
    state.h_seconds = seconds_since(t0);

    reinit_dead_features(W, H, config, t);

    state.W = W;
    state.H = H;
    state.error = frobenius_error(V, W, H);
    if (track_relaxed) state.relaxed = std::move(relaxed);
    trajectory.push_back(std::move(state));

    const double prev_err = trajectory[trajectory.size() - 2].error;
    if (config.rel_tol > 0.0 && prev_err - trajectory.back().error < config.rel_tol * prev_err)
      break;
  }
  return trajectory;
}

}  // namespace nbmf
