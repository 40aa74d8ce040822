#include "core/solvers.hpp"

#include <chrono>

#include "core/error.hpp"

namespace nbmf {

const char* solver_kind_name(SolverKind kind) {
  switch (kind) {
    case SolverKind::Exact: return "exact";
    case SolverKind::PgdRound: return "pgd";
    case SolverKind::FA: return "fa";
    case SolverKind::RA: return "ra";
    case SolverKind::RaFa: return "ra+fa";
    case SolverKind::RaPgd: return "ra+pgd";
  }
  return "?";
}

std::optional<SolverKind> parse_solver_kind(const std::string& name) {
  if (name == "exact") return SolverKind::Exact;
  if (name == "pgd") return SolverKind::PgdRound;
  if (name == "fa") return SolverKind::FA;
  if (name == "ra") return SolverKind::RA;
  if (name == "ra+fa") return SolverKind::RaFa;
  if (name == "ra+pgd") return SolverKind::RaPgd;
  return std::nullopt;
}

bool solver_uses_previous(SolverKind kind) {
  return kind == SolverKind::PgdRound || kind == SolverKind::RA ||
         kind == SolverKind::RaPgd;
}

SolverConfig default_solver_config(SolverKind kind) {
  SolverConfig config;
  config.kind = kind;
  config.fa.reads = 1000;
  config.ra.reads = 240;
  return config;
}

BinaryVector round_relaxed(const Vector& relaxed) {
  BinaryVector bits(static_cast<std::size_t>(relaxed.size()));
  for (Eigen::Index i = 0; i < relaxed.size(); ++i)
    bits[static_cast<std::size_t>(i)] = relaxed[i] >= 0.5 ? 1 : 0;
  return bits;
}

PgdRoundResult solve_pgd_round(const Matrix& W, const Vector& v, const PgdConfig& config,
                               const Vector* warm_start) {
  const auto t0 = std::chrono::steady_clock::now();
  require(W.rows() == v.size(), ErrorCode::Dimension,
          "solve_pgd_round: W rows != v length");
  const int k = static_cast<int>(W.cols());

  const Matrix target = v;
  LeastSquaresProblem problem{LsMode::HStep, target, W, 0.0, 1.0};
  Matrix start(k, 1);
  if (warm_start != nullptr) {
    require(warm_start->size() == k, ErrorCode::Dimension,
            "solve_pgd_round: warm start length mismatch");
    start = project(Matrix(*warm_start), 0.0, 1.0);
  } else {
    start.setConstant(0.5);
  }

  PgdResult pgd = pgd_solve(problem, start, config);

  PgdRoundResult result;
  result.relaxed = pgd.solution.col(0);
  result.report.best_state = round_relaxed(result.relaxed);
  const double rounded_objective = (v - W * to_real(result.report.best_state)).squaredNorm();
  result.report.best_objective = rounded_objective;
  result.report.best_energy = rounded_objective - v.squaredNorm();
  result.report.samples_evaluated = static_cast<std::uint64_t>(pgd.iterations);
  result.report.solver = SolverKind::PgdRound;
  result.report.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return result;
}

ColumnResult solve_column(const SolverConfig& config, const Matrix& W, const Vector& v,
                          const BinaryVector* previous, RngSpec seed) {
  require(W.rows() == v.size(), ErrorCode::Dimension, "solve_column: W rows != v length");
  if (previous != nullptr) {
    require(static_cast<Eigen::Index>(previous->size()) == W.cols(), ErrorCode::Dimension,
            "solve_column: previous state length mismatch");
  }
  if ((config.kind == SolverKind::RA || config.kind == SolverKind::RaPgd) &&
      previous == nullptr) {
    throw Error(ErrorCode::Config,
                std::string("solve_column: method '") + solver_kind_name(config.kind) +
                    "' requires the previous column state");
  }

  const auto t0 = std::chrono::steady_clock::now();
  ColumnResult result;
  switch (config.kind) {
    case SolverKind::Exact: {
      result.report = solve_exact(build_qubo(W, v), config.exact);
      break;
    }
    case SolverKind::PgdRound: {
      Vector warm;
      const Vector* start = nullptr;
      if (previous != nullptr) {
        warm = to_real(*previous);
        start = &warm;
      }
      PgdRoundResult rounded = solve_pgd_round(W, v, config.relax, start);
      result.relaxed = rounded.relaxed;
      result.report = std::move(rounded.report);
      break;
    }
    case SolverKind::FA: {
      result.report = solve_fa(build_qubo(W, v), config.fa, seed);
      break;
    }
    case SolverKind::RA: {
      result.report = solve_ra(build_qubo(W, v), *previous, config.ra, seed);
      break;
    }
    case SolverKind::RaFa: {
      const QuboInstance q = build_qubo(W, v);
      const SolveReport fa = solve_fa(q, config.fa, seed);
      RngSpec ra_seed = seed;
      ra_seed.stream_id ^= 0x5261ULL << 32;  // distinct stream for the RA stage
      result.report = solve_ra(q, fa.best_state, config.ra, ra_seed);
      result.report.samples_evaluated += fa.samples_evaluated;
      break;
    }
    case SolverKind::RaPgd: {
      const Vector warm = to_real(*previous);
      PgdRoundResult rounded = solve_pgd_round(W, v, config.relax, &warm);
      result.relaxed = rounded.relaxed;
      result.report = solve_ra(build_qubo(W, v), rounded.report.best_state, config.ra, seed);
      result.report.samples_evaluated += rounded.report.samples_evaluated;
      break;
    }
  }
  result.report.seed = seed;
  result.report.solver = config.kind;
  result.report.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return result;
}

}  // namespace nbmf
