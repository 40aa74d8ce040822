#ifndef NBMF_CORE_SOLVERS_HPP
#define NBMF_CORE_SOLVERS_HPP

#include <cstdint>
#include <optional>
#include <string>

#include "core/matrix.hpp"
#include "core/pgd.hpp"
#include "core/qubo.hpp"
#include "core/rng.hpp"

namespace nbmf {

// The six interchangeable column-subproblem methods. RaFa seeds reverse
// annealing with forward annealing's best state; RaPgd (the relaxation-
// assisted variant) seeds it with the rounded relaxed solution.
enum class SolverKind { Exact, PgdRound, FA, RA, RaFa, RaPgd };

const char* solver_kind_name(SolverKind kind);
std::optional<SolverKind> parse_solver_kind(const std::string& name);
// True for kinds that start from the previous iteration's column state.
bool solver_uses_previous(SolverKind kind);

struct AnnealSchedule {
  int sweeps_total = 100;          // Metropolis sweeps per read
  double reversal_distance = 0.45; // 0 = frozen at the initial state, 1 = forgets it
  double pause_fraction = 1.0 / 3.0; // fraction of RA sweeps held at the turning point
  double temp_max = 0.0;           // <= 0: auto, max absolute row sum of q
  double temp_min = 0.0;           // <= 0: auto, 1e-3 * temp_max
  int reads = 1000;                // independent repetitions; best state wins
};

// Reverse-annealing sweep layout: ramp up to the turning-point temperature,
// hold, then anneal back down. Derived from sweeps_total and pause_fraction.
struct RaSegments {
  int up = 0;
  int pause = 0;
  int down = 0;
};
RaSegments ra_segments(const AnnealSchedule& schedule);

// Effective temperatures once the auto defaults are resolved on an instance.
struct ResolvedTemps {
  double t_max = 0.0;
  double t_min = 0.0;
};
ResolvedTemps resolve_temps(const QuboInstance& q, const AnnealSchedule& schedule);

struct SolveReport {
  BinaryVector best_state;
  double best_energy = 0.0;
  double best_objective = 0.0;  // best_energy + instance offset
  std::uint64_t samples_evaluated = 0;
  double wall_seconds = 0.0;
  RngSpec seed;
  SolverKind solver = SolverKind::Exact;
  bool optimal = false;     // exact solver proved optimality
  bool degenerate = false;  // exhaustive search saw multiple optima at equal energy
};

struct ExactOptions {
  int exhaustive_limit = 30;        // full enumeration up to this size
  int hard_cap = 40;                // capacity error above this size
  double time_limit_seconds = 60.0;
};

// Global minimizer of h^T q h: Gray-code enumeration up to exhaustive_limit,
// branch and bound above it. Ties resolve to the lexicographically smallest
// assignment. On timeout the best incumbent is returned with optimal=false.
SolveReport solve_exact(const QuboInstance& q, const ExactOptions& options = {});
// Branch-and-bound path regardless of size (tested against enumeration).
SolveReport solve_exact_branch_bound(const QuboInstance& q, double time_limit_seconds);

// Forward annealing analog: `reads` independent single-flip Metropolis
// anneals from uniform random states, geometric cooling temp_max -> temp_min.
SolveReport solve_fa(const QuboInstance& q, const AnnealSchedule& schedule, RngSpec seed);

// Reverse annealing analog: every read starts from `initial`; temperature
// ramps up to reversal_distance * temp_max, holds, then anneals down. The
// initial state is part of the best-seen tracking, so the result never has a
// higher objective than the initial state.
SolveReport solve_ra(const QuboInstance& q, const BinaryVector& initial,
                     const AnnealSchedule& schedule, RngSpec seed);

struct PgdRoundResult {
  SolveReport report;
  Vector relaxed;  // solution of the box-relaxed column problem, in [0,1]^k
};

// Relax {0,1}^k to [0,1]^k, solve with projected gradient descent, then round
// at 0.5 (inclusive: 0.5 -> 1).
PgdRoundResult solve_pgd_round(const Matrix& W, const Vector& v, const PgdConfig& config,
                               const Vector* warm_start = nullptr);

BinaryVector round_relaxed(const Vector& relaxed);

struct SolverConfig {
  SolverKind kind = SolverKind::Exact;
  AnnealSchedule fa;       // used by FA and the FA stage of RaFa
  AnnealSchedule ra;       // used by RA stages
  PgdConfig relax;         // used by PgdRound and the relaxation stage of RaPgd
  ExactOptions exact;
};

SolverConfig default_solver_config(SolverKind kind);

struct ColumnResult {
  SolveReport report;
  std::optional<Vector> relaxed;  // present for PgdRound and RaPgd
};

// Table-driven dispatch of one column subproblem min ||v - W h||^2 over
// binary h. `previous` is required for RA and RaPgd and optional for
// PgdRound (where it warm-starts the relaxation).
ColumnResult solve_column(const SolverConfig& config, const Matrix& W, const Vector& v,
                          const BinaryVector* previous, RngSpec seed);

}  // namespace nbmf

#endif
