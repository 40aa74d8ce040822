#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <limits>

#include "core/error.hpp"
#include "core/solvers.hpp"

namespace nbmf {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

// Exhaustive scan in Gray-code order with O(n) incremental energy updates.
// Ties are counted (degeneracy) and resolved to the lexicographically
// smallest assignment.
SolveReport enumerate_exhaustive(const QuboInstance& q, double time_limit) {
  const int n = q.size();
  const auto t0 = Clock::now();

  BinaryVector state(n, 0);
  std::vector<double> field(n);  // field[i] = sum_{j != i} q(i,j) state[j]
  for (int i = 0; i < n; ++i) field[i] = 0.0;

  double energy = 0.0;
  BinaryVector best_state = state;
  double best_energy = 0.0;
  std::uint64_t ties = 1;

  SolveReport report;
  report.optimal = true;

  const std::uint64_t total = 1ULL << n;
  for (std::uint64_t step = 1; step < total; ++step) {
    if ((step & 0xFFFF) == 0 && time_limit > 0 && seconds_since(t0) > time_limit) {
      report.optimal = false;
      break;
    }
    const int b = std::countr_zero(step);
    const double delta = (state[b] ? -1.0 : 1.0) * (q.q(b, b) + 2.0 * field[b]);
    energy += delta;
    state[b] ^= 1;
    const double sign = state[b] ? 1.0 : -1.0;
    for (int j = 0; j < n; ++j)
      if (j != b) field[j] += sign * q.q(j, b);

    if (energy < best_energy) {
      best_energy = energy;
      best_state = state;
      ties = 1;
    } else if (energy == best_energy) {
      ++ties;
      if (std::lexicographical_compare(state.begin(), state.end(), best_state.begin(),
                                       best_state.end())) {
        best_state = state;
      }
    }
    ++report.samples_evaluated;
  }

  report.best_state = std::move(best_state);
  // Recompute from the state so the reported energy does not carry the
  // incremental accumulation error of the Gray-code scan.
  report.best_energy = qubo_energy(q, report.best_state);
  report.best_objective = report.best_energy + q.offset;
  report.degenerate = ties > 1;
  report.solver = SolverKind::Exact;
  report.wall_seconds = seconds_since(t0);
  return report;
}

// Depth-first branch and bound over the natural variable order (0-branch
// first), so the first strict improvement is the lexicographically smallest
// optimum. Lower bound per node:
//   E >= cur + sum_i min(0, a_i + neg_i)
// with a_i the linear coefficient given the assigned prefix and neg_i the
// negative interaction mass among unassigned variables.
struct BranchBound {
  const QuboInstance& q;
  int n;
  double time_limit;
  Clock::time_point t0;
  BinaryVector assignment;
  BinaryVector best_state;
  double best_energy = std::numeric_limits<double>::infinity();
  std::uint64_t nodes = 0;
  bool timed_out = false;

  std::vector<double> a;    // linear coefficient per variable
  std::vector<double> neg;  // sum of min(0, q(i,j)) over unassigned j != i

  explicit BranchBound(const QuboInstance& instance, double limit)
      : q(instance), n(instance.size()), time_limit(limit), t0(Clock::now()),
        assignment(n, 0), a(n), neg(n, 0.0) {
    for (int i = 0; i < n; ++i) {
      a[i] = q.q(i, i);
      for (int j = 0; j < n; ++j)
        if (j != i) neg[i] += std::min(0.0, q.q(i, j));
    }
  }

  double bound_tail(int depth, double cur) const {
    double bound = cur;
    for (int i = depth; i < n; ++i) bound += std::min(0.0, a[i] + neg[i]);
    return bound;
  }

  void dfs(int depth, double cur) {
    if (timed_out) return;
    if ((++nodes & 0xFFF) == 0 && time_limit > 0 && seconds_since(t0) > time_limit) {
      timed_out = true;
      return;
    }
    if (depth == n) {
      if (cur < best_energy) {
        best_energy = cur;
        best_state = assignment;
      }
      return;
    }
    if (bound_tail(depth, cur) >= best_energy) return;

    // Remove variable `depth` from the unassigned interaction mass.
    std::vector<double> saved_neg(neg.begin() + depth + 1, neg.end());
    for (int i = depth + 1; i < n; ++i) neg[i] -= std::min(0.0, q.q(i, depth));

    for (int value = 0; value <= 1; ++value) {
      assignment[depth] = static_cast<std::uint8_t>(value);
      double next = cur;
      if (value == 1) {
        next += a[depth];
        for (int i = depth + 1; i < n; ++i) a[i] += 2.0 * q.q(i, depth);
      }
      dfs(depth + 1, next);
      if (value == 1) {
        for (int i = depth + 1; i < n; ++i) a[i] -= 2.0 * q.q(i, depth);
      }
      if (timed_out) break;
    }
    assignment[depth] = 0;
    std::copy(saved_neg.begin(), saved_neg.end(), neg.begin() + depth + 1);
  }
};

}  // namespace

SolveReport solve_exact_branch_bound(const QuboInstance& q, double time_limit_seconds) {
  require(q.size() >= 1, ErrorCode::InvalidArgument, "solve_exact: empty instance");
  const auto t0 = Clock::now();
  BranchBound bb(q, time_limit_seconds);
  // Seed the incumbent with the all-zeros assignment (energy 0) so pruning
  // starts immediately; it is also the lexicographic minimum.
  bb.best_energy = 0.0;
  bb.best_state = BinaryVector(q.size(), 0);
  bb.dfs(0, 0.0);

  SolveReport report;
  report.best_state = std::move(bb.best_state);
  report.best_energy = qubo_energy(q, report.best_state);
  report.best_objective = report.best_energy + q.offset;
  report.samples_evaluated = bb.nodes;
  report.optimal = !bb.timed_out;
  report.solver = SolverKind::Exact;
  report.wall_seconds = seconds_since(t0);
  return report;
}

SolveReport solve_exact(const QuboInstance& q, const ExactOptions& options) {
  require(q.size() >= 1, ErrorCode::InvalidArgument, "solve_exact: empty instance");
  require(q.size() <= options.hard_cap, ErrorCode::Capacity,
          "solve_exact: size " + std::to_string(q.size()) + " exceeds the cap of " +
              std::to_string(options.hard_cap));
  if (q.size() <= options.exhaustive_limit)
    return enumerate_exhaustive(q, options.time_limit_seconds);
  return solve_exact_branch_bound(q, options.time_limit_seconds);
}

}  // namespace nbmf
