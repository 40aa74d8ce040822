#include <chrono>
#include <cmath>

#include "core/error.hpp"
#include "core/solvers.hpp"

namespace nbmf {

namespace {

using Clock = std::chrono::steady_clock;

void validate_schedule(const AnnealSchedule& s) {
  require(s.sweeps_total >= 1, ErrorCode::Config, "schedule: sweeps_total must be >= 1");
  require(s.reads >= 1, ErrorCode::Config, "schedule: reads must be >= 1");
  require(s.reversal_distance >= 0.0 && s.reversal_distance <= 1.0, ErrorCode::Config,
          "schedule: reversal_distance must be in [0,1]");
  require(s.pause_fraction >= 0.0 && s.pause_fraction < 1.0, ErrorCode::Config,
          "schedule: pause_fraction must be in [0,1)");
}

// Single-flip Metropolis state with cached local fields:
// field[i] = sum_{j != i} q(i,j) h_j, so one flip costs O(1) to evaluate
// and O(n) to commit.
struct Chain {
  const QuboInstance& q;
  int n;
  BinaryVector state;
  std::vector<double> field;
  double energy = 0.0;

  explicit Chain(const QuboInstance& instance)
      : q(instance), n(instance.size()), state(n, 0), field(n, 0.0) {}

  void reset(const BinaryVector& start) {
    state = start;
    energy = qubo_energy(q, state);
    for (int i = 0; i < n; ++i) {
      double f = 0.0;
      for (int j = 0; j < n; ++j)
        if (j != i && state[j]) f += q.q(i, j);
      field[i] = f;
    }
  }

  double flip_delta(int i) const {
    return (state[i] ? -1.0 : 1.0) * (q.q(i, i) + 2.0 * field[i]);
  }

  void commit_flip(int i, double delta) {
    energy += delta;
    state[i] ^= 1;
    const double sign = state[i] ? 1.0 : -1.0;
    for (int j = 0; j < n; ++j)
      if (j != i) field[j] += sign * q.q(j, i);
  }
};

struct BestTracker {
  BinaryVector state;
  double energy = 0.0;
  bool seen = false;

  void offer(const BinaryVector& candidate, double candidate_energy) {
    if (!seen || candidate_energy < energy) {
      seen = true;
      state = candidate;
      energy = candidate_energy;
    }
  }
};

// One sweep at temperature T: every variable proposed once, in a fresh
// random order.
void metropolis_sweep(Chain& chain, double temperature, Rng& rng,
                      std::vector<int>& order, BestTracker& best,
                      std::uint64_t& proposals) {
  const int n = chain.n;
  for (int i = 0; i < n; ++i) order[i] = i;
  rng.shuffle(order);
  for (int idx : order) {
    ++proposals;
    const double delta = chain.flip_delta(idx);
    bool accept = delta <= 0.0;
    if (!accept && temperature > 0.0)
      accept = rng.uniform01() < std::exp(-delta / temperature);
    if (accept) {
      chain.commit_flip(idx, delta);
      if (chain.energy < best.energy) best.offer(chain.state, chain.energy);
    }
  }
}

double geometric_temp(double t_hi, double t_lo, int step, int steps) {
  if (steps <= 1) return t_hi;
  return t_hi * std::pow(t_lo / t_hi, static_cast<double>(step) / (steps - 1));
}

}  // namespace

ResolvedTemps resolve_temps(const QuboInstance& q, const AnnealSchedule& schedule) {
  ResolvedTemps temps;
  temps.t_max = schedule.temp_max > 0.0
                    ? schedule.temp_max
                    : q.q.cwiseAbs().rowwise().sum().maxCoeff();
  if (temps.t_max <= 0.0) temps.t_max = 1.0;  // all-zero instance
  temps.t_min = schedule.temp_min > 0.0 ? schedule.temp_min : 1e-3 * temps.t_max;
  require(temps.t_min < temps.t_max, ErrorCode::Config,
          "schedule: temp_min must be below temp_max");
  return temps;
}

RaSegments ra_segments(const AnnealSchedule& schedule) {
  RaSegments seg;
  const int total = schedule.sweeps_total;
  seg.pause = static_cast<int>(std::lround(schedule.pause_fraction * total));
  if (seg.pause >= total) seg.pause = total - 1;
  const int rest = total - seg.pause;
  seg.up = rest / 2;
  seg.down = rest - seg.up;
  return seg;
}

SolveReport solve_fa(const QuboInstance& q, const AnnealSchedule& schedule, RngSpec seed) {
  validate_schedule(schedule);
  const auto t0 = Clock::now();
  const ResolvedTemps temps = resolve_temps(q, schedule);
  const int n = q.size();

  Rng rng(seed);
  Chain chain(q);
  BestTracker best;
  std::vector<int> order(n);
  std::uint64_t proposals = 0;

  BinaryVector start(n);
  for (int read = 0; read < schedule.reads; ++read) {
    for (int i = 0; i < n; ++i) start[i] = rng.bernoulli(0.5) ? 1 : 0;
    chain.reset(start);
    best.offer(chain.state, chain.energy);
    for (int s = 0; s < schedule.sweeps_total; ++s) {
      const double T = geometric_temp(temps.t_max, temps.t_min, s, schedule.sweeps_total);
      metropolis_sweep(chain, T, rng, order, best, proposals);
    }
  }

  SolveReport report;
  report.best_state = best.state;
  report.best_energy = qubo_energy(q, best.state);
  report.best_objective = report.best_energy + q.offset;
  report.samples_evaluated = proposals;
  report.seed = seed;
  report.solver = SolverKind::FA;
  report.wall_seconds = std::chrono::duration<double>(Clock::now() - t0).count();
  return report;
}

SolveReport solve_ra(const QuboInstance& q, const BinaryVector& initial,
                     const AnnealSchedule& schedule, RngSpec seed) {
  validate_schedule(schedule);
  require(static_cast<int>(initial.size()) == q.size(), ErrorCode::Dimension,
          "solve_ra: initial state length " + std::to_string(initial.size()) +
              " != instance size " + std::to_string(q.size()));
  const auto t0 = Clock::now();

  SolveReport report;
  report.seed = seed;
  report.solver = SolverKind::RA;

  // reversal_distance 0 keeps the anneal at zero fluctuation: nothing moves.
  if (schedule.reversal_distance <= 0.0) {
    report.best_state = initial;
    report.best_energy = qubo_energy(q, initial);
    report.best_objective = report.best_energy + q.offset;
    report.wall_seconds = std::chrono::duration<double>(Clock::now() - t0).count();
    return report;
  }

  const ResolvedTemps temps = resolve_temps(q, schedule);
  const double t_peak = schedule.reversal_distance * temps.t_max;
  const double t_end = std::min(temps.t_min, t_peak);
  const RaSegments seg = ra_segments(schedule);
  const int n = q.size();

  Rng rng(seed);
  Chain chain(q);
  BestTracker best;
  std::vector<int> order(n);
  std::uint64_t proposals = 0;

  for (int read = 0; read < schedule.reads; ++read) {
    chain.reset(initial);
    best.offer(chain.state, chain.energy);
    for (int s = 0; s < seg.up; ++s) {
      const double T = t_peak * static_cast<double>(s + 1) / seg.up;
      metropolis_sweep(chain, T, rng, order, best, proposals);
    }
    for (int s = 0; s < seg.pause; ++s)
      metropolis_sweep(chain, t_peak, rng, order, best, proposals);
    for (int s = 0; s < seg.down; ++s) {
      const double T = geometric_temp(t_peak, t_end, s, seg.down);
      metropolis_sweep(chain, T, rng, order, best, proposals);
    }
  }

  // The tracker compares incrementally updated energies; recheck the winner
  // against the initial state exactly so the result never ranks worse.
  double best_energy = qubo_energy(q, best.state);
  const double initial_energy = qubo_energy(q, initial);
  if (best_energy > initial_energy) {
    best.state = initial;
    best_energy = initial_energy;
  }
  report.best_state = best.state;
  report.best_energy = best_energy;
  report.best_objective = best_energy + q.offset;
  report.samples_evaluated = proposals;
  report.wall_seconds = std::chrono::duration<double>(Clock::now() - t0).count();
  return report;
}

}  // namespace nbmf
