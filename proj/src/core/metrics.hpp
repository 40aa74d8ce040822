#ifndef NBMF_CORE_METRICS_HPP
#define NBMF_CORE_METRICS_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "core/matrix.hpp"
#include "core/solvers.hpp"

namespace nbmf {

// Number of coordinates where the two states differ.
std::size_t hamming(const BinaryVector& x, const BinaryVector& y);

struct ColumnEval {
  int column = 0;
  double objective_method = 0.0;
  double objective_opt = 0.0;
  std::size_t hamming = 0;
  double approx_ratio = 1.0;   // objective_method / objective_opt; see ratio_defined
  bool ratio_defined = false;  // false when objective_opt == 0
  bool optimal_flag = false;   // exact solver proved optimality for this column
  bool degenerate = false;     // multiple optima at equal energy were seen
};

struct ColumnEvalSummary {
  double mean_hamming = 0.0;
  double se_hamming = 0.0;
  double mean_ratio = 0.0;  // over columns with a defined ratio
  double se_ratio = 0.0;
  std::size_t columns = 0;
  std::size_t ratio_defined = 0;
  std::size_t optimal = 0;
  std::size_t degenerate = 0;
};

// Per-column comparison of a method's H against the exact optima. The exact
// reports must cover every column of H_method, in column order.
std::vector<ColumnEval> evaluate_columns(const Matrix& V, const Matrix& W,
                                         const Matrix& H_method,
                                         std::span<const SolveReport> exact_reports);

ColumnEvalSummary summarize(const std::vector<ColumnEval>& evals);

// Counts over `bins` equal-width bins on [0,1]; the last bin is closed on
// the right, so 1.0 lands in it. Values outside [0,1] are a range error.
std::vector<std::uint64_t> histogram(std::span<const double> values, std::size_t bins);

}  // namespace nbmf

#endif
