#include "core/metrics.hpp"

#include <cmath>

#include "core/error.hpp"

namespace nbmf {

std::size_t hamming(const BinaryVector& x, const BinaryVector& y) {
  require(x.size() == y.size(), ErrorCode::Dimension,
          "hamming: lengths " + std::to_string(x.size()) + " and " +
              std::to_string(y.size()) + " differ");
  std::size_t count = 0;
  for (std::size_t i = 0; i < x.size(); ++i) count += x[i] != y[i];
  return count;
}

std::vector<ColumnEval> evaluate_columns(const Matrix& V, const Matrix& W,
                                         const Matrix& H_method,
                                         std::span<const SolveReport> exact_reports) {
  require(static_cast<Eigen::Index>(exact_reports.size()) == H_method.cols(),
          ErrorCode::InvalidArgument,
          "evaluate_columns: need one exact report per column");
  require(W.rows() == V.rows() && W.cols() == H_method.rows() &&
              H_method.cols() == V.cols(),
          ErrorCode::Dimension, "evaluate_columns: shapes do not conform");

  std::vector<ColumnEval> evals;
  evals.reserve(exact_reports.size());
  for (Eigen::Index j = 0; j < H_method.cols(); ++j) {
    const SolveReport& exact = exact_reports[static_cast<std::size_t>(j)];
    ColumnEval eval;
    eval.column = static_cast<int>(j);
    const BinaryVector h = binary_column(H_method, j);
    eval.objective_method = (V.col(j) - W * to_real(h)).squaredNorm();
    // same evaluation route as the method objective, so equal states give
    // exactly equal objectives and the ratio is exactly 1
    eval.objective_opt = (V.col(j) - W * to_real(exact.best_state)).squaredNorm();
    eval.hamming = hamming(h, exact.best_state);
    eval.optimal_flag = exact.optimal;
    eval.degenerate = exact.degenerate;
    if (eval.objective_opt > 0.0) {
      eval.ratio_defined = true;
      eval.approx_ratio = eval.objective_method / eval.objective_opt;
    }
    evals.push_back(eval);
  }
  return evals;
}

namespace {

void mean_se(const std::vector<double>& values, double& mean, double& se) {
  mean = 0.0;
  se = 0.0;
  if (values.empty()) return;
  for (double v : values) mean += v;
  mean /= static_cast<double>(values.size());
  if (values.size() < 2) return;
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  const double variance = ss / static_cast<double>(values.size() - 1);
  se = std::sqrt(variance / static_cast<double>(values.size()));
}

}  // namespace

ColumnEvalSummary summarize(const std::vector<ColumnEval>& evals) {
  ColumnEvalSummary summary;
  summary.columns = evals.size();
  std::vector<double> hammings, ratios;
  hammings.reserve(evals.size());
  for (const ColumnEval& e : evals) {
    hammings.push_back(static_cast<double>(e.hamming));
    if (e.ratio_defined) ratios.push_back(e.approx_ratio);
    summary.ratio_defined += e.ratio_defined;
    summary.optimal += e.optimal_flag;
    summary.degenerate += e.degenerate;
  }
  mean_se(hammings, summary.mean_hamming, summary.se_hamming);
  mean_se(ratios, summary.mean_ratio, summary.se_ratio);
  return summary;
}

std::vector<std::uint64_t> histogram(std::span<const double> values, std::size_t bins) {
  require(bins >= 1, ErrorCode::InvalidArgument, "histogram: bins must be >= 1");
  std::vector<std::uint64_t> counts(bins, 0);
  for (double v : values) {
    require(v >= 0.0 && v <= 1.0, ErrorCode::Domain,
            "histogram: value outside [0,1]");
    std::size_t idx = static_cast<std::size_t>(v * static_cast<double>(bins));
    if (idx >= bins) idx = bins - 1;  // v == 1.0 belongs to the last bin
    ++counts[idx];
  }
  return counts;
}

}  // namespace nbmf
