#include "core/pgd.hpp"

#include <cmath>

#include "core/error.hpp"

namespace nbmf {

namespace {

void check_point_shape(const LeastSquaresProblem& p, const Matrix& point) {
  if (p.mode == LsMode::WStep) {
    require(point.rows() == p.V.rows() && point.cols() == p.fixed.rows() &&
                p.fixed.cols() == p.V.cols(),
            ErrorCode::Dimension, "W-step point/fixed shapes do not conform");
  } else {
    require(point.cols() == p.V.cols() && point.rows() == p.fixed.cols() &&
                p.fixed.rows() == p.V.rows(),
            ErrorCode::Dimension, "H-step point/fixed shapes do not conform");
  }
}

bool feasible(const Matrix& x, double lower, double upper) {
  return (x.array() >= lower).all() && (x.array() <= upper).all();
}

}  // namespace

Vector project(const Vector& x, const Vector& lower, const Vector& upper) {
  require(lower.size() == x.size() && upper.size() == x.size(), ErrorCode::Dimension,
          "project: bound arrays must match the vector length");
  require((lower.array() <= upper.array()).all(), ErrorCode::InvalidArgument,
          "project: lower bound exceeds upper bound");
  return x.cwiseMax(lower).cwiseMin(upper);
}

Matrix project(Matrix x, double lower, double upper) {
  require(lower <= upper, ErrorCode::InvalidArgument,
          "project: lower bound exceeds upper bound");
  return x.cwiseMax(lower).cwiseMin(upper);
}

double objective(const LeastSquaresProblem& p, const Matrix& point) {
  check_point_shape(p, point);
  return p.mode == LsMode::WStep ? (p.V - point * p.fixed).squaredNorm()
                                 : (p.V - p.fixed * point).squaredNorm();
}

Matrix gradient(const LeastSquaresProblem& p, const Matrix& point) {
  check_point_shape(p, point);
  if (p.mode == LsMode::WStep) return 2.0 * ((point * p.fixed - p.V) * p.fixed.transpose());
  return 2.0 * (p.fixed.transpose() * (p.fixed * point - p.V));
}

double projected_gradient_norm(const Matrix& grad, const Matrix& point,
                               double lower, double upper) {
  double norm = 0.0;
  for (Eigen::Index i = 0; i < point.size(); ++i) {
    const double x = point.data()[i];
    double g = grad.data()[i];
    if (x <= lower) g = std::min(g, 0.0);
    if (x >= upper) g = std::max(g, 0.0);
    norm = std::max(norm, std::abs(g));
  }
  return norm;
}

PgdResult pgd_solve(const LeastSquaresProblem& p, const Matrix& start,
                    const PgdConfig& config) {
  require(config.beta > 0.0 && config.beta < 1.0 && config.sigma > 0.0 &&
              config.sigma < 1.0 && config.tol > 0.0 && config.alpha_init > 0.0 &&
              config.max_iters > 0,
          ErrorCode::Config, "pgd_solve: invalid configuration");
  check_point_shape(p, start);
  require(feasible(start, p.lower, p.upper), ErrorCode::InvalidArgument,
          "pgd_solve: start point violates the box constraints");

  // Gram precomputation: grad = 2*(X*FF' - VF') for the W step,
  // 2*(F'F*X - F'V) for the H step. Same gradient, cheaper per iteration.
  Matrix gram, cross;
  if (p.mode == LsMode::WStep) {
    gram = p.fixed * p.fixed.transpose();
    cross = p.V * p.fixed.transpose();
  } else {
    gram = p.fixed.transpose() * p.fixed;
    cross = p.fixed.transpose() * p.V;
  }
  auto grad_at = [&](const Matrix& x) -> Matrix {
    if (p.mode == LsMode::WStep) return 2.0 * (x * gram - cross);
    return 2.0 * (gram * x - cross);
  };

  PgdResult result;
  Matrix x = start;
  double fx = objective(p, x);
  require(std::isfinite(fx), ErrorCode::Numeric, "pgd_solve: non-finite objective at start");
  result.objective_history.push_back(fx);

  double alpha = config.alpha_init;
  const int max_bracket = 60;

  for (int iter = 0; iter < config.max_iters; ++iter) {
    const Matrix g = grad_at(x);
    require(g.allFinite(), ErrorCode::Numeric, "pgd_solve: non-finite gradient");
    const double pg = projected_gradient_norm(g, x, p.lower, p.upper);
    if (pg <= config.tol) {
      result.solution = std::move(x);
      result.iterations = iter;
      result.final_pg_norm = pg;
      result.objective = fx;
      result.converged = true;
      return result;
    }

    auto sufficient = [&](const Matrix& cand, double fc) {
      const double slope = (g.array() * (cand - x).array()).sum();
      return std::isfinite(fc) && fc - fx <= config.sigma * slope;
    };

    Matrix cand = project(x - alpha * g, p.lower, p.upper);
    double fc = objective(p, cand);
    if (sufficient(cand, fc)) {
      // Accepted at the first trial: grow the step while it keeps passing.
      for (int t = 0; t < max_bracket; ++t) {
        const double bigger = alpha / config.beta;
        Matrix next = project(x - bigger * g, p.lower, p.upper);
        if ((next.array() == cand.array()).all()) break;
        const double fn = objective(p, next);
        if (!sufficient(next, fn)) break;
        alpha = bigger;
        cand = std::move(next);
        fc = fn;
      }
    } else {
      bool accepted = false;
      for (int t = 0; t < max_bracket; ++t) {
        alpha *= config.beta;
        cand = project(x - alpha * g, p.lower, p.upper);
        fc = objective(p, cand);
        if (sufficient(cand, fc)) {
          accepted = true;
          break;
        }
      }
      if (!accepted) {
        // Step size underflowed without sufficient decrease; stop here.
        result.solution = std::move(x);
        result.iterations = iter;
        result.final_pg_norm = pg;
        result.objective = fx;
        return result;
      }
    }

    x = std::move(cand);
    fx = fc;
    result.objective_history.push_back(fx);
  }

  const Matrix g = grad_at(x);
  result.final_pg_norm = projected_gradient_norm(g, x, p.lower, p.upper);
  result.converged = result.final_pg_norm <= config.tol;
  result.solution = std::move(x);
  result.iterations = config.max_iters;
  result.objective = fx;
  return result;
}

}  // namespace nbmf
