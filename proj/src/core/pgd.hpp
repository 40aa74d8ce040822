#ifndef NBMF_CORE_PGD_HPP
#define NBMF_CORE_PGD_HPP

#include <limits>
#include <vector>

#include "core/matrix.hpp"

namespace nbmf {

struct PgdConfig {
  int max_iters = 1000;
  double tol = 1e-6;        // stop when the projected-gradient inf-norm drops below
  double beta = 0.1;        // step shrink factor, in (0,1)
  double sigma = 0.01;      // sufficient-decrease constant, in (0,1)
  double alpha_init = 1.0;  // first trial step; later steps reuse the last accepted one
};

enum class LsMode { WStep, HStep };

// Box-constrained least-squares block subproblem:
//   WStep: min over X>=lower of ||V - X*fixed||_F^2   (fixed = H, upper = +inf)
//   HStep: min over X in box of ||V - fixed*X||_F^2   (fixed = W, box [0,1] when relaxed)
struct LeastSquaresProblem {
  LsMode mode;
  const Matrix& V;
  const Matrix& fixed;
  double lower = 0.0;
  double upper = std::numeric_limits<double>::infinity();
};

// Elementwise clamp onto [lower, upper].
Vector project(const Vector& x, const Vector& lower, const Vector& upper);
Matrix project(Matrix x, double lower, double upper);

double objective(const LeastSquaresProblem& p, const Matrix& point);
// Exact gradient of the squared error: 2(WH-V)H^T for the W step,
// 2W^T(WH-V) for the H step.
Matrix gradient(const LeastSquaresProblem& p, const Matrix& point);

// Inf-norm of the projected gradient (components pointing outside the active
// box faces are zeroed); zero iff the point is constrained-stationary.
double projected_gradient_norm(const Matrix& grad, const Matrix& point,
                               double lower, double upper);

struct PgdResult {
  Matrix solution;
  int iterations = 0;
  double final_pg_norm = 0.0;
  double objective = 0.0;
  bool converged = false;
  std::vector<double> objective_history;  // objective at start and after each accepted step
};

// Projected gradient descent with Armijo search along the projection arc:
// candidate x(a) = project(x - a*grad), accepted when
//   f(x(a)) - f(x) <= sigma * <grad, x(a) - x>.
PgdResult pgd_solve(const LeastSquaresProblem& p, const Matrix& start,
                    const PgdConfig& config);

}  // namespace nbmf

#endif
