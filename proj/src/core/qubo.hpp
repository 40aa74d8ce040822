#ifndef NBMF_CORE_QUBO_HPP
#define NBMF_CORE_QUBO_HPP

#include <string>

#include "core/matrix.hpp"

namespace nbmf {

// minimize h^T q h over h in {0,1}^size. The constant `offset` carries the
// squared norm of the target column, so energy + offset equals the
// least-squares objective ||v - W h||^2 of the column subproblem.
struct QuboInstance {
  Matrix q;            // symmetric size x size
  double offset = 0.0;
  int size() const { return static_cast<int>(q.rows()); }
};

struct IsingInstance {
  Matrix couplings;  // symmetric, zero diagonal
  Vector biases;
  double constant = 0.0;
  int size() const { return static_cast<int>(biases.size()); }
};

// Column subproblem encoding: q = W^T W with the linear terms -2(W^T v)_i
// folded onto the diagonal, offset = v^T v.
QuboInstance build_qubo(const Matrix& W, const Vector& v);

// h^T q h; the offset is NOT included.
double qubo_energy(const QuboInstance& q, const BinaryVector& h);

// Energy change of flipping bit i given the local fields
// field[i] = sum_{j != i} q(i,j) h_j.
double qubo_objective(const QuboInstance& q, const BinaryVector& h);

// Variable change x = (1+s)/2 onto spins s in {-1,+1}. For every assignment,
// qubo energy(x) = -sum_{ij} J_ij s_i s_j - sum_i bias_i s_i + constant.
IsingInstance qubo_to_ising(const QuboInstance& q);
double ising_energy(const IsingInstance& ising, const std::vector<int>& spins);

// Text format: header "N offset", then one "i j value" line per nonzero
// upper-triangular term (0-based, i <= j). Off-diagonal values are the
// coefficient of the x_i*x_j term, i.e. q(i,j) + q(j,i).
void write_qubo_file(const QuboInstance& q, const std::string& path);
std::string qubo_to_text(const QuboInstance& q);
QuboInstance parse_qubo_text(const std::string& text, const std::string& origin);
QuboInstance read_qubo_file(const std::string& path);

}  // namespace nbmf

#endif
