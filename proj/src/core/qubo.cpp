#include "core/qubo.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "core/csv.hpp"
#include "core/error.hpp"

namespace nbmf {

QuboInstance build_qubo(const Matrix& W, const Vector& v) {
  require(W.rows() == v.size(), ErrorCode::Dimension,
          "build_qubo: W has " + std::to_string(W.rows()) + " rows but v has " +
              std::to_string(v.size()) + " entries");
  require(W.allFinite() && v.allFinite(), ErrorCode::Domain,
          "build_qubo: inputs must be finite");
  require(!has_negative(W) && (v.array() >= 0.0).all(), ErrorCode::Domain,
          "build_qubo: inputs must be nonnegative");
  QuboInstance q;
  q.q = W.transpose() * W;
  q.q.diagonal() -= 2.0 * (W.transpose() * v);
  // enforce exact symmetry against accumulation-order noise
  q.q = ((q.q + q.q.transpose()) * 0.5).eval();
  q.offset = v.squaredNorm();
  return q;
}

double qubo_energy(const QuboInstance& q, const BinaryVector& h) {
  require(static_cast<int>(h.size()) == q.size(), ErrorCode::Dimension,
          "qubo_energy: state length " + std::to_string(h.size()) +
              " != instance size " + std::to_string(q.size()));
  const int n = q.size();
  double energy = 0.0;
  for (int j = 0; j < n; ++j) {
    if (!h[j]) continue;
    energy += q.q(j, j);
    for (int i = j + 1; i < n; ++i)
      if (h[i]) energy += 2.0 * q.q(i, j);
  }
  return energy;
}

double qubo_objective(const QuboInstance& q, const BinaryVector& h) {
  return qubo_energy(q, h) + q.offset;
}

IsingInstance qubo_to_ising(const QuboInstance& q) {
  IsingInstance ising;
  ising.couplings = -0.25 * q.q;
  ising.couplings.diagonal().setZero();
  ising.biases = -0.5 * q.q.rowwise().sum();
  ising.constant = 0.25 * (q.q.sum() + q.q.trace());
  return ising;
}

double ising_energy(const IsingInstance& ising, const std::vector<int>& spins) {
  require(static_cast<int>(spins.size()) == ising.size(), ErrorCode::Dimension,
          "ising_energy: spin length mismatch");
  double e = ising.constant;
  for (int i = 0; i < ising.size(); ++i) {
    e -= ising.biases[i] * spins[i];
    for (int j = 0; j < ising.size(); ++j)
      e -= ising.couplings(i, j) * spins[i] * spins[j];
  }
  return e;
}

std::string qubo_to_text(const QuboInstance& q) {
  std::ostringstream out;
  out << q.size() << ' ' << format_double(q.offset) << '\n';
  for (int i = 0; i < q.size(); ++i) {
    for (int j = i; j < q.size(); ++j) {
      const double value = i == j ? q.q(i, i) : q.q(i, j) + q.q(j, i);
      if (value != 0.0) out << i << ' ' << j << ' ' << format_double(value) << '\n';
    }
  }
  return out.str();
}

void write_qubo_file(const QuboInstance& q, const std::string& path) {
  write_file_atomic(path, qubo_to_text(q));
}

QuboInstance parse_qubo_text(const std::string& text, const std::string& origin) {
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;

  auto fail = [&](const std::string& what) -> void {
    throw Error(ErrorCode::Io, origin + ":" + std::to_string(lineno) + ": " + what);
  };

  require(static_cast<bool>(std::getline(in, line)), ErrorCode::Io,
          origin + ":1: missing header line");
  lineno = 1;
  std::istringstream header(line);
  long long n = 0;
  double offset = 0.0;
  if (!(header >> n >> offset) || n <= 0) fail("header must be 'N offset' with N >= 1");
  std::string extra;
  if (header >> extra) fail("unexpected trailing content in header");

  QuboInstance q;
  q.q = Matrix::Zero(n, n);
  q.offset = offset;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::istringstream fields(line);
    long long i = 0, j = 0;
    double value = 0.0;
    if (!(fields >> i >> j >> value)) fail("expected 'i j value'");
    if (fields >> extra) fail("unexpected trailing content");
    if (i < 0 || j < 0 || i >= n || j >= n) fail("index out of range");
    if (i > j) fail("coefficients must be upper-triangular (i <= j)");
    if (!std::isfinite(value)) fail("non-finite coefficient");
    if (i == j) {
      q.q(i, i) = value;
    } else {
      q.q(i, j) = value / 2.0;
      q.q(j, i) = value / 2.0;
    }
  }
  return q;
}

QuboInstance read_qubo_file(const std::string& path) {
  std::ifstream in(path);
  require(in.good(), ErrorCode::Io, "cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_qubo_text(buffer.str(), path);
}

}  // namespace nbmf
