// Independent reference implementations used as test oracles. These stay
// deliberately naive and share no code with the library paths they check.
#ifndef NBMF_TESTS_ORACLES_HPP
#define NBMF_TESTS_ORACLES_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include "core/matrix.hpp"
#include "core/rng.hpp"

namespace oracles {

// Triple-loop ||V - W*H||_F^2.
inline double frobenius_naive(const nbmf::Matrix& V, const nbmf::Matrix& W,
                              const nbmf::Matrix& H) {
  double total = 0.0;
  for (Eigen::Index i = 0; i < V.rows(); ++i) {
    for (Eigen::Index j = 0; j < V.cols(); ++j) {
      double entry = V(i, j);
      for (Eigen::Index r = 0; r < W.cols(); ++r) entry -= W(i, r) * H(r, j);
      total += entry * entry;
    }
  }
  return total;
}

// Double-loop h^T Q h over the full symmetric matrix.
inline double qubo_energy_naive(const nbmf::Matrix& Q, const nbmf::BinaryVector& h) {
  double total = 0.0;
  for (Eigen::Index i = 0; i < Q.rows(); ++i)
    for (Eigen::Index j = 0; j < Q.cols(); ++j)
      if (h[static_cast<std::size_t>(i)] && h[static_cast<std::size_t>(j)])
        total += Q(i, j);
  return total;
}

inline double column_objective(const nbmf::Matrix& W, const nbmf::Vector& v,
                               const nbmf::BinaryVector& h) {
  double total = 0.0;
  for (Eigen::Index i = 0; i < W.rows(); ++i) {
    double entry = v[i];
    for (Eigen::Index r = 0; r < W.cols(); ++r) entry -= W(i, r) * h[static_cast<std::size_t>(r)];
    total += entry * entry;
  }
  return total;
}

inline nbmf::BinaryVector bits_of(std::uint64_t x, int len) {
  nbmf::BinaryVector bits(static_cast<std::size_t>(len));
  for (int i = 0; i < len; ++i) bits[static_cast<std::size_t>(i)] = (x >> i) & 1;
  return bits;
}

// Index-order exhaustive minimum of h^T Q h, lexicographically smallest
// minimizer. Independent of the library's Gray-code scan.
struct ExhaustiveResult {
  nbmf::BinaryVector state;
  double energy = 0.0;
  std::uint64_t ties = 0;
};

inline ExhaustiveResult exhaustive_min(const nbmf::Matrix& Q) {
  const int n = static_cast<int>(Q.rows());
  ExhaustiveResult best;
  best.energy = std::numeric_limits<double>::infinity();
  // Lexicographic order of (h_0, ..., h_{n-1}) means h_0 is the most
  // significant digit.
  for (std::uint64_t code = 0; code < (1ULL << n); ++code) {
    nbmf::BinaryVector h(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) h[static_cast<std::size_t>(i)] = (code >> (n - 1 - i)) & 1;
    const double e = qubo_energy_naive(Q, h);
    if (e < best.energy) {
      best.energy = e;
      best.state = h;
      best.ties = 1;
    } else if (e == best.energy) {
      ++best.ties;
    }
  }
  return best;
}

// Regularized lower incomplete gamma P(a, x), series + continued fraction.
inline double gammap(double a, double x) {
  if (x <= 0.0) return 0.0;
  const double log_gamma = std::lgamma(a);
  if (x < a + 1.0) {
    double term = 1.0 / a;
    double sum = term;
    double ap = a;
    for (int i = 0; i < 500; ++i) {
      ap += 1.0;
      term *= x / ap;
      sum += term;
      if (std::abs(term) < std::abs(sum) * 1e-15) break;
    }
    return sum * std::exp(-x + a * std::log(x) - log_gamma);
  }
  // continued fraction for Q(a,x), modified Lentz
  const double tiny = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < 500; ++i) {
    const double an = -static_cast<double>(i) * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::abs(delta - 1.0) < 1e-15) break;
  }
  const double q = std::exp(-x + a * std::log(x) - log_gamma) * h;
  return 1.0 - q;
}

// Kolmogorov-Smirnov statistic of sorted samples against a CDF.
template <typename Cdf>
double ks_statistic(std::vector<double> samples, Cdf cdf) {
  std::sort(samples.begin(), samples.end());
  const double n = static_cast<double>(samples.size());
  double d = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double f = cdf(samples[i]);
    d = std::max(d, std::abs(f - static_cast<double>(i) / n));
    d = std::max(d, std::abs(static_cast<double>(i + 1) / n - f));
  }
  return d;
}

// Random nonnegative column-problem instance.
struct ColumnInstance {
  nbmf::Matrix W;
  nbmf::Vector v;
};

inline ColumnInstance random_column_instance(int m, int k, nbmf::Rng& rng) {
  ColumnInstance inst;
  inst.W.resize(m, k);
  inst.v.resize(m);
  for (Eigen::Index i = 0; i < inst.W.rows(); ++i)
    for (Eigen::Index j = 0; j < inst.W.cols(); ++j) inst.W(i, j) = rng.uniform01();
  for (Eigen::Index i = 0; i < inst.v.size(); ++i) inst.v[i] = rng.uniform01() * 2.0;
  return inst;
}

}  // namespace oracles

#endif
