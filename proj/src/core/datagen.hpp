#ifndef NBMF_CORE_DATAGEN_HPP
#define NBMF_CORE_DATAGEN_HPP

#include <string>
#include <vector>

#include "core/matrix.hpp"
#include "core/rng.hpp"

namespace nbmf {

// Synthetic problem sizing: m is derived as round(2nk / (n - 2k)), which
// keeps k(n+m) < nm across the supported (n, k) range.
struct SyntheticSpec {
  int n = 110;         // data points (columns of V)
  int k = 10;          // features
  double rho = 0.5;    // gamma shape; small values give contrast near 0 and 1
  double theta = 1.0;  // gamma scale
  RngSpec seed;
};

void validate_spec(const SyntheticSpec& spec);
int synthetic_m(const SyntheticSpec& spec);

std::vector<double> sample_gamma(double rho, double theta, std::size_t count, RngSpec seed);
std::vector<double> sample_gamma(double rho, double theta, std::size_t count, Rng& rng);

// Coefficient matrix with entries in [0,1]: nk gamma draws normalized by
// their maximum, the first floor(nk/2) mirrored to 1-x (the near-1 pool),
// the rest kept (the near-0 pool), then placed in shuffled order.
Matrix generate_h(const SyntheticSpec& spec);

struct SyntheticDataset {
  Matrix V;          // m x n, exactly W_true * H_relaxed
  Matrix W_true;     // m x k, gamma(1,1) entries
  Matrix H_relaxed;  // k x n, entries in [0,1]
};

SyntheticDataset generate_dataset(const SyntheticSpec& spec);

// Loads every *.pgm file (P2 or P5) in the directory, sorted by filename.
// Each image must be side x side; column j is image j flattened row-major
// and scaled to [0,1] by the format's maxval.
Matrix load_images(const std::string& dir, int side);

}  // namespace nbmf

#endif
