#ifndef NBMF_CORE_RNG_HPP
#define NBMF_CORE_RNG_HPP

#include <cstdint>
#include <random>
#include <vector>

namespace nbmf {

// Identifies one reproducible random stream. The same (master_seed, stream_id)
// pair yields the same sequence regardless of thread count or call order,
// which is what makes per-column parallel solves reproducible.
struct RngSpec {
  std::uint64_t master_seed = 0;
  std::uint64_t stream_id = 0;
};

// Deterministic random generator with self-contained distributions. The
// distribution algorithms are implemented here (not via std:: distribution
// classes) so that sequences are identical across standard libraries.
class Rng {
 public:
  explicit Rng(RngSpec spec);

  RngSpec spec() const { return spec_; }

  std::uint64_t next_u64();
  // Uniform on [0, 1) with 53 random bits.
  double uniform01();
  // Uniform on (0, 1); never returns 0.
  double uniform_open01();
  // Uniform integer in [0, n).
  std::uint64_t uniform_index(std::uint64_t n);
  bool bernoulli(double p);
  // Standard normal via the Marsaglia polar method (caches the spare).
  double normal();
  // Gamma(shape, scale) via Marsaglia-Tsang, with the shape<1 boost.
  double gamma(double shape, double scale);

  template <typename T>
  void shuffle(std::vector<T>& values) {
    for (std::size_t i = values.size(); i > 1; --i) {
      std::swap(values[i - 1], values[uniform_index(i)]);
    }
  }

 private:
  RngSpec spec_;
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace nbmf

#endif
