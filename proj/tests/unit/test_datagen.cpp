#include "core/datagen.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>

#include "core/error.hpp"
#include "doctest.h"
#include "support/oracles.hpp"

using namespace nbmf;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("nbmf-datagen-" + std::to_string(::getpid()) + "-" +
            std::to_string(reinterpret_cast<std::uintptr_t>(this)));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

double middle_fraction(const Matrix& H) {
  int middle = 0;
  for (Eigen::Index i = 0; i < H.size(); ++i)
    middle += H.data()[i] >= 0.25 && H.data()[i] <= 0.75;
  return static_cast<double>(middle) / static_cast<double>(H.size());
}

}  // namespace

TEST_CASE("derived m follows the sizing rule") {
  CHECK(synthetic_m({110, 10, 0.5, 1.0, {}}) == 24);
  CHECK(synthetic_m({110, 40, 0.5, 1.0, {}}) == 293);
  CHECK(synthetic_m({40, 8, 0.5, 1.0, {}}) == 27);
  CHECK_THROWS_AS(synthetic_m({20, 10, 0.5, 1.0, {}}), Error);  // n == 2k
  CHECK_THROWS_AS(synthetic_m({110, 10, -1.0, 1.0, {}}), Error);
}

TEST_CASE("gamma(1,1) samples have unit mean") {
  const auto samples = sample_gamma(1.0, 1.0, 100000, RngSpec{401, 0});
  double mean = 0.0;
  for (double s : samples) {
    CHECK(s >= 0.0);
    mean += s;
  }
  mean /= static_cast<double>(samples.size());
  CHECK(mean == doctest::Approx(1.0).epsilon(0.01));
}

TEST_CASE("gamma(2,1) matches its first two moments") {
  const auto samples = sample_gamma(2.0, 1.0, 100000, RngSpec{402, 0});
  double mean = 0.0;
  for (double s : samples) mean += s;
  mean /= static_cast<double>(samples.size());
  double var = 0.0;
  for (double s : samples) var += (s - mean) * (s - mean);
  var /= static_cast<double>(samples.size() - 1);
  CHECK(mean == doctest::Approx(2.0).epsilon(0.03));
  CHECK(var == doctest::Approx(2.0).epsilon(0.03));
}

TEST_CASE("gamma samples pass a KS test against the analytic cdf") {
  for (double rho : {0.5, 10.0}) {
    const auto samples = sample_gamma(rho, 1.0, 10000, RngSpec{403, rho < 1 ? 0u : 1u});
    const double d = oracles::ks_statistic(
        samples, [rho](double x) { return oracles::gammap(rho, x); });
    // 1% critical value for n = 10000
    CHECK(d < 1.628 / std::sqrt(10000.0));
  }
}

TEST_CASE("gamma rejects nonpositive parameters") {
  CHECK_THROWS_AS(sample_gamma(0.0, 1.0, 10, RngSpec{1, 0}), Error);
  CHECK_THROWS_AS(sample_gamma(1.0, 0.0, 10, RngSpec{1, 0}), Error);
}

TEST_CASE("generate_h stays in the unit interval") {
  const SyntheticSpec spec{30, 4, 0.5, 1.0, {404, 0}};
  const Matrix H = generate_h(spec);
  REQUIRE(H.rows() == 4);
  REQUIRE(H.cols() == 30);
  for (Eigen::Index i = 0; i < H.size(); ++i) {
    CHECK(H.data()[i] >= 0.0);
    CHECK(H.data()[i] <= 1.0);
  }
}

TEST_CASE("generate_h is a permutation of the mirrored pools") {
  const SyntheticSpec spec{25, 3, 0.8, 1.0, {405, 7}};
  const Matrix H = generate_h(spec);

  // replay the draw sequence: nk gamma values, normalized, first half mirrored
  Rng rng(spec.seed);
  std::vector<double> pool = sample_gamma(spec.rho, spec.theta, 75, rng);
  const double max_value = *std::max_element(pool.begin(), pool.end());
  for (auto& v : pool) v /= max_value;
  for (std::size_t i = 0; i < pool.size() / 2; ++i) pool[i] = 1.0 - pool[i];

  std::vector<double> entries(H.data(), H.data() + H.size());
  std::sort(entries.begin(), entries.end());
  std::sort(pool.begin(), pool.end());
  REQUIRE(entries.size() == pool.size());
  for (std::size_t i = 0; i < pool.size(); ++i) CHECK(entries[i] == pool[i]);
}

TEST_CASE("small shapes concentrate mass near 0 and 1") {
  double middle_small = 0.0, middle_large = 0.0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    middle_small += middle_fraction(generate_h({110, 10, 0.5, 1.0, {seed, 0}}));
    middle_large += middle_fraction(generate_h({110, 10, 10.0, 1.0, {seed, 0}}));
  }
  CHECK(middle_small < middle_large);
}

TEST_CASE("generate_dataset produces an exact product") {
  const SyntheticSpec spec{40, 8, 1.0, 1.0, {406, 0}};
  const SyntheticDataset data = generate_dataset(spec);
  REQUIRE(data.V.rows() == 27);
  REQUIRE(data.V.cols() == 40);
  REQUIRE(data.W_true.cols() == 8);
  CHECK((data.V - data.W_true * data.H_relaxed).cwiseAbs().maxCoeff() <= 1e-12);
  CHECK(!has_negative(data.V));
}

TEST_CASE("generate_dataset is reproducible bitwise") {
  const SyntheticSpec spec{30, 5, 0.7, 1.0, {407, 3}};
  const SyntheticDataset a = generate_dataset(spec);
  const SyntheticDataset b = generate_dataset(spec);
  CHECK((a.V.array() == b.V.array()).all());
  CHECK((a.W_true.array() == b.W_true.array()).all());
  CHECK((a.H_relaxed.array() == b.H_relaxed.array()).all());
}

TEST_CASE("pgm ingestion scales and orders deterministically") {
  TempDir tmp;
  // one 2x2 binary image with pixels 0,255,255,0
  {
    std::ofstream out(tmp.path / "b.pgm", std::ios::binary);
    out << "P5\n2 2\n255\n";
    const unsigned char pixels[4] = {0, 255, 255, 0};
    out.write(reinterpret_cast<const char*>(pixels), 4);
  }
  // plain-text variant, written second but ordered first by name
  {
    std::ofstream out(tmp.path / "a.pgm");
    out << "P2\n# comment\n2 2\n100\n100 0\n0 100\n";
  }
  const Matrix V = load_images(tmp.path.string(), 2);
  REQUIRE(V.rows() == 4);
  REQUIRE(V.cols() == 2);
  // column 0 is a.pgm (1,0,0,1), column 1 is b.pgm (0,1,1,0)
  CHECK(V(0, 0) == doctest::Approx(1.0));
  CHECK(V(1, 0) == doctest::Approx(0.0));
  CHECK(V(0, 1) == doctest::Approx(0.0));
  CHECK(V(1, 1) == doctest::Approx(1.0));
  CHECK(V(2, 1) == doctest::Approx(1.0));
  CHECK(V(3, 1) == doctest::Approx(0.0));
}

TEST_CASE("pgm ingestion reads 16-bit rasters") {
  TempDir tmp;
  {
    std::ofstream out(tmp.path / "wide.pgm", std::ios::binary);
    out << "P5\n1 1\n65535\n";
    const unsigned char pixels[2] = {0x80, 0x00};  // 32768 big-endian
    out.write(reinterpret_cast<const char*>(pixels), 2);
  }
  const Matrix V = load_images(tmp.path.string(), 1);
  CHECK(V(0, 0) == doctest::Approx(32768.0 / 65535.0));
}

TEST_CASE("pgm ingestion rejects mixed dimensions naming the file") {
  TempDir tmp;
  {
    std::ofstream out(tmp.path / "ok.pgm", std::ios::binary);
    out << "P5\n2 2\n255\n";
    const unsigned char pixels[4] = {1, 2, 3, 4};
    out.write(reinterpret_cast<const char*>(pixels), 4);
  }
  {
    std::ofstream out(tmp.path / "wrong.pgm", std::ios::binary);
    out << "P5\n3 3\n255\n";
    const unsigned char pixels[9] = {0};
    out.write(reinterpret_cast<const char*>(pixels), 9);
  }
  try {
    load_images(tmp.path.string(), 2);
    FAIL("expected dimension error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Dimension);
    CHECK(std::string(e.what()).find("wrong.pgm") != std::string::npos);
  }
}

TEST_CASE("pgm ingestion rejects an empty directory") {
  TempDir tmp;
  CHECK_THROWS_AS(load_images(tmp.path.string(), 2), Error);
}
