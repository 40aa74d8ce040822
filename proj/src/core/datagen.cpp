#include "core/datagen.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <filesystem>
#include <fstream>

#include "core/error.hpp"

namespace nbmf {

void validate_spec(const SyntheticSpec& spec) {
  require(spec.n >= 1 && spec.k >= 1, ErrorCode::InvalidArgument,
          "synthetic spec: n and k must be positive");
  require(spec.rho > 0.0 && spec.theta > 0.0, ErrorCode::InvalidArgument,
          "synthetic spec: gamma parameters must be positive");
  require(spec.n > 2 * spec.k, ErrorCode::InvalidArgument,
          "synthetic spec: n must exceed 2k (got n=" + std::to_string(spec.n) +
              ", k=" + std::to_string(spec.k) + ")");
}

int synthetic_m(const SyntheticSpec& spec) {
  validate_spec(spec);
  const double m = 2.0 * spec.n * spec.k / (spec.n - 2.0 * spec.k);
  const int rounded = static_cast<int>(std::llround(m));
  // overfit guard k(n+m) < nm, guaranteed by the sizing rule
  require(static_cast<long long>(spec.k) * (spec.n + rounded) <
              static_cast<long long>(spec.n) * rounded,
          ErrorCode::InvalidArgument, "synthetic spec: sizing violates k(n+m) < nm");
  return rounded;
}

std::vector<double> sample_gamma(double rho, double theta, std::size_t count, Rng& rng) {
  require(rho > 0.0 && theta > 0.0, ErrorCode::InvalidArgument,
          "sample_gamma: parameters must be positive");
  std::vector<double> values(count);
  for (auto& v : values) v = rng.gamma(rho, theta);
  return values;
}

std::vector<double> sample_gamma(double rho, double theta, std::size_t count, RngSpec seed) {
  Rng rng(seed);
  return sample_gamma(rho, theta, count, rng);
}

namespace {

// Draw sequence per spec seed: nk gamma values, one shuffle, then (for the
// full dataset) mk gamma values. Single stream, so generation is one
// reproducible sequence.
Matrix generate_h_with(const SyntheticSpec& spec, Rng& rng) {
  const std::size_t cells = static_cast<std::size_t>(spec.n) * spec.k;
  std::vector<double> pool = sample_gamma(spec.rho, spec.theta, cells, rng);
  const double max_value = *std::max_element(pool.begin(), pool.end());
  for (auto& v : pool) v /= max_value;
  const std::size_t half = cells / 2;
  for (std::size_t i = 0; i < half; ++i) pool[i] = 1.0 - pool[i];
  rng.shuffle(pool);

  Matrix H(spec.k, spec.n);
  std::size_t idx = 0;
  for (Eigen::Index i = 0; i < H.rows(); ++i)
    for (Eigen::Index j = 0; j < H.cols(); ++j) H(i, j) = pool[idx++];
  return H;
}

}  // namespace

Matrix generate_h(const SyntheticSpec& spec) {
  validate_spec(spec);
  Rng rng(spec.seed);
  return generate_h_with(spec, rng);
}

SyntheticDataset generate_dataset(const SyntheticSpec& spec) {
  const int m = synthetic_m(spec);
  Rng rng(spec.seed);

  SyntheticDataset data;
  data.H_relaxed = generate_h_with(spec, rng);
  data.W_true.resize(m, spec.k);
  for (Eigen::Index i = 0; i < data.W_true.rows(); ++i)
    for (Eigen::Index j = 0; j < data.W_true.cols(); ++j)
      data.W_true(i, j) = rng.gamma(1.0, 1.0);
  data.V = data.W_true * data.H_relaxed;
  return data;
}

namespace {

struct PgmImage {
  int width = 0;
  int height = 0;
  int maxval = 0;
  std::vector<double> pixels;  // row-major, scaled to [0,1]
};

int next_header_token(std::istream& in, const std::string& path) {
  // whitespace-separated integers; '#' starts a comment to end of line
  for (;;) {
    int c = in.peek();
    if (c == EOF) throw Error(ErrorCode::Io, path + ": truncated header");
    if (std::isspace(c)) {
      in.get();
      continue;
    }
    if (c == '#') {
      std::string comment;
      std::getline(in, comment);
      continue;
    }
    int value = 0;
    if (!(in >> value)) throw Error(ErrorCode::Io, path + ": malformed header");
    return value;
  }
}

PgmImage read_pgm(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  require(in.good(), ErrorCode::Io, "cannot open " + path);
  std::string magic;
  in >> magic;
  require(magic == "P2" || magic == "P5", ErrorCode::Io,
          path + ": not a PGM file (magic '" + magic + "')");

  PgmImage img;
  img.width = next_header_token(in, path);
  img.height = next_header_token(in, path);
  img.maxval = next_header_token(in, path);
  require(img.width > 0 && img.height > 0, ErrorCode::Io, path + ": bad dimensions");
  require(img.maxval > 0 && img.maxval < 65536, ErrorCode::Io, path + ": bad maxval");

  const std::size_t count = static_cast<std::size_t>(img.width) * img.height;
  img.pixels.resize(count);
  if (magic == "P2") {
    for (std::size_t i = 0; i < count; ++i) {
      long v = 0;
      if (!(in >> v)) throw Error(ErrorCode::Io, path + ": truncated pixel data");
      require(v >= 0 && v <= img.maxval, ErrorCode::Io, path + ": pixel out of range");
      img.pixels[i] = static_cast<double>(v) / img.maxval;
    }
  } else {
    in.get();  // single whitespace after maxval
    const int bytes = img.maxval < 256 ? 1 : 2;
    std::vector<unsigned char> raw(count * bytes);
    in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
    require(static_cast<std::size_t>(in.gcount()) == raw.size(), ErrorCode::Io,
            path + ": truncated pixel data");
    for (std::size_t i = 0; i < count; ++i) {
      const long v = bytes == 1 ? raw[i]
                                : (static_cast<long>(raw[2 * i]) << 8) | raw[2 * i + 1];
      require(v <= img.maxval, ErrorCode::Io, path + ": pixel out of range");
      img.pixels[i] = static_cast<double>(v) / img.maxval;
    }
  }
  return img;
}

}  // namespace

Matrix load_images(const std::string& dir, int side) {
  namespace fs = std::filesystem;
  require(side >= 1, ErrorCode::InvalidArgument, "load_images: side must be positive");
  require(fs::is_directory(dir), ErrorCode::Io, dir + " is not a directory");

  std::vector<std::string> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    if (entry.path().extension() == ".pgm") files.push_back(entry.path().string());
  }
  require(!files.empty(), ErrorCode::Io, dir + ": no .pgm files found");
  std::sort(files.begin(), files.end());

  Matrix V(static_cast<Eigen::Index>(side) * side, static_cast<Eigen::Index>(files.size()));
  for (std::size_t j = 0; j < files.size(); ++j) {
    const PgmImage img = read_pgm(files[j]);
    if (img.width != side || img.height != side) {
      throw Error(ErrorCode::Dimension,
                  files[j] + ": expected " + std::to_string(side) + "x" +
                      std::to_string(side) + " pixels, got " + std::to_string(img.width) +
                      "x" + std::to_string(img.height));
    }
    for (std::size_t i = 0; i < img.pixels.size(); ++i)
      V(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = img.pixels[i];
  }
  return V;
}

}  // namespace nbmf
