// nbmf command line: dataset generation, factorization sweeps over the
// method matrix, reversal-distance calibration, and standalone QUBO solving.
//
// Exit codes: 0 success, 2 invalid configuration or input format,
// 3 dataset errors.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "nbmf/nbmf.h"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitDataset = 3;

[[noreturn]] void die(int code, const std::string& message) {
  std::cerr << "nbmf: " << message << "\n";
  std::exit(code);
}

void check(nbmf_status status, int exit_code) {
  if (status != NBMF_OK)
    die(exit_code, std::string(nbmf_status_name(status)) + ": " + nbmf_last_error());
}

std::string format_double(double x) {
  char buf[32];
  for (int prec = 1; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof(buf), "%.*g", prec, x);
    if (std::strtod(buf, nullptr) == x) break;
  }
  return buf;
}

void write_file_atomic(const fs::path& path, const std::string& content) {
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out.good()) die(kExitDataset, "cannot write " + tmp.string());
    out << content;
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) die(kExitDataset, "cannot rename into " + path.string());
}

struct MatrixHandle {
  nbmf_matrix* ptr = nullptr;
  MatrixHandle() = default;
  explicit MatrixHandle(nbmf_matrix* p) : ptr(p) {}
  MatrixHandle(const MatrixHandle&) = delete;
  MatrixHandle& operator=(const MatrixHandle&) = delete;
  MatrixHandle(MatrixHandle&& other) noexcept : ptr(other.ptr) { other.ptr = nullptr; }
  MatrixHandle& operator=(MatrixHandle&& other) noexcept {
    if (this != &other) {
      nbmf_matrix_destroy(ptr);
      ptr = other.ptr;
      other.ptr = nullptr;
    }
    return *this;
  }
  ~MatrixHandle() { nbmf_matrix_destroy(ptr); }
  size_t rows() const { return nbmf_matrix_rows(ptr); }
  size_t cols() const { return nbmf_matrix_cols(ptr); }
  std::vector<double> column(size_t j) const {
    std::vector<double> out(rows());
    for (size_t i = 0; i < rows(); ++i) check(nbmf_matrix_get(ptr, i, j, &out[i]), 1);
    return out;
  }
};

struct RunHandle {
  nbmf_run* ptr = nullptr;
  RunHandle() = default;
  RunHandle(const RunHandle&) = delete;
  RunHandle& operator=(const RunHandle&) = delete;
  RunHandle(RunHandle&& other) noexcept : ptr(other.ptr) { other.ptr = nullptr; }
  RunHandle& operator=(RunHandle&& other) noexcept {
    if (this != &other) {
      nbmf_run_destroy(ptr);
      ptr = other.ptr;
      other.ptr = nullptr;
    }
    return *this;
  }
  ~RunHandle() { nbmf_run_destroy(ptr); }
};

struct QuboHandle {
  nbmf_qubo* ptr = nullptr;
  QuboHandle() = default;
  explicit QuboHandle(nbmf_qubo* p) : ptr(p) {}
  QuboHandle(const QuboHandle&) = delete;
  QuboHandle& operator=(const QuboHandle&) = delete;
  QuboHandle(QuboHandle&& other) noexcept : ptr(other.ptr) { other.ptr = nullptr; }
  QuboHandle& operator=(QuboHandle&& other) noexcept {
    if (this != &other) {
      nbmf_qubo_destroy(ptr);
      ptr = other.ptr;
      other.ptr = nullptr;
    }
    return *this;
  }
  ~QuboHandle() { nbmf_qubo_destroy(ptr); }
};

int default_threads() {
  if (const char* env = std::getenv("NBMF_THREADS")) {
    const int value = std::atoi(env);
    if (value >= 1) return value;
  }
  return 1;
}

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

// Config files are flat key=value lines ('#' comments) whose keys match the
// flag names, e.g. "als.max_iterations=20" for --als.max_iterations. Flags
// given on the command line take precedence; config keys for flags the user
// already passed are dropped.
std::vector<std::string> expand_config(const std::vector<std::string>& args) {
  std::string config_path;
  std::vector<std::string> out;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) {
      config_path = args[i + 1];
      ++i;
      continue;
    }
    if (args[i].rfind("--config=", 0) == 0) {
      config_path = args[i].substr(9);
      continue;
    }
    out.push_back(args[i]);
  }
  if (config_path.empty()) return out;

  std::ifstream in(config_path);
  if (!in.good()) die(kExitConfig, "cannot open config file " + config_path);

  std::set<std::string> given;
  for (const std::string& arg : out) {
    if (arg.rfind("--", 0) != 0) continue;
    const auto eq = arg.find('=');
    given.insert(eq == std::string::npos ? arg.substr(2) : arg.substr(2, eq - 2));
  }

  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string stripped = trim(line);
    if (stripped.empty() || stripped[0] == '#') continue;
    const auto eq = stripped.find('=');
    if (eq == std::string::npos)
      die(kExitConfig, config_path + ":" + std::to_string(lineno) +
                           ": expected key=value");
    const std::string key = trim(stripped.substr(0, eq));
    const std::string value = trim(stripped.substr(eq + 1));
    if (key.empty())
      die(kExitConfig, config_path + ":" + std::to_string(lineno) + ": empty key");
    if (given.count(key)) continue;
    out.push_back("--" + key + "=" + value);
  }
  return out;
}

std::optional<nbmf_solver_kind> kind_from_name(const std::string& name) {
  if (name == "exact") return NBMF_SOLVER_EXACT;
  if (name == "pgd") return NBMF_SOLVER_PGD;
  if (name == "fa") return NBMF_SOLVER_FA;
  if (name == "ra") return NBMF_SOLVER_RA;
  if (name == "ra+fa") return NBMF_SOLVER_RA_FA;
  if (name == "ra+pgd") return NBMF_SOLVER_RA_PGD;
  return std::nullopt;
}

const char* kind_name(int kind) {
  switch (kind) {
    case NBMF_SOLVER_EXACT: return "exact";
    case NBMF_SOLVER_PGD: return "pgd";
    case NBMF_SOLVER_FA: return "fa";
    case NBMF_SOLVER_RA: return "ra";
    case NBMF_SOLVER_RA_FA: return "ra+fa";
    case NBMF_SOLVER_RA_PGD: return "ra+pgd";
  }
  return "?";
}

/* ------------------------------------------------------------------ */
/* Options shared across subcommands                                  */
/* ------------------------------------------------------------------ */

struct DatasetOpts {
  std::string csv_path;
  std::string image_dir;
  int image_side = 19;
  std::vector<uint64_t> synth_k;
  std::vector<double> synth_rho;
  uint64_t synth_n = 0;
  double synth_theta = 1.0;
};

struct AnnealOpts {
  int sweeps = 100;
  int fa_reads = 1000;
  int ra_reads = 240;
  double reversal_distance = 0.45;
  double pause_fraction = 1.0 / 3.0;
  double temp_max = 0.0;
  double temp_min = 0.0;
};

struct PgdOpts {
  int max_iters = 1000;
  double tol = 1e-6;
  double beta = 0.1;
  double sigma = 0.01;
  double alpha_init = 1.0;
};

void add_dataset_options(CLI::App* cmd, DatasetOpts& opts) {
  cmd->add_option("--data.csv", opts.csv_path, "Load V from a CSV matrix file");
  cmd->add_option("--data.images", opts.image_dir, "Load V from a directory of PGM images");
  cmd->add_option("--data.side", opts.image_side, "Expected image side length")
      ->capture_default_str();
  cmd->add_option("--synth.n", opts.synth_n, "Synthetic dataset: number of data points");
  cmd->add_option("--synth.k", opts.synth_k, "Synthetic dataset: feature counts (list = sweep)")
      ->delimiter(',');
  cmd->add_option("--synth.rho", opts.synth_rho, "Synthetic dataset: gamma shapes (list = sweep)")
      ->delimiter(',');
  cmd->add_option("--synth.theta", opts.synth_theta, "Synthetic dataset: gamma scale")
      ->capture_default_str();
}

void add_anneal_options(CLI::App* cmd, AnnealOpts& opts) {
  cmd->add_option("--anneal.sweeps", opts.sweeps, "Metropolis sweeps per read")
      ->capture_default_str();
  cmd->add_option("--anneal.fa_reads", opts.fa_reads, "Forward-annealing reads")
      ->capture_default_str();
  cmd->add_option("--anneal.ra_reads", opts.ra_reads, "Reverse-annealing reads")
      ->capture_default_str();
  cmd->add_option("--anneal.reversal_distance", opts.reversal_distance,
                  "Reverse-annealing turning point in [0,1]")
      ->capture_default_str();
  cmd->add_option("--anneal.pause_fraction", opts.pause_fraction,
                  "Fraction of reverse-annealing sweeps held at the turning point")
      ->capture_default_str();
  cmd->add_option("--anneal.temp_max", opts.temp_max, "Peak temperature (0 = auto)")
      ->capture_default_str();
  cmd->add_option("--anneal.temp_min", opts.temp_min, "Final temperature (0 = auto)")
      ->capture_default_str();
}

void add_pgd_options(CLI::App* cmd, const std::string& prefix, PgdOpts& opts) {
  cmd->add_option("--" + prefix + ".max_iters", opts.max_iters)->capture_default_str();
  cmd->add_option("--" + prefix + ".tol", opts.tol)->capture_default_str();
  cmd->add_option("--" + prefix + ".beta", opts.beta)->capture_default_str();
  cmd->add_option("--" + prefix + ".sigma", opts.sigma)->capture_default_str();
  cmd->add_option("--" + prefix + ".alpha_init", opts.alpha_init)->capture_default_str();
}

nbmf_pgd_config to_config(const PgdOpts& opts) {
  nbmf_pgd_config c;
  c.max_iters = opts.max_iters;
  c.tol = opts.tol;
  c.beta = opts.beta;
  c.sigma = opts.sigma;
  c.alpha_init = opts.alpha_init;
  return c;
}

nbmf_anneal_schedule fa_schedule(const AnnealOpts& opts) {
  nbmf_anneal_schedule s;
  s.sweeps = opts.sweeps;
  s.reads = opts.fa_reads;
  s.reversal_distance = 1.0;
  s.pause_fraction = 0.0;
  s.temp_max = opts.temp_max;
  s.temp_min = opts.temp_min;
  return s;
}

nbmf_anneal_schedule ra_schedule(const AnnealOpts& opts) {
  nbmf_anneal_schedule s;
  s.sweeps = opts.sweeps;
  s.reads = opts.ra_reads;
  s.reversal_distance = opts.reversal_distance;
  s.pause_fraction = opts.pause_fraction;
  s.temp_max = opts.temp_max;
  s.temp_min = opts.temp_min;
  return s;
}

json anneal_json(const AnnealOpts& a) {
  return json{{"sweeps", a.sweeps},
              {"fa_reads", a.fa_reads},
              {"ra_reads", a.ra_reads},
              {"reversal_distance", a.reversal_distance},
              {"pause_fraction", a.pause_fraction},
              {"temp_max", a.temp_max},
              {"temp_min", a.temp_min}};
}

json pgd_json(const PgdOpts& p) {
  return json{{"max_iters", p.max_iters}, {"tol", p.tol},           {"beta", p.beta},
              {"sigma", p.sigma},         {"alpha_init", p.alpha_init}};
}

/* ------------------------------------------------------------------ */
/* Dataset resolution                                                 */
/* ------------------------------------------------------------------ */

struct Cell {
  uint64_t k = 0;
  double rho = 0.0;
  bool synthetic = false;
  std::string label;  // empty for single-cell runs
};

MatrixHandle load_cell_data(const DatasetOpts& data, const Cell& cell, uint64_t seed) {
  nbmf_matrix* V = nullptr;
  if (!data.csv_path.empty()) {
    check(nbmf_matrix_read_csv(data.csv_path.c_str(), 1, &V), kExitDataset);
  } else if (!data.image_dir.empty()) {
    check(nbmf_load_images(data.image_dir.c_str(), static_cast<size_t>(data.image_side), &V),
          kExitDataset);
  } else {
    nbmf_synth_spec spec{data.synth_n, cell.k, cell.rho, data.synth_theta, seed};
    check(nbmf_generate_dataset(&spec, &V, nullptr, nullptr), kExitDataset);
  }
  return MatrixHandle(V);
}

std::vector<Cell> resolve_cells(const DatasetOpts& data) {
  const bool csv = !data.csv_path.empty();
  const bool images = !data.image_dir.empty();
  const bool synth = data.synth_n > 0;
  if (csv + images + synth != 1)
    die(kExitConfig, "choose exactly one dataset source: --data.csv, --data.images or --synth.n");
  if (!synth) return {Cell{0, 0.0, false, ""}};

  std::vector<uint64_t> ks = data.synth_k.empty() ? std::vector<uint64_t>{10} : data.synth_k;
  std::vector<double> rhos = data.synth_rho.empty() ? std::vector<double>{0.5} : data.synth_rho;
  std::vector<Cell> cells;
  for (uint64_t k : ks) {
    for (double rho : rhos) {
      Cell cell{k, rho, true, ""};
      if (ks.size() > 1 || rhos.size() > 1)
        cell.label = "k" + std::to_string(k) + "-rho" + format_double(rho);
      cells.push_back(cell);
    }
  }
  return cells;
}

/* ------------------------------------------------------------------ */
/* factorize                                                          */
/* ------------------------------------------------------------------ */

struct FactorizeOpts {
  DatasetOpts data;
  AnnealOpts anneal;
  PgdOpts w_pgd;
  PgdOpts h_pgd;
  std::vector<std::string> methods{"exact", "pgd"};
  std::string mode = "nbmf";
  uint64_t rank = 0;
  int max_iterations = 20;
  double rel_tol = 1e-4;
  double exact_time_limit = 60.0;
  bool emit_trajectory = true;
  bool emit_hamming = false;
  bool emit_histograms = false;
  bool emit_qubo_dumps = false;
  int hist_bins = 50;
  uint64_t seed = 12345;
  std::string out;
  int threads = default_threads();
  std::string preset;
};

struct MethodRun {
  std::string name;
  RunHandle run;
};

nbmf_als_config build_als_config(const FactorizeOpts& opts, uint64_t rank,
                                 nbmf_solver_kind kind) {
  nbmf_als_config config;
  nbmf_als_config_default(&config);
  config.rank = rank;
  config.max_iterations = opts.max_iterations;
  config.rel_tol = opts.rel_tol;
  config.seed = opts.seed;
  config.threads = opts.threads;
  config.w_pgd = to_config(opts.w_pgd);
  config.h_pgd = to_config(opts.h_pgd);
  config.solver.kind = kind;
  config.solver.fa = fa_schedule(opts.anneal);
  config.solver.ra = ra_schedule(opts.anneal);
  config.solver.relax = to_config(opts.h_pgd);
  config.solver.exact_time_limit_seconds = opts.exact_time_limit;
  return config;
}

void emit_trajectory_csv(const fs::path& dir, const std::vector<MethodRun>& runs) {
  std::ostringstream csv;
  csv << "iteration,method,error,error_after_w\n";
  for (const MethodRun& mr : runs) {
    const size_t len = nbmf_run_length(mr.run.ptr);
    for (size_t t = 0; t < len; ++t) {
      double err = 0.0, err_w = 0.0;
      check(nbmf_run_error(mr.run.ptr, t, &err), 1);
      check(nbmf_run_error_after_w(mr.run.ptr, t, &err_w), 1);
      csv << t << ',' << mr.name << ',' << format_double(err) << ','
          << format_double(err_w) << '\n';
    }
  }
  write_file_atomic(dir / "trajectory.csv", csv.str());
}

void emit_metrics_csv(const fs::path& dir, const MatrixHandle& V,
                      const std::vector<MethodRun>& runs, double exact_time_limit,
                      int threads) {
  const size_t n = V.cols();
  for (const MethodRun& mr : runs) {
    std::ostringstream csv;
    csv << "iteration,column,objective_method,objective_opt,hamming,approx_ratio,"
           "optimal_flag\n";
    const size_t len = nbmf_run_length(mr.run.ptr);
    for (size_t t = 1; t < len; ++t) {
      nbmf_matrix* W = nullptr;
      nbmf_matrix* H = nullptr;
      check(nbmf_run_w(mr.run.ptr, t, &W), 1);
      check(nbmf_run_h(mr.run.ptr, t, &H), 1);
      MatrixHandle w_handle(W), h_handle(H);
      std::vector<double> obj_method(n), obj_opt(n), ratio(n);
      std::vector<uint64_t> dist(n);
      std::vector<int> defined(n), optimal(n);
      check(nbmf_evaluate_columns(V.ptr, W, H, exact_time_limit, threads,
                                  obj_method.data(), obj_opt.data(), dist.data(),
                                  ratio.data(), defined.data(), optimal.data(), nullptr),
            1);
      for (size_t j = 0; j < n; ++j) {
        csv << t << ',' << j << ',' << format_double(obj_method[j]) << ','
            << format_double(obj_opt[j]) << ',' << dist[j] << ','
            << (defined[j] ? format_double(ratio[j]) : std::string("nan")) << ','
            << (optimal[j] ? 1 : 0) << '\n';
      }
    }
    write_file_atomic(dir / ("metrics-" + mr.name + ".csv"), csv.str());
  }
}

void emit_histograms_csv(const fs::path& dir, const std::vector<MethodRun>& runs,
                         int bins) {
  std::ostringstream csv;
  csv << "method,iteration,bin_index,bin_lo,bin_hi,count\n";
  bool any = false;
  for (const MethodRun& mr : runs) {
    const size_t len = nbmf_run_length(mr.run.ptr);
    for (size_t t = 1; t < len; ++t) {
      nbmf_matrix* relaxed = nullptr;
      if (nbmf_run_relaxed(mr.run.ptr, t, &relaxed) != NBMF_OK) continue;
      MatrixHandle handle(relaxed);
      std::vector<double> values(handle.rows() * handle.cols());
      check(nbmf_matrix_copy(relaxed, values.data()), 1);
      std::vector<uint64_t> counts(static_cast<size_t>(bins));
      check(nbmf_histogram(values.data(), values.size(), counts.size(), counts.data()), 1);
      for (size_t b = 0; b < counts.size(); ++b) {
        csv << mr.name << ',' << t << ',' << b << ','
            << format_double(static_cast<double>(b) / bins) << ','
            << format_double(static_cast<double>(b + 1) / bins) << ',' << counts[b] << '\n';
      }
      any = true;
    }
  }
  if (any) write_file_atomic(dir / "histograms.csv", csv.str());
}

void emit_qubo_dumps(const fs::path& dir, const MatrixHandle& V,
                     const std::vector<MethodRun>& runs) {
  // Iteration 1's W step only depends on the shared initialization, so the
  // per-column instances are identical across methods; dump them once.
  if (runs.empty() || nbmf_run_length(runs.front().run.ptr) < 2) return;
  nbmf_matrix* W = nullptr;
  check(nbmf_run_w(runs.front().run.ptr, 1, &W), 1);
  MatrixHandle w_handle(W);
  fs::create_directories(dir / "qubo");
  for (size_t j = 0; j < V.cols(); ++j) {
    const std::vector<double> v = V.column(j);
    nbmf_qubo* q = nullptr;
    check(nbmf_qubo_build(W, v.data(), v.size(), &q), 1);
    QuboHandle handle(q);
    const fs::path path = dir / "qubo" / ("iter1-col" + std::to_string(j) + ".qubo");
    check(nbmf_qubo_write_file(q, path.string().c_str()), 1);
  }
}

json run_summary(const std::vector<MethodRun>& runs) {
  json methods = json::object();
  for (const MethodRun& mr : runs) {
    const size_t len = nbmf_run_length(mr.run.ptr);
    json errors = json::array();
    json w_seconds = json::array();
    json h_seconds = json::array();
    double total_w = 0.0, total_h = 0.0;
    double final_error = 0.0;
    for (size_t t = 0; t < len; ++t) {
      double err = 0.0, ws = 0.0, hs = 0.0;
      check(nbmf_run_error(mr.run.ptr, t, &err), 1);
      check(nbmf_run_step_seconds(mr.run.ptr, t, &ws, &hs), 1);
      errors.push_back(err);
      w_seconds.push_back(ws);
      h_seconds.push_back(hs);
      total_w += ws;
      total_h += hs;
      final_error = err;
    }
    methods[mr.name] = json{{"iterations", len - 1},
                            {"final_error", final_error},
                            {"errors", errors},
                            {"w_step_seconds", w_seconds},
                            {"h_step_seconds", h_seconds},
                            {"total_seconds", total_w + total_h}};
  }
  return methods;
}

int cmd_factorize(FactorizeOpts& opts) {
  if (opts.out.empty()) die(kExitConfig, "--out is required");
  for (const std::string& name : opts.methods)
    if (!kind_from_name(name)) die(kExitConfig, "unknown method '" + name + "'");
  if (opts.methods.empty()) die(kExitConfig, "at least one method is required");
  if (opts.mode != "nbmf" && opts.mode != "nmf")
    die(kExitConfig, "--als.mode must be nbmf or nmf");

  const std::vector<Cell> cells = resolve_cells(opts.data);
  fs::create_directories(opts.out);

  json summary;
  summary["version"] = nbmf_version();
  summary["seed"] = opts.seed;
  summary["config"] = json{
      {"mode", opts.mode},
      {"methods", opts.methods},
      {"rank", opts.rank},
      {"max_iterations", opts.max_iterations},
      {"rel_tol", opts.rel_tol},
      {"exact_time_limit", opts.exact_time_limit},
      {"threads", opts.threads},
      {"anneal", anneal_json(opts.anneal)},
      {"w_pgd", pgd_json(opts.w_pgd)},
      {"h_pgd", pgd_json(opts.h_pgd)},
      {"emit",
       json{{"trajectory", opts.emit_trajectory},
            {"hamming", opts.emit_hamming},
            {"histograms", opts.emit_histograms},
            {"qubo_dumps", opts.emit_qubo_dumps}}},
      {"dataset",
       json{{"csv", opts.data.csv_path},
            {"images", opts.data.image_dir},
            {"side", opts.data.image_side},
            {"synth_n", opts.data.synth_n},
            {"synth_theta", opts.data.synth_theta}}},
  };
  json cells_json = json::object();

  for (const Cell& cell : cells) {
    const MatrixHandle V = load_cell_data(opts.data, cell, opts.seed);
    uint64_t rank = opts.rank;
    if (rank == 0) {
      if (!cell.synthetic)
        die(kExitConfig, "--als.rank is required for CSV and image datasets");
      rank = cell.k;
    }

    const fs::path cell_dir =
        cell.label.empty() ? fs::path(opts.out) : fs::path(opts.out) / cell.label;
    fs::create_directories(cell_dir);

    std::vector<MethodRun> runs;
    if (opts.mode == "nmf") {
      const nbmf_als_config config = build_als_config(opts, rank, NBMF_SOLVER_EXACT);
      MethodRun mr;
      mr.name = "nmf";
      check(nbmf_als_nmf(V.ptr, &config, &mr.run.ptr), kExitDataset);
      runs.push_back(std::move(mr));
    } else {
      for (const std::string& name : opts.methods) {
        const nbmf_als_config config = build_als_config(opts, rank, *kind_from_name(name));
        MethodRun mr;
        mr.name = name;
        check(nbmf_als_nbmf(V.ptr, &config, &mr.run.ptr), kExitDataset);
        runs.push_back(std::move(mr));
      }
    }

    if (opts.emit_trajectory) emit_trajectory_csv(cell_dir, runs);
    if (opts.emit_hamming && opts.mode == "nbmf")
      emit_metrics_csv(cell_dir, V, runs, opts.exact_time_limit, opts.threads);
    if (opts.emit_histograms) emit_histograms_csv(cell_dir, runs, opts.hist_bins);
    if (opts.emit_qubo_dumps && opts.mode == "nbmf") emit_qubo_dumps(cell_dir, V, runs);

    json cell_summary;
    cell_summary["rank"] = rank;
    if (cell.synthetic) {
      cell_summary["synth_k"] = cell.k;
      cell_summary["synth_rho"] = cell.rho;
    }
    cell_summary["rows"] = V.rows();
    cell_summary["cols"] = V.cols();
    cell_summary["methods"] = run_summary(runs);
    cells_json[cell.label.empty() ? "default" : cell.label] = cell_summary;
  }

  summary["cells"] = cells_json;
  write_file_atomic(fs::path(opts.out) / "summary.json", summary.dump(2) + "\n");
  return 0;
}

/* ------------------------------------------------------------------ */
/* gen-synth                                                          */
/* ------------------------------------------------------------------ */

struct GenSynthOpts {
  uint64_t n = 110;
  uint64_t k = 10;
  double rho = 0.5;
  double theta = 1.0;
  uint64_t seed = 12345;
  std::string out;
  int threads = default_threads();  // accepted for interface uniformity
};

int cmd_gen_synth(const GenSynthOpts& opts) {
  if (opts.out.empty()) die(kExitConfig, "--out is required");
  nbmf_synth_spec spec{opts.n, opts.k, opts.rho, opts.theta, opts.seed};
  uint64_t m = 0;
  check(nbmf_synth_m(&spec, &m), kExitConfig);

  nbmf_matrix* V = nullptr;
  nbmf_matrix* W = nullptr;
  nbmf_matrix* H = nullptr;
  check(nbmf_generate_dataset(&spec, &V, &W, &H), kExitConfig);
  MatrixHandle v_handle(V), w_handle(W), h_handle(H);

  fs::create_directories(opts.out);
  const fs::path dir(opts.out);
  check(nbmf_matrix_write_csv(V, (dir / "V.csv").string().c_str()), kExitDataset);
  check(nbmf_matrix_write_csv(W, (dir / "W.csv").string().c_str()), kExitDataset);
  check(nbmf_matrix_write_csv(H, (dir / "H.csv").string().c_str()), kExitDataset);

  std::ostringstream manifest;
  manifest << "# nbmf synthetic dataset manifest; reusable via --config\n";
  manifest << "synth.n=" << opts.n << "\n";
  manifest << "synth.k=" << opts.k << "\n";
  manifest << "synth.rho=" << format_double(opts.rho) << "\n";
  manifest << "synth.theta=" << format_double(opts.theta) << "\n";
  manifest << "seed=" << opts.seed << "\n";
  manifest << "# derived: m=" << m << "\n";
  write_file_atomic(dir / "manifest.txt", manifest.str());

  std::cout << "wrote " << m << "x" << opts.n << " dataset to " << opts.out << "\n";
  return 0;
}

/* ------------------------------------------------------------------ */
/* calibrate                                                          */
/* ------------------------------------------------------------------ */

struct CalibrateOpts {
  DatasetOpts data;
  AnnealOpts anneal;
  PgdOpts pgd;
  std::vector<double> distances;
  int repeats = 10;
  int reads = 1;
  uint64_t seed = 12345;
  std::string out;
  int threads = default_threads();
};

int cmd_calibrate(CalibrateOpts& opts) {
  if (opts.out.empty()) die(kExitConfig, "--out is required");
  if (opts.distances.empty()) die(kExitConfig, "--distances must not be empty");
  for (double d : opts.distances)
    if (d < 0.0 || d > 1.0) die(kExitConfig, "distances must lie in [0,1]");

  const std::vector<Cell> cells = resolve_cells(opts.data);
  if (cells.size() != 1) die(kExitConfig, "calibrate expects a single dataset cell");
  const MatrixHandle V = load_cell_data(opts.data, cells.front(), opts.seed);
  const uint64_t rank = cells.front().synthetic ? cells.front().k : 0;
  if (rank == 0) die(kExitConfig, "calibrate currently requires a synthetic dataset");

  // One relaxation-and-rounding ALS iteration provides the batch of column
  // subproblems and their initial states.
  FactorizeOpts als_opts;
  als_opts.anneal = opts.anneal;
  als_opts.w_pgd = opts.pgd;
  als_opts.h_pgd = opts.pgd;
  als_opts.max_iterations = 1;
  als_opts.rel_tol = 0.0;
  als_opts.seed = opts.seed;
  als_opts.threads = opts.threads;
  const nbmf_als_config config = build_als_config(als_opts, rank, NBMF_SOLVER_PGD);
  RunHandle run;
  check(nbmf_als_nbmf(V.ptr, &config, &run.ptr), kExitDataset);

  nbmf_matrix* W = nullptr;
  nbmf_matrix* H = nullptr;
  check(nbmf_run_w(run.ptr, 1, &W), 1);
  check(nbmf_run_h(run.ptr, 1, &H), 1);
  MatrixHandle w_handle(W), h_handle(H);

  const size_t n = V.cols();
  const size_t k = static_cast<size_t>(rank);
  std::vector<QuboHandle> qubos;
  std::vector<std::vector<uint8_t>> initials;
  std::vector<double> initial_objectives;
  for (size_t j = 0; j < n; ++j) {
    const std::vector<double> v = V.column(j);
    nbmf_qubo* q = nullptr;
    check(nbmf_qubo_build(W, v.data(), v.size(), &q), 1);
    qubos.emplace_back(q);
    std::vector<uint8_t> h(k);
    for (size_t i = 0; i < k; ++i) {
      double value = 0.0;
      check(nbmf_matrix_get(H, i, j, &value), 1);
      h[i] = value >= 0.5 ? 1 : 0;
    }
    double energy = 0.0;
    check(nbmf_qubo_energy(q, h.data(), &energy), 1);
    initial_objectives.push_back(energy + nbmf_qubo_offset(q));
    initials.push_back(std::move(h));
  }

  std::ostringstream csv;
  csv << "distance,escape_rate,improve_rate,mean_energy\n";
  double best_improve = -1.0;
  double best_distance = opts.distances.front();
  for (double distance : opts.distances) {
    nbmf_anneal_schedule schedule = ra_schedule(opts.anneal);
    schedule.reversal_distance = distance;
    schedule.reads = opts.reads;
    uint64_t escapes = 0, improvements = 0, trials = 0;
    double energy_sum = 0.0;
    for (size_t j = 0; j < n; ++j) {
      for (int rep = 0; rep < opts.repeats; ++rep) {
        std::vector<uint8_t> state(k);
        nbmf_solve_report report;
        // one stream per (column, repeat), shared across distances
        const uint64_t stream = j * static_cast<uint64_t>(opts.repeats) + rep;
        check(nbmf_solve_ra(qubos[j].ptr, initials[j].data(), &schedule, opts.seed,
                            stream, state.data(), &report),
              1);
        ++trials;
        if (state != initials[j]) ++escapes;
        if (report.best_objective < initial_objectives[j]) ++improvements;
        energy_sum += report.best_energy;
      }
    }
    const double escape_rate = static_cast<double>(escapes) / trials;
    const double improve_rate = static_cast<double>(improvements) / trials;
    const double mean_energy = energy_sum / trials;
    csv << format_double(distance) << ',' << format_double(escape_rate) << ','
        << format_double(improve_rate) << ',' << format_double(mean_energy) << '\n';
    if (improve_rate > best_improve) {
      best_improve = improve_rate;
      best_distance = distance;
    }
  }

  fs::create_directories(opts.out);
  write_file_atomic(fs::path(opts.out) / "calibration.csv", csv.str());
  json summary{{"version", nbmf_version()},
               {"seed", opts.seed},
               {"distances", opts.distances},
               {"repeats", opts.repeats},
               {"reads", opts.reads},
               {"recommended_distance", best_distance},
               {"best_improve_rate", best_improve}};
  write_file_atomic(fs::path(opts.out) / "calibration.json", summary.dump(2) + "\n");
  std::cout << "recommended_distance=" << format_double(best_distance) << "\n";
  return 0;
}

/* ------------------------------------------------------------------ */
/* solve-qubo                                                         */
/* ------------------------------------------------------------------ */

struct SolveQuboOpts {
  std::string file;
  std::string kind = "exact";
  std::string initial;
  AnnealOpts anneal;
  double exact_time_limit = 60.0;
  uint64_t seed = 12345;
  std::string out;     // optional copy of the JSON result
  int threads = default_threads();
};

int cmd_solve_qubo(const SolveQuboOpts& opts) {
  const auto kind = kind_from_name(opts.kind);
  if (!kind) die(kExitConfig, "unknown solver kind '" + opts.kind + "'");
  if (*kind == NBMF_SOLVER_PGD || *kind == NBMF_SOLVER_RA_PGD)
    die(kExitConfig,
        "relaxation-based kinds need the original (W, v) column problem, which a "
        "QUBO file does not carry; use exact, fa, ra or ra+fa");

  nbmf_qubo* q_raw = nullptr;
  check(nbmf_qubo_read_file(opts.file.c_str(), &q_raw), kExitConfig);
  QuboHandle q(q_raw);
  const size_t size = nbmf_qubo_size(q.ptr);

  std::vector<uint8_t> initial;
  if (*kind == NBMF_SOLVER_RA) {
    if (opts.initial.size() != size)
      die(kExitConfig, "--initial must be a bit string of length " + std::to_string(size));
    for (char c : opts.initial) {
      if (c != '0' && c != '1') die(kExitConfig, "--initial must contain only 0 and 1");
      initial.push_back(c == '1' ? 1 : 0);
    }
  }

  std::vector<uint8_t> state(size);
  nbmf_solve_report report;
  switch (*kind) {
    case NBMF_SOLVER_EXACT:
      check(nbmf_solve_exact(q.ptr, opts.exact_time_limit, state.data(), &report),
            kExitConfig);
      break;
    case NBMF_SOLVER_FA: {
      const nbmf_anneal_schedule schedule = fa_schedule(opts.anneal);
      check(nbmf_solve_fa(q.ptr, &schedule, opts.seed, 0, state.data(), &report),
            kExitConfig);
      break;
    }
    case NBMF_SOLVER_RA: {
      const nbmf_anneal_schedule schedule = ra_schedule(opts.anneal);
      check(nbmf_solve_ra(q.ptr, initial.data(), &schedule, opts.seed, 0, state.data(),
                          &report),
            kExitConfig);
      break;
    }
    case NBMF_SOLVER_RA_FA: {
      const nbmf_anneal_schedule fa = fa_schedule(opts.anneal);
      std::vector<uint8_t> fa_state(size);
      nbmf_solve_report fa_report;
      check(nbmf_solve_fa(q.ptr, &fa, opts.seed, 0, fa_state.data(), &fa_report),
            kExitConfig);
      const nbmf_anneal_schedule ra = ra_schedule(opts.anneal);
      check(nbmf_solve_ra(q.ptr, fa_state.data(), &ra, opts.seed, 1, state.data(), &report),
            kExitConfig);
      report.samples_evaluated += fa_report.samples_evaluated;
      break;
    }
    default:
      break;
  }

  std::string assignment;
  for (uint8_t b : state) assignment.push_back(b ? '1' : '0');
  json result{{"assignment", assignment},
              {"energy", report.best_energy},
              {"objective", report.best_objective},
              {"offset", nbmf_qubo_offset(q.ptr)},
              {"samples_evaluated", report.samples_evaluated},
              {"wall_seconds", report.wall_seconds},
              {"solver", kind_name(report.solver)},
              {"optimal", report.optimal != 0}};
  std::cout << result.dump() << "\n";
  if (!opts.out.empty()) {
    fs::create_directories(opts.out);
    write_file_atomic(fs::path(opts.out) / "solution.json", result.dump(2) + "\n");
  }
  return 0;
}

/* ------------------------------------------------------------------ */
/* presets                                                            */
/* ------------------------------------------------------------------ */

void apply_preset(CLI::App* cmd, FactorizeOpts& opts) {
  if (opts.preset.empty()) return;
  auto unset = [&](const std::string& flag) {
    const CLI::Option* opt = cmd->get_option(flag);
    return opt->count() == 0;
  };
  if (opts.preset == "paper-faces") {
    if (unset("--als.rank")) opts.rank = 35;
    if (unset("--als.max_iterations")) opts.max_iterations = 20;
    if (unset("--methods")) opts.methods = {"exact", "pgd", "fa", "ra", "ra+fa", "ra+pgd"};
    if (unset("--data.side")) opts.data.image_side = 19;
    if (opts.data.image_dir.empty())
      die(kExitConfig, "preset paper-faces needs --data.images");
  } else if (opts.preset == "paper-synthetic") {
    if (unset("--synth.n")) opts.data.synth_n = 110;
    if (unset("--synth.k")) opts.data.synth_k = {10, 20, 30, 40};
    if (unset("--synth.rho")) opts.data.synth_rho = {0.5, 1.0, 2.0, 10.0};
    if (unset("--methods")) opts.methods = {"pgd"};
    if (unset("--emit.hamming")) opts.emit_hamming = true;
    if (unset("--exact.time_limit")) opts.exact_time_limit = 60.0;
    if (unset("--als.max_iterations")) opts.max_iterations = 1;
  } else {
    die(kExitConfig, "unknown preset '" + opts.preset + "'");
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Nonnegative/binary matrix factorization toolkit"};
  app.require_subcommand(1);

  FactorizeOpts fac;
  CLI::App* factorize = app.add_subcommand(
      "factorize", "Run ALS factorization with one or more column solvers");
  add_dataset_options(factorize, fac.data);
  add_anneal_options(factorize, fac.anneal);
  add_pgd_options(factorize, "wpgd", fac.w_pgd);
  add_pgd_options(factorize, "hpgd", fac.h_pgd);
  factorize->add_option("--methods", fac.methods,
                        "Column solvers: exact,pgd,fa,ra,ra+fa,ra+pgd")
      ->delimiter(',')
      ->capture_default_str();
  factorize->add_option("--als.mode", fac.mode, "nbmf (binary H) or nmf (continuous H)")
      ->capture_default_str();
  factorize->add_option("--als.rank", fac.rank, "Factorization rank k");
  factorize->add_option("--als.max_iterations", fac.max_iterations)->capture_default_str();
  factorize->add_option("--als.rel_tol", fac.rel_tol, "Relative improvement stop (0 = off)")
      ->capture_default_str();
  factorize->add_option("--exact.time_limit", fac.exact_time_limit)->capture_default_str();
  factorize->add_option("--emit.trajectory", fac.emit_trajectory)->capture_default_str();
  factorize->add_option("--emit.hamming", fac.emit_hamming)->capture_default_str();
  factorize->add_option("--emit.histograms", fac.emit_histograms)->capture_default_str();
  factorize->add_option("--emit.qubo_dumps", fac.emit_qubo_dumps)->capture_default_str();
  factorize->add_option("--hist.bins", fac.hist_bins)->capture_default_str();
  factorize->add_option("--seed", fac.seed)->capture_default_str();
  factorize->add_option("--out", fac.out, "Output directory");
  factorize->add_option("--threads", fac.threads)->capture_default_str();
  factorize->add_option("--preset", fac.preset, "paper-faces or paper-synthetic");

  GenSynthOpts gen;
  CLI::App* gen_synth = app.add_subcommand("gen-synth", "Write a synthetic dataset");
  gen_synth->add_option("--synth.n", gen.n)->capture_default_str();
  gen_synth->add_option("--synth.k", gen.k)->capture_default_str();
  gen_synth->add_option("--synth.rho", gen.rho)->capture_default_str();
  gen_synth->add_option("--synth.theta", gen.theta)->capture_default_str();
  gen_synth->add_option("--seed", gen.seed)->capture_default_str();
  gen_synth->add_option("--out", gen.out, "Output directory");
  gen_synth->add_option("--threads", gen.threads)->capture_default_str();

  CalibrateOpts cal;
  CLI::App* calibrate = app.add_subcommand(
      "calibrate", "Sweep reversal distances and measure escape/improvement rates");
  add_dataset_options(calibrate, cal.data);
  add_anneal_options(calibrate, cal.anneal);
  add_pgd_options(calibrate, "pgd", cal.pgd);
  calibrate->add_option("--distances", cal.distances, "Reversal distances to probe")
      ->delimiter(',')
      ->required();
  calibrate->add_option("--calibrate.repeats", cal.repeats)->capture_default_str();
  calibrate->add_option("--calibrate.reads", cal.reads)->capture_default_str();
  calibrate->add_option("--seed", cal.seed)->capture_default_str();
  calibrate->add_option("--out", cal.out, "Output directory");
  calibrate->add_option("--threads", cal.threads)->capture_default_str();

  SolveQuboOpts sq;
  CLI::App* solve_qubo = app.add_subcommand("solve-qubo", "Solve a QUBO text file");
  solve_qubo->add_option("file", sq.file, "QUBO file (header 'N offset', lines 'i j value')")
      ->required();
  solve_qubo->add_option("--kind", sq.kind, "exact, fa, ra or ra+fa")->capture_default_str();
  solve_qubo->add_option("--initial", sq.initial, "Initial bit string for ra");
  add_anneal_options(solve_qubo, sq.anneal);
  solve_qubo->add_option("--exact.time_limit", sq.exact_time_limit)->capture_default_str();
  solve_qubo->add_option("--seed", sq.seed)->capture_default_str();
  solve_qubo->add_option("--out", sq.out, "Also write the JSON result to this directory");
  solve_qubo->add_option("--threads", sq.threads)->capture_default_str();

  // --config is handled before CLI11 sees the arguments
  for (CLI::App* sub : {factorize, gen_synth, calibrate, solve_qubo}) {
    static std::string ignored;
    sub->add_option("--config", ignored, "Key=value config file; flags override");
  }
  std::vector<std::string> args(argv + 1, argv + argc);
  args = expand_config(args);
  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    if (factorize->parsed()) {
      apply_preset(factorize, fac);
      return cmd_factorize(fac);
    }
    if (gen_synth->parsed()) return cmd_gen_synth(gen);
    if (calibrate->parsed()) return cmd_calibrate(cal);
    if (solve_qubo->parsed()) return cmd_solve_qubo(sq);
  } catch (const std::exception& e) {
    die(1, e.what());
  }
  return 0;
}
