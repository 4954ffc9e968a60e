#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "dsicut/solver.hpp"

namespace dsicut {

/// Comma-separated numbers; "a,b,...,z" expands the arithmetic progression
/// with step b - a up to z.
std::vector<double> parse_value_list(const std::string& text);

/// DSBM grid, e.g. "p=q=0.02;eta=0,0.05,...,0.3;n=200;seeds=5".
/// Keys: p, q, p=q, eta, n, seeds (count K, meaning seeds 1..K),
/// seed (explicit list), oracle (0 or 1).
struct DsbmGrid {
  std::vector<double> p, q;
  bool p_equals_q = false;
  std::vector<double> eta;
  std::vector<Index> n;
  std::vector<std::uint64_t> seeds;
  bool oracle = false;
};

DsbmGrid parse_dsbm_grid(const std::string& spec);

struct BenchConfig {
  SolverConfig solver;
  int threads = 1;         // concurrent cells
  bool oracle = false;
  Index oracle_limit = 20;
  bool timing = true;
};

struct BenchRow {
  std::string instance;
  std::string params;
  double dsi_phi = 0.0;
  double sweep_phi = 0.0;
  std::optional<double> oracle_phi;
  std::optional<double> planted_phi;
  int iters = 0;
  double wall_time = 0.0;
  std::string certificate;
  std::string initialization;
};

/// Rows in grid order (p, q, eta, n, seed; last key fastest), independent of
/// the number of threads.
std::vector<BenchRow> run_dsbm_bench(const DsbmGrid& grid, const BenchConfig& cfg);

struct RealInstance {
  std::string name;
  std::filesystem::path path;
};

/// Each network is restricted to its largest weak component first.
std::vector<BenchRow> run_real_bench(const std::vector<RealInstance>& inputs, const BenchConfig& cfg);

std::string bench_csv(const std::vector<BenchRow>& rows);

}  // namespace dsicut
