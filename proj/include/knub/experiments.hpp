#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "knub/clique_search.hpp"
#include "knub/graph.hpp"
#include "knub/participation.hpp"

namespace knub {

/// Philox4x32-10 (Salmon et al., Random123): a keyed bijection of a 128-bit
/// counter. Stateless; the same (counter, key) always yields the same block.
class Philox4x32 {
 public:
  using Counter = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  explicit Philox4x32(Key key) : key_(key) {}
  explicit Philox4x32(std::uint64_t seed)
      : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)} {}

  Counter operator()(Counter counter) const;

  /// Uniform double in [0, 1) from the first two output words of block `index`.
  double uniform(std::uint64_t index) const;

 private:
  Key key_;
};

/// G(n, p): pair {i, j} (i < j) with row-major pair index t is an edge iff
/// Philox4x32-10 keyed by `seed`, applied to counter (t_lo, t_hi, 0, 0),
/// gives a uniform below p. (n, p, seed) fully determines the graph; isolated
/// vertices are kept.
Graph gen_erdos_renyi(std::uint32_t n, double p, std::uint64_t seed);

/// Share of the main core's vertices that lie in the k-nub, in [0, 1].
double compare_core_vs_nub(const Graph& g, const CliqueStats& stats, std::uint32_t k, int r);

struct BenchConfig {
  std::vector<std::uint32_t> orders{200, 500, 1000};
  std::vector<double> densities{0.1, 0.3, 0.4};
  std::uint32_t replicates = 10;
  int r = 3;
  std::uint64_t seed = 1;
  SolverBudget budget;
  bool solve_original = false;
  /// Record wall-clock columns. Off makes the CSV a pure function of the config.
  bool timings = true;
  unsigned threads = 1;
};

/// Throws DomainError on an invalid config.
void validate(const BenchConfig& cfg);

BenchConfig bench_config_from_json(const std::string& text);

struct TimeCell {
  enum class State { not_run, measured, timeout };
  State state = State::not_run;
  double seconds = 0;

  static TimeCell measured(double s) { return {State::measured, s}; }
  static TimeCell timeout() { return {State::timeout, 0}; }
};

struct BenchRow {
  std::uint32_t n = 0;
  double p = 0;
  std::uint64_t seed = 0;
  TimeCell reduction_time;
  std::size_t survivor_order = 0;
  double percent_reduced = 0;
  std::uint32_t k_used = 0;
  TimeCell solve_time_original;
  TimeCell solve_time_reduced;
  std::size_t clique_size = 0;
  std::size_t core_order = 0;
};

/// Rows in (n, p, replicate) order; replicate i uses seed cfg.seed + i.
std::vector<BenchRow> run_er_benchmark(const BenchConfig& cfg);

std::string rows_to_csv(const std::vector<BenchRow>& rows);

/// Mean and sample standard deviation of every numeric column per (n, p) cell.
std::string aggregate_to_csv(const std::vector<BenchRow>& rows);

}  // namespace knub
