#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "knub/clique_search.hpp"
#include "knub/graph.hpp"
#include "knub/nub.hpp"
#include "knub/participation.hpp"

namespace knub {

/// Largest k >= r with C(k, r) <= total; r - 1 when total is 0 (no r-clique).
std::uint32_t initial_k_upper(Count total, int r);

struct RefineOptions {
  /// Also require at least k' vertices with VP_r >= C(k'-1, r-1). When false
  /// only the edge-participation maximum is used.
  bool vertex_condition = true;
};

/// Largest k' <= k with max EP_r >= C(k'-2, r-2) (and, optionally, at least k'
/// vertices with VP_r >= C(k'-1, r-1)); r - 1 when no k' >= r qualifies.
std::uint32_t refine_k_by_participation(const CliqueStats& stats, std::uint32_t k,
                                        const RefineOptions& options = {});

/// Largest k in [r, upper] whose k-nub is nonempty, found by bisection
/// (nubs shrink as k grows). 0 when g has no r-clique.
std::uint32_t tightest_nonempty_k(const Graph& g, const CliqueStats& stats, std::uint32_t upper);

/// floor((l + k) / 2). Throws DomainError when l >= k.
std::uint32_t next_k(std::size_t l, std::uint32_t k);

enum class OutcomeCase { empty, under_k, exactly_k, over_k };

const char* to_string(OutcomeCase c);

/// What one reduction at candidate k implies about the clique number.
struct Outcome {
  OutcomeCase kind = OutcomeCase::empty;
  bool survivor_complete = false;
  /// Proven omega < k.
  bool below_k = false;
  /// Proven omega == k (survivor is exactly a k-clique).
  bool exact_k = false;
  /// Lower bound from a clique found in the survivor.
  std::size_t lower = 0;
};

/// l_prime is the size of a clique found in the survivor (0 when empty).
Outcome classify_outcome(const Graph& survivor, std::uint32_t k, std::size_t l_prime);

struct SearchStep {
  std::string phase;  // "bisect" (emptiness probe) or "solve"
  std::uint32_t k = 0;
  OutcomeCase outcome = OutcomeCase::empty;
  std::size_t lower = 0;
  std::size_t upper = 0;
  std::size_t survivor_order = 0;
  std::size_t survivor_size = 0;
  double elapsed_seconds = 0;
};

struct KSearchState {
  std::size_t l = 0;       // size of the best witness
  std::size_t upper = 0;   // proven upper bound on omega
  std::uint32_t k = 0;     // current candidate
  std::vector<VertexId> witness;
  std::vector<SearchStep> history;
};

struct DriverOptions {
  int r = 3;
  CountOptions counting;
  /// Budget for each exact-solver call.
  SolverBudget solver;
  /// Wall-clock cap on the whole search after counting.
  std::optional<std::chrono::milliseconds> total_time;
  bool vertex_condition = true;
  /// Re-count participation on each survivor and reduce again until it stops
  /// shrinking.
  bool recount = false;
  /// First candidate for the solving phase instead of the tightest nonempty nub.
  std::optional<std::uint32_t> k_override;
  /// Precomputed stats for g with order r; counted when absent.
  const CliqueStats* stats = nullptr;
};

struct DriverRun {
  CliqueResult result;
  KSearchState state;
  Count total = 0;
  std::uint32_t k_initial = 0;
  std::uint32_t k_refined = 0;
  /// Largest k whose nub is nonempty (0 when the graph has no r-clique).
  std::uint32_t k_tight = 0;
  ReductionReport tight_report;
  double count_seconds = 0;
  double reduction_seconds = 0;  // the k_nub call at k_tight
  double solve_seconds = 0;      // everything after the bisection
  /// True when every solver call finished within budget.
  bool solves_complete = true;
};

/// Count r-cliques, bound k, bisect for the tightest nonempty nub, then solve
/// reduced graphs with shrinking k until the bounds meet or the budget ends.
/// Throws BudgetExhausted when counting does not finish.
DriverRun solve_with_reduction(const Graph& g, const DriverOptions& options);

std::string trace_to_json(const Graph& g, const DriverRun& run);

}  // namespace knub
