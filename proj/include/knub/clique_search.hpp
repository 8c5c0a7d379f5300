#pragma once

#include <chrono>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "knub/graph.hpp"

namespace knub {

struct SolverBudget {
  std::chrono::milliseconds max_time{std::chrono::hours(1)};
  std::uint64_t max_nodes = std::numeric_limits<std::uint64_t>::max();
};

enum class ResultKind { exact, maximal, interval };

const char* to_string(ResultKind kind);

/// A clique witness plus what is proven about the clique number:
/// lower == witness.size() <= omega <= upper, and lower == upper when exact.
struct CliqueResult {
  ResultKind kind = ResultKind::exact;
  std::size_t lower = 0;
  std::size_t upper = 0;
  std::vector<VertexId> witness;
};

/// Outcome of a search for cliques strictly larger than a floor.
struct SearchOutcome {
  /// Largest clique found above the floor; empty when none was found.
  std::vector<VertexId> best;
  /// True when the search space was exhausted, so `best` is a maximum clique
  /// whenever the clique number exceeds the floor, and none exists otherwise.
  bool complete = true;
  std::uint64_t nodes = 0;
  /// Greedy-colouring bound at the root; no clique is larger than this.
  std::size_t root_bound = 0;
};

/// Branch and bound over bit rows with greedy-colouring bounds. Only vertices
/// of core number >= floor take part; vertices are branched on in reverse
/// degeneracy order.
SearchOutcome search_clique_above(const Graph& g, std::size_t floor, const SolverBudget& budget);

/// Maximum clique. kind=exact within budget; on exhaustion kind=maximal with
/// the best clique found, extended to a maximal one.
CliqueResult max_clique_exact(const Graph& g, const SolverBudget& budget = {});

/// Greedy maximal clique: from every start vertex that could beat the current
/// best, grow a clique by scanning its neighbors in ascending id and adding
/// each one adjacent to everything chosen so far. Returns the largest found
/// (or the seed extended to a maximal clique if nothing beats it).
std::vector<VertexId> greedy_maximal_clique(const Graph& g, std::span<const VertexId> seed = {});

struct BruteForceResult {
  std::size_t size = 0;
  std::vector<VertexId> witness;
};

/// Exhaustive oracle for small graphs (n <= 30): tries sizes from n downward
/// and returns the first size that has a clique. Throws DomainError above 30.
BruteForceResult brute_force_max_clique(const Graph& g);

/// {"kind", "lower", "upper", "witness": [labels...]}
std::string result_to_json(const Graph& g, const CliqueResult& result);

}  // namespace knub
