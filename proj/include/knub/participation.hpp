#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "knub/graph.hpp"

namespace knub {

using Count = std::uint64_t;

/// r-clique census of one graph: total count, per-vertex participation VP_r
/// and per-edge participation EP_r.
///
/// `ep` is indexed by the owning graph's edge ids, so a normalized (min, max)
/// pair maps to its count through Graph::edge_id; pairs that are not edges
/// have participation 0.
struct CliqueStats {
  int r = 0;
  Count total = 0;
  std::vector<Count> vp;
  std::vector<Count> ep;

  Count edge_participation(const Graph& g, VertexId u, VertexId v) const;

  friend bool operator==(const CliqueStats&, const CliqueStats&) = default;
};

struct CountOptions {
  /// Worker threads; 0 means std::thread::hardware_concurrency().
  unsigned threads = 1;
  /// Counting gives up with BudgetExhausted once this much time has passed.
  std::optional<std::chrono::milliseconds> time_budget;
};

/// Lists every r-clique once (degeneracy-ordered neighborhoods, bitset
/// intersection) and accumulates total, VP_r and EP_r exactly.
/// Throws DomainError for r < 2.
CliqueStats count_r_cliques(const Graph& g, int r, const CountOptions& options = {});

struct ParticipationMaxima {
  Count max_vp = 0;
  Count max_ep = 0;
  friend bool operator==(const ParticipationMaxima&, const ParticipationMaxima&) = default;
};

ParticipationMaxima max_participation(const CliqueStats& stats);

/// Throws ConsistencyError when the stats cannot belong to g.
void check_consistent(const Graph& g, const CliqueStats& stats);

// Persisted form: {"r", "total", "n", "m", "vp": [...], "ep": [[u, v, count], ...]}
// with internal vertex ids and only nonzero ep entries.
std::string stats_to_json(const Graph& g, const CliqueStats& stats, const std::string& graph_hash = {});
CliqueStats stats_from_json(const Graph& g, const std::string& text, std::string* graph_hash = nullptr);

}  // namespace knub
