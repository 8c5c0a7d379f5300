#include "knub/nub.hpp"

#include <json.hpp>

#include "knub/error.hpp"
#include "knub/simd/bitops.hpp"

namespace knub {

Thresholds participation_thresholds(std::uint32_t k, int r) {
  if (r < 2) throw DomainError("participation order r must be at least 2");
  if (static_cast<std::uint32_t>(r) > k) throw DomainError("participation order r must not exceed k");
  const auto ur = static_cast<std::uint64_t>(r);
  return {binomial(k - 2, ur - 2), binomial(k - 1, ur - 1)};
}

ReductionReport k_nub(const Graph& g, const CliqueStats& stats, ReductionParams params) {
  Thresholds t = participation_thresholds(params.k, params.r);
  check_consistent(g, stats);
  if (stats.r != params.r) throw ConsistencyError("stats were counted for a different r");

  ReductionReport report;
  report.e_bound = t.e_bound;
  report.v_bound = t.v_bound;
  const VertexId n = g.order();

  // Step 1: edges below the edge-participation bound.
  std::vector<std::uint8_t> edge_alive(g.size());
  std::size_t edges_kept = simd::mark_at_least(stats.ep, saturate_u64(t.e_bound), edge_alive);
  report.edges_removed_step1 = g.size() - edges_kept;

  // Step 2: vertices below the vertex-participation bound.
  std::vector<std::uint8_t> alive(n);
  std::size_t vertices_kept = simd::mark_at_least(stats.vp, saturate_u64(t.v_bound), alive);
  report.vertices_removed_step2 = n - vertices_kept;

  // Step 3: peel to the (k-1)-core over the remaining edges.
  const std::size_t min_degree = params.k - 1;
  std::vector<std::size_t> deg(n, 0);
  for (EdgeId e = 0; e < g.size(); ++e) {
    if (!edge_alive[e]) continue;
    auto [u, v] = g.edge(e);
    if (alive[u] && alive[v]) {
      ++deg[u];
      ++deg[v];
    } else {
      edge_alive[e] = 0;
    }
  }
  std::vector<VertexId> queue;
  for (VertexId v = 0; v < n; ++v)
    if (alive[v] && deg[v] < min_degree) {
      alive[v] = 0;
      queue.push_back(v);
    }
  for (std::size_t head = 0; head < queue.size(); ++head) {
    VertexId v = queue[head];
    auto nb = g.neighbors(v);
    auto ids = g.incident_edges(v);
    for (std::size_t i = 0; i < nb.size(); ++i) {
      if (!edge_alive[ids[i]]) continue;
      edge_alive[ids[i]] = 0;
      VertexId u = nb[i];
      if (alive[u] && --deg[u] < min_degree) {
        alive[u] = 0;
        queue.push_back(u);
      }
    }
  }
  report.vertices_removed_step3 = queue.size();
  report.survivor = edge_subgraph(g, alive, edge_alive);
  return report;
}

bool has_k_clique_prefilter(const Graph& g, std::uint32_t k) {
  if (k == 0) return true;
  std::size_t qualifying = 0;
  for (VertexId v = 0; v < g.order(); ++v)
    if (g.degree(v) + 1 >= k) ++qualifying;
  return qualifying >= k;
}

namespace {
nlohmann::json big_to_json(const BigInt& x) {
  if (x <= std::numeric_limits<std::uint64_t>::max()) return x.convert_to<std::uint64_t>();
  return x.str();
}
}  // namespace

std::string report_to_json(const ReductionReport& report, ReductionParams params,
                           const std::string& survivor_path) {
  nlohmann::json j;
  j["k"] = params.k;
  j["r"] = params.r;
  j["e_bound"] = big_to_json(report.e_bound);
  j["v_bound"] = big_to_json(report.v_bound);
  j["edges_removed_step1"] = report.edges_removed_step1;
  j["vertices_removed_step2"] = report.vertices_removed_step2;
  j["vertices_removed_step3"] = report.vertices_removed_step3;
  const Graph& s = report.survivor.graph;
  j["survivor_order"] = s.order();
  j["survivor_size"] = s.size();
  j["survivor_vertices"] = std::vector<Label>(s.labels().begin(), s.labels().end());
  if (!survivor_path.empty()) j["survivor_file"] = survivor_path;
  return j.dump(2);
}

}  // namespace knub
