#include "knub/graph.hpp"

#include <algorithm>
#include <numeric>

#include "knub/error.hpp"

namespace knub {

Graph Graph::from_edges(VertexId n, std::span<const std::pair<VertexId, VertexId>> edges,
                        std::vector<Label> labels) {
  Graph g;
  if (labels.empty()) {
    labels.resize(n);
    std::iota(labels.begin(), labels.end(), Label{0});
  } else if (labels.size() != n) {
    throw DomainError("label count does not match vertex count");
  }
  g.labels_ = std::move(labels);

  g.edges_.reserve(edges.size());
  for (auto [u, v] : edges) {
    if (u >= n || v >= n) throw DomainError("edge endpoint out of range");
    if (u == v) continue;
    g.edges_.emplace_back(std::min(u, v), std::max(u, v));
  }
  std::sort(g.edges_.begin(), g.edges_.end());
  g.edges_.erase(std::unique(g.edges_.begin(), g.edges_.end()), g.edges_.end());

  std::vector<std::size_t> deg(n, 0);
  for (auto [u, v] : g.edges_) {
    ++deg[u];
    ++deg[v];
  }
  g.offsets_.assign(static_cast<std::size_t>(n) + 1, 0);
  for (VertexId v = 0; v < n; ++v) g.offsets_[v + 1] = g.offsets_[v] + deg[v];
  g.targets_.resize(g.offsets_[n]);
  g.slot_edges_.resize(g.offsets_[n]);

  // Edges are sorted by (u, v), so filling in edge order leaves each
  // neighbor list sorted: lower neighbors arrive first (as the "v" side of
  // earlier edges), then higher neighbors in increasing order.
  std::vector<std::size_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
  for (EdgeId e = 0; e < g.edges_.size(); ++e) {
    auto [u, v] = g.edges_[e];
    g.targets_[cursor[v]] = u;
    g.slot_edges_[cursor[v]++] = e;
  }
  for (EdgeId e = 0; e < g.edges_.size(); ++e) {
    auto [u, v] = g.edges_[e];
    g.targets_[cursor[u]] = v;
    g.slot_edges_[cursor[u]++] = e;
  }
  return g;
}

bool Graph::adjacent(VertexId u, VertexId v) const { return edge_id(u, v).has_value(); }

std::optional<EdgeId> Graph::edge_id(VertexId u, VertexId v) const {
  if (u >= order() || v >= order() || u == v) return std::nullopt;
  if (degree(u) > degree(v)) std::swap(u, v);
  auto nb = neighbors(u);
  auto it = std::lower_bound(nb.begin(), nb.end(), v);
  if (it == nb.end() || *it != v) return std::nullopt;
  return incident_edges(u)[static_cast<std::size_t>(it - nb.begin())];
}

std::size_t Graph::max_degree() const {
  std::size_t best = 0;
  for (VertexId v = 0; v < order(); ++v) best = std::max(best, degree(v));
  return best;
}

Subgraph edge_subgraph(const Graph& g, std::span<const std::uint8_t> keep_vertex,
                       std::span<const std::uint8_t> keep_edge) {
  constexpr VertexId kAbsent = ~VertexId{0};
  std::vector<VertexId> new_id(g.order(), kAbsent);
  Subgraph out;
  std::vector<Label> labels;
  for (VertexId v = 0; v < g.order(); ++v) {
    if (!keep_vertex[v]) continue;
    new_id[v] = static_cast<VertexId>(out.to_parent.size());
    out.to_parent.push_back(v);
    labels.push_back(g.label(v));
  }
  std::vector<std::pair<VertexId, VertexId>> kept;
  for (EdgeId e = 0; e < g.size(); ++e) {
    if (!keep_edge.empty() && !keep_edge[e]) continue;
    auto [u, v] = g.edge(e);
    if (new_id[u] == kAbsent || new_id[v] == kAbsent) continue;
    kept.emplace_back(new_id[u], new_id[v]);
  }
  out.graph = Graph::from_edges(static_cast<VertexId>(out.to_parent.size()), kept, std::move(labels));
  return out;
}

Subgraph induced_subgraph(const Graph& g, std::span<const std::uint8_t> keep_vertex) {
  return edge_subgraph(g, keep_vertex, {});
}

double density(const Graph& g) {
  const double n = g.order();
  if (g.order() < 2) throw DomainError("density needs at least two vertices");
  return 2.0 * static_cast<double>(g.size()) / (n * n - n);
}

bool is_complete(const Graph& g) {
  const std::size_t n = g.order();
  return g.size() == n * (n - (n > 0 ? 1 : 0)) / 2;
}

bool is_clique(const Graph& g, std::span<const VertexId> vertices) {
  for (std::size_t i = 0; i < vertices.size(); ++i)
    for (std::size_t j = i + 1; j < vertices.size(); ++j)
      if (!g.adjacent(vertices[i], vertices[j])) return false;
  return true;
}

namespace {

// Batagelj–Zaversnik bucket peeling. Fills core numbers and the removal order.
void peel(const Graph& g, std::vector<std::uint32_t>& core, std::vector<VertexId>& order) {
  const VertexId n = g.order();
  core.assign(n, 0);
  order.assign(n, 0);
  if (n == 0) return;
  const std::size_t max_deg = g.max_degree();
  std::vector<std::size_t> deg(n), bin(max_deg + 1, 0), pos(n);
  for (VertexId v = 0; v < n; ++v) {
    deg[v] = g.degree(v);
    ++bin[deg[v]];
  }
  std::size_t start = 0;
  for (auto& b : bin) {
    std::size_t count = b;
    b = start;
    start += count;
  }
  for (VertexId v = 0; v < n; ++v) {
    pos[v] = bin[deg[v]]++;
    order[pos[v]] = v;
  }
  for (std::size_t d = max_deg; d > 0; --d) bin[d] = bin[d - 1];
  bin[0] = 0;
  for (std::size_t i = 0; i < n; ++i) {
    VertexId v = order[i];
    core[v] = static_cast<std::uint32_t>(deg[v]);
    for (VertexId u : g.neighbors(v)) {
      if (deg[u] > deg[v]) {
        std::size_t du = deg[u];
        std::size_t pu = pos[u];
        std::size_t pw = bin[du];
        VertexId w = order[pw];
        if (u != w) {
          pos[u] = pw;
          order[pu] = w;
          pos[w] = pu;
          order[pw] = u;
        }
        ++bin[du];
        --deg[u];
      }
    }
  }
}

}  // namespace

std::vector<std::uint32_t> core_numbers(const Graph& g) {
  std::vector<std::uint32_t> core;
  std::vector<VertexId> order;
  peel(g, core, order);
  return core;
}

std::vector<VertexId> degeneracy_order(const Graph& g) {
  std::vector<std::uint32_t> core;
  std::vector<VertexId> order;
  peel(g, core, order);
  return order;
}

Subgraph c_core(const Graph& g, std::uint32_t c) {
  auto core = core_numbers(g);
  std::vector<std::uint8_t> keep(g.order());
  for (VertexId v = 0; v < g.order(); ++v) keep[v] = core[v] >= c ? 1 : 0;
  return induced_subgraph(g, keep);
}

Subgraph main_core(const Graph& g) {
  auto core = core_numbers(g);
  std::uint32_t top = 0;
  for (auto c : core) top = std::max(top, c);
  std::vector<std::uint8_t> keep(g.order());
  for (VertexId v = 0; v < g.order(); ++v) keep[v] = core[v] == top ? 1 : 0;
  return induced_subgraph(g, keep);
}

}  // namespace knub
