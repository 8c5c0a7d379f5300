#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace knub {

using VertexId = std::uint32_t;
using EdgeId = std::uint32_t;
using Label = std::int64_t;

/// Simple undirected graph in CSR form with sorted adjacency.
///
/// Internal ids are 0..n-1. Every vertex carries a label (the id used in the
/// source file, or the parent's label for derived subgraphs). Edges have ids
/// 0..m-1 in lexicographic order of their normalized (min, max) endpoints.
/// Immutable once built.
class Graph {
 public:
  Graph() = default;

  /// Builds from an arbitrary pair list: duplicates collapse, self-loops drop.
  /// Labels default to the internal ids.
  static Graph from_edges(VertexId n, std::span<const std::pair<VertexId, VertexId>> edges,
                          std::vector<Label> labels = {});

  VertexId order() const { return static_cast<VertexId>(labels_.size()); }
  std::size_t size() const { return edges_.size(); }
  bool empty() const { return labels_.empty(); }

  std::span<const VertexId> neighbors(VertexId v) const {
    return {targets_.data() + offsets_[v], targets_.data() + offsets_[v + 1]};
  }
  /// Edge ids parallel to neighbors(v).
  std::span<const EdgeId> incident_edges(VertexId v) const {
    return {slot_edges_.data() + offsets_[v], slot_edges_.data() + offsets_[v + 1]};
  }
  std::size_t degree(VertexId v) const { return offsets_[v + 1] - offsets_[v]; }

  bool adjacent(VertexId u, VertexId v) const;
  std::optional<EdgeId> edge_id(VertexId u, VertexId v) const;
  std::pair<VertexId, VertexId> edge(EdgeId e) const { return edges_[e]; }
  std::span<const std::pair<VertexId, VertexId>> edges() const { return edges_; }

  Label label(VertexId v) const { return labels_[v]; }
  std::span<const Label> labels() const { return labels_; }

  std::size_t max_degree() const;

 private:
  std::vector<std::size_t> offsets_{0};
  std::vector<VertexId> targets_;
  std::vector<EdgeId> slot_edges_;
  std::vector<std::pair<VertexId, VertexId>> edges_;
  std::vector<Label> labels_;
};

/// A derived graph plus the parent internal id of each of its vertices.
struct Subgraph {
  Graph graph;
  std::vector<VertexId> to_parent;
};

/// Subgraph on the kept vertices, keeping only the kept edges between them.
/// keep_edge may be empty, meaning every edge is kept (induced subgraph).
Subgraph edge_subgraph(const Graph& g, std::span<const std::uint8_t> keep_vertex,
                       std::span<const std::uint8_t> keep_edge);

Subgraph induced_subgraph(const Graph& g, std::span<const std::uint8_t> keep_vertex);

/// 2m / (n^2 - n). Throws DomainError when n < 2.
double density(const Graph& g);

bool is_complete(const Graph& g);

/// Whether the vertex set induces a complete subgraph of g.
bool is_clique(const Graph& g, std::span<const VertexId> vertices);

/// Core number of every vertex (bucket-queue peeling, O(n + m)).
std::vector<std::uint32_t> core_numbers(const Graph& g);

/// Vertex order in which the peeling removes vertices (a degeneracy order).
std::vector<VertexId> degeneracy_order(const Graph& g);

/// Maximal induced subgraph with minimum degree >= c. May be disconnected or empty.
Subgraph c_core(const Graph& g, std::uint32_t c);

/// The nonempty c-core with the largest c (empty only for the empty graph).
Subgraph main_core(const Graph& g);

// Text formats.

enum class EdgeListFormat { snap, mtx };

EdgeListFormat parse_format(std::string_view name);

/// snap-txt: one "u v" pair per line (whitespace or comma separated), `#`/`%`
/// comment lines. mtx: MatrixMarket coordinate header, size line, 1-based pairs.
/// External ids are remapped to 0..n-1 in ascending order and kept as labels.
Graph parse_edge_list(std::string_view text, EdgeListFormat format);

Graph read_edge_list(const std::string& path, EdgeListFormat format);

/// snap-txt with a `#` metadata header; vertices are written by label.
std::string write_snap(const Graph& g, std::string_view source = {});

void write_snap_file(const Graph& g, const std::string& path, std::string_view source = {});

std::string read_file(const std::string& path);

}  // namespace knub
