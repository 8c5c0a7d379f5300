#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "fixtures.hpp"
#include "knub/error.hpp"
#include "knub/graph.hpp"
#include "oracle.hpp"

using namespace knub;

namespace {

std::set<std::pair<Label, Label>> labelled_edges(const Graph& g) {
  std::set<std::pair<Label, Label>> out;
  for (auto [u, v] : g.edges()) out.emplace(std::min(g.label(u), g.label(v)), std::max(g.label(u), g.label(v)));
  return out;
}

Graph star(std::uint32_t leaves) {
  std::vector<std::pair<VertexId, VertexId>> e;
  for (VertexId v = 1; v <= leaves; ++v) e.emplace_back(0, v);
  return Graph::from_edges(leaves + 1, e);
}

}  // namespace

TEST_CASE("from_edges normalizes pairs") {
  std::vector<std::pair<VertexId, VertexId>> e{{2, 1}, {1, 2}, {0, 0}, {3, 0}, {1, 3}};
  Graph g = Graph::from_edges(4, e);
  CHECK(g.order() == 4);
  CHECK(g.size() == 3);
  CHECK(g.edge(0) == std::pair<VertexId, VertexId>{0, 3});
  CHECK(g.edge(1) == std::pair<VertexId, VertexId>{1, 2});
  CHECK(g.edge(2) == std::pair<VertexId, VertexId>{1, 3});
  CHECK(g.adjacent(3, 1));
  CHECK_FALSE(g.adjacent(0, 0));
  CHECK(g.edge_id(3, 1) == 2u);
  CHECK_FALSE(g.edge_id(0, 2).has_value());
  CHECK(g.degree(1) == 2);
  CHECK(g.max_degree() == 2);
  for (VertexId v = 0; v < g.order(); ++v) {
    auto nb = g.neighbors(v);
    CHECK(std::is_sorted(nb.begin(), nb.end()));
    auto ids = g.incident_edges(v);
    for (std::size_t i = 0; i < nb.size(); ++i) {
      auto [a, b] = g.edge(ids[i]);
      CHECK(((a == v && b == nb[i]) || (b == v && a == nb[i])));
    }
  }
  CHECK_THROWS_AS(Graph::from_edges(2, std::vector<std::pair<VertexId, VertexId>>{{0, 5}}), DomainError);
}

TEST_CASE("snap parsing") {
  SUBCASE("worked example") {
    Graph g = fixtures::worked_example();
    CHECK(g.order() == 14);
    CHECK(g.size() == 27);
  }
  SUBCASE("comments, separators, duplicates and sparse ids") {
    Graph g = parse_edge_list("# header\n% other\n\n10 30\n30,10\n30\t20\n20 20\n", EdgeListFormat::snap);
    CHECK(g.order() == 3);
    CHECK(g.size() == 2);
    CHECK(g.label(0) == 10);
    CHECK(g.label(1) == 20);
    CHECK(g.label(2) == 30);
    CHECK(g.adjacent(0, 2));
    CHECK(g.adjacent(1, 2));
  }
  SUBCASE("bad token reports its line") {
    try {
      parse_edge_list("1 2\n# fine\n3 x\n", EdgeListFormat::snap);
      FAIL("expected a parse error");
    } catch (const ParseError& e) {
      CHECK(e.line() == 3);
    }
  }
  SUBCASE("wrong field count") {
    CHECK_THROWS_AS(parse_edge_list("1 2 3\n", EdgeListFormat::snap), ParseError);
    CHECK_THROWS_AS(parse_edge_list("1\n", EdgeListFormat::snap), ParseError);
  }
  SUBCASE("no edges") { CHECK_THROWS_AS(parse_edge_list("# nothing\n", EdgeListFormat::snap), ParseError); }
}

TEST_CASE("mtx parsing") {
  Graph g = parse_edge_list(
      "%%MatrixMarket matrix coordinate pattern symmetric\n% c\n5 5 3\n1 2\n2 3 1.0\n3 1\n", EdgeListFormat::mtx);
  CHECK(g.order() == 5);
  CHECK(g.size() == 3);
  CHECK(g.label(0) == 1);
  CHECK(g.degree(3) == 0);
  CHECK(is_complete(induced_subgraph(g, std::vector<std::uint8_t>{1, 1, 1, 0, 0}).graph));

  CHECK_THROWS_AS(parse_edge_list("1 2\n", EdgeListFormat::mtx), ParseError);
  CHECK_THROWS_AS(parse_edge_list("%%MatrixMarket matrix array real general\n2 2\n", EdgeListFormat::mtx), ParseError);
  CHECK_THROWS_AS(parse_edge_list("%%MatrixMarket matrix coordinate pattern general\n3 4 1\n1 2\n", EdgeListFormat::mtx),
                  ParseError);
  CHECK_THROWS_AS(parse_edge_list("%%MatrixMarket matrix coordinate pattern general\n3 3 1\n1 4\n", EdgeListFormat::mtx),
                  ParseError);
  CHECK(parse_format("snap") == EdgeListFormat::snap);
  CHECK(parse_format("mtx") == EdgeListFormat::mtx);
  CHECK_THROWS_AS(parse_format("gml"), DomainError);
}

TEST_CASE("snap round trip keeps labels and edges") {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 20; ++t) {
    Graph g = oracle::random_graph(20, 0.3, rng);
    if (g.size() == 0) continue;
    auto sub = induced_subgraph(g, std::vector<std::uint8_t>(g.order(), 1));
    std::string text = write_snap(sub.graph, "test");
    CHECK(text.rfind("# n: ", 0) == 0);
    Graph h = parse_edge_list(text, EdgeListFormat::snap);
    CHECK(labelled_edges(h) == labelled_edges(g));
  }
  CHECK_THROWS_AS(read_file("/nonexistent/file"), IoError);
}

TEST_CASE("density and completeness") {
  CHECK(density(oracle::complete_graph(6)) == doctest::Approx(1.0));
  CHECK(density(star(4)) == doctest::Approx(4.0 / 10.0));
  CHECK_THROWS_AS(density(Graph::from_edges(1, {})), DomainError);
  CHECK(is_complete(oracle::complete_graph(5)));
  CHECK_FALSE(is_complete(star(3)));
  Graph f = fixtures::worked_example();
  CHECK(is_clique(f, std::vector<VertexId>{8, 11, 12, 13}));
  CHECK_FALSE(is_clique(f, std::vector<VertexId>{5, 6, 8, 11}));
}

TEST_CASE("c_core examples") {
  Graph f = fixtures::worked_example();
  auto core3 = c_core(f, 3);
  CHECK(oracle::labels_of(f, core3.to_parent) == std::set<Label>{0, 1, 2, 3, 4, 5, 6, 7, 8, 11, 12, 13});
  auto k5 = c_core(oracle::complete_graph(5), 4);
  CHECK(k5.graph.order() == 5);
  CHECK(k5.graph.size() == 10);
  CHECK(c_core(star(5), 2).graph.empty());
  CHECK(main_core(f).graph.order() == 12);
  CHECK(main_core(Graph{}).graph.empty());
}

TEST_CASE("c_core matches repeated scanning and its algebra") {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 100; ++t) {
    Graph g = oracle::random_graph(5 + rng() % 26, 0.05 + 0.1 * (rng() % 9), rng);
    auto cores = core_numbers(g);
    for (std::uint32_t c = 0; c <= 12; ++c) {
      auto core = c_core(g, c);
      std::set<std::uint32_t> got(core.to_parent.begin(), core.to_parent.end());
      CHECK(got == oracle::naive_core(g, c));
      for (VertexId v = 0; v < core.graph.order(); ++v) CHECK(core.graph.degree(v) >= c);
      for (VertexId v = 0; v < g.order(); ++v) CHECK((cores[v] >= c) == (got.count(v) == 1));

      auto twice = c_core(core.graph, c);
      CHECK(twice.graph.order() == core.graph.order());
      auto next = c_core(g, c + 1);
      for (auto v : next.to_parent) CHECK(got.count(v) == 1);
    }
  }
}

TEST_CASE("degeneracy order leaves each vertex at most its core number of later neighbors") {
  std::mt19937_64 rng(9);
  for (int t = 0; t < 30; ++t) {
    Graph g = oracle::random_graph(25, 0.3, rng);
    auto order = degeneracy_order(g);
    auto cores = core_numbers(g);
    REQUIRE(order.size() == g.order());
    std::vector<std::size_t> pos(g.order());
    for (std::size_t i = 0; i < order.size(); ++i) pos[order[i]] = i;
    std::uint32_t degeneracy = 0;
    for (VertexId v = 0; v < g.order(); ++v) {
      degeneracy = std::max(degeneracy, cores[v]);
      std::size_t later = 0;
      for (auto w : g.neighbors(v)) later += pos[w] > pos[v];
      CHECK(later <= cores[v]);
    }
    CHECK(c_core(g, degeneracy).graph.order() > 0);
    CHECK(c_core(g, degeneracy + 1).graph.empty());
  }
}

TEST_CASE("edge_subgraph keeps selected edges and maps back") {
  Graph f = fixtures::worked_example();
  std::vector<std::uint8_t> keep_v(f.order(), 1);
  keep_v[5] = 0;
  std::vector<std::uint8_t> keep_e(f.size(), 1);
  keep_e[*f.edge_id(8, 11)] = 0;
  auto s = edge_subgraph(f, keep_v, keep_e);
  CHECK(s.graph.order() == 13);
  for (auto [u, v] : s.graph.edges()) {
    VertexId pu = s.to_parent[u], pv = s.to_parent[v];
    CHECK(f.adjacent(pu, pv));
    CHECK_FALSE((std::min(pu, pv) == 8 && std::max(pu, pv) == 11));
    CHECK(s.graph.label(u) == f.label(pu));
  }
  CHECK(s.graph.size() == f.size() - f.degree(5) - 1);
}
