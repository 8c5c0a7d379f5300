#include <doctest.h>

#include <random>

#include <json.hpp>

#include "fixtures.hpp"
#include "knub/clique_search.hpp"
#include "knub/error.hpp"
#include "knub/experiments.hpp"
#include "oracle.hpp"

using namespace knub;

namespace {

bool is_maximal(const Graph& g, const std::vector<VertexId>& c) {
  for (VertexId w = 0; w < g.order(); ++w) {
    if (std::find(c.begin(), c.end(), w) != c.end()) continue;
    bool all = true;
    for (VertexId x : c) all = all && g.adjacent(w, x);
    if (all) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("exact solver on fixed graphs") {
  Graph f = fixtures::worked_example();
  auto res = max_clique_exact(f);
  CHECK(res.kind == ResultKind::exact);
  CHECK(res.lower == 4);
  CHECK(res.upper == 4);
  CHECK(is_clique(f, res.witness));

  CHECK(max_clique_exact(oracle::complete_graph(10)).lower == 10);
  CHECK(max_clique_exact(Graph::from_edges(5, {})).lower == 1);
  CHECK(max_clique_exact(Graph{}).lower == 0);

  auto doc = nlohmann::json::parse(result_to_json(f, res));
  CHECK(doc["kind"] == "exact");
  CHECK(doc["witness"].size() == 4);
}

TEST_CASE("brute-force oracle") {
  CHECK(brute_force_max_clique(fixtures::worked_example()).size == 4);
  CHECK(brute_force_max_clique(Graph::from_edges(3, {})).size == 1);
  CHECK_THROWS_AS(brute_force_max_clique(oracle::complete_graph(31)), DomainError);
}

TEST_CASE("exact solver matches brute force") {
  std::mt19937_64 rng(101);
  for (int t = 0; t < 300; ++t) {
    Graph g = oracle::random_graph(1 + rng() % 25, 0.1 * (1 + rng() % 9), rng);
    auto res = max_clique_exact(g);
    auto bf = brute_force_max_clique(g);
    CHECK(res.kind == ResultKind::exact);
    CHECK(res.lower == bf.size);
    CHECK(res.lower == oracle::naive_omega(g));
    CHECK(res.witness.size() == res.lower);
    CHECK(is_clique(g, res.witness));
  }
}

TEST_CASE("search above a floor") {
  std::mt19937_64 rng(103);
  for (int t = 0; t < 150; ++t) {
    Graph g = oracle::random_graph(5 + rng() % 21, 0.1 * (1 + rng() % 9), rng);
    auto omega = oracle::naive_omega(g);
    for (std::size_t floor = 0; floor <= omega + 1; ++floor) {
      auto out = search_clique_above(g, floor, {});
      CHECK(out.complete);
      if (floor < omega) {
        CHECK(out.root_bound >= omega);
        CHECK(out.best.size() == omega);
        CHECK(is_clique(g, out.best));
      } else {
        CHECK(out.best.empty());
      }
    }
  }
}

TEST_CASE("greedy maximal clique") {
  Graph f = fixtures::worked_example();
  auto gc = greedy_maximal_clique(f);
  CHECK(is_clique(f, gc));
  CHECK(is_maximal(f, gc));
  CHECK(greedy_maximal_clique(Graph::from_edges(5, {})).size() == 1);

  std::vector<VertexId> seed{9, 10};
  auto seeded = greedy_maximal_clique(f, seed);
  CHECK(seeded.size() >= 2);
  CHECK(is_clique(f, seeded));

  std::mt19937_64 rng(107);
  for (int t = 0; t < 200; ++t) {
    Graph g = oracle::random_graph(1 + rng() % 30, 0.1 * (1 + rng() % 9), rng);
    auto c = greedy_maximal_clique(g);
    CHECK(is_clique(g, c));
    CHECK(is_maximal(g, c));
    CHECK(c.size() <= oracle::naive_omega(g));
    CHECK(c == greedy_maximal_clique(g));
  }
}

TEST_CASE("seeded greedy never returns less than the seed") {
  std::mt19937_64 rng(109);
  for (int t = 0; t < 100; ++t) {
    Graph g = oracle::random_graph(20, 0.5, rng);
    auto c = max_clique_exact(g).witness;
    auto out = greedy_maximal_clique(g, c);
    CHECK(out.size() >= c.size());
    CHECK(is_clique(g, out));
    CHECK(is_maximal(g, out));
  }
}

TEST_CASE("node budget gives a maximal result with a valid upper bound") {
  Graph g = gen_erdos_renyi(150, 0.6, 4);
  SolverBudget b;
  b.max_nodes = 20;
  auto res = max_clique_exact(g, b);
  CHECK(res.kind == ResultKind::maximal);
  CHECK(is_clique(g, res.witness));
  CHECK(is_maximal(g, res.witness));
  CHECK(res.lower <= res.upper);
  auto full = max_clique_exact(g);
  REQUIRE(full.kind == ResultKind::exact);
  CHECK(full.lower <= res.upper);
  CHECK(full.lower >= res.lower);
}
