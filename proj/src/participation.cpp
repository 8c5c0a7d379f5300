#include "knub/participation.hpp"

#include <algorithm>
#include <atomic>
#include <thread>

#include <json.hpp>

#include "knub/bitset.hpp"
#include "knub/error.hpp"

namespace knub {

namespace {

using Clock = std::chrono::steady_clock;

// Lists the r-cliques whose lowest-ranked vertex is a given root. The root's
// higher-ranked neighbors form a small local graph held as bit rows that only
// point "upward", so every clique is produced exactly once.
class ListingWorker {
 public:
  ListingWorker(const Graph& g, int r, const std::vector<std::uint32_t>& rank,
                std::optional<Clock::time_point> deadline, std::atomic<bool>& expired)
      : g_(g),
        r_(r),
        rank_(rank),
        deadline_(deadline),
        expired_(expired),
        mark_(g.order(), -1),
        vp_(g.order(), 0),
        ep_(g.size(), 0) {}

  void process(VertexId root) {
    collect_out_neighbors(root);
    d_ = local_.size();
    if (d_ + 1 < static_cast<std::size_t>(r_)) return;
    build_local_graph();

    cand_.assign(static_cast<std::size_t>(r_) * words_, 0);
    auto top = level(0);
    for (std::size_t i = 0; i < d_; ++i) set_bit(top, i);
    root_ = root;
    prefix_.clear();
    extend(0, d_);
  }

  Count total() const { return total_; }
  std::vector<Count>& vp() { return vp_; }
  std::vector<Count>& ep() { return ep_; }

 private:
  void collect_out_neighbors(VertexId v) {
    auto nb = g_.neighbors(v);
    auto ids = g_.incident_edges(v);
    order_.clear();
    for (std::size_t i = 0; i < nb.size(); ++i)
      if (rank_[nb[i]] > rank_[v]) order_.push_back({rank_[nb[i]], nb[i], ids[i]});
    std::sort(order_.begin(), order_.end(), [](const auto& a, const auto& b) { return a.rank < b.rank; });
    local_.clear();
    root_edge_.clear();
    for (const auto& o : order_) {
      local_.push_back(o.vertex);
      root_edge_.push_back(o.edge);
    }
  }

  void build_local_graph() {
    words_ = words_for(d_);
    up_.assign(d_ * words_, 0);
    pair_edge_.resize(d_ * d_);
    for (std::size_t i = 0; i < d_; ++i) mark_[local_[i]] = static_cast<std::int32_t>(i);
    for (std::size_t i = 0; i < d_; ++i) {
      auto nb = g_.neighbors(local_[i]);
      auto ids = g_.incident_edges(local_[i]);
      std::span<Word> row(up_.data() + i * words_, words_);
      for (std::size_t s = 0; s < nb.size(); ++s) {
        std::int32_t j = mark_[nb[s]];
        if (j > static_cast<std::int32_t>(i)) {
          set_bit(row, static_cast<std::size_t>(j));
          pair_edge_[i * d_ + static_cast<std::size_t>(j)] = ids[s];
        }
      }
    }
    for (std::size_t i = 0; i < d_; ++i) mark_[local_[i]] = -1;
  }

  std::span<Word> level(std::size_t depth) { return {cand_.data() + depth * words_, words_}; }

  bool stopped() {
    if (expired_.load(std::memory_order_relaxed)) return true;
    if (deadline_ && (++ticks_ & 1023) == 0 && Clock::now() > *deadline_) {
      expired_ = true;
      return true;
    }
    return false;
  }

  void extend(std::size_t depth, std::size_t count) {
    if (stopped()) return;
    const std::size_t need = static_cast<std::size_t>(r_) - 1 - prefix_.size();
    auto cand = level(depth);
    if (need == 1) {
      leaf(cand, count);
      return;
    }
    auto next = level(depth + 1);
    for_each_bit(std::span<const Word>(cand), [&](std::size_t i) {
      std::span<const Word> row(up_.data() + i * words_, words_);
      std::size_t c = simd::and_into(next, cand, row);
      if (c + 1 >= need) {
        prefix_.push_back(i);
        extend(depth + 1, c);
        prefix_.pop_back();
      }
    });
  }

  void leaf(std::span<const Word> cand, std::size_t count) {
    if (count == 0) return;
    total_ += count;
    vp_[root_] += count;
    for (std::size_t a = 0; a < prefix_.size(); ++a) {
      const std::size_t p = prefix_[a];
      vp_[local_[p]] += count;
      ep_[root_edge_[p]] += count;
      for (std::size_t b = a + 1; b < prefix_.size(); ++b) ep_[pair_edge_[p * d_ + prefix_[b]]] += count;
    }
    for_each_bit(cand, [&](std::size_t x) {
      ++vp_[local_[x]];
      ++ep_[root_edge_[x]];
      for (std::size_t p : prefix_) ++ep_[pair_edge_[p * d_ + x]];
    });
  }

  struct OutNeighbor {
    std::uint32_t rank;
    VertexId vertex;
    EdgeId edge;
  };

  const Graph& g_;
  int r_;
  const std::vector<std::uint32_t>& rank_;
  std::optional<Clock::time_point> deadline_;
  std::atomic<bool>& expired_;
  std::uint64_t ticks_ = 0;
  std::vector<std::int32_t> mark_;
  std::vector<OutNeighbor> order_;
  std::vector<VertexId> local_;
  std::vector<EdgeId> root_edge_;
  std::vector<EdgeId> pair_edge_;
  std::vector<Word> up_;
  std::vector<Word> cand_;
  std::vector<std::size_t> prefix_;
  std::size_t d_ = 0;
  std::size_t words_ = 0;
  VertexId root_ = 0;

  Count total_ = 0;
  std::vector<Count> vp_;
  std::vector<Count> ep_;
};

CliqueStats count_edges(const Graph& g) {
  CliqueStats s;
  s.r = 2;
  s.total = g.size();
  s.vp.resize(g.order());
  for (VertexId v = 0; v < g.order(); ++v) s.vp[v] = g.degree(v);
  s.ep.assign(g.size(), 1);
  return s;
}

}  // namespace

Count CliqueStats::edge_participation(const Graph& g, VertexId u, VertexId v) const {
  auto e = g.edge_id(u, v);
  return e ? ep[*e] : 0;
}

CliqueStats count_r_cliques(const Graph& g, int r, const CountOptions& options) {
  if (r < 2) throw DomainError("clique order r must be at least 2");
  if (r == 2) return count_edges(g);

  const auto start = Clock::now();
  auto order = degeneracy_order(g);
  std::vector<std::uint32_t> rank(g.order());
  for (std::size_t i = 0; i < order.size(); ++i) rank[order[i]] = static_cast<std::uint32_t>(i);

  unsigned threads = options.threads == 0 ? std::max(1U, std::thread::hardware_concurrency()) : options.threads;
  threads = std::min<unsigned>(threads, std::max<VertexId>(1, g.order()));

  std::optional<Clock::time_point> deadline;
  if (options.time_budget) deadline = start + *options.time_budget;
  std::atomic<VertexId> next{0};
  std::atomic<bool> expired{false};

  std::vector<ListingWorker> workers;
  workers.reserve(threads);
  for (unsigned t = 0; t < threads; ++t) workers.emplace_back(g, r, rank, deadline, expired);

  auto run = [&](ListingWorker& w) {
    constexpr VertexId kChunk = 64;
    while (!expired.load(std::memory_order_relaxed)) {
      VertexId begin = next.fetch_add(kChunk);
      if (begin >= g.order()) break;
      VertexId end = std::min<VertexId>(g.order(), begin + kChunk);
      for (VertexId v = begin; v < end && !expired.load(std::memory_order_relaxed); ++v) w.process(v);
      if (deadline && Clock::now() > *deadline) expired = true;
    }
  };

  if (threads == 1) {
    run(workers[0]);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back([&, t] { run(workers[t]); });
  }
  if (expired) throw BudgetExhausted("r-clique counting exceeded its time budget");

  CliqueStats stats;
  stats.r = r;
  stats.vp = std::move(workers[0].vp());
  stats.ep = std::move(workers[0].ep());
  stats.total = workers[0].total();
  for (unsigned t = 1; t < threads; ++t) {
    stats.total += workers[t].total();
    for (std::size_t v = 0; v < stats.vp.size(); ++v) stats.vp[v] += workers[t].vp()[v];
    for (std::size_t e = 0; e < stats.ep.size(); ++e) stats.ep[e] += workers[t].ep()[e];
  }
  return stats;
}

ParticipationMaxima max_participation(const CliqueStats& stats) {
  ParticipationMaxima m;
  for (Count c : stats.vp) m.max_vp = std::max(m.max_vp, c);
  for (Count c : stats.ep) m.max_ep = std::max(m.max_ep, c);
  return m;
}

void check_consistent(const Graph& g, const CliqueStats& stats) {
  if (stats.r < 2) throw ConsistencyError("stats carry an invalid clique order");
  if (stats.vp.size() != g.order()) {
    throw ConsistencyError("stats cover " + std::to_string(stats.vp.size()) + " vertices, graph has " +
                           std::to_string(g.order()));
  }
  if (stats.ep.size() != g.size()) {
    throw ConsistencyError("stats cover " + std::to_string(stats.ep.size()) + " edges, graph has " +
                           std::to_string(g.size()));
  }
}

std::string stats_to_json(const Graph& g, const CliqueStats& stats, const std::string& graph_hash) {
  check_consistent(g, stats);
  nlohmann::json j;
  j["r"] = stats.r;
  j["total"] = stats.total;
  j["n"] = g.order();
  j["m"] = g.size();
  if (!graph_hash.empty()) j["graph_hash"] = graph_hash;
  j["vp"] = stats.vp;
  auto ep = nlohmann::json::array();
  for (EdgeId e = 0; e < g.size(); ++e) {
    if (stats.ep[e] == 0) continue;
    auto [u, v] = g.edge(e);
    ep.push_back({u, v, stats.ep[e]});
  }
  j["ep"] = std::move(ep);
  return j.dump();
}

CliqueStats stats_from_json(const Graph& g, const std::string& text, std::string* graph_hash) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(0, std::string("stats file: ") + e.what());
  }
  try {
    CliqueStats s;
    s.r = j.at("r").get<int>();
    s.total = j.at("total").get<Count>();
    if (j.at("n").get<std::size_t>() != g.order() || j.at("m").get<std::size_t>() != g.size()) {
      throw ConsistencyError("stats file was computed for a different graph");
    }
    s.vp = j.at("vp").get<std::vector<Count>>();
    s.ep.assign(g.size(), 0);
    for (const auto& entry : j.at("ep")) {
      auto u = entry.at(0).get<VertexId>();
      auto v = entry.at(1).get<VertexId>();
      auto e = u < g.order() && v < g.order() ? g.edge_id(u, v) : std::nullopt;
      if (!e) throw ConsistencyError("stats file names a pair that is not an edge");
      s.ep[*e] = entry.at(2).get<Count>();
    }
    if (graph_hash != nullptr) *graph_hash = j.value("graph_hash", std::string{});
    check_consistent(g, s);
    return s;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(0, std::string("stats file: ") + e.what());
  }
}

}  // namespace knub
