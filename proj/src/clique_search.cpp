#include "knub/clique_search.hpp"

#include <algorithm>

#include <json.hpp>

#include "knub/bitset.hpp"
#include "knub/error.hpp"

namespace knub {

const char* to_string(ResultKind kind) {
  switch (kind) {
    case ResultKind::exact:
      return "exact";
    case ResultKind::maximal:
      return "maximal";
    case ResultKind::interval:
      return "interval";
  }
  return "?";
}

namespace {

using Clock = std::chrono::steady_clock;

class BranchAndBound {
 public:
  BranchAndBound(const BitMatrix& adj, std::size_t floor, const SolverBudget& budget)
      : adj_(adj), words_(adj.words()), best_size_(floor), budget_(budget), start_(Clock::now()) {}

  void run() {
    const std::size_t n = adj_.size();
    cand_.resize(n + 2);
    scratch_.resize(n + 2);
    colour_order_.resize(n + 2);
    colour_bound_.resize(n + 2);
    auto root = cand(0);
    for (std::size_t i = 0; i < n; ++i) set_bit(root, i);
    expand(0);
  }

  bool aborted() const { return aborted_; }
  std::uint64_t nodes() const { return nodes_; }
  const std::vector<std::size_t>& best() const { return best_; }
  std::size_t root_bound() const { return root_bound_; }

 private:
  // Per-depth buffers, allocated on first use; depth never exceeds the
  // largest clique plus one.
  std::span<Word> cand(std::size_t depth) {
    if (cand_[depth].empty()) cand_[depth].assign(words_, 0);
    return cand_[depth];
  }
  std::span<Word> scratch(std::size_t depth) {
    if (scratch_[depth].empty()) scratch_[depth].assign(words_, 0);
    return scratch_[depth];
  }

  bool out_of_budget() {
    if (nodes_ >= budget_.max_nodes) return true;
    if ((nodes_ & 1023) == 0 && Clock::now() - start_ > budget_.max_time) return true;
    return false;
  }

  // Greedy colouring of the candidates. Only vertices whose colour could lift
  // the clique above the incumbent are listed; colours are non-decreasing
  // along the list.
  void colour(std::size_t depth, std::span<const Word> p) {
    auto& order = colour_order_[depth];
    auto& bound = colour_bound_[depth];
    order.clear();
    bound.clear();
    auto uncoloured = scratch(depth);
    std::copy(p.begin(), p.end(), uncoloured.begin());
    std::vector<Word>& avail = avail_;
    avail.resize(words_);
    const std::size_t kmin = best_size_ >= clique_.size() ? best_size_ - clique_.size() + 1 : 1;
    std::size_t colour = 0;
    while (any_bit(uncoloured)) {
      ++colour;
      std::copy(uncoloured.begin(), uncoloured.end(), avail.begin());
      for (std::size_t v = first_bit(avail); v < words_ * 64; v = first_bit(avail)) {
        clear_bit(uncoloured, v);
        clear_bit(avail, v);
        simd::andnot_into(avail, avail, adj_.row(v));
        if (colour >= kmin) {
          order.push_back(v);
          bound.push_back(colour);
        }
      }
    }
    if (depth == 0) root_bound_ = colour;
  }

  void expand(std::size_t depth) {
    ++nodes_;
    if (out_of_budget()) {
      aborted_ = true;
      return;
    }
    auto p = cand(depth);
    colour(depth, p);
    auto next = cand(depth + 1);
    const auto& order = colour_order_[depth];
    const auto& bound = colour_bound_[depth];
    for (std::size_t i = order.size(); i-- > 0;) {
      if (clique_.size() + bound[i] <= best_size_) return;
      const std::size_t v = order[i];
      clique_.push_back(v);
      std::size_t remaining = simd::and_into(next, p, adj_.row(v));
      if (remaining == 0) {
        if (clique_.size() > best_size_) {
          best_size_ = clique_.size();
          best_ = clique_;
        }
      } else {
        expand(depth + 1);
      }
      clique_.pop_back();
      if (aborted_) return;
      clear_bit(p, v);
    }
  }

  const BitMatrix& adj_;
  std::size_t words_;
  std::size_t best_size_;
  std::vector<std::size_t> best_;
  std::vector<std::size_t> clique_;
  std::vector<std::vector<Word>> cand_;
  std::vector<std::vector<Word>> scratch_;
  std::vector<Word> avail_;
  std::vector<std::vector<std::size_t>> colour_order_;
  std::vector<std::vector<std::size_t>> colour_bound_;
  SolverBudget budget_;
  Clock::time_point start_;
  std::uint64_t nodes_ = 0;
  bool aborted_ = false;
  std::size_t root_bound_ = 0;
};

}  // namespace

SearchOutcome search_clique_above(const Graph& g, std::size_t floor, const SolverBudget& budget) {
  SearchOutcome out;
  if (g.order() <= floor) return out;

  // A clique of size floor + 1 lives inside the floor-core.
  auto core = core_numbers(g);
  auto order = degeneracy_order(g);
  std::vector<VertexId> vertices;
  for (auto it = order.rbegin(); it != order.rend(); ++it)
    if (core[*it] >= floor) vertices.push_back(*it);
  if (vertices.size() <= floor) return out;

  std::vector<std::int64_t> position(g.order(), -1);
  for (std::size_t i = 0; i < vertices.size(); ++i) position[vertices[i]] = static_cast<std::int64_t>(i);
  BitMatrix adj(vertices.size());
  for (std::size_t i = 0; i < vertices.size(); ++i)
    for (VertexId u : g.neighbors(vertices[i]))
      if (position[u] >= 0) adj.set(i, static_cast<std::size_t>(position[u]));

  BranchAndBound bb(adj, floor, budget);
  bb.run();
  out.complete = !bb.aborted();
  out.nodes = bb.nodes();
  out.root_bound = bb.root_bound();
  for (std::size_t i : bb.best()) out.best.push_back(vertices[i]);
  std::sort(out.best.begin(), out.best.end());
  return out;
}

std::vector<VertexId> greedy_maximal_clique(const Graph& g, std::span<const VertexId> seed) {
  const VertexId n = g.order();
  std::vector<VertexId> best(seed.begin(), seed.end());
  if (n == 0) return best;

  // hits[w] counts how many members of the growing clique are adjacent to w.
  std::vector<std::uint32_t> hits(n, 0);
  std::vector<VertexId> clique;
  auto add = [&](VertexId x) {
    clique.push_back(x);
    for (VertexId w : g.neighbors(x)) ++hits[w];
  };
  auto reset = [&] {
    for (VertexId x : clique)
      for (VertexId w : g.neighbors(x)) hits[w] = 0;
    clique.clear();
  };

  for (VertexId v = 0; v < n; ++v) {
    if (g.degree(v) + 1 <= best.size()) continue;
    add(v);
    for (VertexId w : g.neighbors(v))
      if (hits[w] == clique.size()) add(w);
    if (clique.size() > best.size()) best = clique;
    reset();
  }

  if (best.size() == seed.size()) {
    // Nothing beat the seed (or there is no seed): make it maximal.
    best.assign(seed.begin(), seed.end());
    if (best.empty()) best.push_back(0);
    for (VertexId x : best) add(x);
    // Members are never adjacent to themselves, so hits == |clique| excludes them.
    for (VertexId w = 0; w < n; ++w)
      if (hits[w] == clique.size()) add(w);
    best = clique;
    reset();
  }
  std::sort(best.begin(), best.end());
  return best;
}

CliqueResult max_clique_exact(const Graph& g, const SolverBudget& budget) {
  CliqueResult result;
  if (g.order() == 0) return result;
  auto greedy = greedy_maximal_clique(g);
  auto search = search_clique_above(g, greedy.size(), budget);
  std::vector<VertexId> best = search.best.empty() ? greedy : search.best;
  if (search.complete) {
    result.kind = ResultKind::exact;
    result.lower = result.upper = best.size();
    result.witness = std::move(best);
    return result;
  }
  result.kind = ResultKind::maximal;
  result.witness = best.size() > greedy.size() ? greedy_maximal_clique(g, best) : greedy;
  result.lower = result.witness.size();
  result.upper = std::max(result.lower, search.root_bound == 0 ? g.order() : search.root_bound);
  return result;
}

namespace {

bool extend_to_size(const Graph& g, std::size_t target, VertexId from, std::vector<VertexId>& chosen) {
  if (chosen.size() == target) return true;
  for (VertexId v = from; v < g.order(); ++v) {
    if (g.order() - v < target - chosen.size()) return false;
    bool ok = true;
    for (VertexId c : chosen)
      if (!g.adjacent(c, v)) {
        ok = false;
        break;
      }
    if (!ok) continue;
    chosen.push_back(v);
    if (extend_to_size(g, target, v + 1, chosen)) return true;
    chosen.pop_back();
  }
  return false;
}

}  // namespace

BruteForceResult brute_force_max_clique(const Graph& g) {
  if (g.order() > 30) throw DomainError("brute-force oracle refuses graphs with more than 30 vertices");
  for (std::size_t size = g.order(); size > 0; --size) {
    std::vector<VertexId> chosen;
    if (extend_to_size(g, size, 0, chosen)) return {size, chosen};
  }
  return {};
}

std::string result_to_json(const Graph& g, const CliqueResult& result) {
  nlohmann::json j;
  j["kind"] = to_string(result.kind);
  j["lower"] = result.lower;
  j["upper"] = result.upper;
  std::vector<Label> witness;
  for (VertexId v : result.witness) witness.push_back(g.label(v));
  j["witness"] = witness;
  return j.dump(2);
}

}  // namespace knub
