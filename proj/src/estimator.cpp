#include "knub/estimator.hpp"

#include <algorithm>
#include <functional>

#include <json.hpp>

#include "knub/binomial.hpp"
#include "knub/error.hpp"

namespace knub {

std::uint32_t initial_k_upper(Count total, int r) {
  if (r < 2) throw DomainError("clique order r must be at least 2");
  if (total == 0) return static_cast<std::uint32_t>(r - 1);
  const BigInt limit = total;
  std::uint64_t k = static_cast<std::uint64_t>(r);
  BigInt c = 1;  // C(k, r)
  while (true) {
    BigInt next = c * (k + 1) / (k + 1 - static_cast<std::uint64_t>(r));
    if (next > limit) break;
    c = std::move(next);
    ++k;
  }
  return static_cast<std::uint32_t>(k);
}

std::uint32_t refine_k_by_participation(const CliqueStats& stats, std::uint32_t k, const RefineOptions& options) {
  const int r = stats.r;
  if (r < 2) throw DomainError("stats carry an invalid clique order");
  const auto sentinel = static_cast<std::uint32_t>(r - 1);
  if (k < static_cast<std::uint32_t>(r)) return sentinel;

  const Count max_ep = max_participation(stats).max_ep;
  std::vector<Count> vp = stats.vp;
  std::sort(vp.begin(), vp.end(), std::greater<>());
  const auto ur = static_cast<std::uint64_t>(r);

  for (std::uint64_t cand = k; cand >= ur; --cand) {
    if (BigInt(max_ep) < binomial(cand - 2, ur - 2)) continue;
    if (options.vertex_condition) {
      // The cand-th largest VP must reach the vertex bound.
      if (vp.size() < cand || BigInt(vp[cand - 1]) < binomial(cand - 1, ur - 1)) continue;
    }
    return static_cast<std::uint32_t>(cand);
  }
  return sentinel;
}

std::uint32_t next_k(std::size_t l, std::uint32_t k) {
  if (l >= k) throw DomainError("search has converged: lower bound is not below k");
  return static_cast<std::uint32_t>((l + k) / 2);
}

const char* to_string(OutcomeCase c) {
  switch (c) {
    case OutcomeCase::empty:
      return "empty";
    case OutcomeCase::under_k:
      return "under_k";
    case OutcomeCase::exactly_k:
      return "exactly_k";
    case OutcomeCase::over_k:
      return "over_k";
  }
  return "?";
}

Outcome classify_outcome(const Graph& survivor, std::uint32_t k, std::size_t l_prime) {
  Outcome o;
  o.lower = l_prime;
  o.survivor_complete = !survivor.empty() && is_complete(survivor);
  const std::size_t order = survivor.order();
  if (order == 0) {
    o.kind = OutcomeCase::empty;
    o.below_k = true;
  } else if (order < k) {
    o.kind = OutcomeCase::under_k;
    o.below_k = true;
  } else if (order == k) {
    o.kind = OutcomeCase::exactly_k;
    if (o.survivor_complete) {
      o.exact_k = true;
      o.lower = k;
    } else {
      o.below_k = true;
    }
  } else {
    o.kind = OutcomeCase::over_k;
  }
  return o;
}

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

std::vector<VertexId> lift(const Subgraph& s, std::span<const VertexId> local) {
  std::vector<VertexId> out;
  out.reserve(local.size());
  for (VertexId v : local) out.push_back(s.to_parent[v]);
  std::sort(out.begin(), out.end());
  return out;
}

class Driver {
 public:
  Driver(const Graph& g, const DriverOptions& options) : g_(g), opt_(options) {}

  DriverRun run() {
    if (opt_.r < 2) throw DomainError("clique order r must be at least 2");
    auto t0 = Clock::now();
    if (opt_.stats != nullptr) {
      check_consistent(g_, *opt_.stats);
      if (opt_.stats->r != opt_.r) throw ConsistencyError("precomputed stats were counted for a different r");
      stats_ = opt_.stats;
    } else {
      owned_stats_ = count_r_cliques(g_, opt_.r, opt_.counting);
      stats_ = &owned_stats_;
    }
    out_.count_seconds = seconds_since(t0);
    out_.total = stats_->total;
    start_ = Clock::now();

    auto& st = out_.state;
    st.witness = greedy_maximal_clique(g_);
    st.l = st.witness.size();
    st.upper = g_.order();

    if (stats_->total == 0) {
      solve_without_r_cliques();
      return finish();
    }

    out_.k_initial = initial_k_upper(stats_->total, opt_.r);
    out_.k_refined = refine_k_by_participation(*stats_, out_.k_initial, {opt_.vertex_condition});
    st.upper = std::min<std::size_t>(st.upper, out_.k_refined);

    bisect();
    solve_phase();
    return finish();
  }

 private:
  ReductionReport reduce_at(std::uint32_t k) {
    if (k >= static_cast<std::uint32_t>(opt_.r)) return k_nub(g_, *stats_, {k, opt_.r});
    // Below r the participation bounds are undefined; the (k-1)-core alone
    // still keeps every clique of order >= k.
    ReductionReport rep;
    rep.survivor = c_core(g_, k > 0 ? k - 1 : 0);
    rep.e_bound = rep.v_bound = 1;
    return rep;
  }

  void record(const char* phase, std::uint32_t k, OutcomeCase c, const Graph& survivor) {
    auto& st = out_.state;
    st.history.push_back({phase, k, c, st.l, st.upper, survivor.order(), survivor.size(), seconds_since(start_)});
  }

  void improve(std::vector<VertexId> clique) {
    auto& st = out_.state;
    if (clique.size() > st.l) {
      st.l = clique.size();
      st.witness = std::move(clique);
    }
  }

  // Largest k in [max(r, l), upper] with a nonempty nub. Each probe is one
  // linear-time reduction; an empty nub proves omega < k.
  void bisect() {
    auto& st = out_.state;
    std::uint32_t lo = std::max<std::uint32_t>(static_cast<std::uint32_t>(opt_.r), static_cast<std::uint32_t>(std::min(st.l, st.upper)));
    lo = std::min<std::uint32_t>(lo, static_cast<std::uint32_t>(st.upper));
    std::uint32_t hi_excl = static_cast<std::uint32_t>(st.upper) + 1;
    while (hi_excl - lo >= 2) {
      std::uint32_t k = next_k(lo, hi_excl);
      st.k = k;
      auto rep = reduce_at(k);
      auto o = classify_outcome(rep.survivor.graph, k, 0);
      if (o.kind == OutcomeCase::empty) {
        hi_excl = k;
        st.upper = std::min<std::size_t>(st.upper, k - 1);
      } else {
        lo = k;
      }
      record("bisect", k, o.kind, rep.survivor.graph);
    }
    auto t = Clock::now();
    out_.tight_report = reduce_at(lo);
    out_.reduction_seconds = seconds_since(t);
    out_.k_tight = lo;
  }

  bool out_of_time() const {
    return opt_.total_time && Clock::now() - start_ > *opt_.total_time;
  }

  SolverBudget call_budget() const {
    SolverBudget b = opt_.solver;
    if (opt_.total_time) {
      auto left = std::chrono::duration_cast<std::chrono::milliseconds>(*opt_.total_time - (Clock::now() - start_));
      b.max_time = std::max(std::chrono::milliseconds(1), std::min(b.max_time, left));
    }
    return b;
  }

  Subgraph recount_until_stable(Subgraph s, std::uint32_t k) {
    while (s.graph.order() > 0) {
      auto local_stats = count_r_cliques(s.graph, opt_.r, opt_.counting);
      auto rep = k_nub(s.graph, local_stats, {k, opt_.r});
      if (rep.survivor.graph.order() == s.graph.order() && rep.survivor.graph.size() == s.graph.size()) break;
      for (auto& v : rep.survivor.to_parent) v = s.to_parent[v];
      s = std::move(rep.survivor);
    }
    return s;
  }

  void solve_phase() {
    auto& st = out_.state;
    auto t0 = Clock::now();
    std::uint32_t k = opt_.k_override ? *opt_.k_override : out_.k_tight;
    bool first = true;
    while (st.l < st.upper) {
      if (out_of_time()) {
        out_.solves_complete = false;
        break;
      }
      st.k = k;
      Subgraph survivor = first && !opt_.k_override ? out_.tight_report.survivor : reduce_at(k).survivor;
      first = false;
      if (opt_.recount && k >= static_cast<std::uint32_t>(opt_.r)) survivor = recount_until_stable(std::move(survivor), k);
      const Graph& sg = survivor.graph;

      auto o = classify_outcome(sg, k, 0);
      bool stop = false;
      switch (o.kind) {
        case OutcomeCase::empty:
          st.upper = std::min<std::size_t>(st.upper, k - 1);
          break;
        case OutcomeCase::under_k:
        case OutcomeCase::exactly_k:
          if (o.exact_k) {
            std::vector<VertexId> all(sg.order());
            for (VertexId v = 0; v < sg.order(); ++v) all[v] = v;
            improve(lift(survivor, all));
            st.upper = k;
            break;
          }
          improve(lift(survivor, greedy_maximal_clique(sg)));
          st.upper = std::min<std::size_t>(st.upper, k - 1);
          break;
        case OutcomeCase::over_k: {
          const std::size_t floor = std::max<std::size_t>(st.l, k - 1);
          auto search = search_clique_above(sg, floor, call_budget());
          if (!search.best.empty()) improve(lift(survivor, search.best));
          if (search.complete) {
            // The survivor holds every clique of order >= k, so a complete
            // search settles the question above the floor.
            st.upper = search.best.empty() ? std::min(st.upper, floor) : st.l;
          } else {
            out_.solves_complete = false;
            improve(lift(survivor, greedy_maximal_clique(sg)));
            stop = true;
          }
          break;
        }
      }
      record("solve", k, o.kind, sg);
      if (stop || st.l >= st.upper) break;
      std::uint32_t cand = k > st.l ? next_k(st.l, k) : static_cast<std::uint32_t>(st.l + 1);
      // Nubs only grow as k falls, so once nothing was removed every smaller k
      // searches the whole graph again; one search above l settles it.
      if (sg.order() == g_.order()) cand = static_cast<std::uint32_t>(st.l + 1);
      k = std::clamp<std::uint32_t>(cand, static_cast<std::uint32_t>(st.l + 1), static_cast<std::uint32_t>(st.upper));
    }
    out_.solve_seconds = seconds_since(t0);
  }

  void solve_without_r_cliques() {
    auto& st = out_.state;
    st.upper = std::min<std::size_t>(st.upper, static_cast<std::size_t>(opt_.r - 1));
    auto t0 = Clock::now();
    auto search = search_clique_above(g_, st.l, call_budget());
    if (!search.best.empty()) improve(search.best);
    if (search.complete) st.upper = st.l;
    else out_.solves_complete = false;
    out_.solve_seconds = seconds_since(t0);
    out_.k_tight = 0;
  }

  DriverRun finish() {
    auto& st = out_.state;
    auto& res = out_.result;
    res.witness = st.witness;
    res.lower = st.l;
    res.upper = std::max(st.upper, st.l);
    res.kind = res.lower == res.upper ? ResultKind::exact : ResultKind::interval;
    return std::move(out_);
  }

  const Graph& g_;
  const DriverOptions& opt_;
  const CliqueStats* stats_ = nullptr;
  CliqueStats owned_stats_;
  Clock::time_point start_;
  DriverRun out_;
};

}  // namespace

std::uint32_t tightest_nonempty_k(const Graph& g, const CliqueStats& stats, std::uint32_t upper) {
  check_consistent(g, stats);
  const auto r = static_cast<std::uint32_t>(stats.r);
  if (stats.total == 0 || upper < r) return 0;
  std::uint32_t lo = r;
  std::uint32_t hi_excl = upper + 1;
  while (hi_excl - lo >= 2) {
    std::uint32_t k = next_k(lo, hi_excl);
    if (k_nub(g, stats, {k, stats.r}).survivor.graph.empty())
      hi_excl = k;
    else
      lo = k;
  }
  return lo;
}

DriverRun solve_with_reduction(const Graph& g, const DriverOptions& options) { return Driver(g, options).run(); }

std::string trace_to_json(const Graph& g, const DriverRun& run) {
  nlohmann::json j;
  j["total_r_cliques"] = run.total;
  j["k_initial"] = run.k_initial;
  j["k_refined"] = run.k_refined;
  j["k_tight"] = run.k_tight;
  j["count_seconds"] = run.count_seconds;
  j["solve_seconds"] = run.solve_seconds;
  auto steps = nlohmann::json::array();
  for (const auto& s : run.state.history) {
    steps.push_back({{"phase", s.phase},
                     {"k", s.k},
                     {"case", to_string(s.outcome)},
                     {"lower", s.lower},
                     {"upper", s.upper},
                     {"survivor_order", s.survivor_order},
                     {"survivor_size", s.survivor_size},
                     {"elapsed_seconds", s.elapsed_seconds}});
  }
  j["iterations"] = std::move(steps);
  j["result"] = nlohmann::json::parse(result_to_json(g, run.result));
  return j.dump(2);
}

}  // namespace knub
