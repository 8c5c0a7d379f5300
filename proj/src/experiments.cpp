#include "knub/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <sstream>

#include <json.hpp>

#include "knub/error.hpp"
#include "knub/estimator.hpp"
#include "knub/nub.hpp"

namespace knub {

Philox4x32::Counter Philox4x32::operator()(Counter ctr) const {
  constexpr std::uint32_t kMul0 = 0xD2511F53;
  constexpr std::uint32_t kMul1 = 0xCD9E8D57;
  constexpr std::uint32_t kWeyl0 = 0x9E3779B9;
  constexpr std::uint32_t kWeyl1 = 0xBB67AE85;
  Key key = key_;
  for (int round = 0; round < 10; ++round) {
    if (round > 0) {
      key[0] += kWeyl0;
      key[1] += kWeyl1;
    }
    const std::uint64_t p0 = std::uint64_t{kMul0} * ctr[0];
    const std::uint64_t p1 = std::uint64_t{kMul1} * ctr[2];
    ctr = {static_cast<std::uint32_t>(p1 >> 32) ^ ctr[1] ^ key[0], static_cast<std::uint32_t>(p1),
           static_cast<std::uint32_t>(p0 >> 32) ^ ctr[3] ^ key[1], static_cast<std::uint32_t>(p0)};
  }
  return ctr;
}

double Philox4x32::uniform(std::uint64_t index) const {
  auto block = (*this)({static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32), 0, 0});
  const std::uint64_t bits = (std::uint64_t{block[1]} << 32) | block[0];
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

Graph gen_erdos_renyi(std::uint32_t n, double p, std::uint64_t seed) {
  if (n < 1) throw DomainError("G(n, p) needs n >= 1");
  if (!(p > 0.0 && p < 1.0)) throw DomainError("G(n, p) needs 0 < p < 1");
  Philox4x32 rng(seed);
  std::vector<std::pair<VertexId, VertexId>> edges;
  edges.reserve(static_cast<std::size_t>(p * 0.5 * n * (n - 1.0) * 1.05) + 16);
  std::uint64_t index = 0;
  for (VertexId i = 0; i < n; ++i)
    for (VertexId j = i + 1; j < n; ++j, ++index)
      if (rng.uniform(index) < p) edges.emplace_back(i, j);
  return Graph::from_edges(n, edges);
}

double compare_core_vs_nub(const Graph& g, const CliqueStats& stats, std::uint32_t k, int r) {
  if (g.order() == 0) throw DomainError("core-vs-nub comparison needs a nonempty graph");
  auto nub = k_nub(g, stats, {k, r});
  auto core = main_core(g);
  const Graph& nub_graph = nub.survivor.graph;
  if (core.graph.order() == 0) {
    if (nub_graph.order() > 0) throw ConsistencyError("internal invariant violated: empty main core, nonempty nub");
    throw DomainError("main core is empty");
  }
  std::vector<std::uint8_t> in_core(g.order(), 0);
  for (VertexId v : core.to_parent) in_core[v] = 1;
  std::size_t shared = 0;
  for (VertexId v : nub.survivor.to_parent) shared += in_core[v];
  return static_cast<double>(shared) / static_cast<double>(core.graph.order());
}

void validate(const BenchConfig& cfg) {
  if (cfg.orders.empty() || cfg.densities.empty()) throw DomainError("bench config needs orders and densities");
  for (double p : cfg.densities)
    if (!(p > 0.0 && p < 1.0)) throw DomainError("bench densities must lie in (0, 1)");
  for (auto n : cfg.orders)
    if (n < 1) throw DomainError("bench orders must be positive");
  if (cfg.replicates < 1) throw DomainError("bench needs at least one replicate");
  if (cfg.r < 2) throw DomainError("clique order r must be at least 2");
  if (cfg.budget.max_time.count() <= 0 || cfg.budget.max_nodes == 0) throw DomainError("solver budgets must be positive");
}

BenchConfig bench_config_from_json(const std::string& text) {
  BenchConfig cfg;
  try {
    auto j = nlohmann::json::parse(text);
    if (j.contains("orders")) cfg.orders = j["orders"].get<std::vector<std::uint32_t>>();
    if (j.contains("densities")) cfg.densities = j["densities"].get<std::vector<double>>();
    cfg.replicates = j.value("replicates", cfg.replicates);
    cfg.r = j.value("r", cfg.r);
    cfg.seed = j.value("seed", cfg.seed);
    if (j.contains("time_budget")) {
      cfg.budget.max_time = std::chrono::milliseconds(static_cast<std::int64_t>(j["time_budget"].get<double>() * 1000));
    }
    if (j.contains("node_budget")) cfg.budget.max_nodes = j["node_budget"].get<std::uint64_t>();
    cfg.solve_original = j.value("solve_original", cfg.solve_original);
    cfg.timings = j.value("timings", cfg.timings);
    cfg.threads = j.value("threads", cfg.threads);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(0, std::string("bench config: ") + e.what());
  }
  validate(cfg);
  return cfg;
}

namespace {

using Clock = std::chrono::steady_clock;

TimeCell timing(bool enabled, double seconds, bool finished) {
  if (!finished) return TimeCell::timeout();
  return enabled ? TimeCell::measured(seconds) : TimeCell{};
}

BenchRow run_one(const BenchConfig& cfg, std::uint32_t n, double p, std::uint64_t seed) {
  BenchRow row;
  row.n = n;
  row.p = p;
  row.seed = seed;
  Graph g = gen_erdos_renyi(n, p, seed);

  DriverOptions opt;
  opt.r = cfg.r;
  opt.counting.threads = cfg.threads;
  opt.solver = cfg.budget;
  DriverRun run = solve_with_reduction(g, opt);

  row.reduction_time = timing(cfg.timings, run.reduction_seconds, true);
  row.k_used = run.k_tight;
  row.survivor_order = run.k_tight == 0 ? 0 : run.tight_report.survivor.graph.order();
  row.percent_reduced = 1.0 - static_cast<double>(row.survivor_order) / static_cast<double>(n);
  row.solve_time_reduced = timing(cfg.timings, run.solve_seconds, run.result.kind == ResultKind::exact);
  row.clique_size = run.result.lower;
  row.core_order = main_core(g).graph.order();

  if (cfg.solve_original) {
    auto t0 = Clock::now();
    auto direct = max_clique_exact(g, cfg.budget);
    double s = std::chrono::duration<double>(Clock::now() - t0).count();
    row.solve_time_original = timing(cfg.timings, s, direct.kind == ResultKind::exact);
  }
  return row;
}

std::string cell(const TimeCell& t) {
  switch (t.state) {
    case TimeCell::State::not_run:
      return "";
    case TimeCell::State::timeout:
      return "NA";
    case TimeCell::State::measured: {
      std::ostringstream s;
      s << std::fixed << std::setprecision(6) << t.seconds;
      return s.str();
    }
  }
  return "";
}

std::string fixed(double x) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(6) << x;
  return s.str();
}

std::string density_text(double p) {
  std::ostringstream s;
  s << std::setprecision(6) << p;
  return s.str();
}

}  // namespace

std::vector<BenchRow> run_er_benchmark(const BenchConfig& cfg) {
  validate(cfg);
  std::vector<BenchRow> rows;
  for (auto n : cfg.orders)
    for (double p : cfg.densities)
      for (std::uint32_t i = 0; i < cfg.replicates; ++i) rows.push_back(run_one(cfg, n, p, cfg.seed + i));
  return rows;
}

std::string rows_to_csv(const std::vector<BenchRow>& rows) {
  std::ostringstream out;
  out << "n,p,seed,reduction_time,survivor_order,percent_reduced,k_used,solve_time_original,"
         "solve_time_reduced,clique_size,core_order\n";
  for (const auto& r : rows) {
    out << r.n << ',' << density_text(r.p) << ',' << r.seed << ',' << cell(r.reduction_time) << ','
        << r.survivor_order << ',' << fixed(r.percent_reduced) << ',' << r.k_used << ','
        << cell(r.solve_time_original) << ',' << cell(r.solve_time_reduced) << ',' << r.clique_size << ','
        << r.core_order << '\n';
  }
  return out.str();
}

namespace {

struct Column {
  const char* name;
  std::optional<double> (*get)(const BenchRow&);
};

std::optional<double> time_value(const TimeCell& t) {
  if (t.state != TimeCell::State::measured) return std::nullopt;
  return t.seconds;
}

const Column kColumns[] = {
    {"reduction_time", [](const BenchRow& r) { return time_value(r.reduction_time); }},
    {"survivor_order", [](const BenchRow& r) -> std::optional<double> { return static_cast<double>(r.survivor_order); }},
    {"percent_reduced", [](const BenchRow& r) -> std::optional<double> { return r.percent_reduced; }},
    {"k_used", [](const BenchRow& r) -> std::optional<double> { return r.k_used; }},
    {"solve_time_original", [](const BenchRow& r) { return time_value(r.solve_time_original); }},
    {"solve_time_reduced", [](const BenchRow& r) { return time_value(r.solve_time_reduced); }},
    {"clique_size", [](const BenchRow& r) -> std::optional<double> { return static_cast<double>(r.clique_size); }},
    {"core_order", [](const BenchRow& r) -> std::optional<double> { return static_cast<double>(r.core_order); }},
};

}  // namespace

std::string aggregate_to_csv(const std::vector<BenchRow>& rows) {
  std::ostringstream out;
  out << "n,p,count";
  for (const auto& c : kColumns) out << ',' << c.name << "_mean," << c.name << "_std";
  out << '\n';

  std::vector<std::pair<std::uint32_t, double>> cells;
  for (const auto& r : rows)
    if (std::find(cells.begin(), cells.end(), std::make_pair(r.n, r.p)) == cells.end()) cells.emplace_back(r.n, r.p);

  for (auto [n, p] : cells) {
    std::vector<const BenchRow*> group;
    for (const auto& r : rows)
      if (r.n == n && r.p == p) group.push_back(&r);
    out << n << ',' << density_text(p) << ',' << group.size();
    for (const auto& c : kColumns) {
      std::vector<double> xs;
      for (const auto* r : group)
        if (auto v = c.get(*r)) xs.push_back(*v);
      if (xs.empty()) {
        out << ",NA,NA";
        continue;
      }
      double mean = 0;
      for (double x : xs) mean += x;
      mean /= static_cast<double>(xs.size());
      double var = 0;
      for (double x : xs) var += (x - mean) * (x - mean);
      double sd = xs.size() > 1 ? std::sqrt(var / static_cast<double>(xs.size() - 1)) : 0.0;
      out << ',' << fixed(mean) << ',' << fixed(sd);
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace knub
