#include "cli.hpp"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "knub/clique_search.hpp"
#include "knub/error.hpp"
#include "knub/estimator.hpp"
#include "knub/experiments.hpp"
#include "knub/graph.hpp"
#include "knub/nub.hpp"
#include "knub/participation.hpp"

namespace knub::cli {
namespace {

std::string fnv1a_hex(const std::string& data) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot write " + path);
  f << text;
  if (!f) throw IoError("write failed: " + path);
}

std::chrono::milliseconds seconds_to_ms(double s) {
  if (!(s > 0)) throw DomainError("time budget must be positive");
  return std::chrono::milliseconds(static_cast<std::int64_t>(s * 1000.0 + 0.5));
}

struct GraphArgs {
  std::string path;
  std::string format = "snap";
  int r = 3;
  unsigned threads = 0;
  std::string stats_path;
};

struct LoadedGraph {
  Graph graph;
  std::string hash;
};

LoadedGraph load(const GraphArgs& a) {
  std::string text = read_file(a.path);
  LoadedGraph lg{parse_edge_list(text, parse_format(a.format)), fnv1a_hex(text)};
  return lg;
}

std::string default_stats_path(const GraphArgs& a) { return a.path + ".r" + std::to_string(a.r) + ".stats.json"; }

/// Cached stats when the cache matches the graph's content hash and r;
/// otherwise counts and refreshes the cache.
CliqueStats obtain_stats(const GraphArgs& a, const LoadedGraph& lg, std::ostream& err) {
  const std::string path = a.stats_path.empty() ? default_stats_path(a) : a.stats_path;
  if (std::filesystem::exists(path)) {
    try {
      std::string hash;
      CliqueStats s = stats_from_json(lg.graph, read_file(path), &hash);
      if (hash == lg.hash && s.r == a.r) {
        err << "using cached stats " << path << '\n';
        return s;
      }
      err << "stale stats cache " << path << ", recounting\n";
    } catch (const Error& e) {
      err << "ignoring stats cache " << path << ": " << e.what() << '\n';
    }
  }
  CountOptions opt;
  opt.threads = a.threads;
  auto t0 = std::chrono::steady_clock::now();
  CliqueStats s = count_r_cliques(lg.graph, a.r, opt);
  err << "counted " << s.total << ' ' << a.r << "-cliques in " << std::fixed << std::setprecision(3)
      << std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count() << " s\n";
  try {
    write_text(path, stats_to_json(lg.graph, s, lg.hash));
  } catch (const IoError& e) {
    err << "warning: " << e.what() << '\n';
  }
  return s;
}

void add_graph_options(CLI::App* app, GraphArgs& a) {
  app->add_option("graph", a.path, "Edge-list file")->required();
  app->add_option("--format", a.format, "Input format")->check(CLI::IsMember({"snap", "mtx"}));
  app->add_option("-r,--r", a.r, "Clique order used for participation counts")->check(CLI::Range(2, 64));
  app->add_option("--threads", a.threads, "Counting threads (0 = all cores)");
  app->add_option("--stats", a.stats_path, "Participation stats cache (JSON)");
}

int cmd_count(const GraphArgs& a, const std::string& out_path, std::ostream& out, std::ostream& err) {
  LoadedGraph lg = load(a);
  GraphArgs b = a;
  if (!out_path.empty()) b.stats_path = out_path;
  CliqueStats s = obtain_stats(b, lg, err);
  out << "vertices: " << lg.graph.order() << '\n' << "edges: " << lg.graph.size() << '\n';
  out << a.r << "-cliques: " << s.total << '\n';
  if (a.r == 3) out << "triangles: " << s.total << '\n';
  auto mx = max_participation(s);
  out << "max vertex participation: " << mx.max_vp << '\n' << "max edge participation: " << mx.max_ep << '\n';
  return 0;
}

std::uint32_t estimated_k(const CliqueStats& s, std::ostream& err) {
  std::uint32_t k0 = initial_k_upper(s.total, s.r);
  std::uint32_t k1 = refine_k_by_participation(s, k0);
  err << "k estimate: " << k0 << ", refined " << k1 << '\n';
  if (k1 < static_cast<std::uint32_t>(s.r)) throw DomainError("graph has no r-clique, so no k >= r to reduce at");
  return k1;
}

int cmd_reduce(const GraphArgs& a, std::optional<std::uint32_t> k_opt, const std::string& out_prefix,
               std::ostream& out, std::ostream& err) {
  LoadedGraph lg = load(a);
  CliqueStats s = obtain_stats(a, lg, err);
  const std::uint32_t k = k_opt ? *k_opt : estimated_k(s, err);
  ReductionParams params{k, a.r};
  ReductionReport rep = k_nub(lg.graph, s, params);
  const std::string prefix = out_prefix.empty() ? a.path + ".k" + std::to_string(k) + ".nub" : out_prefix;
  const std::string snap = prefix + ".snap.txt";
  write_snap_file(rep.survivor.graph, snap, a.path);
  write_text(prefix + ".report.json", report_to_json(rep, params, snap));
  out << "k: " << k << '\n'
      << "edges removed (participation): " << rep.edges_removed_step1 << '\n'
      << "vertices removed (participation): " << rep.vertices_removed_step2 << '\n'
      << "vertices removed (core peel): " << rep.vertices_removed_step3 << '\n'
      << "survivor: " << rep.survivor.graph.order() << " vertices, " << rep.survivor.graph.size() << " edges\n";
  if (rep.survivor.graph.empty()) out << "note: nub is empty, so no " << k << "-clique exists\n";
  out << "wrote " << snap << " and " << prefix << ".report.json\n";
  return 0;
}

struct SolveArgs {
  std::optional<std::uint32_t> k;
  double time_budget = 0;
  std::uint64_t node_budget = 0;
  double total_time = 0;
  bool recount = false;
  bool direct = false;
  bool no_vertex_condition = false;
  std::string out_path;
  std::string trace_path;
};

SolverBudget make_budget(double time_budget, std::uint64_t node_budget) {
  SolverBudget b;
  if (time_budget > 0) b.max_time = seconds_to_ms(time_budget);
  if (node_budget > 0) b.max_nodes = node_budget;
  return b;
}

void print_result(std::ostream& out, const Graph& g, const CliqueResult& res) {
  out << "clique number: ";
  if (res.kind == ResultKind::exact)
    out << res.lower << " (exact)\n";
  else
    out << "[" << res.lower << ", " << res.upper << "] (" << to_string(res.kind) << ")\n";
  out << "witness:";
  for (VertexId v : res.witness) out << ' ' << g.label(v);
  out << '\n';
}

int cmd_solve(const GraphArgs& a, const SolveArgs& sa, std::ostream& out, std::ostream& err) {
  LoadedGraph lg = load(a);
  SolverBudget budget = make_budget(sa.time_budget, sa.node_budget);
  CliqueResult res;
  if (sa.direct) {
    res = max_clique_exact(lg.graph, budget);
  } else {
    CliqueStats s = obtain_stats(a, lg, err);
    DriverOptions opt;
    opt.r = a.r;
    opt.counting.threads = a.threads;
    opt.solver = budget;
    if (sa.total_time > 0) opt.total_time = seconds_to_ms(sa.total_time);
    opt.recount = sa.recount;
    opt.vertex_condition = !sa.no_vertex_condition;
    opt.k_override = sa.k;
    opt.stats = &s;
    DriverRun run = solve_with_reduction(lg.graph, opt);
    res = run.result;
    out << "k (initial/refined/tightest nonempty nub): " << run.k_initial << '/' << run.k_refined << '/'
        << run.k_tight << '\n';
    if (run.k_tight > 0) out << "nub order at k=" << run.k_tight << ": " << run.tight_report.survivor.graph.order() << '\n';
    for (const auto& st : run.state.history)
      err << st.phase << " k=" << st.k << ' ' << to_string(st.outcome) << " survivor=" << st.survivor_order
          << " bounds=[" << st.lower << ',' << st.upper << "]\n";
    if (!sa.trace_path.empty()) write_text(sa.trace_path, trace_to_json(lg.graph, run));
  }
  print_result(out, lg.graph, res);
  if (!sa.out_path.empty()) write_text(sa.out_path, result_to_json(lg.graph, res));
  return 0;
}

int cmd_compare(const GraphArgs& a, std::optional<std::uint32_t> k_opt, std::ostream& out, std::ostream& err) {
  LoadedGraph lg = load(a);
  CliqueStats s = obtain_stats(a, lg, err);
  std::uint32_t k = 0;
  if (k_opt) {
    k = *k_opt;
  } else {
    k = tightest_nonempty_k(lg.graph, s, refine_k_by_participation(s, initial_k_upper(s.total, s.r)));
    if (k == 0) throw DomainError("graph has no r-clique, so no k >= r to reduce at");
    out << "k: " << k << '\n';
  }
  double ratio = compare_core_vs_nub(lg.graph, s, k, a.r);
  auto core = main_core(lg.graph);
  out << "main core order: " << core.graph.order() << '\n';
  out << "share of main core in " << k << "-nub: " << std::fixed << std::setprecision(6) << ratio << '\n';
  return 0;
}

struct BenchArgs {
  std::string config_path;
  std::vector<std::uint32_t> orders;
  std::vector<double> densities;
  std::optional<std::uint32_t> replicates;
  std::optional<std::uint64_t> seed;
  std::optional<int> r;
  double time_budget = 0;
  std::uint64_t node_budget = 0;
  bool solve_original = false;
  bool no_timings = false;
  unsigned threads = 1;
  std::string out_path;
  std::string aggregate_path;
};

int cmd_bench(const BenchArgs& b, std::ostream& out, std::ostream& err) {
  BenchConfig cfg = b.config_path.empty() ? BenchConfig{} : bench_config_from_json(read_file(b.config_path));
  if (!b.orders.empty()) cfg.orders = b.orders;
  if (!b.densities.empty()) cfg.densities = b.densities;
  if (b.replicates) cfg.replicates = *b.replicates;
  if (b.seed) cfg.seed = *b.seed;
  if (b.r) cfg.r = *b.r;
  if (b.time_budget > 0) cfg.budget.max_time = seconds_to_ms(b.time_budget);
  if (b.node_budget > 0) cfg.budget.max_nodes = b.node_budget;
  if (b.solve_original) cfg.solve_original = true;
  if (b.no_timings) cfg.timings = false;
  cfg.threads = b.threads;
  validate(cfg);
  err << "running " << cfg.orders.size() * cfg.densities.size() * cfg.replicates << " instances\n";
  auto rows = run_er_benchmark(cfg);
  std::string csv = rows_to_csv(rows);
  if (b.out_path.empty())
    out << csv;
  else
    write_text(b.out_path, csv);
  if (!b.aggregate_path.empty()) write_text(b.aggregate_path, aggregate_to_csv(rows));
  return 0;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Maximum clique search through k-nub reduction"};
  app.require_subcommand(1);

  GraphArgs ga;
  std::string count_out;
  auto* count = app.add_subcommand("count", "Count r-cliques and per-vertex/per-edge participation");
  add_graph_options(count, ga);
  count->add_option("--out", count_out, "Write stats JSON here instead of the default cache path");

  std::optional<std::uint32_t> reduce_k;
  std::string reduce_out;
  auto* reduce = app.add_subcommand("reduce", "Reduce a graph to its k-nub");
  add_graph_options(reduce, ga);
  reduce->add_option("-k,--k", reduce_k, "Target clique order (estimated from the counts when absent)")
      ->check(CLI::PositiveNumber);
  reduce->add_option("--out", reduce_out, "Output prefix for <prefix>.snap.txt and <prefix>.report.json");

  SolveArgs sa;
  auto* solve = app.add_subcommand("solve", "Find a maximum clique");
  add_graph_options(solve, ga);
  solve->add_option("-k,--k", sa.k, "First candidate k for the solving phase");
  solve->add_option("--time-budget", sa.time_budget, "Seconds per exact-solver call");
  solve->add_option("--node-budget", sa.node_budget, "Branch-and-bound nodes per solver call");
  solve->add_option("--total-time", sa.total_time, "Seconds for the whole search after counting");
  solve->add_flag("--recount", sa.recount, "Recount participation on each survivor");
  solve->add_flag("--direct", sa.direct, "Solve the input graph without reduction");
  solve->add_flag("--no-vertex-condition", sa.no_vertex_condition, "Refine k by edge participation only");
  solve->add_option("--out", sa.out_path, "Write the result as JSON");
  solve->add_option("--trace", sa.trace_path, "Write the k-search trace as JSON");

  std::optional<std::uint32_t> compare_k;
  auto* compare = app.add_subcommand("compare-core", "Share of the main core that survives in the k-nub");
  add_graph_options(compare, ga);
  compare->add_option("-k,--k", compare_k, "Target clique order (tightest nonempty nub when absent)")
      ->check(CLI::PositiveNumber);

  BenchArgs ba;
  auto* bench = app.add_subcommand("bench", "Erdos-Renyi benchmark sweep");
  bench->add_option("--config", ba.config_path, "Bench config JSON");
  bench->add_option("--orders", ba.orders, "Vertex counts")->delimiter(',');
  bench->add_option("--densities", ba.densities, "Edge probabilities")->delimiter(',');
  bench->add_option("--replicates", ba.replicates, "Instances per (n, p)");
  bench->add_option("--seed", ba.seed, "Seed of the first replicate");
  bench->add_option("-r,--r", ba.r, "Clique order used for participation counts");
  bench->add_option("--time-budget", ba.time_budget, "Seconds per exact-solver call");
  bench->add_option("--node-budget", ba.node_budget, "Branch-and-bound nodes per solver call");
  bench->add_flag("--solve-original", ba.solve_original, "Also time the solver on the unreduced graph");
  bench->add_flag("--no-timings", ba.no_timings, "Leave timing columns empty (reproducible output)");
  bench->add_option("--threads", ba.threads, "Counting threads (0 = all cores)");
  bench->add_option("--out", ba.out_path, "Per-instance CSV (stdout when absent)");
  bench->add_option("--aggregate", ba.aggregate_path, "Per-(n, p) mean/std CSV");

  std::uint32_t gen_n = 0;
  double gen_p = 0;
  std::uint64_t gen_seed = 1;
  std::string gen_out;
  auto* generate = app.add_subcommand("generate", "Write a G(n, p) graph as a snap edge list");
  generate->add_option("-n,--n", gen_n, "Vertices")->required();
  generate->add_option("-p,--p", gen_p, "Edge probability")->required();
  generate->add_option("--seed", gen_seed, "Seed");
  generate->add_option("--out", gen_out, "Output file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  if (ga.r == 2 && !*bench && !*generate)
    err << "warning: r=2 makes the participation thresholds plain degree tests\n";
  if (ba.r && *ba.r == 2) err << "warning: r=2 makes the participation thresholds plain degree tests\n";

  try {
    if (*count) return cmd_count(ga, count_out, out, err);
    if (*reduce) return cmd_reduce(ga, reduce_k, reduce_out, out, err);
    if (*solve) return cmd_solve(ga, sa, out, err);
    if (*compare) return cmd_compare(ga, compare_k, out, err);
    if (*bench) return cmd_bench(ba, out, err);
    if (*generate) {
      Graph g = gen_erdos_renyi(gen_n, gen_p, gen_seed);
      std::ostringstream src;
      src << "G(" << gen_n << ", " << gen_p << ") seed " << gen_seed;
      write_snap_file(g, gen_out, src.str());
      out << "wrote " << gen_out << ": " << g.order() << " vertices, " << g.size() << " edges\n";
      return 0;
    }
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return 3;
  } catch (const BudgetExhausted& e) {
    err << "budget exhausted: " << e.what() << '\n';
    return 4;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
  return 1;
}

}  // namespace knub::cli
