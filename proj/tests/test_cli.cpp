#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>
#include <unistd.h>

#include "cli.hpp"
#include "fixtures.hpp"
#include "knub/experiments.hpp"
#include "knub/graph.hpp"
#include "knub/participation.hpp"
#include "oracle.hpp"

namespace fs = std::filesystem;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "knub");
  std::vector<const char*> argv;
  for (auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = knub::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

class TempDir {
 public:
  TempDir() : path_(fs::temp_directory_path() / ("knub_cli_" + std::to_string(::getpid()))) {
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  std::string file(const std::string& name) const { return (path_ / name).string(); }
  std::string copy_worked_example() const {
    auto p = file("worked_example.txt");
    fs::copy_file(fixtures::data_path("worked_example.txt"), p, fs::copy_options::overwrite_existing);
    return p;
  }
  std::string write(const std::string& name, const knub::Graph& g) const {
    auto p = file(name);
    knub::write_snap_file(g, p);
    return p;
  }

 private:
  fs::path path_;
};

bool contains(const std::string& hay, const std::string& needle) { return hay.find(needle) != std::string::npos; }

}  // namespace

TEST_CASE("count") {
  TempDir tmp;
  auto fig = tmp.copy_worked_example();
  auto r = run_cli({"count", fig});
  CHECK(r.code == 0);
  CHECK(contains(r.out, "triangles: 16\n"));
  CHECK(fs::exists(fig + ".r3.stats.json"));

  auto k4 = tmp.write("k4.txt", oracle::complete_graph(4));
  r = run_cli({"count", k4, "--r", "4", "--out", tmp.file("k4.json")});
  CHECK(r.code == 0);
  CHECK(contains(r.out, "4-cliques: 1\n"));
  CHECK_FALSE(contains(r.out, "triangles"));
  auto g = knub::read_edge_list(k4, knub::EdgeListFormat::snap);
  CHECK(knub::stats_from_json(g, knub::read_file(tmp.file("k4.json"))).total == 1);
}

TEST_CASE("stats cache is reused only for the same content and r") {
  TempDir tmp;
  auto fig = tmp.copy_worked_example();
  CHECK(run_cli({"count", fig}).code == 0);
  auto again = run_cli({"solve", fig});
  CHECK(contains(again.err, "using cached stats"));
  auto r4 = run_cli({"solve", fig, "-r", "4"});
  CHECK_FALSE(contains(r4.err, "using cached stats"));

  {
    std::ofstream f(fig, std::ios::app);
    f << "0 13\n";
  }
  auto changed = run_cli({"solve", fig});
  CHECK_FALSE(contains(changed.err, "using cached stats"));
  CHECK(changed.code == 0);
}

TEST_CASE("reduce") {
  TempDir tmp;
  auto fig = tmp.copy_worked_example();
  auto r = run_cli({"reduce", fig, "--out", tmp.file("auto")});
  CHECK(r.code == 0);
  CHECK(contains(r.out, "k: 4\n"));
  CHECK(contains(r.out, "survivor: 5 vertices, 9 edges"));
  auto survivor = knub::read_edge_list(tmp.file("auto.snap.txt"), knub::EdgeListFormat::snap);
  CHECK(oracle::all_labels(survivor) == std::set<knub::Label>{6, 8, 11, 12, 13});
  auto report = nlohmann::json::parse(knub::read_file(tmp.file("auto.report.json")));
  CHECK(report["k"] == 4);

  r = run_cli({"reduce", fig, "--k", "5", "--out", tmp.file("five")});
  CHECK(r.code == 0);
  CHECK(contains(r.out, "no 5-clique exists"));

  auto k6 = tmp.write("k6.txt", oracle::complete_graph(6));
  r = run_cli({"reduce", k6, "--k", "3", "--out", tmp.file("k6nub")});
  CHECK(r.code == 0);
  auto same = knub::read_edge_list(tmp.file("k6nub.snap.txt"), knub::EdgeListFormat::snap);
  CHECK(same.order() == 6);
  CHECK(same.size() == 15);
}

TEST_CASE("solve") {
  TempDir tmp;
  auto fig = tmp.copy_worked_example();
  auto r = run_cli({"solve", fig, "--out", tmp.file("res.json"), "--trace", tmp.file("trace.json")});
  CHECK(r.code == 0);
  CHECK(contains(r.out, "clique number: 4 (exact)"));
  auto res = nlohmann::json::parse(knub::read_file(tmp.file("res.json")));
  CHECK(res["kind"] == "exact");
  CHECK(res["lower"] == 4);
  CHECK(nlohmann::json::parse(knub::read_file(tmp.file("trace.json")))["iterations"].is_array());

  std::vector<std::pair<knub::VertexId, knub::VertexId>> c5;
  for (knub::VertexId v = 0; v < 5; ++v) c5.emplace_back(v, (v + 1) % 5);
  auto cyc = tmp.write("c5.txt", knub::Graph::from_edges(5, c5));
  r = run_cli({"solve", cyc});
  CHECK(r.code == 0);
  CHECK(contains(r.out, "clique number: 2 (exact)"));

  r = run_cli({"solve", fig, "--direct", "--node-budget", "1000000", "--time-budget", "5"});
  CHECK(contains(r.out, "clique number: 4 (exact)"));
  r = run_cli({"solve", fig, "--recount", "--k", "3", "--threads", "2"});
  CHECK(contains(r.out, "clique number: 4 (exact)"));
}

TEST_CASE("compare-core") {
  TempDir tmp;
  auto k10 = tmp.write("k10.txt", oracle::complete_graph(10));
  auto r = run_cli({"compare-core", k10, "--k", "6"});
  CHECK(r.code == 0);
  CHECK(contains(r.out, "1.000000"));
  auto fig = tmp.copy_worked_example();
  r = run_cli({"compare-core", fig});
  CHECK(contains(r.out, "k: 4\n"));
  CHECK(contains(r.out, "0.416667"));
}

TEST_CASE("bench and generate") {
  TempDir tmp;
  auto r = run_cli({"bench", "--orders", "50", "--densities", "0.3", "--replicates", "1", "--no-timings", "--out",
                    tmp.file("rows.csv"), "--aggregate", tmp.file("agg.csv")});
  CHECK(r.code == 0);
  std::istringstream rows(knub::read_file(tmp.file("rows.csv")));
  int n = 0;
  for (std::string l; std::getline(rows, l);) ++n;
  CHECK(n == 2);
  CHECK(fs::exists(tmp.file("agg.csv")));

  {
    std::ofstream cfg(tmp.file("bench.json"));
    cfg << R"({"orders":[30],"densities":[0.4],"replicates":2,"seed":3,"timings":false})";
  }
  auto a = run_cli({"bench", "--config", tmp.file("bench.json")});
  auto b = run_cli({"bench", "--config", tmp.file("bench.json")});
  CHECK(a.code == 0);
  CHECK(a.out == b.out);

  r = run_cli({"generate", "--n", "100", "--p", "0.1", "--seed", "4", "--out", tmp.file("g.txt")});
  CHECK(r.code == 0);
  auto g = knub::read_edge_list(tmp.file("g.txt"), knub::EdgeListFormat::snap);
  CHECK(g.size() == knub::gen_erdos_renyi(100, 0.1, 4).size());
}

TEST_CASE("errors map to nonzero exit codes") {
  TempDir tmp;
  CHECK(run_cli({}).code != 0);
  CHECK(run_cli({"count"}).code != 0);
  CHECK(run_cli({"count", tmp.file("missing.txt")}).code == 2);
  {
    std::ofstream bad(tmp.file("bad.txt"));
    bad << "1 2\nfoo bar\n";
  }
  auto r = run_cli({"count", tmp.file("bad.txt")});
  CHECK(r.code == 3);
  CHECK(contains(r.err, "line 2"));
  CHECK(run_cli({"count", tmp.copy_worked_example(), "--format", "gml"}).code != 0);
  CHECK(run_cli({"bench", "--densities", "1.5"}).code == 2);
  auto warn = run_cli({"count", tmp.copy_worked_example(), "--r", "2"});
  CHECK(warn.code == 0);
  CHECK(contains(warn.err, "warning"));
}
