#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>
#include <unordered_map>

#include "knub/error.hpp"
#include "knub/graph.hpp"

namespace knub {

namespace {

class LineReader {
 public:
  explicit LineReader(std::string_view text) : text_(text) {}

  bool next(std::string_view& line) {
    if (pos_ >= text_.size()) return false;
    std::size_t end = text_.find('\n', pos_);
    if (end == std::string_view::npos) end = text_.size();
    line = text_.substr(pos_, end - pos_);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    pos_ = end + 1;
    ++number_;
    return true;
  }
  std::size_t number() const { return number_; }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t number_ = 0;
};

bool is_separator(char c) { return std::isspace(static_cast<unsigned char>(c)) || c == ','; }

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && is_separator(line[i])) ++i;
    std::size_t j = i;
    while (j < line.size() && !is_separator(line[j])) ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

bool blank(std::string_view line) {
  return std::all_of(line.begin(), line.end(), [](char c) { return std::isspace(static_cast<unsigned char>(c)); });
}

std::int64_t parse_int(std::string_view field, std::size_t line) {
  std::int64_t value = 0;
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc{} || ptr != field.data() + field.size()) {
    throw ParseError(line, "expected an integer vertex id, got '" + std::string(field) + "'");
  }
  return value;
}

Graph parse_snap(std::string_view text) {
  LineReader reader(text);
  std::string_view line;
  std::vector<std::pair<Label, Label>> raw;
  while (reader.next(line)) {
    if (blank(line)) continue;
    std::size_t first = line.find_first_not_of(" \t");
    if (line[first] == '#' || line[first] == '%') continue;
    auto fields = split_fields(line);
    if (fields.size() != 2) throw ParseError(reader.number(), "expected exactly two vertex ids");
    raw.emplace_back(parse_int(fields[0], reader.number()), parse_int(fields[1], reader.number()));
  }

  std::vector<Label> ids;
  ids.reserve(raw.size() * 2);
  for (auto [a, b] : raw) {
    ids.push_back(a);
    ids.push_back(b);
  }
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  std::unordered_map<Label, VertexId> index;
  index.reserve(ids.size());
  for (std::size_t i = 0; i < ids.size(); ++i) index.emplace(ids[i], static_cast<VertexId>(i));

  std::vector<std::pair<VertexId, VertexId>> edges;
  edges.reserve(raw.size());
  for (auto [a, b] : raw) edges.emplace_back(index.at(a), index.at(b));
  const auto n = static_cast<VertexId>(ids.size());
  Graph g = Graph::from_edges(n, edges, std::move(ids));
  if (g.size() == 0) throw ParseError(0, "edge list contains no edges");
  return g;
}

Graph parse_mtx(std::string_view text) {
  LineReader reader(text);
  std::string_view line;
  if (!reader.next(line) || !line.starts_with("%%MatrixMarket")) {
    throw ParseError(1, "missing %%MatrixMarket header");
  }
  {
    auto header = split_fields(line);
    std::string joined;
    for (auto f : header) {
      std::string lower(f);
      std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
      joined += lower + " ";
    }
    if (joined.find("coordinate") == std::string::npos) {
      throw ParseError(1, "only coordinate MatrixMarket files are supported");
    }
  }

  std::int64_t rows = -1;
  std::int64_t cols = -1;
  std::vector<std::pair<VertexId, VertexId>> edges;
  while (reader.next(line)) {
    if (blank(line)) continue;
    std::size_t first = line.find_first_not_of(" \t");
    if (line[first] == '%') continue;
    auto fields = split_fields(line);
    if (rows < 0) {
      if (fields.size() != 3) throw ParseError(reader.number(), "size line must be 'rows cols entries'");
      rows = parse_int(fields[0], reader.number());
      cols = parse_int(fields[1], reader.number());
      parse_int(fields[2], reader.number());
      if (rows <= 0 || rows != cols) throw ParseError(reader.number(), "adjacency matrix must be square");
      continue;
    }
    if (fields.size() < 2 || fields.size() > 3) throw ParseError(reader.number(), "expected 'i j [value]'");
    std::int64_t i = parse_int(fields[0], reader.number());
    std::int64_t j = parse_int(fields[1], reader.number());
    if (i < 1 || j < 1 || i > rows || j > rows) throw ParseError(reader.number(), "entry index out of range");
    edges.emplace_back(static_cast<VertexId>(i - 1), static_cast<VertexId>(j - 1));
  }
  if (rows < 0) throw ParseError(reader.number(), "missing size line");
  std::vector<Label> labels(static_cast<std::size_t>(rows));
  for (std::size_t v = 0; v < labels.size(); ++v) labels[v] = static_cast<Label>(v + 1);
  Graph g = Graph::from_edges(static_cast<VertexId>(rows), edges, std::move(labels));
  if (g.size() == 0) throw ParseError(0, "edge list contains no edges");
  return g;
}

}  // namespace

EdgeListFormat parse_format(std::string_view name) {
  if (name == "snap" || name == "snap-txt" || name == "txt") return EdgeListFormat::snap;
  if (name == "mtx") return EdgeListFormat::mtx;
  throw DomainError("unknown edge-list format '" + std::string(name) + "'");
}

Graph parse_edge_list(std::string_view text, EdgeListFormat format) {
  return format == EdgeListFormat::snap ? parse_snap(text) : parse_mtx(text);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

Graph read_edge_list(const std::string& path, EdgeListFormat format) {
  return parse_edge_list(read_file(path), format);
}

std::string write_snap(const Graph& g, std::string_view source) {
  std::ostringstream out;
  out << "# n: " << g.order() << "\n# m: " << g.size() << "\n";
  if (!source.empty()) out << "# source: " << source << "\n";
  for (auto [u, v] : g.edges()) out << g.label(u) << ' ' << g.label(v) << '\n';
  return out.str();
}

void write_snap_file(const Graph& g, const std::string& path, std::string_view source) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write '" + path + "'");
  out << write_snap(g, source);
}

}  // namespace knub
