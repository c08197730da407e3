#include <charconv>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "rcut/error.hpp"
#include "rcut/graph.hpp"

namespace rcut {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    const std::size_t start = i;
    while (i < s.size() && s[i] != ' ' && s[i] != '\t') ++i;
    if (i > start) out.push_back(s.substr(start, i - start));
  }
  return out;
}

std::uint64_t parse_uint(std::string_view tok, std::size_t line) {
  std::uint64_t value = 0;
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc() || ptr != tok.data() + tok.size()) {
    throw ParseError(line, "expected a nonnegative integer, got '" + std::string(tok) + "'");
  }
  return value;
}

}  // namespace

Graph parse_graph(const std::string& text) {
  std::istringstream in(text);
  std::string raw;
  std::size_t line_no = 0;
  bool have_header = false;
  std::size_t n = 0;
  std::size_t d = 0;
  Provenance provenance;
  std::vector<std::pair<Vertex, Vertex>> edges;

  while (std::getline(in, raw)) {
    ++line_no;
    const auto line = trim(raw);
    if (line.empty()) continue;
    if (line.front() == '#') {
      const auto body = trim(line.substr(1));
      if (body == "vertex-transitive") {
        provenance.vertex_transitive = true;
      } else if (body.starts_with("family:")) {
        provenance.family = std::string(trim(body.substr(7)));
      }
      continue;
    }
    const auto tokens = split_ws(line);
    if (!have_header) {
      if (tokens.size() != 3 || tokens[0] != "graph") throw ParseError(line_no, "expected header 'graph <n> <d>'");
      n = parse_uint(tokens[1], line_no);
      d = parse_uint(tokens[2], line_no);
      if (n == 0) throw ParseError(line_no, "graph must have at least one vertex");
      if (d < 3) throw ValidationError("d >= 3 required (header declares d = " + std::to_string(d) + ")");
      if ((n * d) % 2 != 0) throw ParseError(line_no, "n*d must be even");
      have_header = true;
      edges.reserve(n * d / 2);
      continue;
    }
    if (tokens.size() != 2) throw ParseError(line_no, "expected an edge line '<u> <v>'");
    const auto u = parse_uint(tokens[0], line_no);
    const auto v = parse_uint(tokens[1], line_no);
    if (u >= n || v >= n) throw ParseError(line_no, "vertex id out of range");
    if (u >= v) throw ParseError(line_no, "edge must satisfy u < v");
    const std::pair<Vertex, Vertex> e{static_cast<Vertex>(u), static_cast<Vertex>(v)};
    if (!edges.empty()) {
      if (e == edges.back()) throw ParseError(line_no, "duplicate edge");
      if (e < edges.back()) throw ParseError(line_no, "edges are not sorted lexicographically");
    }
    edges.push_back(e);
  }
  if (!have_header) throw ParseError(line_no, "missing header 'graph <n> <d>'");
  if (edges.size() != n * d / 2) {
    throw ParseError(line_no, "expected " + std::to_string(n * d / 2) + " edge lines, found " +
                                  std::to_string(edges.size()));
  }
  Graph g = Graph::from_edges(n, edges, std::move(provenance));
  if (g.d() != d) throw ValidationError("d_regular: header declares d = " + std::to_string(d));
  require_admissible(g);
  return g;
}

Graph load_graph(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open graph file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_graph(buf.str());
}

std::string format_graph(const Graph& graph) {
  std::string out;
  out.reserve(graph.n() * graph.d() * 8 + 64);
  if (!graph.provenance().family.empty()) out += "# family: " + graph.provenance().family + "\n";
  if (graph.provenance().vertex_transitive) out += "# vertex-transitive\n";
  out += "graph " + std::to_string(graph.n()) + " " + std::to_string(graph.d()) + "\n";
  for (const auto& [u, v] : graph.edges()) {
    out += std::to_string(u);
    out += ' ';
    out += std::to_string(v);
    out += '\n';
  }
  return out;
}

void save_graph(const Graph& graph, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write graph file " + path.string());
  out << format_graph(graph);
  if (!out) throw IoError("write failed for " + path.string());
}

}  // namespace rcut
