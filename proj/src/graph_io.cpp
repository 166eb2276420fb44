#include <algorithm>
#include <charconv>
#include <istream>
#include <ostream>

#include "jobgraph/error.hpp"
#include "jobgraph/graph.hpp"

namespace jobgraph {

namespace {

std::vector<std::string_view> split_tabs(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t pos = 0;
  while (true) {
    const auto tab = line.find('\t', pos);
    fields.push_back(line.substr(pos, tab == std::string_view::npos ? std::string_view::npos : tab - pos));
    if (tab == std::string_view::npos) break;
    pos = tab + 1;
  }
  return fields;
}

NodeRef parse_node(std::string_view kind, std::string_view key, std::size_t line_no) {
  auto k = parse_node_kind(kind);
  if (!k) throw FormatError(line_no, "unknown node kind '" + std::string(kind) + "'");
  if (key.empty()) throw FormatError(line_no, "empty node key");
  return {*k, std::string(key)};
}

}  // namespace

void write_edge_list(std::ostream& out, const HeteroGraph& g) {
  std::vector<std::string> lines;
  lines.reserve(g.edge_count());
  for (const auto& e : g.edges()) {
    const auto& s = g.node(e.source);
    const auto& t = g.node(e.target);
    std::string line;
    line.append(to_string(s.kind)).append("\t").append(s.key).append("\t");
    line.append(to_string(t.kind)).append("\t").append(t.key).append("\t");
    line.append(to_string(e.kind)).append("\t").append(std::to_string(e.multiplicity));
    lines.push_back(std::move(line));
  }
  std::sort(lines.begin(), lines.end());
  for (const auto& l : lines) out << l << '\n';
}

void write_node_list(std::ostream& out, const HeteroGraph& g) {
  for (const auto& n : g.nodes()) out << to_string(n.kind) << '\t' << n.key << '\n';
}

HeteroGraph read_graph(std::istream& edges, std::istream* nodes) {
  HeteroGraph g;
  std::string line;
  std::size_t line_no = 0;
  const bool closed = nodes != nullptr;
  if (nodes) {
    while (std::getline(*nodes, line)) {
      ++line_no;
      if (line.empty()) continue;
      auto f = split_tabs(line);
      if (f.size() != 2) throw FormatError(line_no, "node list rows need 2 columns");
      g.add_node(parse_node(f[0], f[1], line_no));
    }
  }
  line_no = 0;
  while (std::getline(edges, line)) {
    ++line_no;
    if (line.empty()) continue;
    auto f = split_tabs(line);
    if (f.size() != 6) throw FormatError(line_no, "edge list rows need 6 columns, got " + std::to_string(f.size()));
    auto s = parse_node(f[0], f[1], line_no);
    auto t = parse_node(f[2], f[3], line_no);
    auto kind = parse_edge_kind(f[4]);
    if (!kind) throw FormatError(line_no, "unknown edge kind '" + std::string(f[4]) + "'");
    std::uint32_t mult = 0;
    auto [p, ec] = std::from_chars(f[5].data(), f[5].data() + f[5].size(), mult);
    if (ec != std::errc{} || p != f[5].data() + f[5].size() || mult == 0)
      throw FormatError(line_no, "bad multiplicity '" + std::string(f[5]) + "'");
    if (closed && (!g.find(s) || !g.find(t))) throw FormatError(line_no, "edge endpoint missing from node list");
    try {
      g.add_edge(g.add_node(s), g.add_node(t), *kind, mult);
    } catch (const ConsistencyError& e) {
      throw FormatError(line_no, e.what());
    }
  }
  return g;
}

}  // namespace jobgraph
