#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "jobgraph/corpus.hpp"
#include "jobgraph/tagger.hpp"

namespace jobgraph {

enum class NodeKind : std::uint8_t { Job, Tag };
enum class EdgeKind : std::uint8_t { Transition, Enhanced, HasIn };

std::string_view to_string(NodeKind kind);
std::string_view to_string(EdgeKind kind);
std::optional<NodeKind> parse_node_kind(std::string_view text);
std::optional<EdgeKind> parse_edge_kind(std::string_view text);

/// Job and tag keys live in separate namespaces: {Job,"sales"} != {Tag,"sales"}.
struct NodeRef {
  NodeKind kind = NodeKind::Job;
  std::string key;

  auto operator<=>(const NodeRef&) const = default;
};

struct NodeRefHash {
  std::size_t operator()(const NodeRef& n) const noexcept {
    return std::hash<std::string>{}(n.key) * 31u + static_cast<std::size_t>(n.kind);
  }
};

using NodeId = std::uint32_t;

struct Edge {
  NodeId source = 0;
  NodeId target = 0;
  EdgeKind kind = EdgeKind::Transition;
  std::uint32_t multiplicity = 1;  // > 1 only for repeated transitions
};

/// Typed-node, typed-directed-edge graph. At most one edge per ordered node
/// pair; a later edge on an occupied pair is absorbed (set-union semantics),
/// except repeated transitions, which bump the multiplicity.
class HeteroGraph {
 public:
  /// Returns the id of the node, inserting it if new. Ids are dense, in insertion order.
  NodeId add_node(const NodeRef& node);
  std::optional<NodeId> find(const NodeRef& node) const;
  const NodeRef& node(NodeId id) const { return nodes_[id]; }
  const std::vector<NodeRef>& nodes() const { return nodes_; }
  std::size_t node_count() const { return nodes_.size(); }
  std::size_t node_count(NodeKind kind) const;
  bool has_kind(NodeKind kind) const { return node_count(kind) != 0; }

  /// Inserts source->target. Returns true if a new edge was stored. Throws
  /// ConsistencyError on self-loops and on kind/endpoint-type mismatches.
  bool add_edge(NodeId source, NodeId target, EdgeKind kind, std::uint32_t multiplicity = 1);
  /// Adds source->target and target->source.
  void add_symmetric_edge(NodeId a, NodeId b, EdgeKind kind);

  const Edge* find_edge(NodeId source, NodeId target) const;
  bool has_edge(NodeId source, NodeId target) const { return find_edge(source, target) != nullptr; }
  const std::vector<Edge>& edges() const { return edges_; }
  std::size_t edge_count() const { return edges_.size(); }
  std::size_t edge_count(EdgeKind kind) const;

  /// Indices into edges() of edges leaving / entering a node.
  const std::vector<std::size_t>& out_edges(NodeId id) const { return out_[id]; }
  const std::vector<std::size_t>& in_edges(NodeId id) const { return in_[id]; }

 private:
  static std::uint64_t pair_key(NodeId s, NodeId t) { return (std::uint64_t{s} << 32) | t; }

  std::vector<NodeRef> nodes_;
  std::unordered_map<NodeRef, NodeId, NodeRefHash> node_index_;
  std::vector<Edge> edges_;
  std::unordered_map<std::uint64_t, std::size_t> edge_index_;
  std::vector<std::vector<std::size_t>> out_;
  std::vector<std::vector<std::size_t>> in_;
};

/// Job nodes for every corpus title (sorted order); a Transition edge per
/// consecutive pair of distinct titles in a history.
HeteroGraph build_job_transition(const Corpus& corpus);

/// Copies g and adds Enhanced edges both ways between every two job nodes
/// whose tag sets intersect. Titles absent from g are ignored.
HeteroGraph build_enhanced_job_transition(const HeteroGraph& g, const TitleTags& title_tags);

/// Job nodes (same order as build_job_transition), then one tag node per tag,
/// with HasIn edges both ways between each title and each of its tags.
HeteroGraph build_job_tag(const Corpus& corpus, const TagSet& tagset);

/// Union of the Transition edges of gjj and the HasIn edges of gjt. Throws
/// ConsistencyError when the job node sets differ.
HeteroGraph build_job_transition_tag(const HeteroGraph& gjj, const HeteroGraph& gjt);

enum class GraphKind { JobTransition, EnhancedJobTransition, JobTag, JobTransitionTag };

std::string_view to_string(GraphKind kind);
/// Accepts "jj", "jj_E" (or "jje"), "jt", "jtj".
std::optional<GraphKind> parse_graph_kind(std::string_view text);
bool is_heterogeneous(GraphKind kind);

HeteroGraph build_graph(GraphKind kind, const Corpus& corpus, const TagSet& tagset);

struct GraphStats {
  std::size_t job_count = 0;
  std::size_t tag_count = 0;
  std::size_t transition_edge_count = 0;  // directed
  std::size_t enhanced_edge_count = 0;    // directed Job-Job edges, transitions included
  std::size_t hasin_pair_count = 0;       // undirected job-tag pairs

  auto operator<=>(const GraphStats&) const = default;
};

GraphStats graph_stats(const HeteroGraph& g);

/// Edge list TSV: source_kind, source_key, target_kind, target_key, edge_kind,
/// multiplicity; one directed edge per line, lines sorted.
void write_edge_list(std::ostream& out, const HeteroGraph& g);
/// Node list TSV: kind, key; in id order. Carries isolated nodes that an edge list cannot.
void write_node_list(std::ostream& out, const HeteroGraph& g);
/// Rebuilds a graph from an edge list, optionally seeded with a node list
/// (which fixes node ids and keeps isolated nodes).
HeteroGraph read_graph(std::istream& edges, std::istream* nodes = nullptr);

}  // namespace jobgraph
