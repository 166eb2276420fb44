#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <vector>

#include "jobgraph/graph.hpp"

namespace jobgraph {

struct WalkConfig {
  std::size_t walk_length = 10;  // nodes per walk, including the start
  std::size_t walks_per_node = 50;
  double p = 1.0;  // return parameter
  double q = 1.0;  // in-out parameter
  bool respect_direction = false;
  /// Cyclic node-kind pattern, first == last (e.g. Job, Tag, Job). Empty
  /// selects second-order node2vec walks.
  std::vector<NodeKind> metapath;
  std::uint64_t seed = 0;
  unsigned threads = 1;

  /// Throws ConfigError when a field is out of range.
  void validate() const;
};

struct WalkCorpus {
  std::vector<NodeRef> nodes;                // id -> node (the source graph's table)
  std::vector<std::vector<NodeId>> walks;    // ordered by (start ordinal, walk index)
  WalkConfig config;
};

/// Second-order biased walks from every node. From (prev, cur) the next hop x
/// is drawn with weight 1/p if x == prev, 1 if x neighbors prev, 1/q otherwise.
/// The first hop is uniform. Nodes without admissible neighbors end the walk.
WalkCorpus node2vec_walks(const HeteroGraph& g, const WalkConfig& cfg);

/// Meta-path-guided walks from every node of the path's first kind; each hop
/// is uniform over neighbors of the kind the cyclic pattern requires next.
WalkCorpus metapath_walks(const HeteroGraph& g, const WalkConfig& cfg);

/// Unnormalized node2vec weights for the candidates `next` of a step that
/// arrived at `cur` from `prev`. Exposed for exact distribution checks.
std::vector<double> node2vec_step_weights(const HeteroGraph& g, const WalkConfig& cfg, NodeId prev, NodeId cur,
                                          std::vector<NodeId>* next = nullptr);

/// Sorted, duplicate-free neighbors of a node under the walk direction mode.
std::vector<NodeId> walk_neighbors(const HeteroGraph& g, NodeId id, bool respect_direction);

void write_walks(std::ostream& out, const WalkCorpus& corpus);
/// Reads one walk per line. Node ids follow `nodes` when given (unknown tokens
/// are a FormatError), otherwise first appearance.
WalkCorpus read_walks(std::istream& in, const std::vector<NodeRef>* nodes = nullptr);

}  // namespace jobgraph
