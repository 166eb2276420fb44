#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "jobgraph/graph.hpp"

namespace jobgraph {

struct SplitSpec {
  double train = 0.6;
  double val = 0.2;
  double test = 0.2;
  std::uint64_t seed = 0;

  void validate() const;
};

struct SplitSizes {
  std::size_t train = 0, val = 0, test = 0;
};

/// floor(train*n), floor(val*n), and the remainder for test.
SplitSizes split_sizes(std::size_t n, const SplitSpec& spec);

struct NodeSplit {
  std::vector<std::string> train, val, test;
};

/// Seeded uniform partition of the labeled titles. Throws InputError when empty.
NodeSplit make_node_splits(const std::map<std::string, std::string>& labels, const SplitSpec& spec);

using NodePair = std::pair<NodeId, NodeId>;

struct EdgeSplit {
  std::vector<NodePair> train_pos, val_pos, test_pos;  // directed transition edges
  std::vector<NodePair> train_neg, val_neg, test_neg;  // unordered, stored (low id, high id)
};

struct EdgeSplitResult {
  EdgeSplit split;
  HeteroGraph embedding_graph;  // input graph minus the val/test positives
};

/// Partitions the Transition edges and draws as many negatives per part from
/// job pairs with no Transition edge either way. Throws SamplingError when the
/// graph is too dense to supply them, InputError when it has no transitions.
EdgeSplitResult make_edge_splits(const HeteroGraph& g, const SplitSpec& spec);

/// Copy of g without the listed directed edges.
HeteroGraph remove_edges(const HeteroGraph& g, const std::vector<NodePair>& drop);

}  // namespace jobgraph
