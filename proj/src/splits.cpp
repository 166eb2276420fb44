#include "jobgraph/splits.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <unordered_set>

#include "jobgraph/error.hpp"
#include "jobgraph/rng.hpp"

namespace jobgraph {

namespace {

// Guards floor() against products like 0.6 * 5 landing just under an integer.
constexpr double kFloorSlack = 1e-9;

std::uint64_t unordered_key(NodeId a, NodeId b) {
  if (a > b) std::swap(a, b);
  return (std::uint64_t{a} << 32) | b;
}

}  // namespace

void SplitSpec::validate() const {
  for (double f : {train, val, test})
    if (!(f >= 0.0 && f <= 1.0)) throw ConfigError("split fractions must lie in [0, 1]");
  if (std::abs(train + val + test - 1.0) > 1e-9) throw ConfigError("split fractions must sum to 1");
}

SplitSizes split_sizes(std::size_t n, const SplitSpec& spec) {
  spec.validate();
  SplitSizes s;
  const double dn = static_cast<double>(n);
  s.train = std::min(n, static_cast<std::size_t>(std::floor(spec.train * dn + kFloorSlack)));
  s.val = std::min(n - s.train, static_cast<std::size_t>(std::floor(spec.val * dn + kFloorSlack)));
  s.test = n - s.train - s.val;
  return s;
}

NodeSplit make_node_splits(const std::map<std::string, std::string>& labels, const SplitSpec& spec) {
  if (labels.empty()) throw InputError("no labeled titles to split");
  std::vector<std::string> titles;
  titles.reserve(labels.size());
  for (const auto& [t, _] : labels) titles.push_back(t);
  Rng rng = make_rng(spec.seed, {0x5b1});
  shuffle_range(titles.begin(), titles.end(), rng);
  const auto sz = split_sizes(titles.size(), spec);
  NodeSplit out;
  out.train.assign(titles.begin(), titles.begin() + static_cast<std::ptrdiff_t>(sz.train));
  out.val.assign(titles.begin() + static_cast<std::ptrdiff_t>(sz.train),
                 titles.begin() + static_cast<std::ptrdiff_t>(sz.train + sz.val));
  out.test.assign(titles.begin() + static_cast<std::ptrdiff_t>(sz.train + sz.val), titles.end());
  return out;
}

HeteroGraph remove_edges(const HeteroGraph& g, const std::vector<NodePair>& drop) {
  std::unordered_set<std::uint64_t> dropped;
  for (auto [s, t] : drop) dropped.insert((std::uint64_t{s} << 32) | t);
  HeteroGraph out;
  for (const auto& n : g.nodes()) out.add_node(n);
  for (const auto& e : g.edges())
    if (!dropped.count((std::uint64_t{e.source} << 32) | e.target)) out.add_edge(e.source, e.target, e.kind, e.multiplicity);
  return out;
}

EdgeSplitResult make_edge_splits(const HeteroGraph& g, const SplitSpec& spec) {
  std::vector<NodePair> positives;
  std::unordered_set<std::uint64_t> connected;
  for (const auto& e : g.edges())
    if (e.kind == EdgeKind::Transition) {
      positives.emplace_back(e.source, e.target);
      connected.insert(unordered_key(e.source, e.target));
    }
  if (positives.empty()) throw InputError("graph has no transition edges to split");

  Rng rng = make_rng(spec.seed, {0xed9e});
  shuffle_range(positives.begin(), positives.end(), rng);
  const auto sz = split_sizes(positives.size(), spec);

  std::vector<NodeId> jobs;
  for (NodeId v = 0; v < g.node_count(); ++v)
    if (g.node(v).kind == NodeKind::Job) jobs.push_back(v);
  const std::size_t needed = positives.size();
  const std::size_t all_pairs = jobs.size() < 2 ? 0 : jobs.size() * (jobs.size() - 1) / 2;
  const std::size_t available = all_pairs - connected.size();
  if (available < needed)
    throw SamplingError("graph too dense: " + std::to_string(needed) + " negative pairs needed, " +
                        std::to_string(available) + " unconnected pairs exist");

  std::vector<NodePair> negatives;
  negatives.reserve(needed);
  if (available <= 2 * needed) {
    // Dense case: enumerate every candidate and keep a random prefix.
    for (std::size_t i = 0; i < jobs.size(); ++i)
      for (std::size_t j = i + 1; j < jobs.size(); ++j)
        if (!connected.count(unordered_key(jobs[i], jobs[j]))) negatives.emplace_back(jobs[i], jobs[j]);
    shuffle_range(negatives.begin(), negatives.end(), rng);
    negatives.resize(needed);
  } else {
    std::unordered_set<std::uint64_t> taken;
    while (negatives.size() < needed) {
      NodeId a = jobs[uniform_index(rng, jobs.size())];
      NodeId b = jobs[uniform_index(rng, jobs.size())];
      if (a == b) continue;
      if (a > b) std::swap(a, b);
      const auto key = unordered_key(a, b);
      if (connected.count(key) || !taken.insert(key).second) continue;
      negatives.emplace_back(a, b);
    }
  }

  EdgeSplitResult result;
  auto& s = result.split;
  auto slice = [](const std::vector<NodePair>& v, std::size_t b, std::size_t e) {
    return std::vector<NodePair>(v.begin() + static_cast<std::ptrdiff_t>(b), v.begin() + static_cast<std::ptrdiff_t>(e));
  };
  s.train_pos = slice(positives, 0, sz.train);
  s.val_pos = slice(positives, sz.train, sz.train + sz.val);
  s.test_pos = slice(positives, sz.train + sz.val, positives.size());
  s.train_neg = slice(negatives, 0, sz.train);
  s.val_neg = slice(negatives, sz.train, sz.train + sz.val);
  s.test_neg = slice(negatives, sz.train + sz.val, negatives.size());

  std::vector<NodePair> held_out = s.val_pos;
  held_out.insert(held_out.end(), s.test_pos.begin(), s.test_pos.end());
  result.embedding_graph = remove_edges(g, held_out);
  return result;
}

}  // namespace jobgraph
