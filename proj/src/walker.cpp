#include "jobgraph/walker.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <span>
#include <sstream>
#include <thread>
#include <unordered_map>

#include "jobgraph/error.hpp"
#include "jobgraph/node_key.hpp"
#include "jobgraph/rng.hpp"

namespace jobgraph {

namespace {

// Compressed neighbor lists for the walk direction mode.
struct Adjacency {
  std::vector<std::size_t> offset;
  std::vector<NodeId> target;

  Adjacency(const HeteroGraph& g, bool respect_direction) {
    offset.reserve(g.node_count() + 1);
    offset.push_back(0);
    for (NodeId v = 0; v < g.node_count(); ++v) {
      auto nb = walk_neighbors(g, v, respect_direction);
      target.insert(target.end(), nb.begin(), nb.end());
      offset.push_back(target.size());
    }
  }

  std::span<const NodeId> operator()(NodeId v) const {
    return {target.data() + offset[v], target.data() + offset[v + 1]};
  }

  bool connected(NodeId from, NodeId to) const {
    auto nb = (*this)(from);
    return std::binary_search(nb.begin(), nb.end(), to);
  }
};

NodeId draw_weighted(std::span<const NodeId> candidates, const std::vector<double>& cumulative, Rng& rng) {
  const double r = uniform01(rng) * cumulative.back();
  auto it = std::upper_bound(cumulative.begin(), cumulative.end(), r);
  if (it == cumulative.end()) --it;
  return candidates[static_cast<std::size_t>(it - cumulative.begin())];
}

template <typename WalkFn>
std::vector<std::vector<NodeId>> generate(const std::vector<NodeId>& starts, const WalkConfig& cfg, WalkFn&& walk_fn) {
  std::vector<std::vector<NodeId>> walks(starts.size() * cfg.walks_per_node);
  auto work = [&](std::size_t begin, std::size_t end) {
    for (std::size_t ordinal = begin; ordinal < end; ++ordinal)
      for (std::size_t w = 0; w < cfg.walks_per_node; ++w) {
        Rng rng = make_rng(cfg.seed, {ordinal, w});
        walks[ordinal * cfg.walks_per_node + w] = walk_fn(starts[ordinal], rng);
      }
  };
  const std::size_t threads = std::clamp<std::size_t>(cfg.threads, 1, std::max<std::size_t>(1, starts.size()));
  if (threads == 1) {
    work(0, starts.size());
    return walks;
  }
  std::vector<std::thread> pool;
  const std::size_t chunk = (starts.size() + threads - 1) / threads;
  for (std::size_t t = 0; t < threads; ++t) {
    const std::size_t b = t * chunk, e = std::min(starts.size(), b + chunk);
    if (b < e) pool.emplace_back(work, b, e);
  }
  for (auto& th : pool) th.join();
  return walks;
}

}  // namespace

void WalkConfig::validate() const {
  if (walk_length < 1) throw ConfigError("walk_length must be >= 1");
  if (walks_per_node < 1) throw ConfigError("walks_per_node must be >= 1");
  if (!(p > 0.0) || !(q > 0.0)) throw ConfigError("node2vec p and q must be positive");
  if (!metapath.empty() && (metapath.size() < 2 || metapath.front() != metapath.back()))
    throw ConfigError("metapath needs at least two kinds and must start and end with the same kind");
}

std::vector<NodeId> walk_neighbors(const HeteroGraph& g, NodeId id, bool respect_direction) {
  std::vector<NodeId> nb;
  for (auto e : g.out_edges(id)) nb.push_back(g.edges()[e].target);
  if (!respect_direction)
    for (auto e : g.in_edges(id)) nb.push_back(g.edges()[e].source);
  std::sort(nb.begin(), nb.end());
  nb.erase(std::unique(nb.begin(), nb.end()), nb.end());
  return nb;
}

std::vector<double> node2vec_step_weights(const HeteroGraph& g, const WalkConfig& cfg, NodeId prev, NodeId cur,
                                          std::vector<NodeId>* next) {
  const auto candidates = walk_neighbors(g, cur, cfg.respect_direction);
  const auto prev_nb = walk_neighbors(g, prev, cfg.respect_direction);
  std::vector<double> w;
  for (NodeId x : candidates) {
    if (x == prev)
      w.push_back(1.0 / cfg.p);
    else if (std::binary_search(prev_nb.begin(), prev_nb.end(), x))
      w.push_back(1.0);
    else
      w.push_back(1.0 / cfg.q);
  }
  if (next) *next = candidates;
  return w;
}

WalkCorpus node2vec_walks(const HeteroGraph& g, const WalkConfig& cfg) {
  cfg.validate();
  if (!cfg.metapath.empty()) throw ConfigError("node2vec walks take no metapath");
  if (g.node_count() == 0) throw ConfigError("cannot walk an empty graph");
  const Adjacency adj(g, cfg.respect_direction);
  const double inv_p = 1.0 / cfg.p, inv_q = 1.0 / cfg.q;

  std::vector<NodeId> starts(g.node_count());
  for (NodeId v = 0; v < starts.size(); ++v) starts[v] = v;

  auto walk_fn = [&](NodeId start, Rng& rng) {
    std::vector<NodeId> walk{start};
    walk.reserve(cfg.walk_length);
    std::vector<double> cumulative;
    while (walk.size() < cfg.walk_length) {
      const NodeId cur = walk.back();
      const auto nb = adj(cur);
      if (nb.empty()) break;
      if (walk.size() == 1) {
        walk.push_back(nb[uniform_index(rng, nb.size())]);
        continue;
      }
      const NodeId prev = walk[walk.size() - 2];
      cumulative.clear();
      double total = 0.0;
      for (NodeId x : nb) {
        total += x == prev ? inv_p : adj.connected(prev, x) ? 1.0 : inv_q;
        cumulative.push_back(total);
      }
      walk.push_back(draw_weighted(nb, cumulative, rng));
    }
    return walk;
  };
  return {g.nodes(), generate(starts, cfg, walk_fn), cfg};
}

WalkCorpus metapath_walks(const HeteroGraph& g, const WalkConfig& cfg) {
  cfg.validate();
  if (cfg.metapath.empty()) throw ConfigError("metapath walks need a metapath");
  for (auto kind : cfg.metapath)
    if (!g.has_kind(kind))
      throw ConfigError("metapath uses node kind '" + std::string(to_string(kind)) + "' absent from the graph");
  const Adjacency adj(g, cfg.respect_direction);
  const std::size_t period = cfg.metapath.size() - 1;

  std::vector<NodeId> starts;
  for (NodeId v = 0; v < g.node_count(); ++v)
    if (g.node(v).kind == cfg.metapath.front()) starts.push_back(v);

  auto walk_fn = [&](NodeId start, Rng& rng) {
    std::vector<NodeId> walk{start};
    walk.reserve(cfg.walk_length);
    std::vector<NodeId> admissible;
    while (walk.size() < cfg.walk_length) {
      const NodeKind want = cfg.metapath[walk.size() % period];
      admissible.clear();
      for (NodeId x : adj(walk.back()))
        if (g.node(x).kind == want) admissible.push_back(x);
      if (admissible.empty()) break;
      walk.push_back(admissible[uniform_index(rng, admissible.size())]);
    }
    return walk;
  };
  return {g.nodes(), generate(starts, cfg, walk_fn), cfg};
}

void write_walks(std::ostream& out, const WalkCorpus& corpus) {
  for (const auto& walk : corpus.walks) {
    for (std::size_t i = 0; i < walk.size(); ++i) {
      if (i) out << ' ';
      out << walk_token(corpus.nodes[walk[i]]);
    }
    out << '\n';
  }
}

WalkCorpus read_walks(std::istream& in, const std::vector<NodeRef>* nodes) {
  WalkCorpus corpus;
  std::unordered_map<NodeRef, NodeId, NodeRefHash> index;
  if (nodes) {
    corpus.nodes = *nodes;
    for (NodeId i = 0; i < nodes->size(); ++i) index.emplace((*nodes)[i], i);
  }
  std::string line, token;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ls(line);
    std::vector<NodeId> walk;
    while (ls >> token) {
      NodeRef n;
      try {
        n = parse_walk_token(token);
      } catch (const InputError& e) {
        throw FormatError(line_no, e.what());
      }
      auto it = index.find(n);
      if (it == index.end()) {
        if (nodes) throw FormatError(line_no, "walk node '" + token + "' is not in the node list");
        it = index.emplace(n, static_cast<NodeId>(corpus.nodes.size())).first;
        corpus.nodes.push_back(std::move(n));
      }
      walk.push_back(it->second);
    }
    if (!walk.empty()) corpus.walks.push_back(std::move(walk));
  }
  return corpus;
}

}  // namespace jobgraph
