#include "jobgraph/graph.hpp"

#include <map>
#include <set>

#include "jobgraph/error.hpp"

namespace jobgraph {

std::string_view to_string(NodeKind kind) { return kind == NodeKind::Job ? "job" : "tag"; }

std::string_view to_string(EdgeKind kind) {
  switch (kind) {
    case EdgeKind::Transition: return "transition";
    case EdgeKind::Enhanced: return "enhanced";
    case EdgeKind::HasIn: return "hasin";
  }
  return "?";
}

std::optional<NodeKind> parse_node_kind(std::string_view text) {
  if (text == "job" || text == "J") return NodeKind::Job;
  if (text == "tag" || text == "T") return NodeKind::Tag;
  return std::nullopt;
}

std::optional<EdgeKind> parse_edge_kind(std::string_view text) {
  if (text == "transition") return EdgeKind::Transition;
  if (text == "enhanced") return EdgeKind::Enhanced;
  if (text == "hasin") return EdgeKind::HasIn;
  return std::nullopt;
}

NodeId HeteroGraph::add_node(const NodeRef& node) {
  auto [it, inserted] = node_index_.try_emplace(node, static_cast<NodeId>(nodes_.size()));
  if (inserted) {
    nodes_.push_back(node);
    out_.emplace_back();
    in_.emplace_back();
  }
  return it->second;
}

std::optional<NodeId> HeteroGraph::find(const NodeRef& node) const {
  auto it = node_index_.find(node);
  if (it == node_index_.end()) return std::nullopt;
  return it->second;
}

std::size_t HeteroGraph::node_count(NodeKind kind) const {
  std::size_t n = 0;
  for (const auto& v : nodes_) n += v.kind == kind;
  return n;
}

bool HeteroGraph::add_edge(NodeId source, NodeId target, EdgeKind kind, std::uint32_t multiplicity) {
  if (source >= nodes_.size() || target >= nodes_.size()) throw ConsistencyError("edge endpoint out of range");
  if (source == target) throw ConsistencyError("self-loop on '" + nodes_[source].key + "'");
  const bool jobs = nodes_[source].kind == NodeKind::Job && nodes_[target].kind == NodeKind::Job;
  const bool mixed = nodes_[source].kind != nodes_[target].kind;
  if ((kind == EdgeKind::HasIn && !mixed) || (kind != EdgeKind::HasIn && !jobs))
    throw ConsistencyError(std::string(to_string(kind)) + " edge between '" + nodes_[source].key + "' and '" +
                           nodes_[target].key + "' has the wrong endpoint kinds");
  if (multiplicity == 0) throw ConsistencyError("edge multiplicity must be positive");

  auto [it, inserted] = edge_index_.try_emplace(pair_key(source, target), edges_.size());
  if (!inserted) {
    auto& e = edges_[it->second];
    if (e.kind == EdgeKind::Transition && kind == EdgeKind::Transition) e.multiplicity += multiplicity;
    return false;
  }
  edges_.push_back({source, target, kind, kind == EdgeKind::Transition ? multiplicity : 1u});
  out_[source].push_back(edges_.size() - 1);
  in_[target].push_back(edges_.size() - 1);
  return true;
}

void HeteroGraph::add_symmetric_edge(NodeId a, NodeId b, EdgeKind kind) {
  add_edge(a, b, kind);
  add_edge(b, a, kind);
}

const Edge* HeteroGraph::find_edge(NodeId source, NodeId target) const {
  auto it = edge_index_.find(pair_key(source, target));
  return it == edge_index_.end() ? nullptr : &edges_[it->second];
}

std::size_t HeteroGraph::edge_count(EdgeKind kind) const {
  std::size_t n = 0;
  for (const auto& e : edges_) n += e.kind == kind;
  return n;
}

HeteroGraph build_job_transition(const Corpus& corpus) {
  HeteroGraph g;
  for (const auto& t : corpus.titles) g.add_node({NodeKind::Job, t});
  for (const auto& h : corpus.histories)
    for (std::size_t i = 0; i + 1 < h.records.size(); ++i) {
      const auto& from = h.records[i].title_norm;
      const auto& to = h.records[i + 1].title_norm;
      if (from == to) continue;
      g.add_edge(*g.find({NodeKind::Job, from}), *g.find({NodeKind::Job, to}), EdgeKind::Transition);
    }
  return g;
}

HeteroGraph build_enhanced_job_transition(const HeteroGraph& g, const TitleTags& title_tags) {
  HeteroGraph out = g;
  std::map<std::string, std::vector<NodeId>> members;
  for (NodeId id = 0; id < g.node_count(); ++id) {
    const auto& n = g.node(id);
    if (n.kind != NodeKind::Job) continue;
    auto it = title_tags.find(n.key);
    if (it == title_tags.end()) continue;
    for (const auto& tag : it->second) members[tag].push_back(id);
  }
  for (const auto& [tag, ids] : members)
    for (NodeId x : ids)
      for (NodeId y : ids)
        if (x != y) out.add_edge(x, y, EdgeKind::Enhanced);
  return out;
}

HeteroGraph build_job_tag(const Corpus& corpus, const TagSet& tagset) {
  HeteroGraph g;
  for (const auto& t : corpus.titles) g.add_node({NodeKind::Job, t});
  for (const auto& [tag, freq] : tagset.tags) g.add_node({NodeKind::Tag, tag});
  for (const auto& t : corpus.titles) {
    const NodeId job = *g.find({NodeKind::Job, t});
    for (const auto& tag : assign_title_tags(t, tagset, corpus.stopwords))
      g.add_symmetric_edge(job, *g.find({NodeKind::Tag, tag}), EdgeKind::HasIn);
  }
  return g;
}

HeteroGraph build_job_transition_tag(const HeteroGraph& gjj, const HeteroGraph& gjt) {
  std::set<std::string> jobs_a, jobs_b;
  for (const auto& n : gjj.nodes())
    if (n.kind == NodeKind::Job) jobs_a.insert(n.key);
  for (const auto& n : gjt.nodes())
    if (n.kind == NodeKind::Job) jobs_b.insert(n.key);
  if (jobs_a != jobs_b)
    throw ConsistencyError("job-transition and job-tag graphs have different job node sets (" +
                           std::to_string(jobs_a.size()) + " vs " + std::to_string(jobs_b.size()) + ")");

  HeteroGraph out;
  for (const auto& n : gjj.nodes())
    if (n.kind == NodeKind::Job) out.add_node(n);
  for (const auto& n : gjt.nodes())
    if (n.kind == NodeKind::Tag) out.add_node(n);
  for (const auto& e : gjj.edges())
    if (e.kind == EdgeKind::Transition)
      out.add_edge(*out.find(gjj.node(e.source)), *out.find(gjj.node(e.target)), e.kind, e.multiplicity);
  for (const auto& e : gjt.edges())
    if (e.kind == EdgeKind::HasIn) out.add_edge(*out.find(gjt.node(e.source)), *out.find(gjt.node(e.target)), e.kind);
  return out;
}

std::string_view to_string(GraphKind kind) {
  switch (kind) {
    case GraphKind::JobTransition: return "jj";
    case GraphKind::EnhancedJobTransition: return "jj_E";
    case GraphKind::JobTag: return "jt";
    case GraphKind::JobTransitionTag: return "jtj";
  }
  return "?";
}

std::optional<GraphKind> parse_graph_kind(std::string_view text) {
  if (text == "jj") return GraphKind::JobTransition;
  if (text == "jj_E" || text == "jj_e" || text == "jje") return GraphKind::EnhancedJobTransition;
  if (text == "jt") return GraphKind::JobTag;
  if (text == "jtj") return GraphKind::JobTransitionTag;
  return std::nullopt;
}

bool is_heterogeneous(GraphKind kind) { return kind == GraphKind::JobTag || kind == GraphKind::JobTransitionTag; }

HeteroGraph build_graph(GraphKind kind, const Corpus& corpus, const TagSet& tagset) {
  switch (kind) {
    case GraphKind::JobTransition: return build_job_transition(corpus);
    case GraphKind::EnhancedJobTransition:
      return build_enhanced_job_transition(build_job_transition(corpus), tag_titles(corpus, tagset));
    case GraphKind::JobTag: return build_job_tag(corpus, tagset);
    case GraphKind::JobTransitionTag:
      return build_job_transition_tag(build_job_transition(corpus), build_job_tag(corpus, tagset));
  }
  throw ConfigError("unknown graph kind");
}

GraphStats graph_stats(const HeteroGraph& g) {
  GraphStats s;
  s.job_count = g.node_count(NodeKind::Job);
  s.tag_count = g.node_count(NodeKind::Tag);
  std::size_t hasin_directed = 0;
  for (const auto& e : g.edges()) {
    switch (e.kind) {
      case EdgeKind::Transition: ++s.transition_edge_count; [[fallthrough]];
      case EdgeKind::Enhanced: ++s.enhanced_edge_count; break;
      case EdgeKind::HasIn: ++hasin_directed; break;
    }
  }
  s.hasin_pair_count = hasin_directed / 2;
  return s;
}

}  // namespace jobgraph
