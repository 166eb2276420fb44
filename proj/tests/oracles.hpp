#pragma once

// Independent reference implementations used as test oracles. They share no
// code with the library beyond its public data types.

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "jobgraph/corpus.hpp"
#include "jobgraph/graph.hpp"
#include "jobgraph/tagger.hpp"

namespace oracle {

using jobgraph::Corpus;
using jobgraph::EdgeKind;
using jobgraph::GraphKind;
using jobgraph::HeteroGraph;
using jobgraph::NodeKind;

// (source kind, source key, target kind, target key, edge kind, multiplicity)
using EdgeRow = std::tuple<char, std::string, char, std::string, char, unsigned>;
using NodeRow = std::pair<char, std::string>;

struct PlainGraph {
  std::set<NodeRow> nodes;
  std::set<EdgeRow> edges;
  bool operator==(const PlainGraph&) const = default;
};

inline char code(NodeKind k) { return k == NodeKind::Job ? 'J' : 'T'; }
inline char code(EdgeKind k) { return k == EdgeKind::Transition ? 'X' : k == EdgeKind::Enhanced ? 'E' : 'H'; }

inline PlainGraph flatten(const HeteroGraph& g) {
  PlainGraph out;
  for (const auto& n : g.nodes()) out.nodes.insert({code(n.kind), n.key});
  for (const auto& e : g.edges()) {
    const auto& s = g.node(e.source);
    const auto& t = g.node(e.target);
    out.edges.insert({code(s.kind), s.key, code(t.kind), t.key, code(e.kind), e.multiplicity});
  }
  return out;
}

/// Title -> ordered record titles per history, read straight off the corpus.
inline std::vector<std::vector<std::string>> title_sequences(const Corpus& c) {
  std::vector<std::vector<std::string>> out;
  for (const auto& h : c.histories) {
    std::vector<std::string> seq;
    for (const auto& r : h.records) seq.push_back(r.title_norm);
    out.push_back(std::move(seq));
  }
  return out;
}

/// Lowercase ASCII word split; letters only.
inline std::vector<std::string> words(const std::string& title, const std::set<std::string>& stop) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : title + " ") {
    if (std::isalpha(static_cast<unsigned char>(ch))) {
      cur += static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
    } else if (!cur.empty()) {
      if (!stop.count(cur)) out.push_back(cur);
      cur.clear();
    }
  }
  return out;
}

/// Brute-force constructor for the four graph variants.
inline PlainGraph brute_force_graph(GraphKind kind, const std::vector<std::vector<std::string>>& seqs,
                                    const std::set<std::string>& tags, const std::set<std::string>& stop) {
  PlainGraph out;
  std::set<std::string> titles;
  for (const auto& s : seqs) titles.insert(s.begin(), s.end());
  for (const auto& t : titles) out.nodes.insert({'J', t});

  std::map<std::pair<std::string, std::string>, unsigned> transitions;
  for (const auto& s : seqs)
    for (std::size_t i = 0; i + 1 < s.size(); ++i)
      if (s[i] != s[i + 1]) ++transitions[{s[i], s[i + 1]}];

  std::map<std::string, std::set<std::string>> title_tags;
  for (const auto& t : titles)
    for (const auto& w : words(t, stop))
      if (tags.count(w)) title_tags[t].insert(w);

  const bool with_transitions = kind != GraphKind::JobTag;
  const bool with_tags = kind == GraphKind::JobTag || kind == GraphKind::JobTransitionTag;
  if (with_transitions)
    for (const auto& [pair, m] : transitions) out.edges.insert({'J', pair.first, 'J', pair.second, 'X', m});
  if (kind == GraphKind::EnhancedJobTransition) {
    for (const auto& a : titles)
      for (const auto& b : titles) {
        if (a == b || transitions.count({a, b})) continue;
        bool shared = false;
        for (const auto& w : title_tags[a]) shared = shared || title_tags[b].count(w) > 0;
        if (shared) out.edges.insert({'J', a, 'J', b, 'E', 1});
      }
  }
  if (with_tags) {
    for (const auto& w : tags) out.nodes.insert({'T', w});
    for (const auto& [t, ws] : title_tags)
      for (const auto& w : ws) {
        out.edges.insert({'J', t, 'T', w, 'H', 1});
        out.edges.insert({'T', w, 'J', t, 'H', 1});
      }
  }
  return out;
}

/// Record-level view of a history for the filter oracle.
struct PlainRecord {
  std::string title;
  std::optional<std::string> label;
};
using PlainHistory = std::pair<std::string, std::vector<PlainRecord>>;

inline std::vector<PlainHistory> plain_histories(const Corpus& c) {
  std::vector<PlainHistory> out;
  for (const auto& h : c.histories) {
    PlainHistory ph{h.user_id, {}};
    for (const auto& r : h.records) ph.second.push_back({r.title_norm, r.label});
    out.push_back(std::move(ph));
  }
  return out;
}

/// Count labels over records, drop rare-label records, drop short histories;
/// repeat until nothing changes.
inline std::vector<PlainHistory> count_and_prune(std::vector<PlainHistory> hs, std::size_t min_records,
                                                 std::size_t min_label) {
  for (;;) {
    std::map<std::string, std::size_t> counts;
    for (const auto& h : hs)
      for (const auto& r : h.second)
        if (r.label) ++counts[*r.label];
    std::vector<PlainHistory> next;
    for (const auto& h : hs) {
      PlainHistory kept{h.first, {}};
      for (const auto& r : h.second)
        if (!r.label || counts[*r.label] >= min_label) kept.second.push_back(r);
      if (kept.second.size() >= min_records) next.push_back(std::move(kept));
    }
    std::size_t before = 0, after = 0;
    for (const auto& h : hs) before += h.second.size() + 1;
    for (const auto& h : next) after += h.second.size() + 1;
    hs = std::move(next);
    if (before == after) return hs;
  }
}

/// Probability that a random positive outscores a random negative, ties 1/2.
inline double pairwise_auc(const std::vector<double>& scores, const std::vector<int>& labels) {
  double wins = 0;
  std::size_t pairs = 0;
  for (std::size_t i = 0; i < scores.size(); ++i)
    for (std::size_t j = 0; j < scores.size(); ++j)
      if (labels[i] == 1 && labels[j] == 0) {
        ++pairs;
        wins += scores[i] > scores[j] ? 1.0 : scores[i] == scores[j] ? 0.5 : 0.0;
      }
  return wins / static_cast<double>(pairs);
}

/// Largest root of the characteristic polynomial of a symmetric 3x3 matrix,
/// by the trigonometric closed form.
inline double largest_eigenvalue_3x3(const double a[3][3]) {
  const double p1 = a[0][1] * a[0][1] + a[0][2] * a[0][2] + a[1][2] * a[1][2];
  const double q = (a[0][0] + a[1][1] + a[2][2]) / 3.0;
  if (p1 == 0) return std::max({a[0][0], a[1][1], a[2][2]});
  const double p2 = (a[0][0] - q) * (a[0][0] - q) + (a[1][1] - q) * (a[1][1] - q) + (a[2][2] - q) * (a[2][2] - q) +
                    2 * p1;
  const double p = std::sqrt(p2 / 6.0);
  double b[3][3];
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) b[i][j] = (a[i][j] - (i == j ? q : 0.0)) / p;
  const double det = b[0][0] * (b[1][1] * b[2][2] - b[1][2] * b[2][1]) -
                     b[0][1] * (b[1][0] * b[2][2] - b[1][2] * b[2][0]) +
                     b[0][2] * (b[1][0] * b[2][1] - b[1][1] * b[2][0]);
  const double r = std::clamp(det / 2.0, -1.0, 1.0);
  const double phi = std::acos(r) / 3.0;
  return q + 2 * p * std::cos(phi);
}

/// JSON-lines corpus with random titles drawn from small word pools, so that
/// titles repeat across histories and share words.
inline std::string random_corpus_jsonl(std::mt19937_64& rng, std::size_t max_histories,
                                       const std::vector<std::string>& tag_words, std::size_t label_count = 3) {
  static const char* kRoles[] = {"manager", "clerk", "analyst", "director", "assistant"};
  static const char* kFillers[] = {"of", "senior", "junior", "2", "the"};
  auto pick = [&](std::size_t n) { return static_cast<std::size_t>(rng() % n); };
  std::ostringstream out;
  const std::size_t histories = 1 + pick(max_histories);
  for (std::size_t h = 0; h < histories; ++h) {
    out << "{\"user_id\":\"u" << h << "\",\"records\":[";
    const std::size_t n = 1 + pick(5);
    for (std::size_t i = 0; i < n; ++i) {
      std::string title = kRoles[pick(std::size(kRoles))];
      if (!tag_words.empty() && pick(4) != 0) title = tag_words[pick(tag_words.size())] + " " + title;
      if (pick(3) == 0) title = std::string(kFillers[pick(std::size(kFillers))]) + " " + title;
      if (!tag_words.empty() && pick(5) == 0) title += " " + tag_words[pick(tag_words.size())];
      if (i) out << ',';
      out << "{\"title\":\"" << title << "\",\"start\":\"" << 2000 + i << "-0" << 1 + pick(9) << "\",\"end\":null";
      if (pick(6) != 0) out << ",\"label\":\"L" << pick(label_count) << "\"";
      out << '}';
    }
    out << "]}\n";
  }
  return out.str();
}

}  // namespace oracle
