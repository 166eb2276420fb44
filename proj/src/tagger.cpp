#include "jobgraph/tagger.hpp"

#include <algorithm>
#include <charconv>
#include <istream>
#include <ostream>

#include "jobgraph/error.hpp"

namespace jobgraph {

TagLexicon read_lexicon(std::istream& in) {
  TagLexicon lex;
  std::string line;
  while (std::getline(in, line)) {
    auto t = normalize_title(line);
    if (t.empty() || t.front() == '#') continue;
    for (auto& tok : tokenize_title(t, {})) lex.allowed.insert(std::move(tok));
  }
  return lex;
}

TagSet select_tags(const TokenCounts& freq, const TagLexicon& lexicon, std::size_t k) {
  if (lexicon.allowed.empty()) throw ConfigError("tag lexicon is empty");
  std::vector<std::pair<std::string, std::size_t>> candidates;
  for (const auto& [tok, n] : freq)
    if (n > 0 && lexicon.contains(tok)) candidates.emplace_back(tok, n);
  std::sort(candidates.begin(), candidates.end(), [](const auto& a, const auto& b) {
    return a.second != b.second ? a.second > b.second : a.first < b.first;
  });
  if (candidates.size() > k) candidates.resize(k);
  TagSet ts;
  for (auto& c : candidates) ts.membership.insert(c.first);
  ts.tags = std::move(candidates);
  return ts;
}

TagSet generate_tags(const Corpus& corpus, const TagLexicon& lexicon, std::size_t k, FrequencyMode mode) {
  if (mode == FrequencyMode::Occurrences) return select_tags(corpus.token_freq, lexicon, k);
  return select_tags(count_tokens(corpus, mode), lexicon, k);
}

std::set<std::string> assign_title_tags(std::string_view title_norm, const TagSet& tagset,
                                        const StopwordSet& stopwords) {
  std::set<std::string> out;
  for (auto& tok : tokenize_title(title_norm, stopwords))
    if (tagset.contains(tok)) out.insert(std::move(tok));
  return out;
}

TitleTags tag_titles(const Corpus& corpus, const TagSet& tagset) {
  TitleTags out;
  for (const auto& t : corpus.titles) out.emplace(t, assign_title_tags(t, tagset, corpus.stopwords));
  return out;
}

void write_tagset(std::ostream& out, const TagSet& tagset) {
  for (const auto& [tok, n] : tagset.tags) out << tok << '\t' << n << '\n';
}

TagSet read_tagset(std::istream& in) {
  TagSet ts;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos || tab == 0) throw FormatError(line_no, "expected 'tag<TAB>frequency'");
    std::size_t n = 0;
    const char* first = line.data() + tab + 1;
    const char* last = line.data() + line.size();
    auto [p, ec] = std::from_chars(first, last, n);
    if (ec != std::errc{} || p != last) throw FormatError(line_no, "bad tag frequency");
    auto tok = line.substr(0, tab);
    if (!ts.membership.insert(tok).second) throw FormatError(line_no, "duplicate tag '" + tok + "'");
    ts.tags.emplace_back(std::move(tok), n);
  }
  return ts;
}

}  // namespace jobgraph
