#pragma once

#include <cstddef>
#include <iosfwd>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <unordered_set>
#include <utility>
#include <vector>

#include "jobgraph/corpus.hpp"

namespace jobgraph {

/// Curated responsibility/functionality vocabulary that tags are drawn from.
struct TagLexicon {
  std::unordered_set<std::string> allowed;

  bool contains(const std::string& token) const { return allowed.count(token) != 0; }
};

/// Reads one token per line; '#' starts a comment line. Tokens go through the
/// same normalization as title tokens.
TagLexicon read_lexicon(std::istream& in);

struct TagSet {
  std::vector<std::pair<std::string, std::size_t>> tags;  // (token, frequency), best first
  std::unordered_set<std::string> membership;

  std::size_t size() const { return tags.size(); }
  bool contains(const std::string& token) const { return membership.count(token) != 0; }
};

/// The k most frequent lexicon tokens of `freq`; equal frequencies rank lexicographically.
TagSet select_tags(const TokenCounts& freq, const TagLexicon& lexicon, std::size_t k = 200);

TagSet generate_tags(const Corpus& corpus, const TagLexicon& lexicon, std::size_t k = 200,
                     FrequencyMode mode = FrequencyMode::Occurrences);

/// Distinct title tokens that are tags, in sorted order.
std::set<std::string> assign_title_tags(std::string_view title_norm, const TagSet& tagset, const StopwordSet& stopwords);

using TitleTags = std::map<std::string, std::set<std::string>>;

/// assign_title_tags for every title of the corpus (titles without tags map to {}).
TitleTags tag_titles(const Corpus& corpus, const TagSet& tagset);

/// TSV lines "tag<TAB>frequency".
void write_tagset(std::ostream& out, const TagSet& tagset);
TagSet read_tagset(std::istream& in);

}  // namespace jobgraph
