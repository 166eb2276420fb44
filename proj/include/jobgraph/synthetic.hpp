#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "jobgraph/corpus.hpp"

namespace jobgraph {

/// Shape of a generated career corpus. Each class owns `tags_per_class` tag
/// words; every tag has a pool of titles "<modifier> <tag> <role>". Careers
/// mostly stay inside one tag's pool, sometimes move within the class, and
/// occasionally jump to a random class.
struct SyntheticSpec {
  std::size_t histories = 40;
  std::size_t classes = 3;
  std::size_t tags_per_class = 2;
  std::size_t titles_per_tag = 12;
  std::size_t untagged_titles_per_class = 2;
  std::size_t min_records = 2;
  std::size_t max_records = 4;
  double stay_in_tag = 0.6;
  double stay_in_class = 0.25;  // remaining mass: random class
  double untagged_rate = 0.08;
  std::uint64_t seed = 7;
};

struct SyntheticCorpus {
  Corpus corpus;                       // parsed form, stopwords applied
  std::vector<std::string> lexicon;    // class tags plus a few decoys that never occur
  std::vector<std::string> stopwords;
  std::vector<std::string> class_codes;
};

SyntheticCorpus make_synthetic_corpus(const SyntheticSpec& spec);

}  // namespace jobgraph
