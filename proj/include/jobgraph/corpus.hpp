#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include <Eigen/Core>

namespace jobgraph {

/// Calendar date at year-month resolution.
struct YearMonth {
  int year = 0;
  int month = 1;

  auto operator<=>(const YearMonth&) const = default;

  /// Parses "YYYY-MM"; returns nullopt on anything else.
  static std::optional<YearMonth> parse(std::string_view text);
  std::string to_string() const;
};

using StopwordSet = std::unordered_set<std::string>;
using TokenCounts = std::map<std::string, std::size_t>;

struct WorkRecord {
  std::string title_raw;
  std::string title_norm;
  YearMonth start;
  std::optional<YearMonth> end;  // nullopt: ongoing
  std::optional<std::string> label;
};

struct WorkHistory {
  std::string user_id;
  std::vector<WorkRecord> records;  // ascending by start, stable on ties
};

/// How title tokens are counted into a frequency table.
enum class FrequencyMode {
  Occurrences,     // every record mention of a title counts
  DistinctTitles,  // each distinct title counts once
};

struct Corpus {
  std::vector<WorkHistory> histories;
  std::set<std::string> titles;
  std::map<std::string, std::string> labels;  // title -> occupation code, partial
  TokenCounts token_freq;                     // FrequencyMode::Occurrences
  StopwordSet stopwords;                      // used for token_freq; carried through filtering

  std::size_t record_count() const;
};

struct Vocabulary {
  std::vector<std::string> tokens;
  std::unordered_map<std::string, std::size_t> index;

  std::size_t size() const { return tokens.size(); }
  bool contains(const std::string& t) const { return index.count(t) != 0; }
};

struct FilterOptions {
  std::size_t min_records = 2;
  std::size_t min_label_occurrence = 200;
  /// true: rare-label records leave the corpus entirely. false: the records
  /// stay in the graph but lose their label, so they only drop out of evaluation.
  bool drop_rare_records = true;
};

/// Lowercases ASCII and collapses runs of whitespace to single spaces, trimmed.
std::string normalize_title(std::string_view raw);

/// Splits on every non-letter byte and drops stopwords. Pure-number and
/// punctuation fragments disappear because they contain no letters. Bytes
/// >= 0x80 are kept as letters so accented UTF-8 text tokenizes as words.
std::vector<std::string> tokenize_title(std::string_view title_norm, const StopwordSet& stopwords);

/// Reads the JSON-lines history format, one user per line. Blank lines are skipped.
Corpus parse_histories(std::istream& in, StopwordSet stopwords = {});
void write_histories(std::ostream& out, const Corpus& corpus);

/// One token per line; blank lines and '#' comments ignored. Tokens are normalized.
StopwordSet read_stopwords(std::istream& in);

/// Recomputes titles, labels and token_freq from the histories.
void reindex(Corpus& corpus);

/// Removes rare-label records and short histories, repeated until neither
/// rule changes the corpus, then reindexes.
Corpus filter_corpus(const Corpus& corpus, const FilterOptions& options = {});

TokenCounts count_tokens(const Corpus& corpus, FrequencyMode mode = FrequencyMode::Occurrences);

/// Tokens with frequency >= 2, by descending frequency then lexicographic.
Vocabulary build_vocabulary(const Corpus& corpus);

using FeatureMatrix = Eigen::Matrix<std::uint8_t, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// Multi-hot rows, one per title in corpus.titles order.
FeatureMatrix export_one_hot_features(const Corpus& corpus, const Vocabulary& vocab);

/// TSV: header "title" + vocabulary tokens, then one row per title.
void write_feature_tsv(std::ostream& out, const Corpus& corpus, const Vocabulary& vocab,
                       const FeatureMatrix& features);

}  // namespace jobgraph
