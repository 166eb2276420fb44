#include "jobgraph/corpus.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <istream>
#include <ostream>

#include "jobgraph/error.hpp"
#include "json.hpp"

namespace jobgraph {

namespace {

using nlohmann::json;

bool is_space(unsigned char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v'; }

bool is_letter(unsigned char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c >= 0x80; }

std::string required_string(const json& obj, const char* key, std::size_t line) {
  auto it = obj.find(key);
  if (it == obj.end() || !it->is_string())
    throw ParseError(line, std::string("missing or non-string field '") + key + "'");
  return it->get<std::string>();
}

YearMonth required_date(const json& obj, const char* key, std::size_t line) {
  const auto text = required_string(obj, key, line);
  auto date = YearMonth::parse(text);
  if (!date) throw ParseError(line, std::string("bad date '") + text + "' in field '" + key + "'");
  return *date;
}

WorkRecord parse_record(const json& r, const std::string& user, std::size_t line) {
  if (!r.is_object()) throw ParseError(line, "record is not an object");
  WorkRecord rec;
  rec.title_raw = required_string(r, "title", line);
  rec.title_norm = normalize_title(rec.title_raw);
  if (rec.title_norm.empty()) throw ValidationError("user " + user + ": empty title");
  rec.start = required_date(r, "start", line);
  if (auto it = r.find("end"); it != r.end() && !it->is_null()) {
    rec.end = required_date(r, "end", line);
    if (*rec.end < rec.start)
      throw ValidationError("user " + user + ": record '" + rec.title_raw + "' ends (" + rec.end->to_string() +
                            ") before it starts (" + rec.start.to_string() + ")");
  }
  if (auto it = r.find("label"); it != r.end() && !it->is_null()) {
    if (!it->is_string()) throw ParseError(line, "label must be a string or null");
    auto label = it->get<std::string>();
    if (!label.empty()) rec.label = std::move(label);
  }
  return rec;
}

}  // namespace

std::optional<YearMonth> YearMonth::parse(std::string_view text) {
  if (text.size() != 7 || text[4] != '-') return std::nullopt;
  YearMonth d;
  auto [p1, e1] = std::from_chars(text.data(), text.data() + 4, d.year);
  auto [p2, e2] = std::from_chars(text.data() + 5, text.data() + 7, d.month);
  if (e1 != std::errc{} || e2 != std::errc{} || p1 != text.data() + 4 || p2 != text.data() + 7) return std::nullopt;
  if (d.month < 1 || d.month > 12) return std::nullopt;
  return d;
}

std::string YearMonth::to_string() const {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-%02d", year, month);
  return buf;
}

std::size_t Corpus::record_count() const {
  std::size_t n = 0;
  for (const auto& h : histories) n += h.records.size();
  return n;
}

std::string normalize_title(std::string_view raw) {
  std::string out;
  out.reserve(raw.size());
  bool pending_space = false;
  for (unsigned char c : raw) {
    if (is_space(c)) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) out.push_back(' ');
    pending_space = false;
    out.push_back(static_cast<char>(c >= 'A' && c <= 'Z' ? c - 'A' + 'a' : c));
  }
  return out;
}

std::vector<std::string> tokenize_title(std::string_view title_norm, const StopwordSet& stopwords) {
  std::vector<std::string> tokens;
  std::string cur;
  auto flush = [&] {
    if (!cur.empty() && !stopwords.count(cur)) tokens.push_back(cur);
    cur.clear();
  };
  for (unsigned char c : title_norm) {
    if (is_letter(c))
      cur.push_back(static_cast<char>(c >= 'A' && c <= 'Z' ? c - 'A' + 'a' : c));
    else
      flush();
  }
  flush();
  return tokens;
}

Corpus parse_histories(std::istream& in, StopwordSet stopwords) {
  Corpus corpus;
  corpus.stopwords = std::move(stopwords);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (std::all_of(line.begin(), line.end(), [](unsigned char c) { return is_space(c); })) continue;
    json obj;
    try {
      obj = json::parse(line);
    } catch (const json::parse_error& e) {
      throw ParseError(line_no, std::string("invalid JSON: ") + e.what());
    }
    if (!obj.is_object()) throw ParseError(line_no, "expected a JSON object");
    WorkHistory h;
    h.user_id = required_string(obj, "user_id", line_no);
    auto recs = obj.find("records");
    if (recs == obj.end() || !recs->is_array()) throw ParseError(line_no, "missing 'records' array");
    if (recs->empty()) throw ValidationError("user " + h.user_id + ": no work records");
    for (const auto& r : *recs) h.records.push_back(parse_record(r, h.user_id, line_no));
    std::stable_sort(h.records.begin(), h.records.end(),
                     [](const WorkRecord& a, const WorkRecord& b) { return a.start < b.start; });
    corpus.histories.push_back(std::move(h));
  }
  reindex(corpus);
  return corpus;
}

void write_histories(std::ostream& out, const Corpus& corpus) {
  for (const auto& h : corpus.histories) {
    json recs = json::array();
    for (const auto& r : h.records) {
      recs.push_back({{"title", r.title_norm},
                      {"start", r.start.to_string()},
                      {"end", r.end ? json(r.end->to_string()) : json(nullptr)},
                      {"label", r.label ? json(*r.label) : json(nullptr)}});
    }
    out << json{{"user_id", h.user_id}, {"records", std::move(recs)}}.dump() << '\n';
  }
}

StopwordSet read_stopwords(std::istream& in) {
  StopwordSet words;
  std::string line;
  while (std::getline(in, line)) {
    auto t = normalize_title(line);
    if (t.empty() || t.front() == '#') continue;
    words.insert(std::move(t));
  }
  return words;
}

void reindex(Corpus& corpus) {
  corpus.titles.clear();
  corpus.labels.clear();
  // Majority label per title; ties go to the lexicographically smallest code.
  std::map<std::string, std::map<std::string, std::size_t>> votes;
  for (const auto& h : corpus.histories)
    for (const auto& r : h.records) {
      corpus.titles.insert(r.title_norm);
      if (r.label) ++votes[r.title_norm][*r.label];
    }
  for (const auto& [title, counts] : votes) {
    auto best = counts.begin();
    for (auto it = counts.begin(); it != counts.end(); ++it)
      if (it->second > best->second) best = it;
    corpus.labels.emplace(title, best->first);
  }
  corpus.token_freq = count_tokens(corpus, FrequencyMode::Occurrences);
}

Corpus filter_corpus(const Corpus& corpus, const FilterOptions& options) {
  Corpus out = corpus;
  for (bool changed = true; changed;) {
    changed = false;
    std::map<std::string, std::size_t> label_count;
    for (const auto& h : out.histories)
      for (const auto& r : h.records)
        if (r.label) ++label_count[*r.label];
    auto rare = [&](const WorkRecord& r) { return r.label && label_count[*r.label] < options.min_label_occurrence; };

    for (auto& h : out.histories) {
      if (options.drop_rare_records) {
        const auto before = h.records.size();
        std::erase_if(h.records, rare);
        changed |= h.records.size() != before;
      } else {
        for (auto& r : h.records)
          if (rare(r)) {
            r.label.reset();
            changed = true;
          }
      }
    }
    const auto before = out.histories.size();
    std::erase_if(out.histories, [&](const WorkHistory& h) { return h.records.size() < options.min_records; });
    changed |= out.histories.size() != before;
  }
  reindex(out);
  return out;
}

TokenCounts count_tokens(const Corpus& corpus, FrequencyMode mode) {
  TokenCounts freq;
  if (mode == FrequencyMode::DistinctTitles) {
    for (const auto& t : corpus.titles)
      for (auto& tok : tokenize_title(t, corpus.stopwords)) ++freq[tok];
    return freq;
  }
  // Tokenize each distinct title once and weight by its mention count.
  std::map<std::string, std::size_t> mentions;
  for (const auto& h : corpus.histories)
    for (const auto& r : h.records) ++mentions[r.title_norm];
  for (const auto& [title, n] : mentions)
    for (auto& tok : tokenize_title(title, corpus.stopwords)) freq[tok] += n;
  return freq;
}

Vocabulary build_vocabulary(const Corpus& corpus) {
  std::vector<std::pair<std::string, std::size_t>> kept;
  for (const auto& [tok, n] : corpus.token_freq)
    if (n >= 2) kept.emplace_back(tok, n);
  std::stable_sort(kept.begin(), kept.end(), [](const auto& a, const auto& b) { return a.second > b.second; });
  Vocabulary v;
  for (auto& [tok, n] : kept) {
    v.index.emplace(tok, v.tokens.size());
    v.tokens.push_back(tok);
  }
  return v;
}

FeatureMatrix export_one_hot_features(const Corpus& corpus, const Vocabulary& vocab) {
  FeatureMatrix m = FeatureMatrix::Zero(static_cast<Eigen::Index>(corpus.titles.size()),
                                        static_cast<Eigen::Index>(vocab.size()));
  Eigen::Index row = 0;
  for (const auto& title : corpus.titles) {
    for (const auto& tok : tokenize_title(title, corpus.stopwords))
      if (auto it = vocab.index.find(tok); it != vocab.index.end()) m(row, static_cast<Eigen::Index>(it->second)) = 1;
    ++row;
  }
  return m;
}

void write_feature_tsv(std::ostream& out, const Corpus& corpus, const Vocabulary& vocab,
                       const FeatureMatrix& features) {
  out << "title";
  for (const auto& t : vocab.tokens) out << '\t' << t;
  out << '\n';
  Eigen::Index row = 0;
  for (const auto& title : corpus.titles) {
    out << title;
    for (Eigen::Index c = 0; c < features.cols(); ++c) out << '\t' << int(features(row, c));
    out << '\n';
    ++row;
  }
}

}  // namespace jobgraph
