#include <sstream>

#include "doctest.h"
#include "oracles.hpp"

#include "jobgraph/error.hpp"
#include "jobgraph/tagger.hpp"

using namespace jobgraph;

namespace {

TagLexicon lexicon(std::initializer_list<const char*> words) {
  TagLexicon lex;
  for (const char* w : words) lex.allowed.insert(w);
  return lex;
}

std::vector<std::string> tag_names(const TagSet& ts) {
  std::vector<std::string> out;
  for (const auto& [t, f] : ts.tags) out.push_back(t);
  return out;
}

}  // namespace

TEST_SUITE("tagger") {
  TEST_CASE("only lexicon tokens become tags") {
    const TokenCounts freq{{"manager", 90}, {"sales", 80}, {"zzz", 70}};
    const TagSet ts = select_tags(freq, lexicon({"manager", "sales"}), 200);
    CHECK(tag_names(ts) == std::vector<std::string>{"manager", "sales"});
    CHECK_FALSE(ts.contains("zzz"));
  }

  TEST_CASE("frequent tokens outside the lexicon are excluded") {
    const TokenCounts freq{{"the", 1000}, {"nurse", 3}};
    CHECK(tag_names(select_tags(freq, lexicon({"nurse"}), 5)) == std::vector<std::string>{"nurse"});
  }

  TEST_CASE("ties at the cut break lexicographically") {
    const TokenCounts freq{{"b", 5}, {"a", 5}, {"c", 4}};
    const auto lex = lexicon({"a", "b", "c"});
    CHECK(tag_names(select_tags(freq, lex, 1)) == std::vector<std::string>{"a"});
    CHECK(tag_names(select_tags(freq, lex, 2)) == std::vector<std::string>{"a", "b"});
    CHECK(tag_names(select_tags(freq, lex, 3)) == std::vector<std::string>{"a", "b", "c"});
  }

  TEST_CASE("sort-and-truncate oracle over random tables") {
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 200; ++trial) {
      TokenCounts freq;
      TagLexicon lex;
      for (int i = 0; i < 12; ++i) {
        const std::string w(1, static_cast<char>('a' + i));
        freq[w] = 1 + rng() % 5;
        if (rng() % 3) lex.allowed.insert(w);
      }
      const std::size_t k = rng() % 10;
      std::vector<std::pair<std::size_t, std::string>> ranked;
      for (const auto& [w, n] : freq)
        if (lex.contains(w)) ranked.push_back({n, w});
      std::sort(ranked.begin(), ranked.end(),
                [](const auto& x, const auto& y) { return x.first != y.first ? x.first > y.first : x.second < y.second; });
      if (ranked.size() > k) ranked.resize(k);
      std::vector<std::string> expected;
      for (const auto& r : ranked) expected.push_back(r.second);
      CHECK(tag_names(select_tags(freq, lex, k)) == expected);
    }
  }

  TEST_CASE("empty lexicon is a configuration error") {
    CHECK_THROWS_AS(select_tags({{"a", 1}}, TagLexicon{}, 3), ConfigError);
  }

  TEST_CASE("title tag assignment") {
    TagSet ts;
    ts.tags = {{"automotive", 1}};
    ts.membership = {"automotive"};
    CHECK(assign_title_tags("automotive technician", ts, {}) == std::set<std::string>{"automotive"});
    CHECK(assign_title_tags("bank teller", ts, {}).empty());
    TagSet all;
    all.tags = {{"sales", 1}, {"manager", 1}};
    all.membership = {"sales", "manager"};
    CHECK(assign_title_tags("sales manager sales", all, {}) == std::set<std::string>{"manager", "sales"});
  }

  TEST_CASE("tags are a subset of lexicon and corpus tokens, at most k") {
    std::mt19937_64 rng(4);
    for (int trial = 0; trial < 50; ++trial) {
      std::istringstream in(oracle::random_corpus_jsonl(rng, 20, {"sales", "nurse", "tax", "audit"}));
      const Corpus c = parse_histories(in);
      const auto lex = lexicon({"sales", "nurse", "manager", "audit", "never"});
      const std::size_t k = 1 + rng() % 4;
      const TagSet ts = generate_tags(c, lex, k);
      CHECK(ts.size() <= k);
      for (const auto& [t, f] : ts.tags) {
        CHECK(lex.contains(t));
        CHECK(c.token_freq.count(t) == 1);
        CHECK(c.token_freq.at(t) == f);
      }
      CHECK(tag_names(generate_tags(c, lex, k)) == tag_names(ts));
      for (const auto& title : c.titles) {
        const auto words = oracle::words(title, {});
        for (const auto& t : assign_title_tags(title, ts, {}))
          CHECK(std::find(words.begin(), words.end(), t) != words.end());
      }
    }
  }

  TEST_CASE("selection depends only on the lexicon-restricted table") {
    const TokenCounts a{{"x", 4}, {"y", 3}, {"noise", 100}};
    const TokenCounts b{{"x", 4}, {"y", 3}, {"other", 7}};
    const auto lex = lexicon({"x", "y"});
    CHECK(tag_names(select_tags(a, lex, 2)) == tag_names(select_tags(b, lex, 2)));
  }

  TEST_CASE("distinct-title counting") {
    std::istringstream in(
        R"({"user_id":"u","records":[{"title":"sales lead","start":"2010-01"},{"title":"sales lead","start":"2011-01"},)"
        R"({"title":"nurse","start":"2012-01"},{"title":"nurse aide","start":"2013-01"}]})");
    const Corpus c = parse_histories(in);
    const auto lex = lexicon({"sales", "nurse"});
    CHECK(tag_names(generate_tags(c, lex, 1, FrequencyMode::Occurrences)) == std::vector<std::string>{"nurse"});
    const TagSet d = generate_tags(c, lex, 2, FrequencyMode::DistinctTitles);
    CHECK(d.tags == std::vector<std::pair<std::string, std::size_t>>{{"nurse", 2}, {"sales", 1}});
  }

  TEST_CASE("lexicon and tagset files") {
    std::istringstream lin("# comment\nSales\n\n  nurse  \n");
    const TagLexicon lex = read_lexicon(lin);
    CHECK(lex.allowed == std::unordered_set<std::string>{"sales", "nurse"});

    TagSet ts;
    ts.tags = {{"nurse", 9}, {"sales", 2}};
    ts.membership = {"nurse", "sales"};
    std::ostringstream out;
    write_tagset(out, ts);
    CHECK(out.str() == "nurse\t9\nsales\t2\n");
    std::istringstream back(out.str());
    const TagSet r = read_tagset(back);
    CHECK(r.tags == ts.tags);
    CHECK(r.membership == ts.membership);
    std::istringstream bad("nurse\tmany\n");
    CHECK_THROWS_AS(read_tagset(bad), FormatError);
  }
}
