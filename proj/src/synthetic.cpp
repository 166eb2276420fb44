#include "jobgraph/synthetic.hpp"

#include <cstdio>
#include <sstream>

#include "jobgraph/rng.hpp"

namespace jobgraph {

namespace {

const char* const kTagWords[] = {"nursing", "clinical",  "software", "network", "sales",    "marketing",
                                 "payroll", "logistics", "welding",  "machine", "pharmacy", "security"};
const char* const kUntaggedWords[] = {"ward",  "patient", "code", "systems", "retail",  "account",
                                      "ledger", "freight", "shop", "plant",   "counter", "guard"};
const char* const kClassCodes[] = {"29-0000", "15-0000", "41-0000", "43-0000",
                                   "53-0000", "51-0000", "31-0000", "33-0000"};
const char* const kModifiers[] = {"senior", "junior", "lead", "chief", "assistant", "principal", "staff", "head"};
const char* const kRoles[] = {"manager",   "specialist", "coordinator", "associate",  "analyst",
                              "director",  "officer",    "technician",  "consultant", "supervisor"};

std::string word(const char* const* list, std::size_t size, std::size_t i, const char* prefix) {
  if (i < size) return list[i];
  return std::string(prefix) + std::to_string(i);
}

}  // namespace

SyntheticCorpus make_synthetic_corpus(const SyntheticSpec& spec) {
  Rng rng = make_rng(spec.seed, {0xc0de});
  SyntheticCorpus out;
  out.stopwords = {"of", "and", "the", "for", "to", "in"};

  const std::size_t tag_count = spec.classes * spec.tags_per_class;
  std::vector<std::vector<std::string>> pools(tag_count);
  std::vector<std::vector<std::string>> untagged(spec.classes);
  for (std::size_t c = 0; c < spec.classes; ++c) {
    out.class_codes.push_back(c < std::size(kClassCodes) ? kClassCodes[c] : std::to_string(60 + c) + "-0000");
    for (std::size_t t = 0; t < spec.tags_per_class; ++t) {
      const std::size_t id = c * spec.tags_per_class + t;
      const std::string tag = word(kTagWords, std::size(kTagWords), id, "tagword");
      out.lexicon.push_back(tag);
      std::vector<std::size_t> combos(std::size(kModifiers) * std::size(kRoles));
      for (std::size_t k = 0; k < combos.size(); ++k) combos[k] = k;
      shuffle_range(combos.begin(), combos.end(), rng);
      for (std::size_t k = 0; k < spec.titles_per_tag && k < combos.size(); ++k) {
        const auto m = combos[k] / std::size(kRoles), r = combos[k] % std::size(kRoles);
        // Some titles phrase the tag as "<role> of <tag>" to exercise stopwords.
        if (k % 5 == 4)
          pools[id].push_back(std::string(kModifiers[m]) + " " + kRoles[r] + " of " + tag);
        else
          pools[id].push_back(std::string(kModifiers[m]) + " " + tag + " " + kRoles[r]);
      }
    }
    for (std::size_t u = 0; u < spec.untagged_titles_per_class; ++u)
      untagged[c].push_back(word(kUntaggedWords, std::size(kUntaggedWords), c, "plain") + " " +
                            kRoles[(c + 3 * u) % std::size(kRoles)] + " " + std::to_string(u + 1));
  }
  out.lexicon.insert(out.lexicon.end(), {"executive", "compliance", "warehouse"});

  std::ostringstream jsonl;
  for (std::size_t h = 0; h < spec.histories; ++h) {
    std::size_t cls = uniform_index(rng, spec.classes);
    std::size_t tag = cls * spec.tags_per_class + uniform_index(rng, spec.tags_per_class);
    const std::size_t n = spec.min_records + uniform_index(rng, spec.max_records - spec.min_records + 1);
    int year = 1995 + static_cast<int>(uniform_index(rng, 20));
    int month = 1 + static_cast<int>(uniform_index(rng, 12));
    std::ostringstream recs;
    for (std::size_t i = 0; i < n; ++i) {
      if (i > 0) {
        const double u = uniform01(rng);
        if (u >= spec.stay_in_tag + spec.stay_in_class) {
          cls = uniform_index(rng, spec.classes);
          tag = cls * spec.tags_per_class + uniform_index(rng, spec.tags_per_class);
        } else if (u >= spec.stay_in_tag) {
          tag = cls * spec.tags_per_class + uniform_index(rng, spec.tags_per_class);
        }
      }
      const bool plain = !untagged[cls].empty() && uniform01(rng) < spec.untagged_rate;
      const auto& pool = plain ? untagged[cls] : pools[tag];
      const std::string& title = pool[uniform_index(rng, pool.size())];
      const int start_year = year, start_month = month;
      year += 1 + static_cast<int>(uniform_index(rng, 3));
      month = 1 + static_cast<int>(uniform_index(rng, 12));
      char start[16], end[16];
      std::snprintf(start, sizeof start, "%04d-%02d", start_year, start_month);
      std::snprintf(end, sizeof end, "%04d-%02d", year, month);
      if (i) recs << ',';
      recs << "{\"title\":\"" << title << "\",\"start\":\"" << start << "\",\"end\":"
           << (i + 1 == n ? std::string("null") : "\"" + std::string(end) + "\"") << ",\"label\":\""
           << out.class_codes[cls] << "\"}";
    }
    jsonl << "{\"user_id\":\"u" << h << "\",\"records\":[" << recs.str() << "]}\n";
  }
  std::istringstream in(jsonl.str());
  out.corpus = parse_histories(in, StopwordSet(out.stopwords.begin(), out.stopwords.end()));
  return out;
}

}  // namespace jobgraph
