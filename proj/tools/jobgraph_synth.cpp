// Writes a generated career corpus (corpus.jsonl, lexicon.txt, stopwords.txt).
#include <filesystem>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"

#include "jobgraph/synthetic.hpp"

int main(int argc, char** argv) {
  namespace fs = std::filesystem;
  jobgraph::SyntheticSpec spec;
  std::string out_dir = "synthetic";
  CLI::App app{"Generate a synthetic career corpus", "jobgraph-synth"};
  app.add_option("--out", out_dir, "Output directory");
  app.add_option("--histories", spec.histories, "Number of histories");
  app.add_option("--classes", spec.classes, "Occupation classes");
  app.add_option("--tags-per-class", spec.tags_per_class, "Tags per class");
  app.add_option("--titles-per-tag", spec.titles_per_tag, "Titles per tag");
  app.add_option("--untagged-titles-per-class", spec.untagged_titles_per_class, "Titles per class with no tag");
  app.add_option("--min-records", spec.min_records, "Fewest records per history");
  app.add_option("--max-records", spec.max_records, "Most records per history");
  app.add_option("--stay-in-tag", spec.stay_in_tag, "Probability the next title shares the tag");
  app.add_option("--stay-in-class", spec.stay_in_class, "Probability the next title moves to another tag of the class");
  app.add_option("--untagged-rate", spec.untagged_rate, "Probability a title is drawn untagged");
  app.add_option("--seed", spec.seed, "Seed");
  CLI11_PARSE(app, argc, argv);
  if (spec.min_records == 0 || spec.max_records < spec.min_records || spec.classes == 0 ||
      spec.tags_per_class == 0 || spec.titles_per_tag == 0) {
    std::cerr << "error: inconsistent corpus shape\n";
    return 1;
  }

  const auto synth = jobgraph::make_synthetic_corpus(spec);
  fs::create_directories(out_dir);
  std::ofstream corpus(fs::path(out_dir) / "corpus.jsonl");
  jobgraph::write_histories(corpus, synth.corpus);
  std::ofstream lexicon(fs::path(out_dir) / "lexicon.txt");
  for (const auto& w : synth.lexicon) lexicon << w << '\n';
  std::ofstream stop(fs::path(out_dir) / "stopwords.txt");
  for (const auto& w : synth.stopwords) stop << w << '\n';
  std::cout << synth.corpus.histories.size() << " histories, " << synth.corpus.titles.size() << " titles -> "
            << out_dir << '\n';
  return 0;
}
