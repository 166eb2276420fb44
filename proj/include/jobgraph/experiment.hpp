#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "jobgraph/classifier.hpp"
#include "jobgraph/corpus.hpp"
#include "jobgraph/embedding.hpp"
#include "jobgraph/graph.hpp"
#include "jobgraph/metrics.hpp"
#include "jobgraph/sgns.hpp"
#include "jobgraph/splits.hpp"
#include "jobgraph/tagger.hpp"
#include "jobgraph/walker.hpp"

namespace jobgraph {

enum class Task { Classification, LinkPrediction };
enum class WalkMethod { Node2Vec, Metapath };

std::string_view to_string(Task task);
std::string_view to_string(WalkMethod method);
std::optional<Task> parse_task(std::string_view text);
std::optional<WalkMethod> parse_walk_method(std::string_view text);

struct ExperimentConfig {
  Task task = Task::Classification;
  GraphKind graph = GraphKind::JobTransition;
  WalkMethod method = WalkMethod::Node2Vec;
  WalkConfig walk;  // seed ignored; derived per run
  TrainConfig train;  // seed ignored; derived per run
  SplitSpec split;    // seed ignored; derived per run
  std::size_t repetitions = 10;
  double l2 = 5e-4;
  std::vector<EdgeOperator> operators{std::begin(kAllEdgeOperators), std::end(kAllEdgeOperators)};
  std::uint64_t base_seed = 0;
  /// Runs evaluated concurrently; results do not depend on it.
  unsigned parallel_runs = 1;

  /// Throws ConfigError on bad fields or an incompatible graph/method pairing.
  void validate() const;
};

struct RunSeeds {
  std::uint64_t run = 0, split = 0, walk = 0, train = 0;
};

/// All per-run seeds derive from (base_seed, run index).
RunSeeds run_seeds(std::uint64_t base_seed, std::size_t run);

struct RunScore {
  std::size_t run = 0;
  std::uint64_t seed = 0;
  std::map<std::string, double> scores;  // macro_f1/micro_f1 or auc/val_auc
  std::string op;                        // linkpred: validation-selected operator
};

struct MetricsReport {
  Task task = Task::Classification;
  std::string graph;
  std::string method;
  std::string op;  // most frequently selected operator (linkpred)
  std::vector<RunScore> per_run;
  std::map<std::string, double> mean;
  std::map<std::string, double> std;  // population
  nlohmann::ordered_json config;
  std::uint64_t base_seed = 0;

  /// Recomputes mean/std/op from per_run.
  void aggregate();
};

nlohmann::ordered_json to_json(const MetricsReport& report);
MetricsReport report_from_json(const nlohmann::json& j);
/// One row per run: task, graph, method, run, seed, operator, then the score columns.
void write_report_tsv(std::ostream& out, const MetricsReport& report);
/// "0.206/0.360" for classification, "0.692" for link prediction.
std::string format_summary(const MetricsReport& report);

nlohmann::ordered_json to_json(const ExperimentConfig& cfg);
ExperimentConfig experiment_from_json(const nlohmann::json& j, const ExperimentConfig& defaults = {});

/// Builds the walk corpus for a graph with the configured method.
WalkCorpus generate_walks(const HeteroGraph& g, WalkMethod method, const WalkConfig& cfg);

/// Embeds `g` (walks + skip-gram) with the given seeds.
EmbeddingMatrix embed_graph(const HeteroGraph& g, const ExperimentConfig& cfg, const RunSeeds& seeds);

/// Train+val fitting on embedding rows of labeled titles, test-split scoring.
RunScore classification_run(const HeteroGraph& g, const Corpus& corpus, const ExperimentConfig& cfg, std::size_t run);

/// The same protocol on fixed embeddings; only the split varies with `run`.
RunScore classification_run(const EmbeddingMatrix& emb, const Corpus& corpus, const ExperimentConfig& cfg,
                            std::size_t run);

/// Leakage-guarded link prediction on the graph's Transition edges, operator
/// chosen by validation AUC.
RunScore linkpred_run(const HeteroGraph& g, const ExperimentConfig& cfg, std::size_t run);

/// Repeats the configured pipeline `repetitions` times and aggregates.
MetricsReport run_experiment(const Corpus& corpus, const TagSet& tagset, const ExperimentConfig& cfg);

}  // namespace jobgraph
