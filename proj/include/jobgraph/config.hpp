#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"

#include "jobgraph/corpus.hpp"
#include "jobgraph/experiment.hpp"
#include "jobgraph/graph.hpp"
#include "jobgraph/sgns.hpp"
#include "jobgraph/walker.hpp"

namespace jobgraph {

nlohmann::ordered_json to_json(const WalkConfig& cfg);
WalkConfig walk_config_from_json(const nlohmann::json& j, const WalkConfig& defaults = {});
nlohmann::ordered_json to_json(const TrainConfig& cfg);
TrainConfig train_config_from_json(const nlohmann::json& j, const TrainConfig& defaults = {});

/// Everything one pipeline invocation needs. Relative paths resolve against
/// `base_dir` (the directory of the config file).
struct PipelineConfig {
  struct Paths {
    std::string corpus;
    std::string lexicon;
    std::string stopwords;
    std::string output_dir = "out";
  } paths;
  FilterOptions filter;
  std::size_t tag_k = 200;
  FrequencyMode tag_frequency = FrequencyMode::Occurrences;
  GraphKind graph = GraphKind::JobTransitionTag;
  WalkMethod method = WalkMethod::Node2Vec;
  WalkConfig walk;
  TrainConfig train;
  std::uint64_t seed = 0;
  std::vector<ExperimentConfig> experiments;
  std::filesystem::path base_dir;

  std::filesystem::path resolve(const std::string& path) const;
  /// Throws ConfigError on bad values or (when check_paths) missing input files.
  void validate(bool check_paths) const;
};

/// The default experiment suite: classification on all four graphs and link
/// prediction on jj, jj_E and jtj, node2vec on homogeneous graphs and
/// Job-Tag-Job meta-path walks on heterogeneous ones.
std::vector<ExperimentConfig> default_experiments(const PipelineConfig& cfg);

nlohmann::ordered_json to_json(const PipelineConfig& cfg);
/// Missing keys take defaults; unknown keys are a ConfigError.
PipelineConfig pipeline_from_json(const nlohmann::json& j, const std::filesystem::path& base_dir);
PipelineConfig load_pipeline_config(const std::filesystem::path& path);

}  // namespace jobgraph
