#include "jobgraph/config.hpp"

#include <fstream>

#include "jobgraph/error.hpp"

namespace jobgraph {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

template <typename Fn>
void for_each_key(const json& j, const char* section, Fn&& fn) {
  if (!j.is_object()) throw ConfigError(std::string(section) + " must be an object");
  try {
    for (const auto& [key, v] : j.items())
      if (!fn(key, v)) throw ConfigError(std::string("unknown key '") + key + "' in " + section);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("bad value in ") + section + ": " + e.what());
  }
}

}  // namespace

ordered_json to_json(const WalkConfig& cfg) {
  ordered_json path = ordered_json::array();
  for (auto k : cfg.metapath) path.push_back(to_string(k));
  return ordered_json{{"walk_length", cfg.walk_length}, {"walks_per_node", cfg.walks_per_node},
                      {"p", cfg.p},
                      {"q", cfg.q},
                      {"respect_direction", cfg.respect_direction},
                      {"metapath", std::move(path)},
                      {"threads", cfg.threads}};
}

WalkConfig walk_config_from_json(const json& j, const WalkConfig& defaults) {
  WalkConfig cfg = defaults;
  for_each_key(j, "walk", [&](const std::string& key, const json& v) {
    if (key == "walk_length") cfg.walk_length = v.get<std::size_t>();
    else if (key == "walks_per_node") cfg.walks_per_node = v.get<std::size_t>();
    else if (key == "p") cfg.p = v.get<double>();
    else if (key == "q") cfg.q = v.get<double>();
    else if (key == "respect_direction") cfg.respect_direction = v.get<bool>();
    else if (key == "threads") cfg.threads = v.get<unsigned>();
    else if (key == "metapath") {
      cfg.metapath.clear();
      for (const auto& k : v) {
        auto kind = parse_node_kind(k.get<std::string>());
        if (!kind) throw ConfigError("unknown node kind '" + k.get<std::string>() + "' in metapath");
        cfg.metapath.push_back(*kind);
      }
    } else return false;
    return true;
  });
  return cfg;
}

ordered_json to_json(const TrainConfig& cfg) {
  return ordered_json{{"dim", cfg.dim},
                      {"window", cfg.window},
                      {"negatives", cfg.negatives},
                      {"epochs", cfg.epochs},
                      {"initial_step_size", cfg.initial_step_size},
                      {"deterministic", cfg.deterministic},
                      {"threads", cfg.threads}};
}

TrainConfig train_config_from_json(const json& j, const TrainConfig& defaults) {
  TrainConfig cfg = defaults;
  for_each_key(j, "train", [&](const std::string& key, const json& v) {
    if (key == "dim") cfg.dim = v.get<std::size_t>();
    else if (key == "window") cfg.window = v.get<std::size_t>();
    else if (key == "negatives") cfg.negatives = v.get<std::size_t>();
    else if (key == "epochs") cfg.epochs = v.get<std::size_t>();
    else if (key == "initial_step_size") cfg.initial_step_size = v.get<double>();
    else if (key == "deterministic") cfg.deterministic = v.get<bool>();
    else if (key == "threads") cfg.threads = v.get<unsigned>();
    else return false;
    return true;
  });
  return cfg;
}

std::filesystem::path PipelineConfig::resolve(const std::string& path) const {
  std::filesystem::path p(path);
  return p.is_absolute() || base_dir.empty() ? p : base_dir / p;
}

void PipelineConfig::validate(bool check_paths) const {
  walk.validate();
  train.validate();
  if (tag_k < 1) throw ConfigError("tags.k must be >= 1");
  if (filter.min_records < 1) throw ConfigError("filter.min_records must be >= 1");
  for (const auto& e : experiments) e.validate();
  if (!check_paths) return;
  auto need = [&](const std::string& value, const char* name) {
    if (value.empty()) throw ConfigError(std::string("paths.") + name + " is not set");
    if (!std::filesystem::exists(resolve(value)))
      throw ConfigError(std::string("paths.") + name + " does not exist: " + resolve(value).string());
  };
  need(paths.corpus, "corpus");
  need(paths.lexicon, "lexicon");
  if (!paths.stopwords.empty()) need(paths.stopwords, "stopwords");
}

std::vector<ExperimentConfig> default_experiments(const PipelineConfig& cfg) {
  struct Row {
    Task task;
    GraphKind graph;
    WalkMethod method;
  };
  const Row rows[] = {
      {Task::Classification, GraphKind::JobTransition, WalkMethod::Node2Vec},
      {Task::Classification, GraphKind::EnhancedJobTransition, WalkMethod::Node2Vec},
      {Task::Classification, GraphKind::JobTag, WalkMethod::Metapath},
      {Task::Classification, GraphKind::JobTransitionTag, WalkMethod::Metapath},
      {Task::LinkPrediction, GraphKind::JobTransition, WalkMethod::Node2Vec},
      {Task::LinkPrediction, GraphKind::EnhancedJobTransition, WalkMethod::Node2Vec},
      {Task::LinkPrediction, GraphKind::JobTransitionTag, WalkMethod::Metapath},
  };
  std::vector<ExperimentConfig> out;
  for (const auto& r : rows) {
    ExperimentConfig e;
    e.task = r.task;
    e.graph = r.graph;
    e.method = r.method;
    e.walk = cfg.walk;
    e.train = cfg.train;
    e.base_seed = cfg.seed;
    if (r.method == WalkMethod::Metapath && e.walk.metapath.empty())
      e.walk.metapath = {NodeKind::Job, NodeKind::Tag, NodeKind::Job};
    out.push_back(std::move(e));
  }
  return out;
}

ordered_json to_json(const PipelineConfig& cfg) {
  ordered_json exps = ordered_json::array();
  for (const auto& e : cfg.experiments) exps.push_back(to_json(e));
  return ordered_json{
      {"paths",
       {{"corpus", cfg.paths.corpus},
        {"lexicon", cfg.paths.lexicon},
        {"stopwords", cfg.paths.stopwords},
        {"output_dir", cfg.paths.output_dir}}},
      {"filter",
       {{"min_records", cfg.filter.min_records},
        {"min_label_occurrence", cfg.filter.min_label_occurrence},
        {"drop_rare_records", cfg.filter.drop_rare_records}}},
      {"tags",
       {{"k", cfg.tag_k},
        {"frequency", cfg.tag_frequency == FrequencyMode::Occurrences ? "occurrences" : "distinct_titles"}}},
      {"graph", to_string(cfg.graph)},
      {"method", to_string(cfg.method)},
      {"seed", cfg.seed},
      {"walk", to_json(cfg.walk)},
      {"train", to_json(cfg.train)},
      {"experiments", std::move(exps)}};
}

PipelineConfig pipeline_from_json(const json& j, const std::filesystem::path& base_dir) {
  PipelineConfig cfg;
  cfg.base_dir = base_dir;
  const json* experiments = nullptr;
  for_each_key(j, "config", [&](const std::string& key, const json& v) {
    if (key == "paths") {
      for_each_key(v, "paths", [&](const std::string& k, const json& p) {
        if (k == "corpus") cfg.paths.corpus = p.get<std::string>();
        else if (k == "lexicon") cfg.paths.lexicon = p.get<std::string>();
        else if (k == "stopwords") cfg.paths.stopwords = p.get<std::string>();
        else if (k == "output_dir") cfg.paths.output_dir = p.get<std::string>();
        else return false;
        return true;
      });
    } else if (key == "filter") {
      for_each_key(v, "filter", [&](const std::string& k, const json& f) {
        if (k == "min_records") cfg.filter.min_records = f.get<std::size_t>();
        else if (k == "min_label_occurrence") cfg.filter.min_label_occurrence = f.get<std::size_t>();
        else if (k == "drop_rare_records") cfg.filter.drop_rare_records = f.get<bool>();
        else return false;
        return true;
      });
    } else if (key == "tags") {
      for_each_key(v, "tags", [&](const std::string& k, const json& t) {
        if (k == "k") {
          cfg.tag_k = t.get<std::size_t>();
        } else if (k == "frequency") {
          const auto mode = t.get<std::string>();
          if (mode == "occurrences") cfg.tag_frequency = FrequencyMode::Occurrences;
          else if (mode == "distinct_titles") cfg.tag_frequency = FrequencyMode::DistinctTitles;
          else throw ConfigError("tags.frequency must be 'occurrences' or 'distinct_titles'");
        } else {
          return false;
        }
        return true;
      });
    } else if (key == "graph") {
      auto g = parse_graph_kind(v.get<std::string>());
      if (!g) throw ConfigError("unknown graph kind '" + v.get<std::string>() + "'");
      cfg.graph = *g;
    } else if (key == "method") {
      auto m = parse_walk_method(v.get<std::string>());
      if (!m) throw ConfigError("unknown walk method '" + v.get<std::string>() + "'");
      cfg.method = *m;
    } else if (key == "seed") {
      cfg.seed = v.get<std::uint64_t>();
    } else if (key == "walk") {
      cfg.walk = walk_config_from_json(v, cfg.walk);
    } else if (key == "train") {
      cfg.train = train_config_from_json(v, cfg.train);
    } else if (key == "experiments") {
      experiments = &v;
    } else {
      return false;
    }
    return true;
  });

  // Experiments inherit the top-level walk/train/seed settings.
  if (!experiments) {
    cfg.experiments = default_experiments(cfg);
  } else {
    if (!experiments->is_array()) throw ConfigError("experiments must be an array");
    ExperimentConfig defaults;
    defaults.walk = cfg.walk;
    defaults.train = cfg.train;
    defaults.base_seed = cfg.seed;
    for (const auto& e : *experiments) cfg.experiments.push_back(experiment_from_json(e, defaults));
  }
  return cfg;
}

PipelineConfig load_pipeline_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config " + path.string());
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("config " + path.string() + " is not valid JSON: " + e.what());
  }
  return pipeline_from_json(j, path.parent_path());
}

}  // namespace jobgraph
