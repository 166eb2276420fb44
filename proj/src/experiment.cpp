#include "jobgraph/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <ostream>
#include <thread>

#include "jobgraph/config.hpp"
#include "jobgraph/error.hpp"
#include "jobgraph/rng.hpp"

namespace jobgraph {

using nlohmann::json;
using nlohmann::ordered_json;

std::string_view to_string(Task task) { return task == Task::Classification ? "classification" : "linkpred"; }

std::string_view to_string(WalkMethod method) { return method == WalkMethod::Node2Vec ? "node2vec" : "metapath"; }

std::optional<Task> parse_task(std::string_view text) {
  if (text == "classification" || text == "classify") return Task::Classification;
  if (text == "linkpred" || text == "link_prediction") return Task::LinkPrediction;
  return std::nullopt;
}

std::optional<WalkMethod> parse_walk_method(std::string_view text) {
  if (text == "node2vec" || text == "n2v") return WalkMethod::Node2Vec;
  if (text == "metapath" || text == "metapath2vec" || text == "m2v") return WalkMethod::Metapath;
  return std::nullopt;
}

void ExperimentConfig::validate() const {
  walk.validate();
  train.validate();
  split.validate();
  if (repetitions < 1) throw ConfigError("repetitions must be >= 1");
  if (!(l2 >= 0)) throw ConfigError("l2 must be non-negative");
  if (task == Task::LinkPrediction && operators.empty()) throw ConfigError("link prediction needs an edge operator");
  if (method == WalkMethod::Metapath) {
    if (walk.metapath.empty()) throw ConfigError("metapath method needs a metapath");
    const bool uses_tags = std::find(walk.metapath.begin(), walk.metapath.end(), NodeKind::Tag) != walk.metapath.end();
    if (uses_tags && !is_heterogeneous(graph))
      throw ConfigError("metapath walks over tags need a heterogeneous graph (jt or jtj), got " +
                        std::string(to_string(graph)));
  }
  if (task == Task::LinkPrediction && graph == GraphKind::JobTag)
    throw ConfigError("link prediction needs transition edges; the jt graph has none");
}

RunSeeds run_seeds(std::uint64_t base_seed, std::size_t run) {
  RunSeeds s;
  s.run = derive_seed(base_seed, {run});
  s.split = derive_seed(s.run, {1});
  s.walk = derive_seed(s.run, {2});
  s.train = derive_seed(s.run, {3});
  return s;
}

WalkCorpus generate_walks(const HeteroGraph& g, WalkMethod method, const WalkConfig& cfg) {
  if (method == WalkMethod::Metapath) return metapath_walks(g, cfg);
  WalkConfig plain = cfg;
  plain.metapath.clear();
  return node2vec_walks(g, plain);
}

EmbeddingMatrix embed_graph(const HeteroGraph& g, const ExperimentConfig& cfg, const RunSeeds& seeds) {
  WalkConfig wc = cfg.walk;
  wc.seed = seeds.walk;
  TrainConfig tc = cfg.train;
  tc.seed = seeds.train;
  if (tc.epochs == 0) return initial_embedding(g.nodes(), tc);
  return train_embeddings(generate_walks(g, cfg.method, wc), tc);
}

namespace {

Eigen::MatrixXd title_rows(const EmbeddingMatrix& m, const std::vector<std::string>& titles) {
  Eigen::MatrixXd x(static_cast<Eigen::Index>(titles.size()), m.dim());
  for (std::size_t i = 0; i < titles.size(); ++i) {
    auto r = m.row_of({NodeKind::Job, titles[i]});
    if (!r) throw ConsistencyError("labeled title '" + titles[i] + "' has no graph node");
    x.row(static_cast<Eigen::Index>(i)) = m.vector(*r);
  }
  return x;
}

struct PairSet {
  Eigen::MatrixXd features;
  std::vector<int> labels;
};

PairSet pair_features(const EmbeddingMatrix& m, EdgeOperator op, std::initializer_list<const std::vector<NodePair>*> pos,
                      std::initializer_list<const std::vector<NodePair>*> neg) {
  std::size_t n = 0;
  for (auto* v : pos) n += v->size();
  for (auto* v : neg) n += v->size();
  const Eigen::Index width = op == EdgeOperator::Dot ? 1 : m.dim();
  PairSet out{Eigen::MatrixXd(static_cast<Eigen::Index>(n), width), {}};
  out.labels.reserve(n);
  Eigen::Index row = 0;
  auto add = [&](const std::vector<NodePair>& pairs, int label) {
    for (auto [a, b] : pairs) {
      out.features.row(row++) = edge_feature(m.vector(a), m.vector(b), op).transpose();
      out.labels.push_back(label);
    }
  };
  for (auto* v : pos) add(*v, 1);
  for (auto* v : neg) add(*v, 0);
  return out;
}

double score_auc(const ClassifierModel& model, const PairSet& data) {
  // Logit difference keeps resolution where probabilities saturate at 1.
  const Eigen::MatrixXd z = (data.features * model.weights.transpose()).rowwise() + model.bias.transpose();
  std::vector<double> scores(static_cast<std::size_t>(z.rows()));
  for (Eigen::Index i = 0; i < z.rows(); ++i) scores[static_cast<std::size_t>(i)] = z(i, 1) - z(i, 0);
  return compute_auc(scores, data.labels);
}

double mean_of(const std::vector<double>& v) {
  double s = 0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

}  // namespace

namespace {

RunScore classify(const Corpus& corpus, const ExperimentConfig& cfg, std::size_t run,
                  const std::function<EmbeddingMatrix(const RunSeeds&)>& embed) {
  const RunSeeds seeds = run_seeds(cfg.base_seed, run);
  SplitSpec spec = cfg.split;
  spec.seed = seeds.split;
  const NodeSplit split = make_node_splits(corpus.labels, spec);

  std::vector<std::string> fit_titles = split.train;
  fit_titles.insert(fit_titles.end(), split.val.begin(), split.val.end());
  std::map<std::string, int> class_index;
  for (const auto& t : fit_titles) class_index.emplace(corpus.labels.at(t), 0);
  int next = 0;
  for (auto& [code, idx] : class_index) idx = next++;
  const int fit_classes = next;
  // Test-only classes get indices past the fitted ones; they can never be predicted.
  std::vector<int> fit_y, test_y;
  for (const auto& t : fit_titles) fit_y.push_back(class_index.at(corpus.labels.at(t)));
  for (const auto& t : split.test) {
    auto [it, inserted] = class_index.emplace(corpus.labels.at(t), next);
    if (inserted) ++next;
    test_y.push_back(it->second);
  }
  if (fit_classes < 2) throw InputError("classification needs at least two classes among train+val titles");

  const EmbeddingMatrix emb = embed(seeds);
  ClassifierOptions opt;
  opt.l2 = cfg.l2;
  const ClassifierModel model = train_classifier(title_rows(emb, fit_titles), fit_y, fit_classes, opt);
  RunScore score{run, seeds.run, {}, {}};
  if (split.test.empty()) throw InputError("test split is empty");
  const F1Scores f1 = evaluate_classification(model, title_rows(emb, split.test), test_y, next);
  score.scores["macro_f1"] = f1.macro;
  score.scores["micro_f1"] = f1.micro;
  return score;
}

}  // namespace

RunScore classification_run(const HeteroGraph& g, const Corpus& corpus, const ExperimentConfig& cfg, std::size_t run) {
  return classify(corpus, cfg, run, [&](const RunSeeds& seeds) { return embed_graph(g, cfg, seeds); });
}

RunScore classification_run(const EmbeddingMatrix& emb, const Corpus& corpus, const ExperimentConfig& cfg,
                            std::size_t run) {
  return classify(corpus, cfg, run, [&](const RunSeeds&) { return emb; });
}

RunScore linkpred_run(const HeteroGraph& g, const ExperimentConfig& cfg, std::size_t run) {
  const RunSeeds seeds = run_seeds(cfg.base_seed, run);
  SplitSpec spec = cfg.split;
  spec.seed = seeds.split;
  const EdgeSplitResult es = make_edge_splits(g, spec);
  const EdgeSplit& s = es.split;
  if (s.train_pos.empty() || s.val_pos.empty() || s.test_pos.empty())
    throw InputError("link prediction needs transitions in every split");
  const EmbeddingMatrix emb = embed_graph(es.embedding_graph, cfg, seeds);

  ClassifierOptions opt;
  opt.l2 = cfg.l2;
  RunScore score{run, seeds.run, {}, {}};
  double best_val = -1;
  EdgeOperator best = cfg.operators.front();
  for (EdgeOperator op : cfg.operators) {
    const PairSet train = pair_features(emb, op, {&s.train_pos}, {&s.train_neg});
    const PairSet val = pair_features(emb, op, {&s.val_pos}, {&s.val_neg});
    const double auc = score_auc(train_classifier(train.features, train.labels, 2, opt), val);
    score.scores["val_auc_" + std::string(to_string(op))] = auc;
    if (auc > best_val) {
      best_val = auc;
      best = op;
    }
  }
  const PairSet fit = pair_features(emb, best, {&s.train_pos, &s.val_pos}, {&s.train_neg, &s.val_neg});
  const PairSet test = pair_features(emb, best, {&s.test_pos}, {&s.test_neg});
  score.op = std::string(to_string(best));
  score.scores["auc"] = score_auc(train_classifier(fit.features, fit.labels, 2, opt), test);
  score.scores["val_auc"] = best_val;
  return score;
}

void MetricsReport::aggregate() {
  mean.clear();
  std.clear();
  std::map<std::string, std::vector<double>> cols;
  std::map<std::string, std::size_t> op_votes;
  for (const auto& r : per_run) {
    for (const auto& [k, v] : r.scores) cols[k].push_back(v);
    if (!r.op.empty()) ++op_votes[r.op];
  }
  for (const auto& [k, v] : cols) {
    const double m = mean_of(v);
    double var = 0;
    for (double x : v) var += (x - m) * (x - m);
    mean[k] = m;
    std[k] = std::sqrt(var / static_cast<double>(v.size()));
  }
  op.clear();
  std::size_t best = 0;
  for (auto candidate : kAllEdgeOperators) {
    auto it = op_votes.find(std::string(to_string(candidate)));
    if (it != op_votes.end() && it->second > best) {
      best = it->second;
      op = it->first;
    }
  }
}

MetricsReport run_experiment(const Corpus& corpus, const TagSet& tagset, const ExperimentConfig& cfg) {
  cfg.validate();
  const HeteroGraph g = build_graph(cfg.graph, corpus, tagset);
  MetricsReport report;
  report.task = cfg.task;
  report.graph = std::string(to_string(cfg.graph));
  report.method = std::string(to_string(cfg.method));
  report.config = to_json(cfg);
  report.base_seed = cfg.base_seed;
  report.per_run.resize(cfg.repetitions);

  auto one = [&](std::size_t r) {
    report.per_run[r] =
        cfg.task == Task::Classification ? classification_run(g, corpus, cfg, r) : linkpred_run(g, cfg, r);
  };
  const std::size_t workers = std::clamp<std::size_t>(cfg.parallel_runs, 1, cfg.repetitions);
  if (workers == 1) {
    for (std::size_t r = 0; r < cfg.repetitions; ++r) one(r);
  } else {
    std::vector<std::exception_ptr> errors(workers);
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w)
      pool.emplace_back([&, w] {
        try {
          for (std::size_t r = w; r < cfg.repetitions; r += workers) one(r);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    for (auto& t : pool) t.join();
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);
  }
  report.aggregate();
  return report;
}

ordered_json to_json(const MetricsReport& report) {
  ordered_json runs = ordered_json::array();
  ordered_json seeds = ordered_json::array();
  for (const auto& r : report.per_run) {
    ordered_json scores = ordered_json::object();
    for (const auto& [k, v] : r.scores) scores[k] = v;
    ordered_json row{{"run", r.run}, {"seed", r.seed}, {"scores", scores}};
    if (!r.op.empty()) row["operator"] = r.op;
    runs.push_back(std::move(row));
    seeds.push_back(r.seed);
  }
  ordered_json mean = ordered_json::object(), sd = ordered_json::object();
  for (const auto& [k, v] : report.mean) mean[k] = v;
  for (const auto& [k, v] : report.std) sd[k] = v;
  return ordered_json{{"task", to_string(report.task)},
                      {"graph", report.graph},
                      {"method", report.method},
                      {"operator", report.op.empty() ? ordered_json(nullptr) : ordered_json(report.op)},
                      {"per_run", std::move(runs)},
                      {"mean", std::move(mean)},
                      {"std", std::move(sd)},
                      {"config", report.config},
                      {"seeds", {{"base", report.base_seed}, {"runs", std::move(seeds)}}}};
}

MetricsReport report_from_json(const json& j) {
  try {
    MetricsReport r;
    auto task = parse_task(j.at("task").get<std::string>());
    if (!task) throw InputError("report has an unknown task");
    r.task = *task;
    r.graph = j.at("graph").get<std::string>();
    r.method = j.at("method").get<std::string>();
    if (!j.at("operator").is_null()) r.op = j.at("operator").get<std::string>();
    for (const auto& row : j.at("per_run")) {
      RunScore s;
      s.run = row.at("run").get<std::size_t>();
      s.seed = row.at("seed").get<std::uint64_t>();
      for (const auto& [k, v] : row.at("scores").items()) s.scores[k] = v.get<double>();
      if (row.contains("operator")) s.op = row.at("operator").get<std::string>();
      r.per_run.push_back(std::move(s));
    }
    for (const auto& [k, v] : j.at("mean").items()) r.mean[k] = v.get<double>();
    for (const auto& [k, v] : j.at("std").items()) r.std[k] = v.get<double>();
    r.config = j.at("config");
    r.base_seed = j.at("seeds").at("base").get<std::uint64_t>();
    return r;
  } catch (const json::exception& e) {
    throw InputError(std::string("malformed report: ") + e.what());
  }
}

void write_report_tsv(std::ostream& out, const MetricsReport& report) {
  std::vector<std::string> keys;
  for (const auto& [k, v] : report.mean) keys.push_back(k);
  out << "task\tgraph\tmethod\trun\tseed\toperator";
  for (const auto& k : keys) out << '\t' << k;
  out << '\n';
  for (const auto& r : report.per_run) {
    out << to_string(report.task) << '\t' << report.graph << '\t' << report.method << '\t' << r.run << '\t' << r.seed
        << '\t' << (r.op.empty() ? "-" : r.op);
    for (const auto& k : keys) {
      auto it = r.scores.find(k);
      out << '\t';
      if (it != r.scores.end()) out << json(it->second).dump();
    }
    out << '\n';
  }
}

std::string format_summary(const MetricsReport& report) {
  char buf[64];
  if (report.task == Task::Classification)
    std::snprintf(buf, sizeof buf, "%.3f/%.3f", report.mean.at("macro_f1"), report.mean.at("micro_f1"));
  else
    std::snprintf(buf, sizeof buf, "%.3f", report.mean.at("auc"));
  return buf;
}

ordered_json to_json(const ExperimentConfig& cfg) {
  ordered_json ops = ordered_json::array();
  for (auto op : cfg.operators) ops.push_back(to_string(op));
  return ordered_json{{"task", to_string(cfg.task)},
                      {"graph", to_string(cfg.graph)},
                      {"method", to_string(cfg.method)},
                      {"repetitions", cfg.repetitions},
                      {"l2", cfg.l2},
                      {"split", {cfg.split.train, cfg.split.val, cfg.split.test}},
                      {"operators", std::move(ops)},
                      {"seed", cfg.base_seed},
                      {"walk", to_json(cfg.walk)},
                      {"train", to_json(cfg.train)}};
}

ExperimentConfig experiment_from_json(const json& j, const ExperimentConfig& defaults) {
  if (!j.is_object()) throw ConfigError("experiment entry must be an object");
  ExperimentConfig cfg = defaults;
  try {
    for (const auto& [key, v] : j.items()) {
      if (key == "task") {
        auto t = parse_task(v.get<std::string>());
        if (!t) throw ConfigError("unknown task '" + v.get<std::string>() + "'");
        cfg.task = *t;
      } else if (key == "graph") {
        auto g = parse_graph_kind(v.get<std::string>());
        if (!g) throw ConfigError("unknown graph kind '" + v.get<std::string>() + "'");
        cfg.graph = *g;
      } else if (key == "method") {
        auto m = parse_walk_method(v.get<std::string>());
        if (!m) throw ConfigError("unknown walk method '" + v.get<std::string>() + "'");
        cfg.method = *m;
      } else if (key == "repetitions") {
        cfg.repetitions = v.get<std::size_t>();
      } else if (key == "l2") {
        cfg.l2 = v.get<double>();
      } else if (key == "split") {
        const auto f = v.get<std::vector<double>>();
        if (f.size() != 3) throw ConfigError("split needs three fractions");
        cfg.split.train = f[0];
        cfg.split.val = f[1];
        cfg.split.test = f[2];
      } else if (key == "operators") {
        cfg.operators.clear();
        for (const auto& name : v) {
          auto op = parse_edge_operator(name.get<std::string>());
          if (!op) throw ConfigError("unknown edge operator '" + name.get<std::string>() + "'");
          cfg.operators.push_back(*op);
        }
      } else if (key == "seed") {
        cfg.base_seed = v.get<std::uint64_t>();
      } else if (key == "parallel_runs") {
        cfg.parallel_runs = v.get<unsigned>();
      } else if (key == "walk") {
        cfg.walk = walk_config_from_json(v, cfg.walk);
      } else if (key == "train") {
        cfg.train = train_config_from_json(v, cfg.train);
      } else {
        throw ConfigError("unknown experiment key '" + key + "'");
      }
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("bad experiment value: ") + e.what());
  }
  if (cfg.method == WalkMethod::Metapath && cfg.walk.metapath.empty())
    cfg.walk.metapath = {NodeKind::Job, NodeKind::Tag, NodeKind::Job};
  return cfg;
}

}  // namespace jobgraph
