#include "jobgraph/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "jobgraph/config.hpp"
#include "jobgraph/corpus.hpp"
#include "jobgraph/embedding.hpp"
#include "jobgraph/error.hpp"
#include "jobgraph/experiment.hpp"
#include "jobgraph/graph.hpp"
#include "jobgraph/node_key.hpp"
#include "jobgraph/projection.hpp"
#include "jobgraph/sgns.hpp"
#include "jobgraph/tagger.hpp"
#include "jobgraph/walker.hpp"

namespace jobgraph {

namespace fs = std::filesystem;
using nlohmann::json;
using nlohmann::ordered_json;

namespace {

constexpr const char* kOutputEnv = "JOBGRAPH_OUTPUT_DIR";

std::ifstream open_in(const fs::path& p) {
  std::ifstream in(p);
  if (!in) throw InputError("cannot read " + p.string());
  return in;
}

std::ofstream open_out(const fs::path& p) {
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
  std::ofstream out(p);
  if (!out) throw InputError("cannot write " + p.string());
  return out;
}

void write_json(const fs::path& p, const ordered_json& j) {
  auto out = open_out(p);
  out << j.dump(2) << '\n';
}

StopwordSet load_stopwords(const std::string& path) {
  if (path.empty()) return {};
  auto in = open_in(path);
  return read_stopwords(in);
}

Corpus load_corpus(const fs::path& path, StopwordSet stopwords) {
  auto in = open_in(path);
  return parse_histories(in, std::move(stopwords));
}

TagSet load_tagset(const std::string& path) {
  if (path.empty()) return {};
  auto in = open_in(path);
  return read_tagset(in);
}

/// --out flag > $JOBGRAPH_OUTPUT_DIR > fallback.
fs::path output_dir(const std::string& flag, const fs::path& fallback) {
  if (!flag.empty()) return flag;
  if (const char* env = std::getenv(kOutputEnv); env && *env) return env;
  return fallback;
}

fs::path demo_config_path() { return fs::path(JOBGRAPH_DATA_DIR) / "demo" / "config.json"; }

PipelineConfig load_config_arg(const std::string& arg) {
  if (arg.empty()) {
    PipelineConfig cfg;
    cfg.experiments = default_experiments(cfg);
    return cfg;
  }
  return load_pipeline_config(arg == "demo" ? demo_config_path() : fs::path(arg));
}

std::string stats_line(const GraphStats& s) {
  std::ostringstream os;
  os << "jobs=" << s.job_count << " tags=" << s.tag_count << " transitions=" << s.transition_edge_count
     << " enhanced=" << s.enhanced_edge_count << " hasin_pairs=" << s.hasin_pair_count;
  return os.str();
}

ordered_json stats_json(const GraphStats& s) {
  return ordered_json{{"jobs", s.job_count},
                      {"tags", s.tag_count},
                      {"transition_edges", s.transition_edge_count},
                      {"enhanced_edges", s.enhanced_edge_count},
                      {"hasin_pairs", s.hasin_pair_count}};
}

struct Prepared {
  Corpus corpus;
  Vocabulary vocab;
  TagSet tagset;
};

/// ingest + tags from a pipeline config, optionally writing their artifacts.
Prepared prepare(const PipelineConfig& cfg, const fs::path* out_dir) {
  Prepared p;
  auto stop = cfg.paths.stopwords.empty() ? StopwordSet{} : load_stopwords(cfg.resolve(cfg.paths.stopwords).string());
  p.corpus = filter_corpus(load_corpus(cfg.resolve(cfg.paths.corpus), std::move(stop)), cfg.filter);
  p.vocab = build_vocabulary(p.corpus);
  auto lex_in = open_in(cfg.resolve(cfg.paths.lexicon));
  p.tagset = generate_tags(p.corpus, read_lexicon(lex_in), cfg.tag_k, cfg.tag_frequency);
  if (out_dir) {
    auto c = open_out(*out_dir / "corpus.jsonl");
    write_histories(c, p.corpus);
    auto f = open_out(*out_dir / "features.tsv");
    write_feature_tsv(f, p.corpus, p.vocab, export_one_hot_features(p.corpus, p.vocab));
    auto t = open_out(*out_dir / "tags.tsv");
    write_tagset(t, p.tagset);
  }
  return p;
}

void write_projection(std::ostream& out, const EmbeddingMatrix& emb, const Corpus& corpus) {
  std::vector<NodeRef> nodes;
  std::vector<std::string> classes;
  for (const auto& [title, code] : corpus.labels)
    if (emb.row_of({NodeKind::Job, title})) {
      nodes.push_back({NodeKind::Job, title});
      classes.push_back(code);
    }
  out << "node\tclass\tx\ty\n";
  if (nodes.size() < 2) return;
  const auto xy = pca_project_2d(emb, nodes);
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const auto r = static_cast<Eigen::Index>(i);
    out << embedding_token(nodes[i]) << '\t' << classes[i] << '\t' << json(xy(r, 0)).dump() << '\t'
        << json(xy(r, 1)).dump() << '\n';
  }
}

struct Cli {
  std::ostream& out;
  std::ostream& err;
  CLI::App app{"Career-graph toolkit: work histories -> job/tag graphs -> embeddings -> evaluation", "jobgraph"};

  // Shared option storage.
  std::string corpus, stopwords, lexicon, tags, edges, nodes, walks, embeddings, config, out_flag;
  std::string kind = "jtj", method = "node2vec", metapath = "job,tag,job", task;
  std::vector<std::string> reports;
  FilterOptions filter;
  bool keep_rare = false, distinct_titles = false, print_defaults = false;
  std::size_t tag_k = 200;
  WalkConfig walk;
  TrainConfig train;
  std::uint64_t seed = 0;
  std::size_t repetitions = 0;

  explicit Cli(std::ostream& o, std::ostream& e) : out(o), err(e) {
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all", "Print help for every subcommand and exit");

    auto* ingest = app.add_subcommand("ingest", "Parse, filter and tokenize work histories");
    ingest->add_option("--corpus", corpus, "JSON-lines history file")->required();
    ingest->add_option("--stopwords", stopwords, "Stopword file");
    ingest->add_option("--min-records", filter.min_records, "Drop histories shorter than this");
    ingest->add_option("--min-label-occurrence", filter.min_label_occurrence, "Drop labels rarer than this");
    ingest->add_flag("--keep-rare-records", keep_rare, "Keep rare-label records in the graph, only unlabel them");
    ingest->add_option("--out", out_flag, "Output directory");
    ingest->callback([this] { run_ingest(); });

    auto* tagcmd = app.add_subcommand("tags", "Mine the tag set from title tokens");
    tagcmd->add_option("--corpus", corpus, "Ingested corpus.jsonl")->required();
    tagcmd->add_option("--lexicon", lexicon, "Tag lexicon file")->required();
    tagcmd->add_option("--stopwords", stopwords, "Stopword file");
    tagcmd->add_option("--k", tag_k, "Number of tags");
    tagcmd->add_flag("--distinct-titles", distinct_titles, "Count token frequency over distinct titles");
    tagcmd->add_option("--out", out_flag, "Output directory");
    tagcmd->callback([this] { run_tags(); });

    auto* build = app.add_subcommand("build-graph", "Build jj, jj_E, jt or jtj and export its edge list");
    build->add_option("--corpus", corpus, "Ingested corpus.jsonl")->required();
    build->add_option("--tags", tags, "tags.tsv (needed by jj_E, jt, jtj)");
    build->add_option("--stopwords", stopwords, "Stopword file");
    build->add_option("--kind", kind, "jj | jj_E | jt | jtj");
    build->add_option("--out", out_flag, "Output directory");
    build->callback([this] { run_build_graph(); });

    auto* walkcmd = app.add_subcommand("walk", "Generate a random-walk corpus");
    walkcmd->add_option("--edges", edges, "Edge list TSV")->required();
    walkcmd->add_option("--nodes", nodes, "Node list TSV");
    walkcmd->add_option("--method", method, "node2vec | metapath");
    walkcmd->add_option("--metapath", metapath, "Comma-separated node kinds, e.g. job,tag,job");
    add_walk_options(walkcmd);
    walkcmd->add_option("--out", out_flag, "Output directory");
    walkcmd->callback([this] { run_walk(); });

    auto* traincmd = app.add_subcommand("train", "Train skip-gram embeddings from walks");
    traincmd->add_option("--walks", walks, "Walk corpus")->required();
    traincmd->add_option("--nodes", nodes, "Node list TSV (registers nodes absent from walks)")
        ;
    add_train_options(traincmd);
    traincmd->add_option("--out", out_flag, "Output directory");
    traincmd->callback([this] { run_train(); });

    for (const char* name : {"eval-classify", "eval-linkpred"}) {
      const bool classify = std::string(name) == "eval-classify";
      auto* ev = app.add_subcommand(name, classify ? "Job-title classification experiment"
                                                   : "Next-job link-prediction experiment");
      ev->add_option("--config", config, "Pipeline config JSON, or 'demo'");
      ev->add_option("--graph", kind, "jj | jj_E | jt | jtj");
      ev->add_option("--method", method, "node2vec | metapath");
      ev->add_option("--repetitions", repetitions, "Number of runs");
      ev->add_option("--seed", seed, "Base seed");
      if (classify)
        ev->add_option("--embeddings", embeddings, "Evaluate fixed embeddings instead of training")
            ;
      ev->add_option("--out", out_flag, "Output directory");
      ev->callback([this, classify] { run_eval(classify ? Task::Classification : Task::LinkPrediction); });
    }

    auto* report = app.add_subcommand("report", "Summarize reports; optionally export a 2-D projection");
    report->add_option("--reports", reports, "Report JSON files");
    report->add_option("--embeddings", embeddings, "Embedding file to project");
    report->add_option("--corpus", corpus, "Corpus providing title classes for the projection")
        ;
    report->add_option("--out", out_flag, "Output directory");
    report->callback([this] { run_report(); });

    auto* all = app.add_subcommand("run-all", "Run the whole pipeline from a config");
    all->add_option("--config", config, "Pipeline config JSON, or 'demo'")->required();
    all->add_option("--out", out_flag, "Output directory");
    all->callback([this] { run_all(); });

    auto* cfgcmd = app.add_subcommand("config", "Configuration helpers");
    cfgcmd->add_flag("--print-defaults", print_defaults, "Print the default configuration");
    cfgcmd->callback([this] {
      if (!print_defaults) throw CLI::CallForHelp();
      PipelineConfig cfg;
      cfg.experiments = default_experiments(cfg);
      out << to_json(cfg).dump(2) << '\n';
    });
  }

  void add_walk_options(CLI::App* cmd) {
    cmd->add_option("--walk-length", walk.walk_length, "Nodes per walk");
    cmd->add_option("--walks-per-node", walk.walks_per_node, "Walks started per node");
    cmd->add_option("--p", walk.p, "Return parameter");
    cmd->add_option("--q", walk.q, "In-out parameter");
    cmd->add_flag("--directed", walk.respect_direction, "Follow edge direction");
    cmd->add_option("--threads", walk.threads, "Worker threads");
    cmd->add_option("--seed", seed, "Seed");
  }

  void add_train_options(CLI::App* cmd) {
    cmd->add_option("--dim", train.dim, "Embedding dimension");
    cmd->add_option("--window", train.window, "Context window");
    cmd->add_option("--negatives", train.negatives, "Negative samples per pair");
    cmd->add_option("--epochs", train.epochs, "Epochs");
    cmd->add_option("--step-size", train.initial_step_size, "Initial SGD step size");
    cmd->add_option("--threads", train.threads, "Workers (non-deterministic when > 1)");
    cmd->add_option("--seed", seed, "Seed");
  }

  fs::path outdir(const fs::path& fallback = "out") const { return output_dir(out_flag, fallback); }

  void run_ingest() {
    filter.drop_rare_records = !keep_rare;
    const Corpus raw = load_corpus(corpus, load_stopwords(stopwords));
    const Corpus c = filter_corpus(raw, filter);
    const Vocabulary vocab = build_vocabulary(c);
    const auto dir = outdir();
    auto cf = open_out(dir / "corpus.jsonl");
    write_histories(cf, c);
    auto ff = open_out(dir / "features.tsv");
    write_feature_tsv(ff, c, vocab, export_one_hot_features(c, vocab));
    write_json(dir / "ingest.config.json",
               {{"corpus", corpus},
                {"stopwords", stopwords},
                {"filter",
                 {{"min_records", filter.min_records},
                  {"min_label_occurrence", filter.min_label_occurrence},
                  {"drop_rare_records", filter.drop_rare_records}}},
                {"input_histories", raw.histories.size()},
                {"histories", c.histories.size()},
                {"titles", c.titles.size()},
                {"labeled_titles", c.labels.size()},
                {"vocabulary", vocab.size()}});
    out << "ingest: " << c.histories.size() << "/" << raw.histories.size() << " histories kept, " << c.titles.size()
        << " titles, " << c.labels.size() << " labeled, vocabulary " << vocab.size() << " -> " << dir.string()
        << '\n';
  }

  void run_tags() {
    const Corpus c = load_corpus(corpus, load_stopwords(stopwords));
    auto lin = open_in(lexicon);
    const TagSet ts = generate_tags(c, read_lexicon(lin), tag_k,
                                    distinct_titles ? FrequencyMode::DistinctTitles : FrequencyMode::Occurrences);
    const auto dir = outdir();
    auto tf = open_out(dir / "tags.tsv");
    write_tagset(tf, ts);
    write_json(dir / "tags.config.json", {{"corpus", corpus},
                                          {"lexicon", lexicon},
                                          {"stopwords", stopwords},
                                          {"k", tag_k},
                                          {"frequency", distinct_titles ? "distinct_titles" : "occurrences"},
                                          {"tags", ts.size()}});
    out << "tags: " << ts.size() << " tags selected (k=" << tag_k << ") -> " << (dir / "tags.tsv").string() << '\n';
  }

  void run_build_graph() {
    const auto gk = parse_graph_kind(kind);
    if (!gk) throw ConfigError("unknown graph kind '" + kind + "'");
    if (*gk != GraphKind::JobTransition && tags.empty())
      throw ConfigError("graph kind " + kind + " needs --tags");
    const Corpus c = load_corpus(corpus, load_stopwords(stopwords));
    const HeteroGraph g = build_graph(*gk, c, load_tagset(tags));
    const auto dir = outdir();
    const std::string stem = "graph_" + std::string(to_string(*gk));
    auto ef = open_out(dir / (stem + ".edges.tsv"));
    write_edge_list(ef, g);
    auto nf = open_out(dir / (stem + ".nodes.tsv"));
    write_node_list(nf, g);
    const auto st = graph_stats(g);
    write_json(dir / (stem + ".config.json"),
               {{"corpus", corpus}, {"tags", tags}, {"stopwords", stopwords}, {"kind", to_string(*gk)},
                {"stats", stats_json(st)}});
    out << "build-graph " << to_string(*gk) << ": " << stats_line(st) << " -> " << (dir / (stem + ".edges.tsv")).string()
        << '\n';
  }

  void run_walk() {
    auto ein = open_in(edges);
    HeteroGraph g;
    if (!nodes.empty()) {
      auto nin = open_in(nodes);
      g = read_graph(ein, &nin);
    } else {
      g = read_graph(ein);
    }
    const auto m = parse_walk_method(method);
    if (!m) throw ConfigError("unknown walk method '" + method + "'");
    walk.seed = seed;
    walk.metapath.clear();
    if (*m == WalkMethod::Metapath) {
      std::stringstream ss(metapath);
      std::string part;
      while (std::getline(ss, part, ',')) {
        auto k = parse_node_kind(part);
        if (!k) throw ConfigError("unknown node kind '" + part + "' in --metapath");
        walk.metapath.push_back(*k);
      }
    }
    const WalkCorpus wc = generate_walks(g, *m, walk);
    const auto dir = outdir();
    auto wf = open_out(dir / "walks.txt");
    write_walks(wf, wc);
    auto nf = open_out(dir / "walks.nodes.tsv");
    write_node_list(nf, g);
    write_json(dir / "walk.config.json",
               {{"edges", edges}, {"nodes", nodes}, {"method", to_string(*m)}, {"seed", seed}, {"walk", to_json(walk)}});
    out << "walk: " << wc.walks.size() << " walks over " << wc.nodes.size() << " nodes -> "
        << (dir / "walks.txt").string() << '\n';
  }

  void run_train() {
    std::vector<NodeRef> table;
    if (!nodes.empty()) {
      auto nin = open_in(nodes);
      std::istringstream empty;
      table = read_graph(empty, &nin).nodes();
    }
    auto win = open_in(walks);
    const WalkCorpus wc = read_walks(win, nodes.empty() ? nullptr : &table);
    train.seed = seed;
    const TrainResult r = train_embeddings_with_stats(wc, train);
    const auto dir = outdir();
    save_embeddings(dir / "embeddings.txt", r.embedding);
    write_json(dir / "train.config.json",
               {{"walks", walks}, {"nodes", nodes}, {"seed", seed}, {"train", to_json(train)},
                {"epoch_loss", r.epoch_loss}});
    out << "train: " << r.embedding.rows() << " x " << r.embedding.dim() << " embedding";
    if (!r.epoch_loss.empty()) out << ", final epoch loss " << r.epoch_loss.back();
    out << " -> " << (dir / "embeddings.txt").string() << '\n';
  }

  ExperimentConfig experiment_for(const PipelineConfig& cfg, Task t) const {
    ExperimentConfig e;
    e.walk = cfg.walk;
    e.train = cfg.train;
    e.base_seed = cfg.seed;
    // Start from the first configured experiment of this task, if any.
    for (const auto& x : cfg.experiments)
      if (x.task == t) {
        e = x;
        break;
      }
    e.task = t;
    if (!app.get_subcommands().empty()) {
      auto* sub = app.get_subcommands().front();
      if (sub->count("--graph")) {
        auto g = parse_graph_kind(kind);
        if (!g) throw ConfigError("unknown graph kind '" + kind + "'");
        e.graph = *g;
      }
      if (sub->count("--method")) {
        auto m = parse_walk_method(method);
        if (!m) throw ConfigError("unknown walk method '" + method + "'");
        e.method = *m;
      }
      if (sub->count("--repetitions")) e.repetitions = repetitions;
      if (sub->count("--seed")) e.base_seed = seed;
    }
    if (e.method == WalkMethod::Metapath && e.walk.metapath.empty())
      e.walk.metapath = {NodeKind::Job, NodeKind::Tag, NodeKind::Job};
    return e;
  }

  void run_eval(Task t) {
    const PipelineConfig cfg = load_config_arg(config);
    cfg.validate(true);
    const Prepared p = prepare(cfg, nullptr);
    const ExperimentConfig e = experiment_for(cfg, t);
    MetricsReport report;
    if (!embeddings.empty()) {
      e.validate();
      const EmbeddingMatrix emb = load_embeddings(fs::path(embeddings));
      report.task = t;
      report.graph = "fixed";
      report.method = "embeddings";
      report.config = to_json(e);
      report.config["embeddings"] = embeddings;
      report.base_seed = e.base_seed;
      for (std::size_t r = 0; r < e.repetitions; ++r) report.per_run.push_back(classification_run(emb, p.corpus, e, r));
      report.aggregate();
    } else {
      report = run_experiment(p.corpus, p.tagset, e);
    }
    const auto dir = outdir(cfg.resolve(cfg.paths.output_dir));
    const std::string stem = std::string(to_string(t)) + "_" + report.graph + "_" + report.method;
    write_json(dir / (stem + ".json"), to_json(report));
    write_json(dir / (std::string(t == Task::Classification ? "eval-classify" : "eval-linkpred") + ".config.json"),
               report.config);
    auto tf = open_out(dir / (stem + ".tsv"));
    write_report_tsv(tf, report);
    out << to_string(t) << " " << report.graph << " " << report.method << ": " << format_summary(report) << " over "
        << report.per_run.size() << " runs -> " << (dir / (stem + ".json")).string() << '\n';
  }

  void run_report() {
    if (reports.empty() && embeddings.empty()) throw ConfigError("report needs --reports and/or --embeddings");
    const auto dir = outdir();
    if (!reports.empty()) {
      auto sf = open_out(dir / "summary.tsv");
      sf << "task\tgraph\tmethod\toperator\tsummary\truns\n";
      for (const auto& path : reports) {
        auto in = open_in(path);
        json j;
        try {
          j = json::parse(in);
        } catch (const json::parse_error& e) {
          throw InputError(path + ": " + e.what());
        }
        const MetricsReport r = report_from_json(j);
        const std::string op = r.op.empty() ? "-" : r.op;
        sf << to_string(r.task) << '\t' << r.graph << '\t' << r.method << '\t' << op << '\t' << format_summary(r)
           << '\t' << r.per_run.size() << '\n';
        out << to_string(r.task) << '\t' << r.graph << '\t' << r.method << '\t' << op << '\t' << format_summary(r)
            << '\n';
      }
    }
    if (!embeddings.empty()) {
      if (corpus.empty()) throw ConfigError("projection needs --corpus for title classes");
      const EmbeddingMatrix emb = load_embeddings(fs::path(embeddings));
      auto pf = open_out(dir / "projection.tsv");
      write_projection(pf, emb, load_corpus(corpus, {}));
      out << "report: projection -> " << (dir / "projection.tsv").string() << '\n';
    }
  }

  void run_all() {
    const PipelineConfig cfg = load_config_arg(config);
    cfg.validate(true);
    const auto dir = outdir(cfg.resolve(cfg.paths.output_dir));
    fs::create_directories(dir);
    write_json(dir / "config.resolved.json", to_json(cfg));
    const Prepared p = prepare(cfg, &dir);

    ordered_json stats = ordered_json::object();
    for (auto gk : {GraphKind::JobTransition, GraphKind::EnhancedJobTransition, GraphKind::JobTag,
                    GraphKind::JobTransitionTag}) {
      const HeteroGraph g = build_graph(gk, p.corpus, p.tagset);
      const std::string stem = "graph_" + std::string(to_string(gk));
      auto ef = open_out(dir / (stem + ".edges.tsv"));
      write_edge_list(ef, g);
      auto nf = open_out(dir / (stem + ".nodes.tsv"));
      write_node_list(nf, g);
      stats[std::string(to_string(gk))] = stats_json(graph_stats(g));
    }

    ordered_json experiments = ordered_json::array();
    auto summary = open_out(dir / "summary.tsv");
    summary << "task\tgraph\tmethod\toperator\tsummary\truns\n";
    for (const auto& e : cfg.experiments) {
      const MetricsReport r = run_experiment(p.corpus, p.tagset, e);
      const std::string stem = std::string(to_string(r.task)) + "_" + r.graph + "_" + r.method;
      auto tf = open_out(dir / "reports" / (stem + ".tsv"));
      write_report_tsv(tf, r);
      write_json(dir / "reports" / (stem + ".json"), to_json(r));
      summary << to_string(r.task) << '\t' << r.graph << '\t' << r.method << '\t' << (r.op.empty() ? "-" : r.op)
              << '\t' << format_summary(r) << '\t' << r.per_run.size() << '\n';
      experiments.push_back(to_json(r));
    }

    // Projection of the first configured graph/method's embedding.
    if (!cfg.experiments.empty()) {
      const auto& e = cfg.experiments.front();
      const HeteroGraph g = build_graph(e.graph, p.corpus, p.tagset);
      const EmbeddingMatrix emb = embed_graph(g, e, run_seeds(e.base_seed, 0));
      save_embeddings(dir / "embeddings.txt", emb);
      auto pf = open_out(dir / "projection.tsv");
      write_projection(pf, emb, p.corpus);
    }

    ordered_json report{{"config", to_json(cfg)},
                        {"corpus",
                         {{"histories", p.corpus.histories.size()},
                          {"titles", p.corpus.titles.size()},
                          {"labeled_titles", p.corpus.labels.size()},
                          {"vocabulary", p.vocab.size()},
                          {"tags", p.tagset.size()}}},
                        {"graphs", std::move(stats)},
                        {"experiments", std::move(experiments)}};
    write_json(dir / "report.json", report);
    out << "run-all: " << cfg.experiments.size() << " experiments -> " << (dir / "report.json").string() << '\n';
  }
};

}  // namespace

int execute_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Cli cli(out, err);
  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    cli.app.parse(reversed);
    return kExitOk;
  } catch (const CLI::CallForHelp&) {
    out << cli.app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << cli.app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << cli.app.help();
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    switch (e.category()) {
      case ErrorCategory::Usage:
        err << '\n' << cli.app.help();
        return kExitUsage;
      case ErrorCategory::Input: return kExitInput;
      case ErrorCategory::Consistency: return kExitNumeric;
    }
    return kExitInput;
  } catch (const fs::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  }
}

}  // namespace jobgraph
