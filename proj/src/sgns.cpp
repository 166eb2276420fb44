#include "jobgraph/sgns.hpp"

#include <algorithm>
#include <atomic>
#include <numeric>
#include <thread>

#include "jobgraph/rng.hpp"

namespace jobgraph {

namespace {

constexpr double kMinStepFraction = 1e-4;
constexpr int kNegativeRetries = 10;

using RowMatrix = EmbeddingMatrix::Matrix;

struct Worker {
  RowMatrix& in;
  RowMatrix& out;
  const std::vector<double>& cumulative;
  const TrainConfig& cfg;
  Eigen::VectorXd grad;

  Worker(RowMatrix& in_, RowMatrix& out_, const std::vector<double>& cum, const TrainConfig& c)
      : in(in_), out(out_), cumulative(cum), cfg(c), grad(in_.cols()) {}

  // One positive pair plus negatives; returns the pair loss.
  double update(NodeId center, NodeId context, double step, Rng& rng) {
    auto u = in.row(center);
    grad.setZero();
    double loss = 0;
    auto apply = [&](NodeId target, double label) {
      auto v = out.row(target);
      const double s = u.dot(v);
      loss += label > 0 ? log1p_exp_neg(s) : log1p_exp_neg(-s);
      const double g = (label - sigmoid(s)) * step;
      grad.noalias() += g * v.transpose();
      v.noalias() += g * u;
    };
    apply(context, 1.0);
    for (std::size_t k = 0; k < cfg.negatives; ++k) {
      NodeId neg = context;
      for (int tries = 0; tries < kNegativeRetries && neg == context; ++tries)
        neg = sample_cumulative(cumulative, uniform01(rng));
      if (neg != context) apply(neg, 0.0);
    }
    u.noalias() += grad.transpose();
    return loss;
  }
};

std::size_t pair_positions(const std::vector<std::vector<NodeId>>& walks) {
  std::size_t n = 0;
  for (const auto& w : walks) n += w.size();
  return n;
}

}  // namespace

void TrainConfig::validate() const {
  if (dim < 1) throw ConfigError("embedding dim must be >= 1");
  if (window < 1) throw ConfigError("window must be >= 1");
  if (!(initial_step_size > 0.0)) throw ConfigError("initial_step_size must be positive");
}

EmbeddingMatrix initial_embedding(const std::vector<NodeRef>& nodes, const TrainConfig& cfg) {
  EmbeddingMatrix m(nodes, static_cast<Eigen::Index>(cfg.dim));
  Rng rng = make_rng(cfg.seed, {0x1417});
  const double scale = 1.0 / static_cast<double>(cfg.dim);
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.dim(); ++c) m.input_vectors(r, c) = (uniform01(rng) - 0.5) * scale;
  return m;
}

std::vector<double> negative_sampling_weights(const WalkCorpus& walks) {
  std::vector<double> counts(walks.nodes.size(), 0.0);
  for (const auto& w : walks.walks)
    for (NodeId v : w) counts[v] += 1.0;
  for (auto& c : counts) c = std::pow(c, 0.75);
  return counts;
}

NodeId sample_cumulative(const std::vector<double>& cumulative, double uniform) {
  const double r = uniform * cumulative.back();
  auto it = std::upper_bound(cumulative.begin(), cumulative.end(), r);
  if (it == cumulative.end()) --it;
  return static_cast<NodeId>(it - cumulative.begin());
}

TrainResult train_embeddings_with_stats(const WalkCorpus& walks, const TrainConfig& cfg) {
  cfg.validate();
  for (const auto& w : walks.walks)
    for (NodeId v : w)
      if (v >= walks.nodes.size()) throw ConsistencyError("walk references an unregistered node id " + std::to_string(v));

  TrainResult result{initial_embedding(walks.nodes, cfg), {}};
  if (cfg.epochs == 0 || walks.walks.empty()) return result;

  std::vector<double> cumulative = negative_sampling_weights(walks);
  std::partial_sum(cumulative.begin(), cumulative.end(), cumulative.begin());

  RowMatrix& in = result.embedding.input_vectors;
  RowMatrix& out = result.embedding.output_vectors;
  const double total = static_cast<double>(pair_positions(walks.walks) * cfg.epochs);
  const auto window = static_cast<std::ptrdiff_t>(cfg.window);

  std::vector<std::size_t> order(walks.walks.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::atomic<std::size_t> done{0};

  // Processes order[begin, end) for one epoch; returns (loss sum, pair count).
  auto run_slice = [&](Worker& worker, Rng& rng, std::size_t begin, std::size_t end) {
    double loss = 0;
    std::size_t pairs = 0;
    for (std::size_t i = begin; i < end; ++i) {
      const auto& walk = walks.walks[order[i]];
      const auto len = static_cast<std::ptrdiff_t>(walk.size());
      for (std::ptrdiff_t pos = 0; pos < len; ++pos) {
        const double progress = static_cast<double>(done.fetch_add(1, std::memory_order_relaxed)) / total;
        const double step = cfg.initial_step_size * std::max(kMinStepFraction, 1.0 - progress);
        for (std::ptrdiff_t c = std::max<std::ptrdiff_t>(0, pos - window); c <= std::min(len - 1, pos + window); ++c) {
          if (c == pos) continue;
          loss += worker.update(walk[pos], walk[c], step, rng);
          ++pairs;
        }
      }
    }
    return std::pair{loss, pairs};
  };

  const unsigned threads = cfg.deterministic ? 1u : std::max(1u, cfg.threads);
  for (std::size_t epoch = 0; epoch < cfg.epochs; ++epoch) {
    Rng order_rng = make_rng(cfg.seed, {0x5eed, epoch});
    shuffle_range(order.begin(), order.end(), order_rng);
    double loss = 0;
    std::size_t pairs = 0;
    if (threads == 1) {
      Worker worker(in, out, cumulative, cfg);
      Rng rng = make_rng(cfg.seed, {0x7e9, epoch});
      std::tie(loss, pairs) = run_slice(worker, rng, 0, order.size());
    } else {
      std::vector<std::pair<double, std::size_t>> partial(threads);
      std::vector<std::thread> pool;
      const std::size_t chunk = (order.size() + threads - 1) / threads;
      for (unsigned t = 0; t < threads; ++t) {
        pool.emplace_back([&, t] {
          Worker worker(in, out, cumulative, cfg);
          Rng rng = make_rng(cfg.seed, {0x7e9, epoch, t});
          const std::size_t b = std::min(order.size(), t * chunk);
          partial[t] = run_slice(worker, rng, b, std::min(order.size(), b + chunk));
        });
      }
      for (auto& th : pool) th.join();
      for (auto& [l, n] : partial) {
        loss += l;
        pairs += n;
      }
    }
    result.epoch_loss.push_back(pairs ? loss / static_cast<double>(pairs) : 0.0);
  }
  if (!in.allFinite()) throw NumericError("training diverged: non-finite embedding values");
  return result;
}

}  // namespace jobgraph
