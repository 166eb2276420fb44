#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <vector>

#include <Eigen/Core>

#include "jobgraph/embedding.hpp"
#include "jobgraph/error.hpp"
#include "jobgraph/walker.hpp"

namespace jobgraph {

struct TrainConfig {
  std::size_t dim = 128;
  std::size_t window = 5;
  std::size_t negatives = 5;
  std::size_t epochs = 5;
  double initial_step_size = 0.025;
  std::uint64_t seed = 0;
  /// Single worker with a fixed pair order. Otherwise `threads` workers update
  /// shared parameters without locks.
  bool deterministic = true;
  unsigned threads = 1;

  void validate() const;
};

/// -log(sigmoid(x)), computed without overflow.
template <typename Scalar>
Scalar log1p_exp_neg(Scalar x) {
  return x > Scalar(0) ? std::log1p(std::exp(-x)) : -x + std::log1p(std::exp(x));
}

template <typename Scalar>
Scalar sigmoid(Scalar x) {
  return x >= Scalar(0) ? Scalar(1) / (Scalar(1) + std::exp(-x)) : std::exp(x) / (Scalar(1) + std::exp(x));
}

template <typename Scalar>
struct SgnsStep {
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

  Scalar loss = 0;
  Vector center_grad;
  Vector context_grad;
  Matrix negative_grads;  // one row per negative
};

/// Loss -log s(u.v) - sum_n log s(-u.v_n) of one (center u, context v) pair
/// with negatives v_n given as rows, and its exact gradients.
template <typename DerivedU, typename DerivedV, typename DerivedN>
SgnsStep<typename DerivedU::Scalar> sgns_step(const Eigen::MatrixBase<DerivedU>& center,
                                              const Eigen::MatrixBase<DerivedV>& context,
                                              const Eigen::MatrixBase<DerivedN>& negatives) {
  using Scalar = typename DerivedU::Scalar;
  const auto u = center.derived().reshaped().eval();
  const auto v = context.derived().reshaped().eval();
  if (u.size() != v.size() || (negatives.rows() > 0 && negatives.cols() != u.size()))
    throw InputError("sgns_step: vector dimensions differ");
  if (!u.allFinite() || !v.allFinite() || !negatives.allFinite()) throw NumericError("sgns_step: non-finite input");

  SgnsStep<Scalar> out;
  const Scalar pos = u.dot(v);
  out.loss = log1p_exp_neg(pos);
  const Scalar g_pos = sigmoid(pos) - Scalar(1);
  out.center_grad = g_pos * v;
  out.context_grad = g_pos * u;
  out.negative_grads.resize(negatives.rows(), u.size());
  for (Eigen::Index n = 0; n < negatives.rows(); ++n) {
    const Scalar s = negatives.row(n).dot(u.transpose());
    out.loss += log1p_exp_neg(-s);
    const Scalar g = sigmoid(s);
    out.center_grad += g * negatives.row(n).transpose();
    out.negative_grads.row(n) = g * u.transpose();
  }
  return out;
}

struct TrainResult {
  EmbeddingMatrix embedding;
  std::vector<double> epoch_loss;  // mean pair loss per epoch
};

/// Seeded uniform [-0.5/dim, 0.5/dim] input vectors and zero output vectors.
EmbeddingMatrix initial_embedding(const std::vector<NodeRef>& nodes, const TrainConfig& cfg);

/// Unigram^(3/4) weights over node frequencies in the walks.
std::vector<double> negative_sampling_weights(const WalkCorpus& walks);

/// Draws one node id from cumulative weights with a uniform variate in [0,1).
NodeId sample_cumulative(const std::vector<double>& cumulative, double uniform);

/// Skip-gram with negative sampling over every (center, context) pair within
/// +-window of each walk position; SGD step decays linearly to 1e-4 of its start.
TrainResult train_embeddings_with_stats(const WalkCorpus& walks, const TrainConfig& cfg);

inline EmbeddingMatrix train_embeddings(const WalkCorpus& walks, const TrainConfig& cfg) {
  return train_embeddings_with_stats(walks, cfg).embedding;
}

}  // namespace jobgraph
