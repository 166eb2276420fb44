#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "jobgraph/classifier.hpp"
#include "jobgraph/error.hpp"

namespace jobgraph {

struct F1Scores {
  double macro = 0;
  double micro = 0;
  std::vector<double> per_class;  // indexed by class; classes absent from gold are 0 and excluded from macro
};

/// Macro-F1 averages over classes that occur in `gold`; micro-F1 pools counts.
F1Scores f1_scores(std::span<const int> gold, std::span<const int> predicted, int num_classes);

F1Scores evaluate_classification(const ClassifierModel& model, const Eigen::Ref<const Eigen::MatrixXd>& features,
                                 std::span<const int> gold, int num_classes);

/// Probability that a random positive outscores a random negative, ties 1/2.
/// Throws InputError unless both classes are present.
double compute_auc(std::span<const double> scores, std::span<const int> labels);

enum class EdgeOperator { Average, Hadamard, WeightedL1, WeightedL2, Dot };

inline constexpr EdgeOperator kAllEdgeOperators[] = {EdgeOperator::Average, EdgeOperator::Hadamard,
                                                     EdgeOperator::WeightedL1, EdgeOperator::WeightedL2,
                                                     EdgeOperator::Dot};

std::string_view to_string(EdgeOperator op);
std::optional<EdgeOperator> parse_edge_operator(std::string_view text);

template <typename A, typename B>
auto edge_average(const Eigen::MatrixBase<A>& u, const Eigen::MatrixBase<B>& v) {
  return (u + v) / typename A::Scalar(2);
}

template <typename A, typename B>
auto edge_hadamard(const Eigen::MatrixBase<A>& u, const Eigen::MatrixBase<B>& v) {
  return u.cwiseProduct(v);
}

template <typename A, typename B>
auto edge_weighted_l1(const Eigen::MatrixBase<A>& u, const Eigen::MatrixBase<B>& v) {
  return (u - v).cwiseAbs();
}

template <typename A, typename B>
auto edge_weighted_l2(const Eigen::MatrixBase<A>& u, const Eigen::MatrixBase<B>& v) {
  return (u - v).cwiseAbs2();
}

/// Edge feature as a column vector; Dot yields a 1-vector.
template <typename A, typename B>
Eigen::Matrix<typename A::Scalar, Eigen::Dynamic, 1> edge_feature(const Eigen::MatrixBase<A>& u,
                                                                  const Eigen::MatrixBase<B>& v, EdgeOperator op) {
  using Vec = Eigen::Matrix<typename A::Scalar, Eigen::Dynamic, 1>;
  if (u.size() != v.size()) throw InputError("edge_feature: dimension mismatch");
  const Vec a = u.derived().reshaped();
  const Vec b = v.derived().reshaped();
  switch (op) {
    case EdgeOperator::Average: return edge_average(a, b);
    case EdgeOperator::Hadamard: return edge_hadamard(a, b);
    case EdgeOperator::WeightedL1: return edge_weighted_l1(a, b);
    case EdgeOperator::WeightedL2: return edge_weighted_l2(a, b);
    case EdgeOperator::Dot: return Vec::Constant(1, a.dot(b));
  }
  return {};
}

}  // namespace jobgraph
