#include "jobgraph/metrics.hpp"

#include <algorithm>
#include <numeric>

namespace jobgraph {

F1Scores f1_scores(std::span<const int> gold, std::span<const int> predicted, int num_classes) {
  if (gold.size() != predicted.size()) throw InputError("gold/predicted length mismatch");
  const auto k = static_cast<std::size_t>(num_classes);
  std::vector<std::size_t> tp(k, 0), fp(k, 0), fn(k, 0), support(k, 0);
  for (std::size_t i = 0; i < gold.size(); ++i) {
    const auto g = static_cast<std::size_t>(gold[i]);
    const auto p = static_cast<std::size_t>(predicted[i]);
    if (g >= k || p >= k) throw InputError("class index out of range");
    ++support[g];
    if (g == p) {
      ++tp[g];
    } else {
      ++fp[p];
      ++fn[g];
    }
  }
  F1Scores s;
  s.per_class.assign(k, 0.0);
  std::size_t present = 0, tp_all = 0, fp_all = 0, fn_all = 0;
  for (std::size_t c = 0; c < k; ++c) {
    tp_all += tp[c];
    fp_all += fp[c];
    fn_all += fn[c];
    const std::size_t denom = 2 * tp[c] + fp[c] + fn[c];
    s.per_class[c] = denom ? 2.0 * static_cast<double>(tp[c]) / static_cast<double>(denom) : 0.0;
    if (support[c]) {
      ++present;
      s.macro += s.per_class[c];
    }
  }
  if (present) s.macro /= static_cast<double>(present);
  const std::size_t micro_denom = 2 * tp_all + fp_all + fn_all;
  s.micro = micro_denom ? 2.0 * static_cast<double>(tp_all) / static_cast<double>(micro_denom) : 0.0;
  return s;
}

F1Scores evaluate_classification(const ClassifierModel& model, const Eigen::Ref<const Eigen::MatrixXd>& features,
                                 std::span<const int> gold, int num_classes) {
  const auto pred = model.predict(features);
  return f1_scores(gold, pred, std::max(num_classes, model.classes()));
}

double compute_auc(std::span<const double> scores, std::span<const int> labels) {
  if (scores.size() != labels.size()) throw InputError("score/label length mismatch");
  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });
  // Mann-Whitney U with midranks for tied groups.
  double rank_sum = 0;
  std::size_t pos = 0, neg = 0;
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    while (j < order.size() && scores[order[j]] == scores[order[i]]) ++j;
    const double midrank = 0.5 * static_cast<double>(i + 1 + j);
    for (std::size_t t = i; t < j; ++t) {
      if (labels[order[t]] == 1) {
        rank_sum += midrank;
        ++pos;
      } else if (labels[order[t]] == 0) {
        ++neg;
      } else {
        throw InputError("AUC labels must be 0 or 1");
      }
    }
    i = j;
  }
  if (pos == 0 || neg == 0) throw InputError("AUC needs both positive and negative examples");
  const double p = static_cast<double>(pos), n = static_cast<double>(neg);
  return (rank_sum - p * (p + 1) / 2) / (p * n);
}

std::string_view to_string(EdgeOperator op) {
  switch (op) {
    case EdgeOperator::Average: return "average";
    case EdgeOperator::Hadamard: return "hadamard";
    case EdgeOperator::WeightedL1: return "weighted_l1";
    case EdgeOperator::WeightedL2: return "weighted_l2";
    case EdgeOperator::Dot: return "dot";
  }
  return "?";
}

std::optional<EdgeOperator> parse_edge_operator(std::string_view text) {
  for (auto op : kAllEdgeOperators)
    if (to_string(op) == text) return op;
  return std::nullopt;
}

}  // namespace jobgraph
