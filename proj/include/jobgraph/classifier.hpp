#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Core>

namespace jobgraph {

/// Multinomial logistic regression, weights (classes x dim) and bias.
struct ClassifierModel {
  Eigen::MatrixXd weights;
  Eigen::VectorXd bias;
  double l2 = 5e-4;

  int classes() const { return static_cast<int>(weights.rows()); }
  /// Row-wise softmax probabilities.
  Eigen::MatrixXd predict_proba(const Eigen::Ref<const Eigen::MatrixXd>& features) const;
  std::vector<int> predict(const Eigen::Ref<const Eigen::MatrixXd>& features) const;
};

struct ClassifierOptions {
  double l2 = 5e-4;
  double gradient_tolerance = 1e-5;  // on the max-abs gradient entry
  std::size_t max_iterations = 10000;
};

struct ClassifierTrace {
  std::vector<double> objective;  // objective[0] is the starting point
  double final_gradient_max = 0;
  std::size_t iterations = 0;
};

/// Mean cross-entropy + l2/2 * |W|^2 (bias unpenalized).
double classifier_objective(const ClassifierModel& model, const Eigen::Ref<const Eigen::MatrixXd>& features,
                            std::span<const int> labels);

/// Gradient of classifier_objective, stacked as [dW | db] (classes x (dim+1)).
Eigen::MatrixXd classifier_gradient(const ClassifierModel& model, const Eigen::Ref<const Eigen::MatrixXd>& features,
                                    std::span<const int> labels);

/// Gradient descent with Barzilai-Borwein trial steps and Armijo backtracking,
/// so the objective never increases. Labels lie in [0, num_classes). Throws
/// InputError on fewer than 2 classes, empty input or an unrepresented class.
ClassifierModel train_classifier(const Eigen::Ref<const Eigen::MatrixXd>& features, std::span<const int> labels,
                                 int num_classes, const ClassifierOptions& options = {},
                                 ClassifierTrace* trace = nullptr);

}  // namespace jobgraph
