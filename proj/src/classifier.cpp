#include "jobgraph/classifier.hpp"

#include <algorithm>
#include <cmath>

#include "jobgraph/error.hpp"

namespace jobgraph {

namespace {

// Row-wise softmax; optionally reports each row's log normalizer.
Eigen::MatrixXd softmax_rows(Eigen::MatrixXd logits, Eigen::VectorXd* log_norm = nullptr) {
  if (log_norm) log_norm->resize(logits.rows());
  for (Eigen::Index i = 0; i < logits.rows(); ++i) {
    const double mx = logits.row(i).maxCoeff();
    logits.row(i) = (logits.row(i).array() - mx).exp();
    const double z = logits.row(i).sum();
    logits.row(i) /= z;
    if (log_norm) (*log_norm)(i) = mx + std::log(z);
  }
  return logits;
}

Eigen::MatrixXd logits_of(const ClassifierModel& m, const Eigen::Ref<const Eigen::MatrixXd>& x) {
  Eigen::MatrixXd z = x * m.weights.transpose();
  z.rowwise() += m.bias.transpose();
  return z;
}

}  // namespace

Eigen::MatrixXd ClassifierModel::predict_proba(const Eigen::Ref<const Eigen::MatrixXd>& features) const {
  return softmax_rows(logits_of(*this, features));
}

std::vector<int> ClassifierModel::predict(const Eigen::Ref<const Eigen::MatrixXd>& features) const {
  const Eigen::MatrixXd z = logits_of(*this, features);
  std::vector<int> out(static_cast<std::size_t>(z.rows()));
  for (Eigen::Index i = 0; i < z.rows(); ++i) {
    Eigen::Index best;
    z.row(i).maxCoeff(&best);
    out[static_cast<std::size_t>(i)] = static_cast<int>(best);
  }
  return out;
}

double classifier_objective(const ClassifierModel& model, const Eigen::Ref<const Eigen::MatrixXd>& features,
                            std::span<const int> labels) {
  const Eigen::MatrixXd z = logits_of(model, features);
  double ce = 0;
  for (Eigen::Index i = 0; i < z.rows(); ++i) {
    const double mx = z.row(i).maxCoeff();
    const double lse = mx + std::log((z.row(i).array() - mx).exp().sum());
    ce += lse - z(i, labels[static_cast<std::size_t>(i)]);
  }
  return ce / static_cast<double>(z.rows()) + 0.5 * model.l2 * model.weights.squaredNorm();
}

Eigen::MatrixXd classifier_gradient(const ClassifierModel& model, const Eigen::Ref<const Eigen::MatrixXd>& features,
                                    std::span<const int> labels) {
  Eigen::MatrixXd residual = softmax_rows(logits_of(model, features));
  for (Eigen::Index i = 0; i < residual.rows(); ++i) residual(i, labels[static_cast<std::size_t>(i)]) -= 1.0;
  residual /= static_cast<double>(features.rows());
  Eigen::MatrixXd grad(model.weights.rows(), model.weights.cols() + 1);
  grad.leftCols(model.weights.cols()) = residual.transpose() * features + model.l2 * model.weights;
  grad.rightCols(1) = residual.colwise().sum().transpose();
  return grad;
}

ClassifierModel train_classifier(const Eigen::Ref<const Eigen::MatrixXd>& features, std::span<const int> labels,
                                 int num_classes, const ClassifierOptions& options, ClassifierTrace* trace) {
  if (num_classes < 2) throw InputError("classifier needs at least 2 classes");
  if (features.rows() == 0) throw InputError("classifier needs training rows");
  if (static_cast<std::size_t>(features.rows()) != labels.size()) throw InputError("feature/label count mismatch");
  std::vector<std::size_t> per_class(static_cast<std::size_t>(num_classes), 0);
  for (int y : labels) {
    if (y < 0 || y >= num_classes) throw InputError("label out of range");
    ++per_class[static_cast<std::size_t>(y)];
  }
  for (int c = 0; c < num_classes; ++c)
    if (per_class[static_cast<std::size_t>(c)] == 0)
      throw InputError("class " + std::to_string(c) + " has no training rows");
  if (!features.allFinite()) throw NumericError("classifier features contain non-finite values");

  const Eigen::Index dim = features.cols();
  ClassifierModel model{Eigen::MatrixXd::Zero(num_classes, dim), Eigen::VectorXd::Zero(num_classes), options.l2};
  auto params = [&] {
    Eigen::MatrixXd p(num_classes, dim + 1);
    p << model.weights, model.bias;
    return p;
  };
  auto set_params = [&](const Eigen::MatrixXd& p) {
    model.weights = p.leftCols(dim);
    model.bias = p.col(dim);
  };

  double f = classifier_objective(model, features, labels);
  Eigen::MatrixXd g = classifier_gradient(model, features, labels);
  Eigen::MatrixXd x = params();
  if (trace) *trace = {{f}, g.cwiseAbs().maxCoeff(), 0};
  double step = 1.0;
  std::size_t it = 0;
  for (; it < options.max_iterations && g.cwiseAbs().maxCoeff() >= options.gradient_tolerance; ++it) {
    const double gg = g.squaredNorm();
    double t = step;
    Eigen::MatrixXd x_new;
    double f_new = f;
    bool accepted = false;
    for (int bt = 0; bt < 60; ++bt, t *= 0.5) {
      x_new = x - t * g;
      set_params(x_new);
      f_new = classifier_objective(model, features, labels);
      if (f_new <= f - 1e-4 * t * gg) {
        accepted = true;
        break;
      }
    }
    if (!accepted) {
      set_params(x);
      break;
    }
    const Eigen::MatrixXd g_new = classifier_gradient(model, features, labels);
    // Barzilai-Borwein trial step for the next iteration.
    const Eigen::MatrixXd s = x_new - x, y = g_new - g;
    const double sy = (s.array() * y.array()).sum();
    step = sy > 0 ? std::clamp(s.squaredNorm() / sy, 1e-10, 1e10) : 1.0;
    x = x_new;
    g = g_new;
    f = f_new;
    if (trace) trace->objective.push_back(f);
  }
  if (trace) {
    trace->final_gradient_max = g.cwiseAbs().maxCoeff();
    trace->iterations = it;
  }
  if (!model.weights.allFinite()) throw NumericError("classifier diverged");
  return model;
}

}  // namespace jobgraph
