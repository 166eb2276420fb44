#pragma once

#include <vector>

#include <Eigen/Core>
#include <Eigen/Eigenvalues>

#include "jobgraph/embedding.hpp"
#include "jobgraph/error.hpp"

namespace jobgraph {

/// Projects mean-centered rows onto the two leading principal directions of
/// their covariance. Each axis is signed so its largest-magnitude loading is
/// positive. Data with fewer than two columns pads the second axis with zeros.
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, 2> pca_project_2d(const Eigen::MatrixBase<Derived>& rows) {
  using Scalar = typename Derived::Scalar;
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  if (rows.rows() < 2) throw InputError("projection needs at least two rows");
  const Matrix centered = rows.rowwise() - rows.colwise().mean();
  const Matrix cov = centered.transpose() * centered / Scalar(rows.rows() - 1);
  Eigen::SelfAdjointEigenSolver<Matrix> eig(cov);
  Eigen::Matrix<Scalar, Eigen::Dynamic, 2> out = Eigen::Matrix<Scalar, Eigen::Dynamic, 2>::Zero(rows.rows(), 2);
  const Eigen::Index d = cov.cols();
  for (Eigen::Index axis = 0; axis < std::min<Eigen::Index>(2, d); ++axis) {
    // Eigenvalues come back ascending.
    Eigen::Matrix<Scalar, Eigen::Dynamic, 1> dir = eig.eigenvectors().col(d - 1 - axis);
    Eigen::Index arg;
    dir.cwiseAbs().maxCoeff(&arg);
    if (dir(arg) < Scalar(0)) dir = -dir;
    out.col(axis) = centered * dir;
  }
  return out;
}

/// Projection of the named nodes' input vectors; throws InputError on an unknown node.
inline Eigen::Matrix<double, Eigen::Dynamic, 2> pca_project_2d(const EmbeddingMatrix& m,
                                                               const std::vector<NodeRef>& subset) {
  Eigen::MatrixXd rows(static_cast<Eigen::Index>(subset.size()), m.dim());
  for (std::size_t i = 0; i < subset.size(); ++i) {
    auto r = m.row_of(subset[i]);
    if (!r) throw InputError("projection: unknown node '" + subset[i].key + "'");
    rows.row(static_cast<Eigen::Index>(i)) = m.vector(*r);
  }
  return pca_project_2d(rows);
}

}  // namespace jobgraph
