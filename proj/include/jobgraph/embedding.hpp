#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <unordered_map>
#include <vector>

#include <Eigen/Core>

#include "jobgraph/graph.hpp"

namespace jobgraph {

/// Node vectors with a NodeRef -> row index. `input_vectors` are the
/// published embedding; `output_vectors` are the skip-gram context weights and
/// only meaningful right after training.
template <typename Scalar>
struct BasicEmbeddingMatrix {
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

  std::vector<NodeRef> nodes;
  std::unordered_map<NodeRef, Eigen::Index, NodeRefHash> index;
  Matrix input_vectors;
  Matrix output_vectors;

  BasicEmbeddingMatrix() = default;
  BasicEmbeddingMatrix(std::vector<NodeRef> node_table, Eigen::Index dim)
      : nodes(std::move(node_table)),
        input_vectors(Matrix::Zero(static_cast<Eigen::Index>(nodes.size()), dim)),
        output_vectors(Matrix::Zero(static_cast<Eigen::Index>(nodes.size()), dim)) {
    for (std::size_t i = 0; i < nodes.size(); ++i) index.emplace(nodes[i], static_cast<Eigen::Index>(i));
  }

  Eigen::Index rows() const { return input_vectors.rows(); }
  Eigen::Index dim() const { return input_vectors.cols(); }

  std::optional<Eigen::Index> row_of(const NodeRef& node) const {
    auto it = index.find(node);
    if (it == index.end()) return std::nullopt;
    return it->second;
  }

  auto vector(Eigen::Index row) const { return input_vectors.row(row); }

  bool all_finite() const { return input_vectors.allFinite(); }
};

using EmbeddingMatrix = BasicEmbeddingMatrix<double>;

/// word2vec-style text: "count dim", then one row per node: the percent-escaped
/// kind-prefixed key and `dim` shortest round-trip decimals. Loading restores
/// the input vectors bit-for-bit; output vectors are not stored.
void save_embeddings(std::ostream& out, const EmbeddingMatrix& m);
EmbeddingMatrix load_embeddings(std::istream& in);
void save_embeddings(const std::filesystem::path& path, const EmbeddingMatrix& m);
EmbeddingMatrix load_embeddings(const std::filesystem::path& path);

}  // namespace jobgraph
