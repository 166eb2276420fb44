#include <cmath>
#include <filesystem>
#include <numeric>
#include <random>
#include <sstream>

#include "doctest.h"

#include "jobgraph/embedding.hpp"
#include "jobgraph/error.hpp"
#include "jobgraph/sgns.hpp"
#include "jobgraph/walker.hpp"

using namespace jobgraph;

namespace {

WalkCorpus toy_walks(std::size_t nodes, std::size_t walks, std::uint64_t seed) {
  WalkCorpus wc;
  for (std::size_t i = 0; i < nodes; ++i) wc.nodes.push_back({NodeKind::Job, "n" + std::to_string(i)});
  std::mt19937_64 rng(seed);
  for (std::size_t w = 0; w < walks; ++w) {
    std::vector<NodeId> walk;
    for (int k = 0; k < 8; ++k) walk.push_back(static_cast<NodeId>(rng() % nodes));
    wc.walks.push_back(walk);
  }
  return wc;
}

/// Loss of the negative-sampling objective computed directly.
double direct_loss(const Eigen::VectorXd& u, const Eigen::VectorXd& v, const Eigen::MatrixXd& negs) {
  double loss = -std::log(1.0 / (1.0 + std::exp(-u.dot(v))));
  for (Eigen::Index n = 0; n < negs.rows(); ++n) loss -= std::log(1.0 / (1.0 + std::exp(negs.row(n).dot(u))));
  return loss;
}

}  // namespace

TEST_SUITE("sgns") {
  TEST_CASE("all-zero vectors cost 6 ln 2 with five negatives") {
    const Eigen::VectorXd z = Eigen::VectorXd::Zero(4);
    const auto s = sgns_step(z, z, Eigen::MatrixXd::Zero(5, 4));
    CHECK(s.loss == doctest::Approx(6 * std::log(2.0)).epsilon(1e-14));
    CHECK(s.loss == doctest::Approx(4.1589).epsilon(1e-4));
  }

  TEST_CASE("saturated sigmoids give near-zero loss") {
    Eigen::VectorXd u = Eigen::VectorXd::Zero(2), v = Eigen::VectorXd::Zero(2);
    u << 4, 0;
    v << 5, 0;
    Eigen::MatrixXd negs(3, 2);
    negs << -5, 0, -5, 1, -5, -1;
    const auto s = sgns_step(u, v, negs);
    CHECK(s.loss >= 0);
    CHECK(s.loss < 1e-7);
  }

  TEST_CASE("loss matches the direct formula and is nonnegative") {
    std::mt19937_64 rng(2);
    std::normal_distribution<double> nd(0, 0.7);
    for (int t = 0; t < 50; ++t) {
      Eigen::VectorXd u(6), v(6);
      Eigen::MatrixXd negs(4, 6);
      for (auto* m : {&u, &v}) for (Eigen::Index i = 0; i < 6; ++i) (*m)(i) = nd(rng);
      for (Eigen::Index i = 0; i < negs.size(); ++i) negs(i) = nd(rng);
      const auto s = sgns_step(u, v, negs);
      CHECK(s.loss >= 0);
      CHECK(s.loss == doctest::Approx(direct_loss(u, v, negs)).epsilon(1e-12));
    }
  }

  TEST_CASE("gradients match central finite differences") {
    std::mt19937_64 rng(31);
    std::normal_distribution<double> nd(0, 0.5);
    const double h = 1e-5;
    for (int t = 0; t < 100; ++t) {
      const Eigen::Index dim = 8, k = 5;
      Eigen::VectorXd u(dim), v(dim);
      Eigen::MatrixXd negs(k, dim);
      for (Eigen::Index i = 0; i < dim; ++i) {
        u(i) = nd(rng);
        v(i) = nd(rng);
      }
      for (Eigen::Index i = 0; i < negs.size(); ++i) negs(i) = nd(rng);
      const auto s = sgns_step(u, v, negs);

      Eigen::VectorXd fu(dim), fv(dim);
      Eigen::MatrixXd fn(k, dim);
      for (Eigen::Index i = 0; i < dim; ++i) {
        Eigen::VectorXd a = u, b = u;
        a(i) += h;
        b(i) -= h;
        fu(i) = (direct_loss(a, v, negs) - direct_loss(b, v, negs)) / (2 * h);
        a = v;
        b = v;
        a(i) += h;
        b(i) -= h;
        fv(i) = (direct_loss(u, a, negs) - direct_loss(u, b, negs)) / (2 * h);
        for (Eigen::Index n = 0; n < k; ++n) {
          Eigen::MatrixXd pa = negs, pb = negs;
          pa(n, i) += h;
          pb(n, i) -= h;
          fn(n, i) = (direct_loss(u, v, pa) - direct_loss(u, v, pb)) / (2 * h);
        }
      }
      CHECK((s.center_grad - fu).norm() / fu.norm() < 1e-4);
      CHECK((s.context_grad - fv).norm() / fv.norm() < 1e-4);
      CHECK((s.negative_grads - fn).norm() / fn.norm() < 1e-4);
    }
  }

  TEST_CASE("non-finite input is a numeric error") {
    Eigen::VectorXd u = Eigen::VectorXd::Zero(3), v = Eigen::VectorXd::Zero(3);
    v(1) = std::nan("");
    CHECK_THROWS_AS(sgns_step(u, v, Eigen::MatrixXd::Zero(1, 3)), NumericError);
    CHECK_THROWS_AS(sgns_step(u, Eigen::VectorXd::Zero(4), Eigen::MatrixXd::Zero(1, 3)), InputError);
  }

  TEST_CASE("sgns_step accepts float vectors") {
    const Eigen::VectorXf z = Eigen::VectorXf::Zero(3);
    const auto s = sgns_step(z, z, Eigen::MatrixXf::Zero(1, 3));
    CHECK(s.loss == doctest::Approx(2 * std::log(2.0)).epsilon(1e-6));
  }

  TEST_CASE("initialization range and reproducibility") {
    const WalkCorpus wc = toy_walks(10, 5, 1);
    TrainConfig cfg;
    cfg.dim = 16;
    cfg.seed = 4;
    const EmbeddingMatrix a = initial_embedding(wc.nodes, cfg);
    CHECK(a.rows() == 10);
    CHECK(a.dim() == 16);
    CHECK(a.input_vectors.cwiseAbs().maxCoeff() <= 0.5 / 16);
    CHECK(a.input_vectors.cwiseAbs().maxCoeff() > 0.25 / 16);
    CHECK(a.output_vectors.isZero(0));
    CHECK(initial_embedding(wc.nodes, cfg).input_vectors == a.input_vectors);
    cfg.seed = 5;
    CHECK(initial_embedding(wc.nodes, cfg).input_vectors != a.input_vectors);
  }

  TEST_CASE("zero epochs return the initialization") {
    const WalkCorpus wc = toy_walks(10, 20, 1);
    TrainConfig cfg;
    cfg.dim = 8;
    cfg.epochs = 0;
    cfg.seed = 12;
    CHECK(train_embeddings(wc, cfg).input_vectors == initial_embedding(wc.nodes, cfg).input_vectors);
  }

  TEST_CASE("default shape is |V| x 128") {
    const WalkCorpus wc = toy_walks(6, 4, 9);
    TrainConfig cfg;
    cfg.epochs = 1;
    const EmbeddingMatrix m = train_embeddings(wc, cfg);
    CHECK(m.rows() == 6);
    CHECK(m.dim() == 128);
    CHECK(m.all_finite());
  }

  TEST_CASE("deterministic training is bit-reproducible") {
    const WalkCorpus wc = toy_walks(12, 60, 3);
    TrainConfig cfg;
    cfg.dim = 12;
    cfg.epochs = 3;
    cfg.seed = 99;
    const auto a = train_embeddings_with_stats(wc, cfg);
    const auto b = train_embeddings_with_stats(wc, cfg);
    CHECK(a.embedding.input_vectors == b.embedding.input_vectors);
    CHECK(a.epoch_loss == b.epoch_loss);
  }

  TEST_CASE("parallel training stays finite") {
    const WalkCorpus wc = toy_walks(12, 200, 3);
    TrainConfig cfg;
    cfg.dim = 12;
    cfg.deterministic = false;
    cfg.threads = 3;
    CHECK(train_embeddings(wc, cfg).all_finite());
  }

  TEST_CASE("unregistered walk node is a consistency error") {
    WalkCorpus wc = toy_walks(4, 2, 1);
    wc.walks.push_back({0, 9});
    CHECK_THROWS_AS(train_embeddings(wc, TrainConfig{}), ConsistencyError);
  }

  TEST_CASE("negative draws follow unigram^0.75") {
    // 10 nodes with frequencies 1..10.
    WalkCorpus wc;
    for (int i = 0; i < 10; ++i) wc.nodes.push_back({NodeKind::Job, std::to_string(i)});
    std::vector<NodeId> walk;
    for (NodeId i = 0; i < 10; ++i)
      for (NodeId c = 0; c <= i; ++c) walk.push_back(i);
    wc.walks.push_back(walk);
    const auto weights = negative_sampling_weights(wc);
    std::vector<double> cumulative(weights.size());
    std::partial_sum(weights.begin(), weights.end(), cumulative.begin());
    double z = 0;
    for (int i = 1; i <= 10; ++i) z += std::pow(i, 0.75);
    std::vector<double> counts(10, 0.0);
    std::mt19937_64 rng(8);
    const int draws = 1000000;
    for (int d = 0; d < draws; ++d) counts[sample_cumulative(cumulative, std::generate_canonical<double, 53>(rng))] += 1;
    for (int i = 0; i < 10; ++i) CHECK(std::abs(counts[i] / draws - std::pow(i + 1, 0.75) / z) < 0.01);
  }

  TEST_CASE("loss decreases on the two-clique fixture") {
    HeteroGraph g;
    for (int i = 0; i < 16; ++i) g.add_node({NodeKind::Job, "c" + std::to_string(i)});
    for (NodeId a = 0; a < 16; ++a)
      for (NodeId b = 0; b < 16; ++b)
        if (a != b && (a < 8) == (b < 8)) g.add_edge(a, b, EdgeKind::Transition);
    g.add_symmetric_edge(7, 8, EdgeKind::Transition);
    WalkConfig wcfg;
    wcfg.walks_per_node = 10;
    wcfg.seed = 1;
    TrainConfig cfg;
    cfg.dim = 16;
    cfg.seed = 1;
    const auto r = train_embeddings_with_stats(node2vec_walks(g, wcfg), cfg);
    REQUIRE(r.epoch_loss.size() == cfg.epochs);
    CHECK(r.epoch_loss.back() < r.epoch_loss.front());
  }

  TEST_CASE("embedding file round trip is bit-exact") {
    std::vector<NodeRef> nodes{{NodeKind::Job, "sales manager"}, {NodeKind::Tag, "sales"}, {NodeKind::Job, "50% off"}};
    EmbeddingMatrix m(nodes, 5);
    std::mt19937_64 rng(6);
    std::normal_distribution<double> nd;
    for (Eigen::Index i = 0; i < m.input_vectors.size(); ++i) m.input_vectors(i) = nd(rng) * 1e-3;
    m.input_vectors(0, 0) = 0.1;
    m.input_vectors(1, 1) = -1e-300;
    std::ostringstream out;
    save_embeddings(out, m);
    const std::string text = out.str();
    CHECK(text.rfind("3 5\n", 0) == 0);
    CHECK(text.find("J:sales%20manager ") != std::string::npos);
    std::istringstream in(text);
    const EmbeddingMatrix back = load_embeddings(in);
    CHECK(back.nodes == m.nodes);
    CHECK(back.input_vectors == m.input_vectors);
  }

  TEST_CASE("header of a 100 x 128 matrix") {
    std::vector<NodeRef> nodes;
    for (int i = 0; i < 100; ++i) nodes.push_back({NodeKind::Job, "t" + std::to_string(i)});
    std::ostringstream out;
    save_embeddings(out, EmbeddingMatrix(nodes, 128));
    CHECK(out.str().substr(0, out.str().find('\n')) == "100 128");
  }

  TEST_CASE("malformed embedding files name the line") {
    auto fails_at = [](const std::string& text, std::size_t line) {
      std::istringstream in(text);
      try {
        load_embeddings(in);
      } catch (const FormatError& e) {
        return e.line() == line;
      }
      return false;
    };
    CHECK(fails_at("two 2\n", 1));
    CHECK(fails_at("1 2\nJ:a 1\n", 2));
    CHECK(fails_at("2 1\nJ:a 1\nJ:a 2\n", 3));
    CHECK(fails_at("2 1\nJ:a 1\n", 3));
    CHECK(fails_at("1 1\nJ:a x\n", 2));
  }

  TEST_CASE("embedding file on disk") {
    std::vector<NodeRef> nodes{{NodeKind::Job, "a"}};
    EmbeddingMatrix m(nodes, 2);
    m.input_vectors << 1.5, -2.25;
    const auto path = std::filesystem::temp_directory_path() / "jobgraph_test_embeddings.txt";
    save_embeddings(path, m);
    CHECK(load_embeddings(path).input_vectors == m.input_vectors);
    std::filesystem::remove(path);
    CHECK_THROWS_AS(load_embeddings(path), InputError);
  }
}
