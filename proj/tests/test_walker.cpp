#include <map>
#include <sstream>

#include "doctest.h"

#include "jobgraph/error.hpp"
#include "jobgraph/graph.hpp"
#include "jobgraph/node_key.hpp"
#include "jobgraph/walker.hpp"

using namespace jobgraph;

namespace {

HeteroGraph job_graph(std::size_t n, std::initializer_list<std::pair<int, int>> edges, bool symmetric = true) {
  HeteroGraph g;
  for (std::size_t i = 0; i < n; ++i) g.add_node({NodeKind::Job, "n" + std::to_string(i)});
  for (auto [a, b] : edges) {
    g.add_edge(static_cast<NodeId>(a), static_cast<NodeId>(b), EdgeKind::Transition);
    if (symmetric) g.add_edge(static_cast<NodeId>(b), static_cast<NodeId>(a), EdgeKind::Transition);
  }
  return g;
}

/// 4 jobs, 2 tags: j0,j1 -> t0; j1,j2 -> t1; j3 untagged; a transition j0 -> j3.
HeteroGraph job_tag_graph() {
  HeteroGraph g;
  for (int i = 0; i < 4; ++i) g.add_node({NodeKind::Job, "j" + std::to_string(i)});
  const NodeId t0 = g.add_node({NodeKind::Tag, "t0"}), t1 = g.add_node({NodeKind::Tag, "t1"});
  g.add_symmetric_edge(0, t0, EdgeKind::HasIn);
  g.add_symmetric_edge(1, t0, EdgeKind::HasIn);
  g.add_symmetric_edge(1, t1, EdgeKind::HasIn);
  g.add_symmetric_edge(2, t1, EdgeKind::HasIn);
  g.add_edge(0, 3, EdgeKind::Transition);
  return g;
}

bool adjacent(const HeteroGraph& g, NodeId a, NodeId b, bool directed) {
  return g.has_edge(a, b) || (!directed && g.has_edge(b, a));
}

}  // namespace

TEST_SUITE("walker") {
  TEST_CASE("default config on a 7-node graph") {
    const HeteroGraph g = job_graph(7, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}, {6, 0}, {1, 4}});
    WalkConfig cfg;
    cfg.seed = 5;
    const WalkCorpus wc = node2vec_walks(g, cfg);
    CHECK(wc.walks.size() == 7 * 50);
    for (const auto& w : wc.walks) {
      CHECK(w.size() <= 10);
      CHECK(w.size() >= 1);
    }
  }

  TEST_CASE("isolated node yields a singleton walk") {
    const HeteroGraph g = job_graph(3, {{0, 1}});
    WalkConfig cfg;
    cfg.walks_per_node = 2;
    const WalkCorpus wc = node2vec_walks(g, cfg);
    REQUIRE(wc.walks.size() == 6);
    CHECK(wc.walks[4] == std::vector<NodeId>{2});
    CHECK(wc.walks[5] == std::vector<NodeId>{2});
  }

  TEST_CASE("walks follow edges and each node heads walks_per_node walks") {
    const HeteroGraph g = job_graph(6, {{0, 1}, {1, 2}, {2, 0}, {2, 3}, {3, 4}}, false);
    for (bool directed : {false, true}) {
      WalkConfig cfg;
      cfg.walk_length = 8;
      cfg.walks_per_node = 7;
      cfg.p = 0.5;
      cfg.q = 2;
      cfg.respect_direction = directed;
      cfg.seed = 11;
      const WalkCorpus wc = node2vec_walks(g, cfg);
      REQUIRE(wc.walks.size() == 6 * 7);
      for (std::size_t i = 0; i < wc.walks.size(); ++i) {
        const auto& w = wc.walks[i];
        CHECK(w.front() == i / 7);
        CHECK(w.size() <= 8);
        for (std::size_t k = 1; k < w.size(); ++k) CHECK(adjacent(g, w[k - 1], w[k], directed));
      }
      // Node 4 is a sink under directed walking.
      if (directed) CHECK(wc.walks[4 * 7].size() == 1);
    }
  }

  TEST_CASE("return probability on a path") {
    // a - b - c, previous a, current b, p = 0.25, q = 4.
    const HeteroGraph g = job_graph(3, {{0, 1}, {1, 2}});
    WalkConfig cfg;
    cfg.p = 0.25;
    cfg.q = 4;
    std::vector<NodeId> next;
    const auto w = node2vec_step_weights(g, cfg, 0, 1, &next);
    REQUIRE(next.size() == 2);
    double total = 0, back = 0;
    for (std::size_t i = 0; i < next.size(); ++i) {
      total += w[i];
      if (next[i] == 0) back = w[i];
    }
    CHECK(back / total == doctest::Approx(4.0 / 4.25).epsilon(1e-12));
  }

  TEST_CASE("p = q = 1 reduces to uniform first-order steps") {
    // Enumerate every (prev, cur) state of small graphs.
    const HeteroGraph graphs[] = {
        job_graph(3, {{0, 1}, {1, 2}, {2, 0}}),
        job_graph(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}, {0, 2}}),
        job_graph(6, {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {0, 5}, {1, 2}, {3, 4}}),
    };
    WalkConfig cfg;
    for (const auto& g : graphs)
      for (NodeId cur = 0; cur < g.node_count(); ++cur)
        for (NodeId prev : walk_neighbors(g, cur, false)) {
          std::vector<NodeId> next;
          const auto w = node2vec_step_weights(g, cfg, prev, cur, &next);
          CHECK(next == walk_neighbors(g, cur, false));
          double total = 0;
          for (double x : w) total += x;
          for (double x : w) CHECK(x / total == doctest::Approx(1.0 / static_cast<double>(w.size())).epsilon(1e-15));
        }
  }

  TEST_CASE("second-order weights by distance class") {
    // 0-1, 1-2, 1-3, 0-2: from prev 0 at 1, neighbor 2 is adjacent to 0, 3 is not.
    const HeteroGraph g = job_graph(4, {{0, 1}, {1, 2}, {1, 3}, {0, 2}});
    WalkConfig cfg;
    cfg.p = 2;
    cfg.q = 0.5;
    std::vector<NodeId> next;
    const auto w = node2vec_step_weights(g, cfg, 0, 1, &next);
    std::map<NodeId, double> by;
    for (std::size_t i = 0; i < next.size(); ++i) by[next[i]] = w[i];
    CHECK(by.at(0) == doctest::Approx(0.5));
    CHECK(by.at(2) == doctest::Approx(1.0));
    CHECK(by.at(3) == doctest::Approx(2.0));
  }

  TEST_CASE("walks do not depend on the thread count") {
    const HeteroGraph g = job_graph(9, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}, {6, 7}, {7, 8}, {8, 0}, {2, 6}});
    WalkConfig cfg;
    cfg.walks_per_node = 13;
    cfg.p = 0.7;
    cfg.q = 1.9;
    cfg.seed = 77;
    const WalkCorpus one = node2vec_walks(g, cfg);
    cfg.threads = 4;
    CHECK(node2vec_walks(g, cfg).walks == one.walks);
    cfg.threads = 1;
    CHECK(node2vec_walks(g, cfg).walks == one.walks);
    cfg.seed = 78;
    CHECK(node2vec_walks(g, cfg).walks != one.walks);
  }

  TEST_CASE("invalid configs are rejected") {
    const HeteroGraph g = job_graph(2, {{0, 1}});
    WalkConfig cfg;
    cfg.p = 0;
    CHECK_THROWS_AS(node2vec_walks(g, cfg), ConfigError);
    cfg = {};
    cfg.q = -1;
    CHECK_THROWS_AS(node2vec_walks(g, cfg), ConfigError);
    cfg = {};
    cfg.walk_length = 0;
    CHECK_THROWS_AS(node2vec_walks(g, cfg), ConfigError);
    cfg = {};
    cfg.metapath = {NodeKind::Job, NodeKind::Tag};
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
  }

  TEST_CASE("Job-Tag-Job meta-path walks alternate kinds") {
    const HeteroGraph g = job_tag_graph();
    WalkConfig cfg;
    cfg.metapath = {NodeKind::Job, NodeKind::Tag, NodeKind::Job};
    cfg.walks_per_node = 20;
    cfg.walk_length = 9;
    cfg.seed = 3;
    const WalkCorpus wc = metapath_walks(g, cfg);
    CHECK(wc.walks.size() == 4 * 20);
    for (const auto& w : wc.walks) {
      for (std::size_t k = 0; k < w.size(); ++k)
        CHECK(g.node(w[k]).kind == (k % 2 == 0 ? NodeKind::Job : NodeKind::Tag));
      for (std::size_t k = 1; k < w.size(); ++k) CHECK(adjacent(g, w[k - 1], w[k], false));
      // j3 has no tag, so walks from it stop at once.
      if (w.front() == 3) CHECK(w.size() == 1);
      else CHECK(w.size() == 9);
    }
  }

  TEST_CASE("meta-path with a kind absent from the graph") {
    const HeteroGraph g = job_graph(3, {{0, 1}});
    WalkConfig cfg;
    cfg.metapath = {NodeKind::Job, NodeKind::Tag, NodeKind::Job};
    CHECK_THROWS_AS(metapath_walks(g, cfg), ConfigError);
  }

  TEST_CASE("meta-path steps are uniform over admissible neighbors") {
    const HeteroGraph g = job_tag_graph();
    WalkConfig cfg;
    cfg.metapath = {NodeKind::Job, NodeKind::Tag, NodeKind::Job};
    cfg.walks_per_node = 20000;
    cfg.walk_length = 2;
    cfg.seed = 9;
    const WalkCorpus wc = metapath_walks(g, cfg);
    // From j1 the tags t0 and t1 are equally likely.
    std::map<NodeId, double> counts;
    double total = 0;
    for (const auto& w : wc.walks)
      if (w.front() == 1) {
        counts[w[1]] += 1;
        total += 1;
      }
    CHECK(counts[4] / total == doctest::Approx(0.5).epsilon(0.03));
    CHECK(counts[5] / total == doctest::Approx(0.5).epsilon(0.03));
  }

  TEST_CASE("walk corpus text round trip") {
    HeteroGraph g;
    g.add_node({NodeKind::Job, "sales manager"});
    g.add_node({NodeKind::Tag, "sales"});
    g.add_node({NodeKind::Job, "r_d 100%"});
    g.add_symmetric_edge(0, 1, EdgeKind::HasIn);
    g.add_symmetric_edge(2, 1, EdgeKind::HasIn);
    WalkConfig cfg;
    cfg.walks_per_node = 2;
    cfg.walk_length = 5;
    const WalkCorpus wc = node2vec_walks(g, cfg);
    std::ostringstream out;
    write_walks(out, wc);
    CHECK(out.str().rfind("J:sales_manager T:sales ", 0) == 0);
    CHECK(out.str().find("J:r%5Fd_100%25") != std::string::npos);
    std::istringstream in(out.str());
    const auto nodes = g.nodes();
    const WalkCorpus back = read_walks(in, &nodes);
    CHECK(back.walks == wc.walks);
    std::istringstream in2(out.str());
    const WalkCorpus open = read_walks(in2);
    REQUIRE(open.walks.size() == wc.walks.size());
    for (std::size_t i = 0; i < wc.walks.size(); ++i)
      for (std::size_t k = 0; k < wc.walks[i].size(); ++k)
        CHECK(open.nodes[open.walks[i][k]] == g.node(wc.walks[i][k]));
  }

  TEST_CASE("node key escaping") {
    const NodeRef n{NodeKind::Job, "a b_c%d"};
    CHECK(walk_token(n) == "J:a_b%5Fc%25d");
    CHECK(embedding_token(n) == "J:a%20b_c%25d");
    CHECK(parse_walk_token(walk_token(n)) == n);
    CHECK(parse_embedding_token(embedding_token(n)) == n);
    CHECK_THROWS_AS(parse_walk_token("X:abc"), InputError);
    CHECK_THROWS_AS(parse_walk_token("J:ab%2"), InputError);
    CHECK_THROWS_AS(parse_embedding_token("sales"), InputError);
  }
}
