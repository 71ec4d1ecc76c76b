#include <doctest.h>

#include <Eigen/SVD>
#include <numeric>
#include <random>

#include "coembed/coembed.hpp"
#include "coembed/meanshift.hpp"
#include "coembed/svd.hpp"
#include "oracles.hpp"
#include "planted.hpp"

using namespace coembed;

namespace {

CoembedConfig fast_config(int k_iterations, std::uint64_t seed) {
  CoembedConfig cfg;
  cfg.k_iterations = k_iterations;
  cfg.seed = seed;
  cfg.tsne.max_iter = 250;
  cfg.tsne.early_exaggeration_iters = 80;
  cfg.tsne.momentum_switch_iter = 80;
  return cfg;
}

} // namespace

TEST_CASE("truncated_svd returns a non-increasing spectrum") {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Matrix A(40, 25);
  for (int i = 0; i < 40; ++i)
    for (int j = 0; j < 25; ++j) A(i, j) = gauss(rng);
  TruncatedSvd svd = truncated_svd(A, 6, 0);
  for (int i = 1; i < svd.S.size(); ++i) CHECK(svd.S(i) <= svd.S(i - 1) + 1e-12);

  // against the dense oracle
  Eigen::JacobiSVD<Matrix> dense(A);
  for (int i = 0; i < 6; ++i)
    CHECK(svd.S(i) == doctest::Approx(dense.singularValues()(i)).epsilon(1e-9));
}

TEST_CASE("svd_init") {
  SUBCASE("2x2 identity gives axis-aligned unit points") {
    BipartiteGraph g = BipartiteGraph::build(2, 2, {{0, 0}, {1, 1}}, false);
    auto [yr, yt] = svd_init(g, 2);
    // each row must be a standard basis vector up to the sign convention
    for (int i = 0; i < 2; ++i) {
      CHECK(yr.row(i).cwiseAbs().maxCoeff() == doctest::Approx(1.0));
      CHECK(yr.row(i).cwiseAbs().minCoeff() == doctest::Approx(0.0));
      CHECK(yr.row(i).maxCoeff() == doctest::Approx(1.0)); // made positive
    }
  }

  SUBCASE("block-diagonal all-ones blocks collapse block members") {
    // blocks: 3 resources x 2 tags, 2 resources x 3 tags
    std::vector<Edge> edges;
    for (int r = 0; r < 3; ++r)
      for (int t = 0; t < 2; ++t) edges.push_back({r, t, 1});
    for (int r = 3; r < 5; ++r)
      for (int t = 2; t < 5; ++t) edges.push_back({r, t, 1});
    BipartiteGraph g = BipartiteGraph::build(5, 5, edges, false);
    auto [yr, yt] = svd_init(g, 2);

    CHECK((yr.row(0) - yr.row(1)).cwiseAbs().maxCoeff() < 1e-9);
    CHECK((yr.row(0) - yr.row(2)).cwiseAbs().maxCoeff() < 1e-9);
    CHECK((yr.row(3) - yr.row(4)).cwiseAbs().maxCoeff() < 1e-9);
    CHECK((yr.row(0) - yr.row(3)).cwiseAbs().maxCoeff() > 1e-3);

    // dense SVD oracle on the 5x5 incidence: scaled singular vectors
    Matrix M = Matrix::Zero(5, 5);
    for (const Edge& e : edges) M(e.resource, e.tag) = 1.0;
    Eigen::JacobiSVD<Matrix> dense(M, Eigen::ComputeThinU);
    Matrix want = dense.matrixU().leftCols(2) *
                  dense.singularValues().head(2).asDiagonal();
    // compare magnitudes column-wise (signs follow our own convention)
    for (int c = 0; c < 2; ++c)
      CHECK(yr.col(c).cwiseAbs().sum() ==
            doctest::Approx(want.col(c).cwiseAbs().sum()).epsilon(1e-9));
  }

  SUBCASE("empty graph and oversized dim are refused") {
    BipartiteGraph g = BipartiteGraph::build(2, 2, {{0, 0}}, false);
    CHECK_THROWS_AS(svd_init(g, 3), std::invalid_argument);
    BipartiteGraph empty = BipartiteGraph::build(2, 2, {}, false);
    CHECK_THROWS_AS(svd_init(empty, 1), DataError);
  }
}

TEST_CASE("co_embed loop contract") {
  planted::Instance inst =
      planted::block_graph({12, 12}, {9, 9}, {{0.9, 0.05}, {0.05, 0.9}}, 5);

  SUBCASE("k=1 runs exactly two steps, resources first") {
    CoembedConfig cfg = fast_config(1, 3);
    CoembedResult res = co_embed(inst.graph, cfg);
    REQUIRE(res.steps.size() == 2);
    CHECK(res.steps[0].resources_embedded);
    CHECK_FALSE(res.steps[1].resources_embedded);
    CHECK(res.steps[0].step == 1);
    CHECK(res.steps[1].step == 2);
    CHECK(res.resources.rows() == inst.graph.n_resources());
    CHECK(res.tags.rows() == inst.graph.n_tags());
  }

  SUBCASE("role alternation is exact over many steps") {
    CoembedConfig cfg = fast_config(3, 3);
    CoembedResult res = co_embed(inst.graph, cfg);
    REQUIRE(res.steps.size() == 6);
    for (std::size_t i = 0; i < res.steps.size(); ++i)
      CHECK(res.steps[i].resources_embedded == (res.steps[i].step % 2 == 1));
  }

  SUBCASE("deterministic: identical traces for identical configs") {
    CoembedConfig cfg = fast_config(2, 17);
    CoembedResult a = co_embed(inst.graph, cfg);
    CoembedResult b = co_embed(inst.graph, cfg);
    REQUIRE(a.steps.size() == b.steps.size());
    for (std::size_t i = 0; i < a.steps.size(); ++i) {
      CHECK(a.steps[i].mean_stability == b.steps[i].mean_stability);
      CHECK(a.steps[i].final_objective == b.steps[i].final_objective);
      CHECK((a.steps[i].embedding - b.steps[i].embedding).cwiseAbs().maxCoeff() ==
            0.0);
    }
  }

  SUBCASE("zero-degree items are refused") {
    BipartiteGraph g = BipartiteGraph::build(3, 2, {{0, 0}, {1, 1}}, false);
    CHECK_THROWS_AS(co_embed(g, fast_config(1, 0)), DataError);
  }

  SUBCASE("early stop triggers once both sides are stable") {
    CoembedConfig cfg = fast_config(8, 21);
    cfg.stability_threshold = 0.0; // trivially satisfied after two steps
    CoembedResult res = co_embed(inst.graph, cfg);
    CHECK(res.steps.size() == 2);
  }
}

TEST_CASE("co_embed separates a planted 2-block graph") {
  planted::Instance inst =
      planted::block_graph({15, 15}, {10, 10}, {{0.85, 0.05}, {0.05, 0.85}}, 29);
  CoembedConfig cfg = fast_config(3, 7);
  CoembedResult res = co_embed(inst.graph, cfg);

  // block co-membership: nearest neighbors stay within the planted block
  for (int i = 0; i < res.resources.rows(); ++i) {
    std::set<int> nn = oracle::knn_set(res.resources, i, 3);
    for (int j : nn)
      CHECK(inst.resource_blocks[j] == inst.resource_blocks[i]);
  }
}

TEST_CASE("co_embed stability trend on the planted instance") {
  planted::Instance inst =
      planted::block_graph({15, 15}, {10, 10}, {{0.85, 0.05}, {0.05, 0.85}}, 31);
  CoembedConfig cfg = fast_config(4, 11);
  CoembedResult res = co_embed(inst.graph, cfg);
  REQUIRE(res.steps.size() == 8);

  // mean stability over the last four steps may dip once, by at most 0.05
  int dips = 0;
  for (std::size_t i = res.steps.size() - 3; i < res.steps.size(); ++i) {
    const double delta =
        res.steps[i].mean_stability - res.steps[i - 1].mean_stability;
    if (delta < 0.0) {
      ++dips;
      CHECK(delta > -0.05);
    }
  }
  CHECK(dips <= 1);
}

TEST_CASE("co_embed permutation equivariance") {
  planted::Instance inst =
      planted::block_graph({12, 12}, {10, 10}, {{0.95, 0.02}, {0.02, 0.95}}, 3);
  const int nr = inst.graph.n_resources();

  std::vector<int> perm(nr);
  std::iota(perm.begin(), perm.end(), 0);
  std::mt19937_64 rng(12);
  std::shuffle(perm.begin(), perm.end(), rng);

  // permuted copy of the graph: resource i of the copy is perm[i] of the
  // original
  std::vector<Edge> edges;
  std::vector<int> inverse(nr);
  for (int i = 0; i < nr; ++i) inverse[perm[i]] = i;
  for (const Edge& e : inst.graph.edges())
    edges.push_back({inverse[e.resource], e.tag, e.count});
  BipartiteGraph permuted = BipartiteGraph::build(
      nr, inst.graph.n_tags(), edges, false);

  // index order leaks into floating-point summation order, and the t-SNE
  // iteration amplifies last-bit differences, so the raw coordinates are
  // only structurally equivariant: the recovered cluster structure must map
  // exactly through the permutation
  CoembedConfig cfg = fast_config(2, 5);
  CoembedResult a = co_embed(inst.graph, cfg);
  CoembedResult b = co_embed(permuted, cfg);

  Clustering ca = cluster_embedding(a.resources, default_perplexity(nr));
  Clustering cb = cluster_embedding(b.resources, default_perplexity(nr));
  // sanity: the unpermuted run recovers the planted blocks
  CHECK(oracle::adjusted_rand_index(ca.labels, inst.resource_blocks) ==
        doctest::Approx(1.0));
  std::vector<int> cb_mapped(nr);
  for (int i = 0; i < nr; ++i) cb_mapped[i] = cb.labels[inverse[i]];
  CHECK(oracle::adjusted_rand_index(ca.labels, cb_mapped) == doctest::Approx(1.0));
}

TEST_CASE("assign_to_clusters") {
  // three sample clusters concentrated on three feature clusters
  std::vector<Edge> edges;
  for (int s = 0; s < 9; ++s) {
    const int block = s / 3;
    edges.push_back({s, 2 * block, 1});
    edges.push_back({s, 2 * block + 1, 1});
  }
  BipartiteGraph g = BipartiteGraph::build(9, 6, edges, false);
  GraphView view(g);
  Clustering fc;
  fc.labels = {0, 0, 1, 1, 2, 2};
  fc.n_clusters = 3;

  std::vector<CompressedDescriptor> descriptors;
  std::vector<int> sizes = {3, 3, 3};
  for (int c = 0; c < 3; ++c) {
    std::vector<int> members = {3 * c, 3 * c + 1, 3 * c + 2};
    descriptors.push_back(compress_cluster(view, members, fc));
  }

  SUBCASE("members return home") {
    AssignmentResult res = assign_to_clusters(view, descriptors, sizes, fc);
    for (int s = 0; s < 9; ++s) CHECK(res.labels[s] == s / 3);
    CHECK(res.unassignable.empty());
  }

  SUBCASE("one-hot item goes to the concentrated cluster") {
    BipartiteGraph item = BipartiteGraph::build(1, 6, {{0, 2}}, false);
    AssignmentResult res =
        assign_to_clusters(GraphView(item), descriptors, sizes, fc);
    CHECK(res.labels[0] == 1);
  }

  SUBCASE("matches exhaustive KL comparison") {
    std::mt19937_64 rng(9);
    std::vector<Edge> new_edges;
    for (int s = 0; s < 12; ++s) {
      bool any = false;
      for (int t = 0; t < 6; ++t)
        if (rng() % 3 == 0) {
          new_edges.push_back({s, t, 1});
          any = true;
        }
      if (!any) new_edges.push_back({s, static_cast<int>(rng() % 6), 1});
    }
    BipartiteGraph items = BipartiteGraph::build(12, 6, new_edges, false);
    GraphView iv(items);
    AssignmentResult res = assign_to_clusters(iv, descriptors, sizes, fc);
    for (int s = 0; s < 12; ++s) {
      const CompressedDescriptor q = compress_sample(iv, s, fc);
      int want = 0;
      double best = std::numeric_limits<double>::infinity();
      for (int c = 0; c < 3; ++c) {
        const double kl = smoothed_kl(q, descriptors[c]);
        if (kl < best) {
          best = kl;
          want = c;
        }
      }
      CHECK(res.labels[s] == want);
    }
  }

  SUBCASE("edgeless items are unassignable") {
    BipartiteGraph item = BipartiteGraph::build(2, 6, {{0, 0}}, false);
    AssignmentResult res =
        assign_to_clusters(GraphView(item), descriptors, sizes, fc);
    CHECK(res.labels[1] == -1);
    CHECK(res.unassignable == std::vector<int>{1});
  }
}
