#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>
#include <sstream>
#include <tuple>

#include "coembed/graph.hpp"

using namespace coembed;

namespace {

BipartiteGraph parse(const std::string& text) {
  std::istringstream in(text);
  return load_edge_list(in);
}

// one-at-a-time removal oracle for the min-degree filter: scan for any
// single under-threshold item, drop it, restart, until stable
std::pair<std::set<int>, std::set<int>> naive_filter(const BipartiteGraph& g,
                                                     int min_r, int min_t) {
  std::set<int> r_alive, t_alive;
  for (int r = 0; r < g.n_resources(); ++r) r_alive.insert(r);
  for (int t = 0; t < g.n_tags(); ++t) t_alive.insert(t);
  auto deg_r = [&](int r) {
    int d = 0;
    for (int t : g.tags_of(r)) d += t_alive.count(t);
    return d;
  };
  auto deg_t = [&](int t) {
    int d = 0;
    for (int r : g.resources_of(t)) d += r_alive.count(r);
    return d;
  };
  bool changed = true;
  while (changed) {
    changed = false;
    for (int r : r_alive)
      if (deg_r(r) < min_r) {
        r_alive.erase(r);
        changed = true;
        break;
      }
    if (changed) continue;
    for (int t : t_alive)
      if (deg_t(t) < min_t) {
        t_alive.erase(t);
        changed = true;
        break;
      }
  }
  return {r_alive, t_alive};
}

} // namespace

TEST_CASE("load_edge_list basics") {
  SUBCASE("two edges, one resource") {
    BipartiteGraph g = parse("a\tt1\na\tt2\n");
    CHECK(g.n_resources() == 1);
    CHECK(g.n_tags() == 2);
    CHECK(g.n_edges() == 2);
    CHECK_FALSE(g.has_counts());
    CHECK(g.resource_label(0) == "a");
  }

  SUBCASE("duplicate counted lines merge by summing") {
    BipartiteGraph g = parse("a\tt1\t2\na\tt1\t3\n");
    CHECK(g.n_edges() == 1);
    CHECK(g.has_counts());
    CHECK(g.resource_counts(0)[0] == 5);
  }

  SUBCASE("duplicate binary lines merge silently") {
    BipartiteGraph g = parse("a\tt1\na\tt1\n");
    CHECK(g.n_edges() == 1);
    CHECK(g.resource_counts(0)[0] == 1);
  }

  SUBCASE("single-field line is a parse error with its line number") {
    CHECK_THROWS_AS(parse("a\tt1\na\n"), ParseError);
    try {
      parse("a\tt1\na\n");
    } catch (const ParseError& e) {
      CHECK(e.line() == 2);
    }
  }

  SUBCASE("non-positive or non-integer counts rejected") {
    CHECK_THROWS_AS(parse("a\tt1\t0\n"), ParseError);
    CHECK_THROWS_AS(parse("a\tt1\t-3\n"), ParseError);
    CHECK_THROWS_AS(parse("a\tt1\tx\n"), ParseError);
  }

  SUBCASE("empty input") {
    CHECK_THROWS_AS(parse(""), DataError);
    CHECK_THROWS_AS(parse("# only a comment\n"), DataError);
  }

  SUBCASE("comments and blank lines skipped") {
    BipartiteGraph g = parse("# header\n\na\tt1\n");
    CHECK(g.n_edges() == 1);
  }
}

TEST_CASE("degree and views") {
  // resource a -> t1,t2,t3 ; b isolated is impossible via load, so build
  std::vector<Edge> edges = {{0, 0}, {0, 1}, {0, 2}};
  BipartiteGraph g = BipartiteGraph::build(2, 3, edges, false);
  GraphView view(g);

  CHECK(degree(view, 0) == 3);
  CHECK(degree(view, 1) == 0); // isolated item
  CHECK_THROWS_AS(degree(view, 2), std::out_of_range);

  SUBCASE("transpose reads the same edges from the tag side") {
    GraphView tv = transpose(view);
    CHECK(tv.n_samples() == 3);
    CHECK(degree(tv, 0) == 1);
    CHECK(tv.transpose().tags_as_samples() == view.tags_as_samples());
  }

  SUBCASE("edge (r,t) present iff (t,r) present in the transposed view") {
    GraphView tv = view.transpose();
    for (int r = 0; r < g.n_resources(); ++r)
      for (int t : view.features_of(r)) {
        auto rs = tv.features_of(t);
        CHECK(std::find(rs.begin(), rs.end(), r) != rs.end());
      }
  }
}

TEST_CASE("degree sums match edge count") {
  BipartiteGraph g =
      parse("a\tx\na\ty\nb\tx\nc\tz\nc\tx\nc\ty\n");
  std::int64_t dr = 0, dt = 0;
  for (int r = 0; r < g.n_resources(); ++r) dr += g.resource_degree(r);
  for (int t = 0; t < g.n_tags(); ++t) dt += g.tag_degree(t);
  CHECK(dr == g.n_edges());
  CHECK(dt == g.n_edges());
}

TEST_CASE("filter_min_degree") {
  SUBCASE("already above thresholds: untouched") {
    BipartiteGraph g = parse("a\tx\na\ty\nb\tx\nb\ty\n");
    DerivedGraph f = filter_min_degree(g, 2, 2);
    CHECK(f.graph.n_resources() == 2);
    CHECK(f.graph.n_tags() == 2);
    CHECK(f.graph.n_edges() == 4);
  }

  SUBCASE("path-like graph with thresholds 5/5 empties out") {
    // r0-t0-r1-t1-r2: every degree <= 2
    std::vector<Edge> edges = {{0, 0}, {1, 0}, {1, 1}, {2, 1}};
    BipartiteGraph g = BipartiteGraph::build(3, 2, edges, false);
    DerivedGraph f = filter_min_degree(g, 5, 5);
    CHECK(f.graph.n_resources() == 0);
    CHECK(f.graph.n_tags() == 0);
    CHECK(f.graph.n_edges() == 0);
  }

  SUBCASE("cascade matches the one-at-a-time oracle") {
    // removing tag t2 (degree 1) drops r2 under threshold, which in turn
    // drops t1 under threshold
    std::vector<Edge> edges = {
        {0, 0}, {0, 1}, {1, 0}, {1, 1}, {2, 1}, {2, 2},
    };
    BipartiteGraph g = BipartiteGraph::build(3, 3, edges, false);
    DerivedGraph f = filter_min_degree(g, 2, 2);
    auto [r_oracle, t_oracle] = naive_filter(g, 2, 2);
    std::set<int> r_kept(f.resource_origin.begin(), f.resource_origin.end());
    std::set<int> t_kept(f.tag_origin.begin(), f.tag_origin.end());
    CHECK(r_kept == r_oracle);
    CHECK(t_kept == t_oracle);
  }

  SUBCASE("random graphs match the oracle and filtering is idempotent") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 20; ++trial) {
      const int nr = 3 + static_cast<int>(rng() % 40);
      const int nt = 3 + static_cast<int>(rng() % 40);
      std::vector<Edge> edges;
      for (int r = 0; r < nr; ++r)
        for (int t = 0; t < nt; ++t)
          if (rng() % 100 < 12) edges.push_back({r, t, 1});
      BipartiteGraph g = BipartiteGraph::build(nr, nt, edges, false);
      const int min_r = 1 + static_cast<int>(rng() % 3);
      const int min_t = 1 + static_cast<int>(rng() % 3);

      DerivedGraph f = filter_min_degree(g, min_r, min_t);
      auto [r_oracle, t_oracle] = naive_filter(g, min_r, min_t);
      std::set<int> r_kept(f.resource_origin.begin(), f.resource_origin.end());
      std::set<int> t_kept(f.tag_origin.begin(), f.tag_origin.end());
      REQUIRE(r_kept == r_oracle);
      REQUIRE(t_kept == t_oracle);

      DerivedGraph again = filter_min_degree(f.graph, min_r, min_t);
      CHECK(again.graph.n_resources() == f.graph.n_resources());
      CHECK(again.graph.n_tags() == f.graph.n_tags());
      CHECK(again.graph.n_edges() == f.graph.n_edges());
    }
  }
}

TEST_CASE("sample_resources") {
  std::vector<Edge> edges;
  for (int r = 0; r < 100; ++r)
    for (int t = 0; t < 5; ++t)
      if ((r + t) % 3 != 0) edges.push_back({r, t, 1});
  BipartiteGraph g = BipartiteGraph::build(100, 5, edges, false);

  SUBCASE("target >= n keeps everything") {
    DerivedGraph s = sample_resources(g, 1000, 42);
    CHECK(s.graph.n_resources() == 100);
    CHECK(s.graph.n_edges() == g.n_edges());
  }

  SUBCASE("deterministic for a fixed seed") {
    DerivedGraph a = sample_resources(g, 30, 42);
    DerivedGraph b = sample_resources(g, 30, 42);
    CHECK(a.resource_origin == b.resource_origin);
    DerivedGraph c = sample_resources(g, 30, 43);
    CHECK(a.resource_origin != c.resource_origin);
  }

  SUBCASE("half sample keeps exactly 50 resources with induced edges") {
    DerivedGraph s = sample_resources(g, 50, 7);
    CHECK(s.graph.n_resources() == 50);
    CHECK(s.graph.n_tags() == 5);
    for (int i = 0; i < 50; ++i)
      CHECK(s.graph.resource_degree(i) ==
            g.resource_degree(s.resource_origin[i]));
  }
}

TEST_CASE("save then load round-trips up to re-indexing") {
  BipartiteGraph g = parse("b\tx\t2\na\ty\t1\nb\ty\t4\n");
  std::ostringstream out;
  save_edge_list(g, out);
  BipartiteGraph h = parse(out.str());

  CHECK(h.n_resources() == g.n_resources());
  CHECK(h.n_tags() == g.n_tags());
  CHECK(h.n_edges() == g.n_edges());

  // compare label-level edge sets
  auto edge_set = [](const BipartiteGraph& gr) {
    std::set<std::tuple<std::string, std::string, std::int64_t>> s;
    for (const Edge& e : gr.edges())
      s.insert({gr.resource_label(e.resource), gr.tag_label(e.tag), e.count});
    return s;
  };
  CHECK(edge_set(g) == edge_set(h));
}
