#include <gtest/gtest.h>

#include <set>

#include "hyperlim/generators.hpp"

using namespace hyperlim;

namespace {

GeneratedHypergraph gen(const std::string& text, int n, std::uint64_t seed) {
  ModelSpec spec = parse_model_spec(text);
  spec.n = n;
  return generate(spec, seed);
}

bool has(const Hypergraph& h, std::vector<int> e) {
  std::sort(e.begin(), e.end());
  return h.contains(e);
}

}  // namespace

TEST(ModelSpec, ParseAndFormat) {
  auto s = parse_model_spec("er_uniform:n=200,p=0.125,r=3");
  EXPECT_EQ(s.model, Model::er_uniform);
  EXPECT_EQ(s.n, 200);
  EXPECT_EQ(s.r, 3);
  EXPECT_EQ(s.p, std::vector<double>{0.125});
  EXPECT_EQ(format_model_spec(s), "er_uniform:n=200,p=0.125,r=3");
  auto b = parse_model_spec("sbm3:p111=0.8,p112=0.2,p122=0.5,p222=0.1");
  EXPECT_EQ(b.p, (std::vector<double>{0.8, 0.2, 0.5, 0.1}));
  EXPECT_EQ(parse_model_spec(format_model_spec(b)).p, b.p);
  EXPECT_EQ(parse_model_spec("iterated:p=0.5;1").r, 3);
  EXPECT_THROW(parse_model_spec("nope:n=3"), std::invalid_argument);
  EXPECT_THROW(parse_model_spec("er_graph:q=1"), std::invalid_argument);
  EXPECT_THROW(gen("er_graph:p=1.5", 5, 0), std::invalid_argument);
  EXPECT_THROW(gen("er_graph:p=-0.1", 5, 0), std::invalid_argument);
}

TEST(Generators, Deterministic) {
  for (const char* m : {"er_uniform:p=0.3,r=3", "triangles_of_er:p=0.5", "tournament_cycles", "colored_pairs:p=0.5",
                        "sbm3:p111=0.8,p112=0.2,p122=0.5,p222=0.1"}) {
    auto a = gen(m, 25, 9), b = gen(m, 25, 9), c = gen(m, 25, 10);
    EXPECT_EQ(a.hypergraph.edge_list(), b.hypergraph.edge_list()) << m;
    EXPECT_NE(a.hypergraph.edge_list(), c.hypergraph.edge_list()) << m;
  }
}

TEST(Generators, CompleteModels) {
  EXPECT_EQ(gen("complete", 4, 0).hypergraph.edge_count(), 15u);
  auto cu = gen("complete_uniform:r=3", 7, 0).hypergraph;
  EXPECT_DOUBLE_EQ(edge_density_stats(cu, 3).density, 1.0);
  auto er1 = gen("er_uniform:p=1,r=3", 7, 3).hypergraph;
  EXPECT_EQ(er1.edge_list(), cu.edge_list());
  EXPECT_EQ(edge_density_stats(Hypergraph(6), 3).density, 0.0);
}

TEST(Generators, TightPath) {
  auto h = gen("tight_path", 5, 0).hypergraph;
  EXPECT_EQ(h.edge_list(), (std::vector<std::vector<int>>{{0, 1, 2}, {1, 2, 3}, {2, 3, 4}}));
}

TEST(Generators, ErDensity) {
  int good = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto h = gen("er_uniform:p=0.125,r=3", 200, seed).hypergraph;
    good += std::abs(edge_density_stats(h, 3).density - 0.125) <= 0.01;
  }
  EXPECT_GE(good, 19);
}

TEST(Generators, TrianglesOfEr) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const int n = 30;
    auto g = gen("triangles_of_er:p=0.5", n, seed);
    std::set<std::pair<int, int>> e(g.graph_edges.begin(), g.graph_edges.end());
    EXPECT_EQ(g.symmetric_set, g.graph_edges);
    auto adj = [&](int a, int b) { return e.count({std::min(a, b), std::max(a, b)}) > 0; };
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b)
        for (int c = b + 1; c < n; ++c)
          EXPECT_EQ(has(g.hypergraph, {a, b, c}), adj(a, b) && adj(b, c) && adj(a, c));
  }
}

TEST(Generators, TrianglesNeverThreeOfFour) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const int n = 8;
    auto h = gen("triangles_of_er:p=0.6", n, seed).hypergraph;
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b)
        for (int c = b + 1; c < n; ++c)
          for (int d = c + 1; d < n; ++d) {
            int count = has(h, {a, b, c}) + has(h, {a, b, d}) + has(h, {a, c, d}) + has(h, {b, c, d});
            EXPECT_NE(count, 3);
          }
  }
}

TEST(Generators, TournamentCycles) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const int n = seed < 5 ? 6 : 8;
    auto g = gen("tournament_cycles", n, seed);
    std::set<std::pair<int, int>> arcs(g.arcs.begin(), g.arcs.end());
    EXPECT_EQ(arcs.size(), static_cast<std::size_t>(n * (n - 1) / 2));
    auto to = [&](int a, int b) { return arcs.count({a, b}) > 0; };
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b) {
        EXPECT_NE(to(a, b), to(b, a));
        bool in_s = std::count(g.symmetric_set.begin(), g.symmetric_set.end(), std::make_pair(a, b)) > 0;
        EXPECT_EQ(in_s, to(b, a));
        for (int c = b + 1; c < n; ++c) {
          bool cyc = (to(a, b) && to(b, c) && to(c, a)) || (to(b, a) && to(c, b) && to(a, c));
          EXPECT_EQ(has(g.hypergraph, {a, b, c}), cyc);
          for (int d = c + 1; d < n; ++d)
            EXPECT_LT(has(g.hypergraph, {a, b, c}) + has(g.hypergraph, {a, b, d}) + has(g.hypergraph, {a, c, d}) +
                          has(g.hypergraph, {b, c, d}),
                      4);
        }
      }
  }
}

TEST(Generators, IteratedLayers) {
  auto it2 = gen("iterated:p=0.3", 20, 4);
  auto er = gen("er_graph:p=0.3", 20, 4);
  EXPECT_EQ(it2.hypergraph.edge_list(), er.hypergraph.edge_list());
  auto it3 = gen("iterated:p=0.5;1", 20, 4);
  auto tri = gen("triangles_of_er:p=0.5", 20, 4);
  EXPECT_EQ(it3.hypergraph.edge_list(), tri.hypergraph.edge_list());
  // complete first layer: every triple is kept independently
  int good = 0;
  for (std::uint64_t seed = 0; seed < 10; ++seed)
    good += std::abs(edge_density_stats(gen("iterated:p=1;0.25", 60, seed).hypergraph, 3).density - 0.25) < 0.02;
  EXPECT_GE(good, 9);
  // r=4: each 4-set needs all four 3-subsets
  auto it4 = gen("iterated:p=0.7;0.7;1", 12, 1).hypergraph;
  auto layer3 = gen("iterated:p=0.7;0.7", 12, 1).hypergraph;
  for (const auto& e : it4.edge_list())
    for (int drop = 0; drop < 4; ++drop) {
      std::vector<int> sub;
      for (int a = 0; a < 4; ++a)
        if (a != drop) sub.push_back(e[a]);
      EXPECT_TRUE(layer3.contains(sub));
    }
}

TEST(Generators, Sbm3Blocks) {
  auto g = gen("sbm3:p111=1,p112=0,p122=1,p222=0", 9, 2);
  ASSERT_EQ(g.blocks.size(), 9u);
  for (int i = 0; i < 9; ++i) EXPECT_EQ(g.blocks[i], i < 5 ? 0 : 1);
  for (int a = 0; a < 9; ++a)
    for (int b = a + 1; b < 9; ++b)
      for (int c = b + 1; c < 9; ++c) {
        int second = g.blocks[a] + g.blocks[b] + g.blocks[c];
        EXPECT_EQ(has(g.hypergraph, {a, b, c}), second == 0 || second == 2);
      }
}

TEST(Generators, ColoredPairs) {
  const int n = 15;
  auto g = gen("colored_pairs:p=0.5", n, 3);
  std::size_t idx = 0;
  std::vector<std::vector<PairColor>> col(n, std::vector<PairColor>(n));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) col[i][j] = g.pair_colors[idx++];
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      for (int c = b + 1; c < n; ++c) {
        bool mono = col[a][b] == col[a][c] && col[a][b] == col[b][c];
        bool e = has(g.hypergraph, {a, b, c});
        if (!mono || col[a][b] == PairColor::black) EXPECT_FALSE(e);
        if (mono && col[a][b] == PairColor::white) EXPECT_TRUE(e);
      }
}
