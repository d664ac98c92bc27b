#include <gtest/gtest.h>

#include <numeric>
#include <random>

#include "hyperlim/spaces.hpp"

using namespace hyperlim;

namespace {
double total(const FiniteSpace& s) { return std::accumulate(s.masses().begin(), s.masses().end(), 0.0); }

double mass_of(const FiniteSpace& s, std::vector<int> p) { return s.masses()[s.class_of(p)]; }
}  // namespace

TEST(Space, UniformCounts) {
  auto s = build_space(2, 2, MeasureFamily::uniform);
  ASSERT_EQ(s->class_count(), 3u);
  EXPECT_DOUBLE_EQ(mass_of(*s, {0, 0}), 0.25);
  EXPECT_DOUBLE_EQ(mass_of(*s, {1, 1}), 0.25);
  EXPECT_DOUBLE_EQ(mass_of(*s, {1, 0}), 0.5);
  EXPECT_EQ(s->class_size(s->class_of(std::vector<int>{0, 1})), 2u);
  for (int n : {1, 3, 7})
    for (int d : {1, 2, 3}) EXPECT_NEAR(total(*build_space(n, d, MeasureFamily::uniform)), 1.0, 1e-12);
}

TEST(Space, DiagonalWeighted) {
  auto s = build_space(3, 2, MeasureFamily::diagonal_weighted);
  for (int i = 0; i < 3; ++i) EXPECT_DOUBLE_EQ(mass_of(*s, {i, i}), 1.0 / 6);
  EXPECT_DOUBLE_EQ(mass_of(*s, {0, 2}), 1.0 / 6);
  for (int n = 2; n < 12; ++n) {
    auto sp = build_space(n, 2, MeasureFamily::diagonal_weighted);
    double diag = 0.0;
    for (int i = 0; i < n; ++i) diag += mass_of(*sp, {i, i});
    EXPECT_NEAR(diag, 0.5, 1e-12);
    EXPECT_NEAR(total(*sp), 1.0, 1e-12);
  }
  EXPECT_DOUBLE_EQ(mass_of(*build_space(1, 2, MeasureFamily::diagonal_weighted), {0, 0}), 1.0);
  EXPECT_THROW(build_space(3, 3, MeasureFamily::diagonal_weighted), std::invalid_argument);
}

TEST(Space, DegreeWeighted) {
  Hypergraph h(3, {{0, 1, 2}});
  auto s = build_space(3, 2, MeasureFamily::degree_weighted, &h);
  for (int i = 0; i < 3; ++i) EXPECT_EQ(mass_of(*s, {i, i}), 0.0);
  EXPECT_NEAR(mass_of(*s, {0, 1}), 1.0 / 3, 1e-15);

  // diagonal from 2-edges, off-diagonal from 3-edges, each family total 1/2
  Hypergraph g(4, {{0, 1}, {0, 2}, {0, 1, 2}, {1, 2, 3}});
  auto t = build_space(4, 2, MeasureFamily::degree_weighted, &g);
  // deg(0,0)=2, deg(1,1)=1, deg(2,2)=1, deg(3,3)=0 ; sum 4
  EXPECT_NEAR(mass_of(*t, {0, 0}), 0.5 * 2 / 4, 1e-15);
  EXPECT_NEAR(mass_of(*t, {3, 3}), 0.0, 1e-15);
  // deg(1,2)=2, deg(0,1)=deg(0,2)=deg(1,3)=deg(2,3)=1, others 0; ordered sum 2*6
  EXPECT_NEAR(mass_of(*t, {1, 2}), 0.5 * 2 * 2 / 12, 1e-15);
  EXPECT_NEAR(mass_of(*t, {0, 3}), 0.0, 1e-15);
  EXPECT_NEAR(total(*t), 1.0, 1e-12);

  Hypergraph empty(3);
  EXPECT_THROW(build_space(3, 2, MeasureFamily::degree_weighted, &empty), DegenerateMeasureError);
  EXPECT_THROW(build_space(3, 2, MeasureFamily::degree_weighted), std::invalid_argument);
}

TEST(TestFunctions, CatalogBasics) {
  auto s = build_space(4, 2, MeasureFamily::uniform);
  for (const auto& f : sample_test_functions(s, CatalogEntry::of(CatalogEntry::Kind::one), 3, 1))
    for (double v : f.values()) EXPECT_EQ(v, 1.0);
  auto a = sample_test_functions(s, CatalogEntry::of(CatalogEntry::Kind::rademacher), 4, 9);
  auto b = sample_test_functions(s, CatalogEntry::of(CatalogEntry::Kind::rademacher), 4, 9);
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].values(), b[i].values());
    for (double v : a[i].values()) EXPECT_EQ(std::abs(v), 1.0);
  }
  for (auto kind : {CatalogEntry::Kind::uniform, CatalogEntry::Kind::random_subset, CatalogEntry::Kind::rank_one})
    for (const auto& f : sample_test_functions(s, CatalogEntry::of(kind), 20, 3)) {
      EXPECT_TRUE(f.clamped());
      EXPECT_TRUE(f.bounded());
    }
  EXPECT_THROW(sample_test_functions(s, CatalogEntry::of(CatalogEntry::Kind::one), 0, 1), std::invalid_argument);
  EXPECT_THROW(catalog_entry_from_string("gaussian"), std::invalid_argument);
}

TEST(TestFunctions, UserIndicatorMatchesAdjacency) {
  const int n = 6;
  std::mt19937_64 eng(4);
  std::vector<std::vector<int>> edges;
  std::vector<std::vector<int>> adj(n, std::vector<int>(n, 0));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (eng() % 2) edges.push_back({j, i}), adj[i][j] = adj[j][i] = 1;
  auto s = build_space(n, 2, MeasureFamily::uniform);
  auto f = sample_test_functions(s, CatalogEntry::user_indicator(edges), 1, 0)[0];
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) EXPECT_EQ(f.at(std::vector<int>{i, j}), adj[i][j]);
}

TEST(ExactLaw, Examples) {
  auto s3 = build_space(3, 1, MeasureFamily::uniform);
  TestFunction id(s3, {1, 2, 3});
  auto law = exact_law(*s3, std::vector<TestFunction>{id});
  ASSERT_EQ(law.size(), 3u);
  for (const auto& a : law.atoms()) EXPECT_NEAR(a.mass, 1.0 / 3, 1e-15);

  std::vector<TestFunction> consts{TestFunction::constant(s3, 1.0), TestFunction::constant(s3, 0.0)};
  EXPECT_EQ(exact_law(*s3, consts), DiscreteMeasure::dirac({1, 0}));

  auto d = build_space(2, 2, MeasureFamily::diagonal_weighted);
  auto diag = TestFunction::indicator(d, {{0, 0}, {1, 1}});
  EXPECT_EQ(exact_law(*d, std::vector<TestFunction>{diag}), DiscreteMeasure(1, {{{1}, 0.5}, {{0}, 0.5}}));

  auto other = build_space(3, 2, MeasureFamily::uniform);
  std::vector<TestFunction> mixed{id, TestFunction::constant(other, 1.0)};
  EXPECT_THROW(exact_law(*s3, mixed), std::domain_error);
}

TEST(TestFunctions, NormsAndRelabel) {
  auto s = build_space(3, 2, MeasureFamily::uniform);
  auto f = TestFunction::indicator(s, {{0, 1}});
  EXPECT_NEAR(lp_norm(f, 2.0), std::sqrt(2.0 / 9), 1e-15);
  EXPECT_EQ(lp_norm(f, std::numeric_limits<double>::infinity()), 1.0);
  EXPECT_NEAR(expectation(f), 2.0 / 9, 1e-15);
  std::vector<int> perm{2, 0, 1};
  auto g = relabeled(f, perm, s);
  EXPECT_EQ(g.at(std::vector<int>{2, 0}), 1.0);
  EXPECT_EQ(g.at(std::vector<int>{0, 1}), 0.0);
  EXPECT_THROW(TestFunction(s, std::vector<double>(s->class_count(), 2.0), true), std::invalid_argument);
}
