#include <gtest/gtest.h>

#include <numeric>
#include <random>

#include "hyperlim/generators.hpp"
#include "hyperlim/profiles.hpp"
#include "oracles.hpp"

using namespace hyperlim;

namespace {

MultiPOperator model_op(const std::string& spec_text, int n, std::uint64_t seed, int s = 2) {
  ModelSpec spec = parse_model_spec(spec_text);
  spec.n = n;
  auto h = generate(spec, seed).hypergraph;
  return from_tensor_action(normalize(adjacency_tensor(h, 3), Normalization::uniform()), s, nullptr, spec_text);
}

SamplerSpec ones(std::size_t count = 1) { return {{CatalogEntry::of(CatalogEntry::Kind::one)}, count, 0}; }

SymmetricTensor random_tensor(std::mt19937_64& eng, int n) {
  std::uniform_int_distribution<int> v(0, 3);
  std::vector<double> vals(MultisetIndexer(n, 3).size());
  for (auto& x : vals) x = v(eng);
  return SymmetricTensor::from_canonical_values(3, n, vals);
}

}  // namespace

TEST(Profile, OnesLawNearErTarget) {
  auto op = model_op("er_uniform:p=0.125,r=3", 120, 5);
  auto p = k_profile(op, 1, ones());
  ASSERT_EQ(p.laws.size(), 1u);
  EXPECT_EQ(p.laws[0].dimension(), 3);
  EXPECT_LT(lp_distance(p.laws[0], DiscreteMeasure::dirac({1, 1, 0.125})), 0.1);
}

TEST(Profile, ZeroOperator) {
  auto op = from_tensor_action(SymmetricTensor(3, 5), 2);
  SamplerSpec spec{{CatalogEntry::of(CatalogEntry::Kind::rademacher)}, 3, 1};
  for (const auto& law : k_profile(op, 1, spec).laws)
    for (const auto& a : law.atoms()) EXPECT_EQ(a.point[2], 0.0);
}

TEST(Profile, UnclampedRejected) {
  auto op = from_tensor_action(SymmetricTensor(3, 4), 2);
  auto big = TestFunction(op.space_ptr(), std::vector<double>(op.space().class_count(), 0.5));
  EXPECT_THROW(profile_law(op, 1, FunctionTuple{{big, big}, "x"}), std::invalid_argument);
}

TEST(Profile, TwoProfileMarginals) {
  std::mt19937_64 eng(1);
  auto op = from_tensor_action(random_tensor(eng, 5).scaled(0.1), 2);
  SamplerSpec spec{{CatalogEntry::of(CatalogEntry::Kind::uniform), CatalogEntry::of(CatalogEntry::Kind::rademacher)},
                   6, 3};
  auto p2 = k_profile(op, 2, spec);
  for (const auto& t : p2.tuples) {
    auto law2 = profile_law(op, 2, t);
    FunctionTuple first{{t.functions[0], t.functions[1]}, t.label};
    FunctionTuple second{{t.functions[2], t.functions[3]}, t.label};
    std::vector<int> a{0, 1, 2}, b{3, 4, 5};
    EXPECT_EQ(law2.marginal(a), profile_law(op, 1, first));
    EXPECT_EQ(law2.marginal(b), profile_law(op, 1, second));
  }
}

TEST(Profile, DeterministicGivenSeed) {
  std::mt19937_64 eng(2);
  auto op = from_tensor_action(random_tensor(eng, 5), 2);
  SamplerSpec spec{{CatalogEntry::of(CatalogEntry::Kind::uniform)}, 4, 9};
  auto a = k_profile(op, 1, spec), b = k_profile(op, 1, spec);
  for (std::size_t i = 0; i < a.laws.size(); ++i) EXPECT_EQ(a.laws[i], b.laws[i]);
}

TEST(ProfileHausdorff, SameOperatorIsZero) {
  auto op = model_op("er_uniform:p=0.125,r=3", 30, 3);
  SamplerSpec spec{{CatalogEntry::of(CatalogEntry::Kind::one), CatalogEntry::of(CatalogEntry::Kind::random_subset)}, 4, 1};
  EXPECT_EQ(profile_hausdorff(op, op, 1, spec), 0.0);
  auto dm = dM_estimate(op, op, 2, spec);
  EXPECT_EQ(dm.value, 0.0);
  EXPECT_EQ(dm.truncation, 0.25);
}

TEST(ProfileHausdorff, ErVersusTrianglesSeparated) {
  auto er = model_op("er_uniform:p=0.125,r=3", 120, 1);
  auto tri = model_op("triangles_of_er:p=0.5", 120, 1);
  double d = profile_hausdorff(er, tri, 1, ones());
  // targets are 1/8 apart in LP
  EXPECT_GT(d, 0.08);
  EXPECT_GE(dM_estimate(er, tri, 1, ones()).value, 0.5 * 0.08);
}

TEST(ProfileHausdorff, IsomorphicWithRelabeledSampler) {
  std::mt19937_64 eng(4);
  const int n = 6;
  auto t = random_tensor(eng, n);
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), eng);
  auto u = t.relabeled(perm);
  auto a = from_tensor_action(t, 2), b = from_tensor_action(u, 2);
  auto sa = std::dynamic_pointer_cast<const FiniteSymmetricSpace>(a.space_ptr());
  auto sb = std::dynamic_pointer_cast<const FiniteSymmetricSpace>(b.space_ptr());
  SamplerSpec spec{{CatalogEntry::of(CatalogEntry::Kind::uniform)}, 5, 2};
  std::vector<FunctionTuple> ta = sample_tuples(a, 1, spec), tb;
  for (const auto& tup : ta) {
    FunctionTuple moved{{}, tup.label};
    for (const auto& f : tup.functions) moved.functions.push_back(relabeled(f, perm, sb).as_clamped());
    tb.push_back(moved);
  }
  auto pa = k_profile(a, 1, ta), pb = k_profile(b, 1, tb);
  for (std::size_t i = 0; i < pa.laws.size(); ++i) EXPECT_TRUE(approx_equal(pa.laws[i], pb.laws[i], 1e-12));
  EXPECT_LE(hausdorff(pa.measure_set(), pb.measure_set()), 1e-9);
}

TEST(DmEstimate, TruncationBound) {
  auto er = model_op("er_uniform:p=0.25,r=3", 20, 1);
  auto tri = model_op("triangles_of_er:p=0.5", 20, 1);
  SamplerSpec spec{{CatalogEntry::of(CatalogEntry::Kind::one), CatalogEntry::of(CatalogEntry::Kind::random_subset)}, 2, 5};
  auto d1 = dM_estimate(er, tri, 1, spec), d2 = dM_estimate(er, tri, 2, spec);
  EXPECT_LE(d2.value, d1.value + d1.truncation + 1e-12);
  EXPECT_GE(d2.value, d1.value - 1e-12);
  EXPECT_THROW(dM_estimate(er, tri, 0, spec), std::invalid_argument);
}

TEST(Isomorphism, IdentityAndRelabel) {
  std::mt19937_64 eng(6);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 4 + trial % 4;
    auto t = random_tensor(eng, n);
    auto id = tensor_isomorphism_oracle(t, t);
    ASSERT_TRUE(id);
    std::vector<int> expect(n);
    std::iota(expect.begin(), expect.end(), 0);
    EXPECT_EQ(*id, expect);

    std::vector<int> perm = expect;
    std::shuffle(perm.begin(), perm.end(), eng);
    auto u = t.relabeled(perm);
    auto psi = tensor_isomorphism_oracle(t, u);
    ASSERT_TRUE(psi);
    EXPECT_EQ(t.relabeled(*psi), u);
  }
  EXPECT_THROW(tensor_isomorphism_oracle(SymmetricTensor(3, 4), SymmetricTensor(3, 5)), std::invalid_argument);
}

TEST(Isomorphism, NonIsomorphicHypergraphs) {
  // two 3-uniform hypergraphs on 5 vertices with 2 edges: sharing 2 vertices vs sharing 1
  auto a = adjacency_tensor(Hypergraph(5, {{0, 1, 2}, {0, 1, 3}}), 3);
  auto b = adjacency_tensor(Hypergraph(5, {{0, 1, 2}, {0, 3, 4}}), 3);
  ASSERT_FALSE(oracle::isomorphism(a, b));
  EXPECT_FALSE(tensor_isomorphism_oracle(a, b));

  std::mt19937_64 eng(7);
  int checked = 0;
  while (checked < 15) {
    auto t = random_tensor(eng, 5), u = random_tensor(eng, 5);
    bool brute = oracle::isomorphism(t, u).has_value();
    auto psi = tensor_isomorphism_oracle(t, u);
    EXPECT_EQ(psi.has_value(), brute);
    ++checked;
  }
}
