// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <random>
#include <set>
#include <string>

#include "hyperlim/generators.hpp"
#include "hyperlim/hypergraphon.hpp"
#include "hyperlim/profiles.hpp"
#include "oracles.hpp"

using namespace hyperlim;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

int failures = 0;

void report(int id, bool ok, const std::string& detail) {
  std::printf("%s criterion %d: %s\n", ok ? "PASS" : "FAIL", id, detail.c_str());
  std::fflush(stdout);
  failures += !ok;
}

std::string fmt(const char* f, double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

struct ModelOp {
  GeneratedHypergraph g;
  MultiPOperator op;
};

ModelOp model_op(const std::string& text, int n, std::uint64_t seed, int s = 2,
                 Normalization norm = Normalization::uniform()) {
  ModelSpec spec = parse_model_spec(text);
  spec.n = n;
  GeneratedHypergraph g = generate(spec, seed);
  auto op = from_tensor_action(normalize(adjacency_tensor(g.hypergraph, 3), norm), s, nullptr, text);
  return {std::move(g), std::move(op)};
}

DiscreteMeasure ones_law(const MultiPOperator& op) {
  std::vector<TestFunction> ones(op.arity(), TestFunction::constant(op.space_ptr(), 1.0));
  return profile_law(op, 1, FunctionTuple{ones, "one"});
}

DiscreteMeasure mixture(std::vector<std::pair<double, double>> mass_value) {
  std::vector<Atom> atoms;
  for (auto [m, v] : mass_value) atoms.push_back({{1.0, 1.0, v}, m});
  return DiscreteMeasure(3, atoms);
}

SamplerSpec one_and_aux(const GeneratedHypergraph& g) {
  std::vector<std::vector<int>> pts;
  for (auto [i, j] : g.symmetric_set) pts.push_back({i, j});
  return {{CatalogEntry::of(CatalogEntry::Kind::one), CatalogEntry::user_indicator(std::move(pts), "aux")}, 2, 0};
}

// Counts seeds 1..10 whose statistic stays within bound.
struct SeedTally {
  int passed = 0;
  double worst = 0.0;
  void add(double v, double bound) {
    passed += v <= bound;
    worst = std::max(worst, v);
  }
  std::string summary(double bound) const {
    return std::to_string(passed) + "/10 seeds <= " + fmt("%g", bound) + ", worst " + fmt("%.4g", worst);
  }
};

// Criteria 1-4 share the n = 400 operators of each seed.
void model_limits() {
  const DiscreteMeasure er_target = mixture({{1.0, 0.125}});
  const DiscreteMeasure tri_target = mixture({{0.5, 0.0}, {0.5, 0.25}});
  const DiscreteMeasure tor_target = mixture({{1.0, 0.25}});

  SeedTally er200, er400, tri, tor;
  double slowest = 0.0;
  bool structure = true;
  double sep_er_tri = 1e9, sep_tri_tor = 1e9, one_action_lp = 0.0;

  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    er200.add(lp_distance(ones_law(model_op("er_uniform:p=0.125,r=3", 200, seed).op), er_target), 0.06);

    auto t0 = Clock::now();
    auto er = model_op("er_uniform:p=0.125,r=3", 400, seed);
    er400.add(lp_distance(ones_law(er.op), er_target), 0.04);
    slowest = std::max(slowest, seconds_since(t0));

    auto tr = model_op("triangles_of_er:p=0.5", 400, seed);
    tri.add(lp_distance(ones_law(tr.op), tri_target), 0.06);
    std::vector<TestFunction> ones(2, TestFunction::constant(tr.op.space_ptr(), 1.0));
    auto image = tr.op.apply(ones);
    std::set<std::pair<int, int>> edges(tr.g.graph_edges.begin(), tr.g.graph_edges.end());
    for (int i = 0; i < 400; ++i)
      for (int j = i + 1; j < 400; ++j)
        if (!edges.count({i, j})) {
          int p[2] = {i, j};
          structure = structure && image.at(p) == 0.0;
        }

    auto to = model_op("tournament_cycles", 400, seed);
    tor.add(lp_distance(ones_law(to.op), tor_target), 0.06);

    if (seed <= 3) {
      sep_er_tri = std::min(sep_er_tri, profile_hausdorff(er.op, tr.op, 1, one_and_aux(er.g), one_and_aux(tr.g)));
      sep_tri_tor = std::min(sep_tri_tor, profile_hausdorff(tr.op, to.op, 1, one_and_aux(tr.g), one_and_aux(to.g)));
      const auto n2 = Normalization::sparse(400.0 * 400.0);
      auto er1 = model_op("er_uniform:p=0.125,r=3", 400, seed, 1, n2);
      auto tr1 = model_op("triangles_of_er:p=0.5", 400, seed, 1, n2);
      one_action_lp = std::max(one_action_lp, lp_distance(ones_law(er1.op), ones_law(tr1.op)));
    }
  }

  report(1, er200.passed >= 9 && er400.passed >= 9 && slowest <= 120.0,
         "ER n=200 " + er200.summary(0.06) + "; n=400 " + er400.summary(0.04) + "; slowest n=400 run " +
             fmt("%.2f", slowest) + " s");
  report(2, tri.passed >= 9 && structure,
         "triangles n=400 " + tri.summary(0.06) + "; zero off the graph edges: " + (structure ? "yes" : "no"));
  report(3, tor.passed >= 9, "tournament n=400 " + tor.summary(0.06));
  report(4, sep_er_tri > 0.08 && sep_tri_tor > 0.08 && one_action_lp <= 0.05,
         "min d_H ER/triangles " + fmt("%.4g", sep_er_tri) + ", triangles/tournament " + fmt("%.4g", sep_tri_tor) +
             " (> 0.08, seeds 1-3); max 1-action LP ER/triangles " + fmt("%.4g", one_action_lp) + " (<= 0.05)");
}

void block_models() {
  const double p111 = 0.8, p112 = 0.2, p122 = 0.5, p222 = 0.1;
  const DiscreteMeasure sbm_target =
      mixture({{0.25, (p111 + p112) / 2}, {0.25, (p122 + p222) / 2}, {0.5, (p112 + p122) / 2}});
  const DiscreteMeasure colored_target = mixture({{1.0 / 3, 0.0}, {1.0 / 3, 1.0 / 9}, {1.0 / 3, 1.0 / 18}});
  SeedTally sbm, colored;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    sbm.add(lp_distance(ones_law(model_op("sbm3:p111=0.8,p112=0.2,p122=0.5,p222=0.1", 400, seed).op), sbm_target),
            0.06);
    colored.add(lp_distance(ones_law(model_op("colored_pairs:p=0.5", 400, seed).op), colored_target), 0.06);
  }
  report(5, sbm.passed >= 9 && colored.passed >= 9,
         "sbm3 n=400 " + sbm.summary(0.06) + "; colored pairs n=400 " + colored.summary(0.06));
}

void norm_bound() {
  std::mt19937_64 eng(6);
  const std::vector<CatalogEntry::Kind> kinds{CatalogEntry::Kind::uniform, CatalogEntry::Kind::rademacher,
                                              CatalogEntry::Kind::rank_one, CatalogEntry::Kind::random_subset};
  const std::vector<double> densities{0.125, 0.5, 1.0};
  int violations = 0, samples = 0;
  double worst = -1e9;
  for (int n : {10, 50, 200}) {
    std::vector<MultiPOperator> ops;
    for (std::size_t d = 0; d < densities.size(); ++d)
      ops.push_back(model_op("er_uniform:r=3,p=" + std::to_string(densities[d]), n, 100 + d).op);
    const int share = n == 200 ? 166 : 167;
    for (int i = 0; i < share; ++i, ++samples) {
      const auto& op = ops[i % ops.size()];
      auto f = sample_test_functions(op.space_ptr(), CatalogEntry::of(kinds[i % kinds.size()]), 1, eng())[0];
      auto g = sample_test_functions(op.space_ptr(), CatalogEntry::of(kinds[(i / 3) % kinds.size()]), 1, eng())[0];
      double lhs = lp_norm(op.apply({f, g}), 2.0);
      double rhs = lp_norm(f, 2.0) * lp_norm(g, 2.0);
      violations += lhs > rhs + 1e-10;
      worst = std::max(worst, lhs - rhs);
    }
  }
  report(6, violations == 0 && samples == 500,
         std::to_string(samples) + " samples, " + std::to_string(violations) + " violations, max ||A[f,g]|| - ||f|| ||g|| = " +
             fmt("%.4g", worst));
}

double max_pairing_spread(const MultiPOperator& op, const std::vector<TestFunction>& fgh) {
  std::vector<int> p{0, 1, 2};
  double lo = 1e300, hi = -1e300;
  do {
    std::vector<TestFunction> in{fgh[p[0]], fgh[p[1]]};
    double v = pairing(op, in, fgh[p[2]]);
    lo = std::min(lo, v), hi = std::max(hi, v);
  } while (std::next_permutation(p.begin(), p.end()));
  return hi - lo;
}

void symmetry() {
  std::mt19937_64 eng(7);
  std::uniform_real_distribution<double> u(-1, 1);
  double worst_uniform = 0.0, worst_degree = 0.0;
  int degree_cases = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 3 + trial % 6;
    std::vector<double> vals(MultisetIndexer(n, 3).size());
    for (auto& x : vals) x = u(eng);
    auto op = from_tensor_action(SymmetricTensor::from_canonical_values(3, n, vals), 2);
    auto fgh = sample_test_functions(op.space_ptr(), CatalogEntry::of(CatalogEntry::Kind::uniform), 3, eng());
    worst_uniform = std::max(worst_uniform, max_pairing_spread(op, fgh));

    std::vector<std::vector<int>> edges;
    while (edges.empty())
      for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
          for (int c = b + 1; c < n; ++c)
            if (eng() % 2) edges.push_back({a, b, c});
    Hypergraph h(n, edges);
    auto space = build_space(n, 2, MeasureFamily::degree_weighted, &h);
    auto dop = from_tensor_action(normalize(adjacency_tensor(h, 3), Normalization::degree()), 2, space);
    auto dfgh = sample_test_functions(space, CatalogEntry::of(CatalogEntry::Kind::uniform), 3, eng());
    worst_degree = std::max(worst_degree, max_pairing_spread(dop, dfgh));
    ++degree_cases;
  }
  report(7, worst_uniform <= 1e-10 && worst_degree <= 1e-10,
         "200 uniform cases, max spread " + fmt("%.3g", worst_uniform) + "; " + std::to_string(degree_cases) +
             " degree-weighted cases, max spread " + fmt("%.3g", worst_degree));
}

void lp_checks() {
  std::mt19937_64 eng(8);
  const double tol = 1e-6;
  double worst = 0.0;
  for (int i = 0; i < 500; ++i) {
    auto a = oracle::random_measure(eng, 1 + i % 3, 4), b = oracle::random_measure(eng, 1 + i % 3, 4);
    worst = std::max(worst, std::abs(lp_distance(a, b, tol) - oracle::lp_distance(a, b)));
  }
  int axiom_failures = 0;
  for (int i = 0; i < 200; ++i) {
    const int d = 1 + i % 3;
    auto x = oracle::random_measure(eng, d, 4), y = oracle::random_measure(eng, d, 4), z = oracle::random_measure(eng, d, 4);
    double xy = lp_distance(x, y, tol), yx = lp_distance(y, x, tol), xz = lp_distance(x, z, tol),
           yz = lp_distance(y, z, tol);
    axiom_failures += lp_distance(x, x, tol) > 3 * tol;
    axiom_failures += std::abs(xy - yx) > 3 * tol;
    axiom_failures += xz > xy + yz + 3 * tol;
    axiom_failures += x == y ? 0 : xy <= 0.0;
  }
  int coupling_violations = 0;
  for (int i = 0; i < 500; ++i) {
    const int k = 1 + i % 3;
    auto joint = oracle::random_measure(eng, 2 * k, 5);
    std::vector<int> left(k), right(k);
    std::iota(left.begin(), left.end(), 0);
    std::iota(right.begin(), right.end(), k);
    double lp = lp_distance(joint.marginal(left), joint.marginal(right), tol);
    coupling_violations += lp > lp_coupling_bound(joint) + tol;
  }
  report(8, worst <= tol && axiom_failures == 0 && coupling_violations == 0,
         "max |LP - oracle| " + fmt("%.3g", worst) + " on 500 pairs; " + std::to_string(axiom_failures) +
             " axiom failures on 200 triples; " + std::to_string(coupling_violations) +
             " coupling-bound violations on 500 joints");
}

SymmetricTensor small_tensor(std::mt19937_64& eng, int n) {
  std::uniform_int_distribution<int> v(0, 3);
  std::vector<double> vals(MultisetIndexer(n, 3).size());
  for (auto& x : vals) x = v(eng);
  return SymmetricTensor::from_canonical_values(3, n, vals);
}

void isomorphism() {
  std::mt19937_64 eng(9);
  int recovered = 0, profiles_equal = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 5 + trial % 3;
    auto t = small_tensor(eng, n);
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), eng);
    auto u = t.relabeled(perm);
    auto psi = tensor_isomorphism_oracle(t, u);
    if (!psi || !(t.relabeled(*psi) == u)) continue;
    ++recovered;

    auto a = from_tensor_action(t, 2), b = from_tensor_action(u, 2);
    SamplerSpec spec{{CatalogEntry::of(CatalogEntry::Kind::uniform), CatalogEntry::of(CatalogEntry::Kind::rademacher)},
                     4, static_cast<std::uint64_t>(trial)};
    auto sb = std::dynamic_pointer_cast<const FiniteSymmetricSpace>(b.space_ptr());
    std::vector<FunctionTuple> ta = sample_tuples(a, 2, spec), tb;
    for (const auto& tup : ta) {
      FunctionTuple moved{{}, tup.label};
      for (const auto& f : tup.functions) moved.functions.push_back(relabeled(f, *psi, sb).as_clamped());
      tb.push_back(moved);
    }
    auto pa = k_profile(a, 2, ta), pb = k_profile(b, 2, tb);
    bool same = true;
    for (std::size_t i = 0; i < pa.laws.size(); ++i) same = same && approx_equal(pa.laws[i], pb.laws[i], 1e-12);
    profiles_equal += same;
  }

  int pairs = 0, wrong = 0;
  while (pairs < 20) {
    const int n = 5 + pairs % 3;
    auto t = small_tensor(eng, n);
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), eng);
    auto u = t.relabeled(perm);
    std::vector<int> idx(3);
    for (auto& i : idx) i = static_cast<int>(eng() % n);
    u.set(idx, u.at(idx) + 1.0 + static_cast<double>(eng() % 2));
    if (oracle::isomorphism(t, u)) continue;
    ++pairs;
    wrong += tensor_isomorphism_oracle(t, u).has_value();
  }
  report(9, recovered == 100 && profiles_equal == 100 && wrong == 0,
         std::to_string(recovered) + "/100 relabelings recovered, " + std::to_string(profiles_equal) +
             "/100 matched 2-profiles equal; " + std::to_string(wrong) + "/20 non-isomorphic pairs misreported");
}

void hypergraphon_bridge() {
  std::mt19937_64 eng(10);
  const DiscreteMeasure target = mixture({{0.5, 0.0}, {0.5, 0.25}});
  double worst_law = 0.0;
  for (int res : {2, 4, 6, 8})
    for (int n : {1, 2, 5}) {
      auto w = StepHypergraphon::from_function(3, {1, res}, [&](std::span<const int> c) {
        return (2 * c[3] < res && 2 * c[4] < res && 2 * c[5] < res) ? 1.0 : 0.0;
      });
      worst_law = std::max(worst_law, lp_distance(ones_law(as_multi_op(w, n)), target));
    }

  std::uniform_real_distribution<double> u(0, 1);
  double worst_quotient = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const int m = 2 + trial % 3;
    auto w = StepHypergraphon::from_function(3, {m, 2}, [&](std::span<const int> c) {
      // symmetric: depends on sorted vertex cells and the multiset of pair cells
      std::vector<int> v{c[0], c[1], c[2]}, p{c[3], c[4], c[5]};
      std::sort(v.begin(), v.end());
      std::sort(p.begin(), p.end());
      std::seed_seq s{v[0], v[1], v[2], p[0], p[1], p[2], trial};
      std::mt19937 local(s);
      return std::uniform_real_distribution<double>(0, 1)(local);
    });
    auto q = SymmetricGridPartition::from_function(3, {m, 2}, [&](std::span<const int> c) {
      return (c[0] + c[1] + c[2]) % 2;
    });
    auto qt = quotient(w, q);
    double vs = 0.0, vw = 0.0;
    for (std::size_t f = 0; f < qt.volume.size(); ++f) vs += qt.volume[f], vw += qt.volume[f] * qt.weight[f];
    worst_quotient = std::max({worst_quotient, std::abs(vs - 1.0), std::abs(vw - w.mean())});
  }

  Hypergraph k3(3, {{0, 1}, {0, 2}, {1, 2}});
  int hom_ok = 0;
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 3 + trial % 6;
    std::vector<std::vector<int>> edges;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (u(eng) < 0.6) edges.push_back({i, j});
    Hypergraph g(n, edges);
    auto est = hom_density(k3, {from_hypergraph(g, 2)}, {0, 0, 0}, 1'000'000, trial);
    hom_ok += std::abs(est.value - oracle::triangle_hom_density(g)) <= 3 * est.stderr_ + 1e-12;
  }

  double worst_cut = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    const int m = 1 + trial % 6;
    std::vector<double> vals(static_cast<std::size_t>(m) * m);
    for (int a = 0; a < m; ++a)
      for (int b = a; b < m; ++b) vals[a * m + b] = vals[b * m + a] = 2 * u(eng) - 1;
    StepHypergraphon w(2, {m}, vals, true);
    worst_cut = std::max(worst_cut, std::abs(cut_norm_estimate(w, 64, trial).value - oracle::cut_norm_k2(vals, m)));
  }

  report(10, worst_law <= 1e-9 && worst_quotient <= 1e-12 && hom_ok == 20 && worst_cut <= 1e-12,
         "law LP " + fmt("%.3g", worst_law) + " over resolutions 2-8; quotient identity error " +
             fmt("%.3g", worst_quotient) + "; K3 within 3 stderr on " + std::to_string(hom_ok) +
             "/20 graphs; cut norm vs exhaustive max error " + fmt("%.3g", worst_cut) + " on 50 instances");
}

void guarded(int id, const std::function<void()>& body) {
  try {
    body();
  } catch (const std::exception& e) {
    report(id, false, std::string("exception: ") + e.what());
  }
}

}  // namespace

int main() {
  auto t0 = Clock::now();
  guarded(1, model_limits);
  guarded(5, block_models);
  guarded(6, norm_bound);
  guarded(7, symmetry);
  guarded(8, lp_checks);
  guarded(9, isomorphism);
  guarded(10, hypergraphon_bridge);
  std::printf("%d failing criteria, %.1f s\n", failures, seconds_since(t0));
  return failures == 0 ? 0 : 1;
}
