#include "hyperlim/operators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "hyperlim/rng.hpp"

namespace hyperlim {

MultiPOperator::MultiPOperator(SpacePtr space, int arity, Evaluator evaluator, std::string id)
    : space_(std::move(space)), arity_(arity), eval_(std::move(evaluator)), id_(std::move(id)) {
  if (!space_) throw std::invalid_argument("MultiPOperator: null space");
  if (arity < 1) throw std::invalid_argument("MultiPOperator: arity must be positive");
}

TestFunction MultiPOperator::apply(std::span<const TestFunction> fns) const {
  if (static_cast<int>(fns.size()) != arity_) throw std::invalid_argument("apply: wrong number of functions");
  for (const auto& f : fns)
    if (!same_space(*space_, f.space())) throw std::domain_error("apply: function defined on another space");
  TestFunction out = eval_(fns);
  if (!same_space(*space_, out.space())) throw std::logic_error("apply: evaluator left the space");
  return out;
}

MultiPOperator from_tensor_action(const NormalizedTensor& t, int s, SpacePtr space, std::string id) {
  const int r = t.order(), n = t.dimension();
  if (r < 2 || s < 1 || s > r - 1) throw std::invalid_argument("from_tensor_action: s must lie in [1, r-1]");
  if (t.has_output_divisor() && s != r - 1)
    throw std::invalid_argument("from_tensor_action: degree normalization needs s = r-1");
  if (!space) space = build_space(n, s, MeasureFamily::uniform);
  auto* sym = dynamic_cast<const FiniteSymmetricSpace*>(space.get());
  if (sym == nullptr || sym->n() != n || sym->s() != s)
    throw std::invalid_argument("from_tensor_action: space shape differs from the tensor action");
  auto tensor = std::make_shared<const NormalizedTensor>(t);
  auto eval = [tensor, space, s, n](std::span<const TestFunction> fns) {
    std::vector<SymmetricTensor> in;
    in.reserve(fns.size());
    for (const auto& f : fns) in.push_back(SymmetricTensor::from_canonical_values(s, n, f.values()));
    SymmetricTensor out = s_action_apply(*tensor, s, in);
    return TestFunction(space, out.canonical_values());
  };
  return MultiPOperator(space, r - 1, std::move(eval), std::move(id));
}

MultiPOperator from_tensor_action(const SymmetricTensor& t, int s, SpacePtr space, std::string id) {
  return from_tensor_action(NormalizedTensor(t, 1.0), s, std::move(space), std::move(id));
}

double pairing(const MultiPOperator& a, std::span<const TestFunction> fns, const TestFunction& last) {
  TestFunction img = a.apply(fns);
  const auto& m = a.space().masses();
  double s = 0.0;
  for (std::size_t c = 0; c < m.size(); ++c) s += m[c] * img[c] * last[c];
  return s;
}

namespace {

// Mixed sampler: uniform, Rademacher, rank-one, single-class and star indicators.
TestFunction probe_function(const SpacePtr& space, std::uint64_t seed, std::size_t kind) {
  const std::size_t m = space->class_count();
  Engine eng(seed);
  switch (kind % 5) {
    case 0:
      return sample_test_functions(space, CatalogEntry::of(CatalogEntry::Kind::uniform), 1, seed)[0];
    case 1:
      return sample_test_functions(space, CatalogEntry::of(CatalogEntry::Kind::rademacher), 1, seed)[0];
    case 2:
      return sample_test_functions(space, CatalogEntry::of(CatalogEntry::Kind::rank_one), 1, seed)[0];
    case 3: {
      std::vector<double> v(m, 0.0);
      v[uniform_below(eng, m)] = 1.0;
      return TestFunction(space, std::move(v), true);
    }
    default: {
      const int v0 = static_cast<int>(uniform_below(eng, static_cast<std::uint64_t>(space->coordinate_range())));
      std::vector<double> v(m, 0.0);
      for (std::size_t c = 0; c < m; ++c) {
        auto rep = space->representative(c);
        if (std::find(rep.begin(), rep.end(), v0) != rep.end()) v[c] = 1.0;
      }
      return TestFunction(space, std::move(v), true);
    }
  }
}

TestFunction nonnegative_probe(const SpacePtr& space, std::uint64_t seed, std::size_t kind) {
  TestFunction f = probe_function(space, seed, kind);
  std::vector<double> v(f.values());
  for (auto& x : v) x = std::abs(x);
  return TestFunction(space, std::move(v), true);
}

}  // namespace

double norm_estimate(const MultiPOperator& a, std::span<const double> p, double q, std::size_t trials,
                     std::uint64_t seed) {
  if (static_cast<int>(p.size()) != a.arity()) throw std::invalid_argument("norm_estimate: one exponent per slot");
  for (double e : p)
    if (!(e >= 1.0)) throw std::invalid_argument("norm_estimate: exponents must be >= 1");
  if (!(q >= 1.0)) throw std::invalid_argument("norm_estimate: exponents must be >= 1");
  if (trials < 1) throw std::invalid_argument("norm_estimate: trials must be >= 1");
  std::vector<double> ratio(trials, 0.0);
#pragma omp parallel for schedule(dynamic)
  for (long long t = 0; t < static_cast<long long>(trials); ++t) {
    std::vector<TestFunction> fns;
    double denom = 1.0;
    for (int i = 0; i < a.arity(); ++i) {
      std::uint64_t fs = derive_seed(seed, {static_cast<std::uint64_t>(t), static_cast<std::uint64_t>(i)});
      fns.push_back(probe_function(a.space_ptr(), fs, static_cast<std::size_t>(t) + static_cast<std::size_t>(i)));
      denom *= lp_norm(fns.back(), p[i]);
    }
    if (denom > 0.0) ratio[t] = lp_norm(a.apply(fns), q) / denom;
  }
  return *std::max_element(ratio.begin(), ratio.end());
}

PropertyReport check_property(const MultiPOperator& a, Property property, std::size_t trials, std::uint64_t seed,
                              double tol) {
  if (trials < 1) throw std::invalid_argument("check_property: trials must be >= 1");
  const int r = a.order();
  const auto& space = a.space_ptr();
  PropertyReport report;
  auto record = [&](double violation, const std::string& what) {
    if (violation > report.max_violation) report.max_violation = violation;
    if (violation > tol && report.holds) {
      report.holds = false;
      report.witness = what;
    }
  };

  if (property.kind == Property::Kind::c_regular) {
    std::vector<TestFunction> ones(a.arity(), TestFunction::constant(space, 1.0));
    TestFunction img = a.apply(ones);
    const auto& m = space->masses();
    for (std::size_t c = 0; c < m.size(); ++c) {
      if (m[c] == 0.0) continue;
      std::ostringstream w;
      w << "class " << c << " value " << img[c];
      record(std::abs(img[c] - property.c), w.str());
    }
    return report;
  }

  for (std::size_t t = 0; t < trials; ++t) {
    std::uint64_t ts = derive_seed(seed, t);
    double violation = 0.0;
    std::ostringstream w;
    w << "trial " << t;
    if (property.kind == Property::Kind::symmetric) {
      std::vector<TestFunction> v;
      for (int i = 0; i < r; ++i) v.push_back(probe_function(space, derive_seed(ts, i), t + i));
      std::vector<int> perm(r);
      std::iota(perm.begin(), perm.end(), 0);
      const double base = pairing(a, std::span<const TestFunction>(v.data(), r - 1), v[r - 1]);
      while (std::next_permutation(perm.begin(), perm.end())) {
        std::vector<TestFunction> args;
        for (int i = 0; i < r - 1; ++i) args.push_back(v[perm[i]]);
        double other = pairing(a, args, v[perm[r - 1]]);
        violation = std::max(violation, std::abs(other - base));
      }
    } else if (property.kind == Property::Kind::positive) {
      TestFunction v = probe_function(space, ts, t);
      std::vector<TestFunction> args(a.arity(), v);
      violation = std::max(0.0, -pairing(a, args, v));
    } else {
      std::vector<TestFunction> args;
      for (int i = 0; i < a.arity(); ++i) args.push_back(nonnegative_probe(space, derive_seed(ts, i), t + i));
      TestFunction img = a.apply(args);
      for (double x : img.values()) violation = std::max(violation, -x);
    }
    record(violation, w.str());
  }
  return report;
}

}  // namespace hyperlim
