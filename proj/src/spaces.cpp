#include "hyperlim/spaces.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "hyperlim/rng.hpp"

namespace hyperlim {

bool same_space(const FiniteSpace& a, const FiniteSpace& b) { return &a == &b || a.equals(b); }

std::string to_string(MeasureFamily f) {
  switch (f) {
    case MeasureFamily::uniform: return "uniform";
    case MeasureFamily::diagonal_weighted: return "diagonal_weighted";
    case MeasureFamily::degree_weighted: return "degree_weighted";
  }
  return "?";
}

MeasureFamily measure_family_from_string(const std::string& name) {
  if (name == "uniform") return MeasureFamily::uniform;
  if (name == "diagonal_weighted") return MeasureFamily::diagonal_weighted;
  if (name == "degree_weighted") return MeasureFamily::degree_weighted;
  throw std::invalid_argument("unknown measure family: " + name);
}

FiniteSymmetricSpace::FiniteSymmetricSpace(int n, int s, MeasureFamily family, const Hypergraph* h)
    : n_(n), s_(s), family_(family) {
  if (n < 1 || s < 1) throw std::invalid_argument("FiniteSymmetricSpace: n and s must be positive");
  index_ = MultisetIndexer(n, s);
  masses_.assign(index_.size(), 0.0);
  if (family == MeasureFamily::uniform) {
    const double total = std::pow(static_cast<double>(n), s);
    std::vector<int> t(s, 0);
    std::size_t c = 0;
    do masses_[c++] = static_cast<double>(MultisetIndexer::orderings(t)) / total;
    while (index_.next(t));
    return;
  }
  if (s != 2) throw std::invalid_argument("weighted measure families require s = 2");
  auto cls = [&](int i, int j) {
    int p[2] = {std::min(i, j), std::max(i, j)};
    return index_.rank(p);
  };
  if (family == MeasureFamily::diagonal_weighted) {
    if (n == 1) {
      masses_[0] = 1.0;
      return;
    }
    for (int i = 0; i < n; ++i) {
      masses_[cls(i, i)] = 1.0 / (2.0 * n);
      for (int j = i + 1; j < n; ++j) masses_[cls(i, j)] = 1.0 / (static_cast<double>(n) * (n - 1));
    }
    return;
  }
  if (h == nullptr) throw std::invalid_argument("degree_weighted measure requires a hypergraph");
  if (h->vertex_count() != n) throw std::invalid_argument("degree_weighted: hypergraph has a different vertex count");
  // deg(i,j), i != j: 3-edges through both; deg(i,i): 2-edges through i
  std::vector<double> deg(index_.size(), 0.0);
  for (std::size_t e = 0; e < h->edge_count(); ++e) {
    auto ed = h->edge(e);
    if (ed.size() == 2) {
      deg[cls(ed[0], ed[0])] += 1.0;
      deg[cls(ed[1], ed[1])] += 1.0;
    } else if (ed.size() == 3) {
      deg[cls(ed[0], ed[1])] += 1.0;
      deg[cls(ed[0], ed[2])] += 1.0;
      deg[cls(ed[1], ed[2])] += 1.0;
    }
  }
  double off = 0.0, diag = 0.0;  // off sums ordered pairs
  for (int i = 0; i < n; ++i) {
    diag += deg[cls(i, i)];
    for (int j = i + 1; j < n; ++j) off += 2.0 * deg[cls(i, j)];
  }
  if (off == 0.0 && diag == 0.0) throw DegenerateMeasureError("degree_weighted: all degrees are zero");
  // A family with zero total hands its half of the mass to the other one.
  const double off_share = diag == 0.0 ? 1.0 : (off == 0.0 ? 0.0 : 0.5);
  const double diag_share = 1.0 - off_share;
  for (int i = 0; i < n; ++i) {
    if (diag > 0.0) masses_[cls(i, i)] = diag_share * deg[cls(i, i)] / diag;
    for (int j = i + 1; j < n; ++j)
      if (off > 0.0) masses_[cls(i, j)] = off_share * 2.0 * deg[cls(i, j)] / off;
  }
}

std::size_t FiniteSymmetricSpace::class_of(std::span<const int> point) const {
  if (static_cast<int>(point.size()) != s_) throw std::domain_error("point length differs from space order");
  int buf[8];
  if (s_ > 8) throw std::domain_error("space order too large");
  for (int a = 0; a < s_; ++a) {
    if (point[a] < 0 || point[a] >= n_) throw std::domain_error("point outside the space");
    buf[a] = point[a];
  }
  sort_small(std::span<int>(buf, s_));
  return index_.rank(std::span<const int>(buf, s_));
}

std::uint64_t FiniteSymmetricSpace::class_size(std::size_t c) const {
  return MultisetIndexer::orderings(index_.unrank(c));
}

std::string FiniteSymmetricSpace::describe() const {
  return "[" + std::to_string(n_) + "]^" + std::to_string(s_) + "/" + to_string(family_);
}

bool FiniteSymmetricSpace::equals(const FiniteSpace& other) const {
  auto* o = dynamic_cast<const FiniteSymmetricSpace*>(&other);
  return o != nullptr && o->n_ == n_ && o->s_ == s_ && o->family_ == family_ && o->masses_ == masses_;
}

std::shared_ptr<const FiniteSymmetricSpace> build_space(int n, int s, MeasureFamily family, const Hypergraph* h) {
  return std::make_shared<const FiniteSymmetricSpace>(n, s, family, h);
}

TestFunction::TestFunction(SpacePtr space, std::vector<double> values, bool clamped)
    : space_(std::move(space)), values_(std::move(values)), clamped_(clamped) {
  if (!space_) throw std::invalid_argument("TestFunction: null space");
  if (values_.size() != space_->class_count()) throw std::domain_error("TestFunction: value count differs from space");
  if (clamped_ && !bounded()) throw std::invalid_argument("TestFunction: clamped values must lie in [-1,1]");
}

TestFunction TestFunction::constant(SpacePtr space, double value) {
  std::size_t m = space->class_count();
  return TestFunction(std::move(space), std::vector<double>(m, value), std::abs(value) <= 1.0);
}

TestFunction TestFunction::indicator(SpacePtr space, const std::vector<std::vector<int>>& points) {
  std::vector<double> v(space->class_count(), 0.0);
  for (const auto& p : points) v[space->class_of(p)] = 1.0;
  return TestFunction(std::move(space), std::move(v), true);
}

bool TestFunction::bounded() const {
  return std::all_of(values_.begin(), values_.end(), [](double x) { return x >= -1.0 && x <= 1.0; });
}

TestFunction TestFunction::as_clamped() const { return TestFunction(space_, values_, true); }

TestFunction TestFunction::operator+(const TestFunction& o) const {
  if (!same_space(*space_, *o.space_)) throw std::domain_error("TestFunction: space mismatch");
  std::vector<double> v(values_);
  for (std::size_t c = 0; c < v.size(); ++c) v[c] += o.values_[c];
  return TestFunction(space_, std::move(v));
}

TestFunction TestFunction::operator*(double a) const {
  std::vector<double> v(values_);
  for (auto& x : v) x *= a;
  return TestFunction(space_, std::move(v));
}

double expectation(const TestFunction& f) {
  const auto& m = f.space().masses();
  double s = 0.0;
  for (std::size_t c = 0; c < m.size(); ++c) s += m[c] * f[c];
  return s;
}

double lp_norm(const TestFunction& f, double p) {
  if (!(p >= 1.0)) throw std::invalid_argument("lp_norm: exponent must be >= 1");
  const auto& m = f.space().masses();
  if (std::isinf(p)) {
    double best = 0.0;
    for (std::size_t c = 0; c < m.size(); ++c)
      if (m[c] > 0.0) best = std::max(best, std::abs(f[c]));
    return best;
  }
  double s = 0.0;
  for (std::size_t c = 0; c < m.size(); ++c) s += m[c] * std::pow(std::abs(f[c]), p);
  return std::pow(s, 1.0 / p);
}

TestFunction relabeled(const TestFunction& f, std::span<const int> perm,
                       const std::shared_ptr<const FiniteSymmetricSpace>& target) {
  const auto* src = dynamic_cast<const FiniteSymmetricSpace*>(&f.space());
  if (src == nullptr || src->n() != target->n() || src->s() != target->s())
    throw std::domain_error("relabeled: incompatible spaces");
  if (static_cast<int>(perm.size()) != src->n()) throw std::invalid_argument("relabeled: permutation size");
  std::vector<double> v(target->class_count(), 0.0);
  for (std::size_t c = 0; c < src->class_count(); ++c) {
    auto rep = src->representative(c);
    for (auto& i : rep) i = perm[i];
    v[target->class_of(rep)] = f[c];
  }
  return TestFunction(target, std::move(v), f.clamped());
}

std::string CatalogEntry::name() const {
  switch (kind) {
    case Kind::one: return "one";
    case Kind::uniform: return "uniform";
    case Kind::rademacher: return "rademacher";
    case Kind::random_subset: return "random_subset";
    case Kind::indicator: return label.empty() ? "indicator" : label;
    case Kind::rank_one: return "rank_one";
  }
  return "?";
}

CatalogEntry catalog_entry_from_string(const std::string& name) {
  using K = CatalogEntry::Kind;
  if (name == "one") return CatalogEntry::of(K::one);
  if (name == "uniform") return CatalogEntry::of(K::uniform);
  if (name == "rademacher") return CatalogEntry::of(K::rademacher);
  if (name == "random_subset") return CatalogEntry::of(K::random_subset);
  if (name == "rank_one") return CatalogEntry::of(K::rank_one);
  throw std::invalid_argument("unknown catalog entry: " + name);
}

std::vector<TestFunction> sample_test_functions(const SpacePtr& space, const CatalogEntry& entry, std::size_t count,
                                                std::uint64_t seed) {
  if (count < 1) throw std::invalid_argument("sample_test_functions: count must be >= 1");
  using K = CatalogEntry::Kind;
  const std::size_t m = space->class_count();
  std::vector<TestFunction> out;
  out.reserve(count);
  std::optional<TestFunction> fixed;
  if (entry.kind == K::one) fixed = TestFunction::constant(space, 1.0);
  if (entry.kind == K::indicator) fixed = TestFunction::indicator(space, entry.support);
  for (std::size_t i = 0; i < count; ++i) {
    if (fixed) {
      out.push_back(*fixed);
      continue;
    }
    Engine eng = make_engine(seed, i);
    std::vector<double> v(m);
    switch (entry.kind) {
      case K::uniform:
        for (auto& x : v) x = uniform_pm1(eng);
        break;
      case K::rademacher:
        for (auto& x : v) x = (eng() >> 63) ? 1.0 : -1.0;
        break;
      case K::random_subset:
        for (auto& x : v) x = static_cast<double>(eng() >> 63);
        break;
      case K::rank_one: {
        std::vector<double> w(static_cast<std::size_t>(space->coordinate_range()));
        for (auto& x : w) x = uniform_pm1(eng);
        for (std::size_t c = 0; c < m; ++c) {
          double p = 1.0;
          for (int i : space->representative(c)) p *= w[i];
          v[c] = std::clamp(p, -1.0, 1.0);
        }
        break;
      }
      default:
        throw std::invalid_argument("sample_test_functions: unknown catalog entry");
    }
    out.emplace_back(space, std::move(v), true);
  }
  return out;
}

DiscreteMeasure exact_law(const FiniteSpace& space, std::span<const TestFunction> fns) {
  if (fns.empty()) throw std::invalid_argument("exact_law: no functions");
  std::vector<const std::vector<double>*> cols;
  for (const auto& f : fns) {
    if (!same_space(space, f.space())) throw std::domain_error("exact_law: function defined on another space");
    cols.push_back(&f.values());
  }
  return law_from_columns(space.masses(), cols);
}

}  // namespace hyperlim
