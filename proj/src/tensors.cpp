#include "hyperlim/tensors.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <numeric>
#include <stdexcept>

namespace hyperlim {

namespace {

constexpr int kMaxOrder = 6;
constexpr int kDenseMaxDimension = 64;
constexpr std::size_t kDenseMaxSize = std::size_t{1} << 24;

bool choose_dense(int r, int n, Backend b) {
  if (b == Backend::dense) return true;
  if (b == Backend::sparse) return false;
  return n <= kDenseMaxDimension && MultisetIndexer(n, r).size() <= kDenseMaxSize;
}

}  // namespace

SymmetricTensor::SymmetricTensor(int order, int dimension, Backend backend)
    : r_(order), n_(dimension) {
  if (order < 1 || order > kMaxOrder) throw std::invalid_argument("SymmetricTensor: order must be in [1, 6]");
  if (dimension < 1) throw std::invalid_argument("SymmetricTensor: dimension must be positive");
  index_ = MultisetIndexer(dimension, order);
  dense_ = choose_dense(order, dimension, backend);
  if (dense_) {
    dense_values_.assign(index_.size(), 0.0);
  } else {
    long double cap = 1.0L;
    for (int i = 0; i < order; ++i) cap *= dimension;
    if (cap >= 1.8e19L) throw std::invalid_argument("SymmetricTensor: dimension too large for sparse keys");
  }
}

SymmetricTensor SymmetricTensor::from_entries(int order, int dimension,
                                              std::vector<std::pair<std::vector<int>, double>> entries,
                                              Backend backend) {
  SymmetricTensor t(order, dimension, backend);
  std::vector<std::pair<std::uint64_t, double>> staged;
  staged.reserve(entries.size());
  for (auto& [idx, v] : entries) {
    t.check_index(idx);
    sort_small(idx);
    staged.emplace_back(t.key(idx), v);
  }
  std::sort(staged.begin(), staged.end(), [](auto& a, auto& b) { return a.first < b.first; });
  for (std::size_t i = 1; i < staged.size(); ++i)
    if (staged[i].first == staged[i - 1].first) throw std::invalid_argument("from_entries: repeated canonical index");
  if (t.dense_) {
    std::vector<int> idx(order);
    for (auto& [k, v] : staged) {
      t.decode(k, idx.data());
      t.dense_values_[t.index_.rank(idx)] = v;
    }
  } else {
    for (auto& [k, v] : staged) {
      if (v == 0.0) continue;
      t.keys_.push_back(k);
      t.sparse_values_.push_back(v);
    }
  }
  return t;
}

SymmetricTensor SymmetricTensor::from_canonical_values(int order, int dimension, std::vector<double> values) {
  SymmetricTensor t(order, dimension, Backend::dense);
  if (values.size() != t.index_.size()) throw std::invalid_argument("from_canonical_values: wrong length");
  t.dense_values_ = std::move(values);
  return t;
}

void SymmetricTensor::check_index(std::span<const int> index) const {
  if (static_cast<int>(index.size()) != r_) throw std::invalid_argument("SymmetricTensor: index length differs from order");
  for (int i : index)
    if (i < 0 || i >= n_) throw std::out_of_range("SymmetricTensor: index out of range");
}

std::uint64_t SymmetricTensor::key(std::span<const int> sorted) const {
  std::uint64_t k = 0;
  for (int i : sorted) k = k * static_cast<std::uint64_t>(n_) + static_cast<std::uint64_t>(i);
  return k;
}

void SymmetricTensor::decode(std::uint64_t key, int* out) const {
  for (int t = r_ - 1; t >= 0; --t) {
    out[t] = static_cast<int>(key % static_cast<std::uint64_t>(n_));
    key /= static_cast<std::uint64_t>(n_);
  }
}

double SymmetricTensor::at(std::span<const int> index) const {
  check_index(index);
  int buf[kMaxOrder];
  std::copy(index.begin(), index.end(), buf);
  std::span<int> sorted(buf, index.size());
  sort_small(sorted);
  if (dense_) return dense_values_[index_.rank(sorted)];
  auto k = key(sorted);
  auto it = std::lower_bound(keys_.begin(), keys_.end(), k);
  if (it == keys_.end() || *it != k) return 0.0;
  return sparse_values_[static_cast<std::size_t>(it - keys_.begin())];
}

void SymmetricTensor::set(std::span<const int> index, double value) {
  check_index(index);
  int buf[kMaxOrder];
  std::copy(index.begin(), index.end(), buf);
  std::span<int> sorted(buf, index.size());
  sort_small(sorted);
  if (dense_) {
    dense_values_[index_.rank(sorted)] = value;
    return;
  }
  auto k = key(sorted);
  auto it = std::lower_bound(keys_.begin(), keys_.end(), k);
  auto pos = static_cast<std::size_t>(it - keys_.begin());
  if (it != keys_.end() && *it == k) {
    if (value == 0.0) {
      keys_.erase(it);
      sparse_values_.erase(sparse_values_.begin() + static_cast<std::ptrdiff_t>(pos));
    } else {
      sparse_values_[pos] = value;
    }
  } else if (value != 0.0) {
    keys_.insert(it, k);
    sparse_values_.insert(sparse_values_.begin() + static_cast<std::ptrdiff_t>(pos), value);
  }
}

std::size_t SymmetricTensor::nonzero_count() const {
  if (!dense_) return keys_.size();
  return static_cast<std::size_t>(std::count_if(dense_values_.begin(), dense_values_.end(), [](double v) { return v != 0.0; }));
}

NonzeroList SymmetricTensor::nonzeros() const {
  NonzeroList out;
  out.order = r_;
  if (dense_) {
    std::vector<int> idx(r_, 0);
    std::size_t rank = 0;
    do {
      double v = dense_values_[rank++];
      if (v != 0.0) {
        out.indices.insert(out.indices.end(), idx.begin(), idx.end());
        out.values.push_back(v);
      }
    } while (index_.next(idx));
  } else {
    out.indices.resize(keys_.size() * static_cast<std::size_t>(r_));
    for (std::size_t e = 0; e < keys_.size(); ++e) decode(keys_[e], out.indices.data() + e * r_);
    out.values = sparse_values_;
  }
  return out;
}

std::vector<double> SymmetricTensor::canonical_values() const {
  if (dense_) return dense_values_;
  std::vector<double> out(index_.size(), 0.0);
  int idx[kMaxOrder];
  for (std::size_t e = 0; e < keys_.size(); ++e) {
    decode(keys_[e], idx);
    out[index_.rank(std::span<const int>(idx, r_))] = sparse_values_[e];
  }
  return out;
}

SymmetricTensor SymmetricTensor::scaled(double factor) const {
  SymmetricTensor t = *this;
  for (auto& v : t.dense_values_) v *= factor;
  for (auto& v : t.sparse_values_) v *= factor;
  if (factor == 0.0) {
    t.keys_.clear();
    t.sparse_values_.clear();
  }
  return t;
}

SymmetricTensor SymmetricTensor::relabeled(std::span<const int> perm) const {
  if (static_cast<int>(perm.size()) != n_) throw std::invalid_argument("relabeled: permutation size differs from dimension");
  std::vector<int> check(perm.begin(), perm.end());
  std::sort(check.begin(), check.end());
  for (int i = 0; i < n_; ++i)
    if (check[i] != i) throw std::invalid_argument("relabeled: not a permutation");
  auto nz = nonzeros();
  std::vector<std::pair<std::vector<int>, double>> entries;
  entries.reserve(nz.size());
  for (std::size_t e = 0; e < nz.size(); ++e) {
    std::vector<int> idx(r_);
    for (int t = 0; t < r_; ++t) idx[t] = perm[nz.indices[e * r_ + t]];
    entries.emplace_back(std::move(idx), nz.values[e]);
  }
  return from_entries(r_, n_, std::move(entries), dense_ ? Backend::dense : Backend::sparse);
}

SymmetricTensor SymmetricTensor::with_backend(Backend backend) const {
  auto nz = nonzeros();
  std::vector<std::pair<std::vector<int>, double>> entries;
  entries.reserve(nz.size());
  for (std::size_t e = 0; e < nz.size(); ++e)
    entries.emplace_back(std::vector<int>(nz.indices.begin() + static_cast<std::ptrdiff_t>(e * r_),
                                          nz.indices.begin() + static_cast<std::ptrdiff_t>((e + 1) * r_)),
                         nz.values[e]);
  return from_entries(r_, n_, std::move(entries), backend);
}

bool operator==(const SymmetricTensor& a, const SymmetricTensor& b) {
  if (a.r_ != b.r_ || a.n_ != b.n_) return false;
  auto x = a.nonzeros(), y = b.nonzeros();
  return x.indices == y.indices && x.values == y.values;
}

FullTensor::FullTensor(int order, int dimension) : r_(order), n_(dimension) {
  if (order < 1 || dimension < 1) throw std::invalid_argument("FullTensor: order and dimension must be positive");
  std::size_t size = 1;
  for (int i = 0; i < order; ++i) size *= static_cast<std::size_t>(dimension);
  values_.assign(size, 0.0);
}

std::size_t FullTensor::offset(std::span<const int> index) const {
  if (static_cast<int>(index.size()) != r_) throw std::invalid_argument("FullTensor: index length differs from order");
  std::size_t off = 0;
  for (int i : index) {
    if (i < 0 || i >= n_) throw std::out_of_range("FullTensor: index out of range");
    off = off * static_cast<std::size_t>(n_) + static_cast<std::size_t>(i);
  }
  return off;
}

double& FullTensor::at(std::span<const int> index) { return values_[offset(index)]; }
double FullTensor::at(std::span<const int> index) const { return values_[offset(index)]; }

SymmetricTensor symmetrize(const FullTensor& t) {
  const int r = t.order(), n = t.dimension();
  SymmetricTensor out(r, n);
  std::vector<int> idx(r, 0), perm(r);
  const double inv = 1.0 / static_cast<double>(factorial(r));
  do {
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<int> placed(r);
    double sum = 0.0;
    do {
      for (int a = 0; a < r; ++a) placed[a] = idx[perm[a]];
      sum += t.at(placed);
    } while (std::next_permutation(perm.begin(), perm.end()));
    if (sum != 0.0) out.set(idx, sum * inv);
  } while (out.indexer().next(idx));
  return out;
}

namespace {

// Multisets of size r whose distinct elements are exactly `set`.
void covering_multisets(std::span<const int> set, int r, std::vector<std::vector<int>>& out) {
  const int m = static_cast<int>(set.size());
  std::vector<int> extra(m, 0);  // copies beyond the first
  auto rec = [&](auto&& self, int slot, int left) -> void {
    if (slot == m - 1) {
      extra[slot] = left;
      std::vector<int> t;
      t.reserve(r);
      for (int a = 0; a < m; ++a) t.insert(t.end(), 1 + extra[a], set[a]);
      out.push_back(std::move(t));
      return;
    }
    for (int c = 0; c <= left; ++c) {
      extra[slot] = c;
      self(self, slot + 1, left - c);
    }
  };
  rec(rec, 0, r - m);
}

}  // namespace

SymmetricTensor adjacency_tensor(const Hypergraph& h, int r) {
  if (r < h.max_edge_cardinality()) throw std::invalid_argument("adjacency_tensor: order below the largest edge");
  std::vector<std::pair<std::vector<int>, double>> entries;
  std::vector<std::vector<int>> cover;
  for (std::size_t e = 0; e < h.edge_count(); ++e) {
    cover.clear();
    covering_multisets(h.edge(e), r, cover);
    for (auto& c : cover) entries.emplace_back(std::move(c), 1.0);
  }
  return SymmetricTensor::from_entries(r, std::max(1, h.vertex_count()), std::move(entries));
}

std::vector<double> tuple_degrees(const SymmetricTensor& t) {
  const int r = t.order(), n = t.dimension();
  if (r < 2) throw std::invalid_argument("tuple_degrees: order must be at least 2");
  auto nz = t.nonzeros();
  std::vector<std::vector<int>> edges;
  edges.reserve(nz.size());
  for (std::size_t e = 0; e < nz.size(); ++e) {
    if (nz.values[e] != 1.0) throw std::invalid_argument("degree normalization requires a 0/1 tensor");
    std::vector<int> s(nz.indices.begin() + static_cast<std::ptrdiff_t>(e * r),
                       nz.indices.begin() + static_cast<std::ptrdiff_t>((e + 1) * r));
    s.erase(std::unique(s.begin(), s.end()), s.end());
    edges.push_back(std::move(s));
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

  MultisetIndexer out_index(n, r - 1);
  std::vector<double> deg(out_index.size(), 0.0);
  std::vector<std::vector<int>> cover;
  std::vector<int> u;
  for (const auto& e : edges) {
    if (e.size() < 2) continue;
    for (std::size_t drop = 0; drop < e.size(); ++drop) {
      u.clear();
      for (std::size_t a = 0; a < e.size(); ++a)
        if (a != drop) u.push_back(e[a]);
      cover.clear();
      covering_multisets(u, r - 1, cover);
      for (const auto& c : cover) deg[out_index.rank(c)] += 1.0;
    }
  }
  return deg;
}

NormalizedTensor::NormalizedTensor(SymmetricTensor base, double scale) : base_(std::move(base)), scale_(scale) {}

NormalizedTensor::NormalizedTensor(SymmetricTensor base, std::vector<double> output_divisor)
    : base_(std::move(base)), divisor_(std::move(output_divisor)) {
  if (base_.order() < 2) throw std::invalid_argument("NormalizedTensor: divisor needs order >= 2");
  if (divisor_.size() != MultisetIndexer(base_.dimension(), base_.order() - 1).size())
    throw std::invalid_argument("NormalizedTensor: divisor table has the wrong size");
}

double NormalizedTensor::entry(std::span<const int> index) const {
  double v = base_.at(index) * scale_;
  if (divisor_.empty() || v == 0.0) return v;
  std::vector<int> out(index.begin(), index.end() - 1);
  std::sort(out.begin(), out.end());
  double d = divisor_[MultisetIndexer(base_.dimension(), base_.order() - 1).rank(out)];
  return d == 0.0 ? 0.0 : v / d;
}

SymmetricTensor NormalizedTensor::symmetric() const {
  if (!divisor_.empty()) throw std::logic_error("degree-normalized tensor is not symmetric");
  return scale_ == 1.0 ? base_ : base_.scaled(scale_);
}

NormalizedTensor normalize(const SymmetricTensor& t, Normalization scheme) {
  switch (scheme.kind) {
    case Normalization::Kind::none:
      return NormalizedTensor(t, 1.0);
    case Normalization::Kind::uniform:
      return NormalizedTensor(t, 1.0 / static_cast<double>(t.dimension()));
    case Normalization::Kind::sparse:
      if (!(scheme.s_n > 0.0)) throw std::invalid_argument("normalize: s_n must be positive");
      return NormalizedTensor(t, 1.0 / scheme.s_n);
    case Normalization::Kind::degree:
      return NormalizedTensor(t, tuple_degrees(t));
  }
  throw std::invalid_argument("normalize: unknown scheme");
}

}  // namespace hyperlim
