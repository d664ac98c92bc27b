#include <algorithm>
#include <map>
#include <stdexcept>

#include "hyperlim/profiles.hpp"

namespace hyperlim {

namespace {

// Per-vertex multiset of (value, multiplicity of the vertex in the index).
std::vector<std::vector<std::pair<double, int>>> signatures(const SymmetricTensor& t) {
  std::vector<std::vector<std::pair<double, int>>> sig(t.dimension());
  auto nz = t.nonzeros();
  const int r = t.order();
  for (std::size_t e = 0; e < nz.size(); ++e) {
    const int* idx = nz.indices.data() + e * r;
    for (int a = 0; a < r;) {
      int b = a;
      while (b < r && idx[b] == idx[a]) ++b;
      sig[idx[a]].emplace_back(nz.values[e], b - a);
      a = b;
    }
  }
  for (auto& s : sig) std::sort(s.begin(), s.end());
  return sig;
}

}  // namespace

std::optional<std::vector<int>> tensor_isomorphism_oracle(const SymmetricTensor& t, const SymmetricTensor& u) {
  if (t.order() != u.order() || t.dimension() != u.dimension())
    throw std::invalid_argument("isomorphism: tensors differ in order or dimension");
  const int n = t.dimension(), r = t.order();
  {
    auto x = t.nonzeros().values, y = u.nonzeros().values;
    std::sort(x.begin(), x.end());
    std::sort(y.begin(), y.end());
    if (x != y) return std::nullopt;
  }
  const auto st = signatures(t), su = signatures(u);
  std::vector<std::vector<int>> candidates(n);
  for (int v = 0; v < n; ++v)
    for (int w = 0; w < n; ++w)
      if (st[v] == su[w]) candidates[v].push_back(w);
  for (const auto& c : candidates)
    if (c.empty()) return std::nullopt;

  std::vector<int> psi(n, -1);
  std::vector<char> used(n, 0);
  std::vector<int> idx(r), img(r);

  // All sorted r-tuples over [0, v] that contain v must agree after mapping.
  auto consistent = [&](int v) {
    if (r == 1) {
      idx[0] = v;
      img[0] = psi[v];
      return t.at(idx) == u.at(img);
    }
    std::vector<int> head(r - 1, 0);
    MultisetIndexer sub(v + 1, r - 1);
    do {
      std::copy(head.begin(), head.end(), idx.begin());
      idx[r - 1] = v;
      for (int a = 0; a < r; ++a) img[a] = psi[idx[a]];
      if (t.at(idx) != u.at(img)) return false;
    } while (sub.next(head));
    return true;
  };

  auto dfs = [&](auto&& self, int v) -> bool {
    if (v == n) return true;
    for (int w : candidates[v]) {
      if (used[w]) continue;
      psi[v] = w;
      used[w] = 1;
      if (consistent(v) && self(self, v + 1)) return true;
      used[w] = 0;
      psi[v] = -1;
    }
    return false;
  };
  if (!dfs(dfs, 0)) return std::nullopt;
  return psi;
}

}  // namespace hyperlim
