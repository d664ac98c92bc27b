#include "hyperlim/multiset.hpp"

#include <stdexcept>

namespace hyperlim {

std::uint64_t factorial(int m) {
  std::uint64_t f = 1;
  for (int i = 2; i <= m; ++i) f *= static_cast<std::uint64_t>(i);
  return f;
}

MultisetIndexer::MultisetIndexer(int n, int r) : n_(n), r_(r) {
  if (n < 1 || r < 1) throw std::invalid_argument("MultisetIndexer: n and r must be positive");
  tail_.assign(static_cast<std::size_t>(r + 2) * (n + 1), 0);
  for (int v = 0; v <= n; ++v) tail_[v] = 1;
  for (int len = 1; len <= r + 1; ++len) {
    for (int v = n - 1; v >= 0; --v) {
      std::size_t a = tail(len, v + 1);
      std::size_t b = tail(len - 1, v);
      if (a > SIZE_MAX - b) throw std::overflow_error("MultisetIndexer: too many tuples");
      tail_[static_cast<std::size_t>(len) * (n + 1) + v] = a + b;
    }
  }
  size_ = tail(r, 0);
}

std::size_t MultisetIndexer::rank(std::span<const int> sorted) const {
  std::size_t out = 0;
  int prev = 0;
  for (int t = 0; t < r_; ++t) {
    int x = sorted[t];
    // tuples with the same prefix and a smaller value at position t
    out += tail(r_ - t, prev) - tail(r_ - t, x);
    prev = x;
  }
  return out;
}

std::vector<int> MultisetIndexer::unrank(std::size_t rank) const {
  if (rank >= size_) throw std::out_of_range("MultisetIndexer::unrank");
  std::vector<int> out(r_);
  int v = 0;
  for (int t = 0; t < r_; ++t) {
    while (true) {
      std::size_t block = tail(r_ - t - 1, v);
      if (rank < block) break;
      rank -= block;
      ++v;
    }
    out[t] = v;
  }
  return out;
}

bool MultisetIndexer::next(std::vector<int>& tuple) const {
  int t = r_ - 1;
  while (t >= 0 && tuple[t] == n_ - 1) --t;
  if (t < 0) return false;
  int v = tuple[t] + 1;
  for (int u = t; u < r_; ++u) tuple[u] = v;
  return true;
}

std::uint64_t MultisetIndexer::orderings(std::span<const int> sorted) {
  std::uint64_t out = factorial(static_cast<int>(sorted.size()));
  std::size_t a = 0;
  while (a < sorted.size()) {
    std::size_t b = a;
    while (b < sorted.size() && sorted[b] == sorted[a]) ++b;
    out /= factorial(static_cast<int>(b - a));
    a = b;
  }
  return out;
}

}  // namespace hyperlim
