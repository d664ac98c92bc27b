#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace hyperlim {

// Lexicographic ranking of non-decreasing tuples i_1 <= ... <= i_r over [0, n).
class MultisetIndexer {
 public:
  MultisetIndexer() = default;
  MultisetIndexer(int n, int r);

  int dimension() const { return n_; }
  int order() const { return r_; }
  std::size_t size() const { return size_; }

  std::size_t rank(std::span<const int> sorted) const;
  std::vector<int> unrank(std::size_t rank) const;

  // Advances a sorted tuple to its lexicographic successor; false past the end.
  bool next(std::vector<int>& tuple) const;

  // Number of distinct orderings of a sorted tuple (multinomial coefficient).
  static std::uint64_t orderings(std::span<const int> sorted);

 private:
  // count of non-decreasing tuples of length len over [v, n)
  std::size_t tail(int len, int v) const { return tail_[static_cast<std::size_t>(len) * (n_ + 1) + v]; }

  int n_ = 0;
  int r_ = 0;
  std::size_t size_ = 0;
  std::vector<std::size_t> tail_;
};

// Sorts a short index tuple in place (insertion sort; tuples have length <= 6).
inline void sort_small(std::span<int> x) {
  for (std::size_t a = 1; a < x.size(); ++a) {
    int v = x[a];
    std::size_t b = a;
    while (b > 0 && x[b - 1] > v) {
      x[b] = x[b - 1];
      --b;
    }
    x[b] = v;
  }
}

std::uint64_t factorial(int m);

}  // namespace hyperlim
