#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace hyperlim {

// Vertices are 0-based in memory, 1-based in files. Edges are stored as
// sorted vertex lists, in lexicographic order.
class Hypergraph {
 public:
  explicit Hypergraph(int vertex_count = 0);
  Hypergraph(int vertex_count, std::vector<std::vector<int>> edges);
  // Edges given back to back in `flat`, edge e spanning [offsets[e], offsets[e+1]).
  Hypergraph(int vertex_count, std::vector<int> flat, std::vector<std::size_t> offsets);

  int vertex_count() const { return n_; }
  std::size_t edge_count() const { return offsets_.size() - 1; }
  std::span<const int> edge(std::size_t e) const {
    return {flat_.data() + offsets_[e], offsets_[e + 1] - offsets_[e]};
  }
  std::vector<std::vector<int>> edge_list() const;

  int max_edge_cardinality() const { return max_card_; }
  bool is_uniform(int k) const;
  bool contains(std::span<const int> sorted_set) const;

 private:
  void finalize();

  int n_;
  int max_card_ = 0;
  std::vector<int> flat_;
  std::vector<std::size_t> offsets_{0};
};

// Edges containing every listed vertex whose cardinality is one more than the
// number of distinct listed vertices.
std::size_t degree_count(const Hypergraph& h, std::span<const int> vertices);

}  // namespace hyperlim
