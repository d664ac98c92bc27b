#include "hyperlim/hypergraph.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace hyperlim {

namespace {

bool span_less(std::span<const int> a, std::span<const int> b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

}  // namespace

Hypergraph::Hypergraph(int vertex_count) : n_(vertex_count) {
  if (vertex_count < 0) throw std::invalid_argument("Hypergraph: negative vertex count");
}

Hypergraph::Hypergraph(int vertex_count, std::vector<std::vector<int>> edges) : Hypergraph(vertex_count) {
  for (auto& e : edges) {
    flat_.insert(flat_.end(), e.begin(), e.end());
    offsets_.push_back(flat_.size());
  }
  finalize();
}

Hypergraph::Hypergraph(int vertex_count, std::vector<int> flat, std::vector<std::size_t> offsets)
    : Hypergraph(vertex_count) {
  if (offsets.empty() || offsets.front() != 0 || offsets.back() != flat.size() ||
      !std::is_sorted(offsets.begin(), offsets.end()))
    throw std::invalid_argument("Hypergraph: malformed edge offsets");
  flat_ = std::move(flat);
  offsets_ = std::move(offsets);
  finalize();
}

void Hypergraph::finalize() {
  const std::size_t m = edge_count();
  for (std::size_t e = 0; e < m; ++e) {
    auto first = flat_.begin() + static_cast<std::ptrdiff_t>(offsets_[e]);
    auto last = flat_.begin() + static_cast<std::ptrdiff_t>(offsets_[e + 1]);
    if (first == last) throw std::invalid_argument("Hypergraph: empty edge");
    std::sort(first, last);
    if (std::adjacent_find(first, last) != last) throw std::invalid_argument("Hypergraph: repeated vertex in edge");
    if (*first < 0 || *(last - 1) >= n_) throw std::invalid_argument("Hypergraph: vertex out of range");
    max_card_ = std::max(max_card_, static_cast<int>(last - first));
  }
  bool ordered = true;
  for (std::size_t e = 1; e < m && ordered; ++e) ordered = span_less(edge(e - 1), edge(e));
  if (!ordered) {
    std::vector<std::size_t> perm(m);
    std::iota(perm.begin(), perm.end(), 0);
    std::sort(perm.begin(), perm.end(), [&](std::size_t a, std::size_t b) { return span_less(edge(a), edge(b)); });
    std::vector<int> flat;
    std::vector<std::size_t> offsets{0};
    flat.reserve(flat_.size());
    for (auto e : perm) {
      auto s = edge(e);
      flat.insert(flat.end(), s.begin(), s.end());
      offsets.push_back(flat.size());
    }
    flat_ = std::move(flat);
    offsets_ = std::move(offsets);
  }
  for (std::size_t e = 1; e < m; ++e) {
    auto a = edge(e - 1), b = edge(e);
    if (std::equal(a.begin(), a.end(), b.begin(), b.end())) throw std::invalid_argument("Hypergraph: duplicate edge");
  }
}

std::vector<std::vector<int>> Hypergraph::edge_list() const {
  std::vector<std::vector<int>> out;
  out.reserve(edge_count());
  for (std::size_t e = 0; e < edge_count(); ++e) {
    auto s = edge(e);
    out.emplace_back(s.begin(), s.end());
  }
  return out;
}

bool Hypergraph::is_uniform(int k) const {
  for (std::size_t e = 0; e < edge_count(); ++e)
    if (static_cast<int>(edge(e).size()) != k) return false;
  return true;
}

bool Hypergraph::contains(std::span<const int> sorted_set) const {
  std::size_t lo = 0, hi = edge_count();
  while (lo < hi) {
    std::size_t mid = (lo + hi) / 2;
    if (span_less(edge(mid), sorted_set))
      lo = mid + 1;
    else
      hi = mid;
  }
  if (lo == edge_count()) return false;
  auto e = edge(lo);
  return std::equal(e.begin(), e.end(), sorted_set.begin(), sorted_set.end());
}

std::size_t degree_count(const Hypergraph& h, std::span<const int> vertices) {
  std::vector<int> u(vertices.begin(), vertices.end());
  std::sort(u.begin(), u.end());
  u.erase(std::unique(u.begin(), u.end()), u.end());
  std::size_t count = 0;
  for (std::size_t e = 0; e < h.edge_count(); ++e) {
    auto s = h.edge(e);
    if (s.size() == u.size() + 1 && std::includes(s.begin(), s.end(), u.begin(), u.end())) ++count;
  }
  return count;
}

}  // namespace hyperlim
