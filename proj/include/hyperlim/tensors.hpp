#pragma once

#include <cstdint>
#include <initializer_list>
#include <span>
#include <utility>
#include <vector>

#include "hyperlim/hypergraph.hpp"
#include "hyperlim/multiset.hpp"

namespace hyperlim {

enum class Backend { automatic, dense, sparse };

// Flat list of canonical nonzero entries: entry e has sorted index
// indices[e*order .. e*order+order) and value values[e].
struct NonzeroList {
  int order = 0;
  std::vector<int> indices;
  std::vector<double> values;
  std::size_t size() const { return values.size(); }
};

class SymmetricTensor {
 public:
  SymmetricTensor(int order, int dimension, Backend backend = Backend::automatic);

  // Entries may be given at any permutation; repeated canonical indices throw.
  static SymmetricTensor from_entries(int order, int dimension,
                                      std::vector<std::pair<std::vector<int>, double>> entries,
                                      Backend backend = Backend::automatic);
  // Dense values in lexicographic order of sorted indices.
  static SymmetricTensor from_canonical_values(int order, int dimension, std::vector<double> values);

  int order() const { return r_; }
  int dimension() const { return n_; }
  bool is_dense() const { return dense_; }
  const MultisetIndexer& indexer() const { return index_; }

  double at(std::span<const int> index) const;
  double at(std::initializer_list<int> index) const { return at(std::span<const int>(index.begin(), index.size())); }
  void set(std::span<const int> index, double value);
  void set(std::initializer_list<int> index, double value) {
    set(std::span<const int>(index.begin(), index.size()), value);
  }

  std::size_t nonzero_count() const;
  NonzeroList nonzeros() const;
  std::vector<double> canonical_values() const;

  SymmetricTensor scaled(double factor) const;
  // result(perm[i_1], ..., perm[i_r]) = this(i_1, ..., i_r)
  SymmetricTensor relabeled(std::span<const int> perm) const;
  SymmetricTensor with_backend(Backend backend) const;

  friend bool operator==(const SymmetricTensor& a, const SymmetricTensor& b);

 private:
  std::uint64_t key(std::span<const int> sorted) const;
  void decode(std::uint64_t key, int* out) const;
  void check_index(std::span<const int> index) const;

  int r_;
  int n_;
  bool dense_;
  MultisetIndexer index_;
  std::vector<double> dense_values_;
  std::vector<std::uint64_t> keys_;  // sparse, ascending
  std::vector<double> sparse_values_;
};

// Arbitrary (not necessarily symmetric) order-r tensor with n^r entries.
class FullTensor {
 public:
  FullTensor(int order, int dimension);
  int order() const { return r_; }
  int dimension() const { return n_; }
  double& at(std::span<const int> index);
  double at(std::span<const int> index) const;
  double& at(std::initializer_list<int> index) { return at(std::span<const int>(index.begin(), index.size())); }
  const std::vector<double>& values() const { return values_; }

 private:
  std::size_t offset(std::span<const int> index) const;
  int r_, n_;
  std::vector<double> values_;
};

SymmetricTensor symmetrize(const FullTensor& t);

// Entry (i_1..i_r) is 1 iff the set {i_1..i_r} is an edge.
SymmetricTensor adjacency_tensor(const Hypergraph& h, int r);

struct Normalization {
  enum class Kind { none, uniform, sparse, degree };
  Kind kind = Kind::none;
  double s_n = 1.0;

  static Normalization none() { return {Kind::none, 1.0}; }
  static Normalization uniform() { return {Kind::uniform, 1.0}; }
  static Normalization sparse(double s_n) { return {Kind::sparse, s_n}; }
  static Normalization degree() { return {Kind::degree, 1.0}; }
};

// A scaled tensor, optionally with a divisor that depends on the first r-1
// indices of each entry (the output tuple of the (r-1)-action).
class NormalizedTensor {
 public:
  NormalizedTensor(SymmetricTensor base, double scale);
  NormalizedTensor(SymmetricTensor base, std::vector<double> output_divisor);

  int order() const { return base_.order(); }
  int dimension() const { return base_.dimension(); }
  const SymmetricTensor& base() const { return base_; }
  double scale() const { return scale_; }
  bool has_output_divisor() const { return !divisor_.empty(); }
  // Indexed by rank of the sorted (r-1)-tuple.
  const std::vector<double>& output_divisor() const { return divisor_; }

  double entry(std::span<const int> index) const;
  double entry(std::initializer_list<int> index) const {
    return entry(std::span<const int>(index.begin(), index.size()));
  }
  // The scaled symmetric tensor; throws when a degree divisor is present.
  SymmetricTensor symmetric() const;

 private:
  SymmetricTensor base_;
  double scale_ = 1.0;
  std::vector<double> divisor_;
};

NormalizedTensor normalize(const SymmetricTensor& t, Normalization scheme);

// Output-tuple degrees of a 0/1 tensor, indexed by rank of sorted (r-1)-tuples.
std::vector<double> tuple_degrees(const SymmetricTensor& t);

// s-action T[f_1, ..., f_{r-1}]. Each f has order s. Parallel over entries.
SymmetricTensor s_action_apply(const SymmetricTensor& t, int s, std::span<const SymmetricTensor> fns);
SymmetricTensor s_action_apply(const NormalizedTensor& t, int s, std::span<const SymmetricTensor> fns);

namespace reference {
// Literal serial evaluation: loops over every ordered output and contracted
// index, then averages the output over all s! index permutations.
SymmetricTensor s_action_apply(const SymmetricTensor& t, int s, std::span<const SymmetricTensor> fns);
}  // namespace reference

}  // namespace hyperlim
