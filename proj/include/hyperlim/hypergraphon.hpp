#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "hyperlim/hypergraph.hpp"
#include "hyperlim/operators.hpp"
#include "hyperlim/spaces.hpp"

namespace hyperlim {

// Nonempty subsets of [k] = {0..k-1} with at most max_size elements, as bit
// masks, ordered by size and then lexicographically.
class CoordinateIndex {
 public:
  CoordinateIndex(int k, int max_size);
  static CoordinateIndex proper(int k) { return CoordinateIndex(k, k - 1); }
  static CoordinateIndex all(int k) { return CoordinateIndex(k, k); }

  int k() const { return k_; }
  int max_size() const { return max_size_; }
  std::size_t size() const { return masks_.size(); }
  std::uint32_t mask(std::size_t i) const { return masks_[i]; }
  int level(std::size_t i) const;
  std::size_t position(std::uint32_t mask) const;
  // Position of sigma(S) for the subset at position i.
  std::size_t permuted(std::size_t i, std::span<const int> sigma) const;

 private:
  int k_, max_size_;
  std::vector<std::uint32_t> masks_;
  std::vector<int> position_;  // by mask, -1 if absent
};

// Uniform product grid; coordinates of the same level share a resolution.
class Grid {
 public:
  Grid(CoordinateIndex coords, std::vector<int> resolution_by_level);

  const CoordinateIndex& coords() const { return coords_; }
  const std::vector<int>& resolution_by_level() const { return res_by_level_; }
  int resolution(std::size_t coord) const { return res_[coord]; }
  std::size_t cell_count() const { return cells_; }
  double cell_volume() const { return 1.0 / static_cast<double>(cells_); }

  std::size_t encode(std::span<const int> cell) const;
  void decode(std::size_t code, std::span<int> cell) const;
  // Cell moved by a permutation of [k]: out[sigma(S)] = cell[S].
  std::size_t permute(std::size_t code, std::span<const int> sigma) const;
  // Smallest code in the orbit of `code` under all permutations of [k].
  std::size_t canonical(std::size_t code) const;

 private:
  CoordinateIndex coords_;
  std::vector<int> res_by_level_;
  std::vector<int> res_;
  std::vector<std::size_t> stride_;
  std::size_t cells_ = 1;
  std::vector<std::vector<int>> perms_;
};

// Symmetric step function on [0,1]^{r_<[k]}. Values lie in [0,1] unless
// constructed as signed (differences, cut-norm inputs).
class StepHypergraphon {
 public:
  StepHypergraphon(int k, std::vector<int> resolution_by_level, std::vector<double> values, bool signed_values = false);
  static StepHypergraphon from_function(int k, std::vector<int> resolution_by_level,
                                        const std::function<double(std::span<const int>)>& value,
                                        bool signed_values = false);
  static StepHypergraphon constant(int k, double value);

  int k() const { return k_; }
  const Grid& grid() const { return grid_; }
  const std::vector<double>& values() const { return values_; }
  double at_cell(std::span<const int> cell) const { return values_[grid_.encode(cell)]; }
  bool signed_values() const { return signed_; }
  double mean() const;

  // Same function on a finer grid; each level's resolution must divide the new one.
  StepHypergraphon refined(const std::vector<int>& resolution_by_level) const;
  StepHypergraphon operator-(const StepHypergraphon& other) const;

 private:
  int k_;
  Grid grid_;
  std::vector<double> values_;
  bool signed_;
};

// Labels of a symmetric partition of [0,1]^{r[k-1]} on a uniform grid.
class SymmetricGridPartition {
 public:
  // k is the order of the hypergraphons it partitions; the grid covers r[k-1].
  SymmetricGridPartition(int k, std::vector<int> resolution_by_level, std::vector<int> labels);
  static SymmetricGridPartition from_function(int k, std::vector<int> resolution_by_level,
                                              const std::function<int(std::span<const int>)>& label);

  int k() const { return k_; }
  int parts() const { return q_; }
  const Grid& grid() const { return grid_; }
  int label(std::size_t code) const { return labels_[code]; }
  const std::vector<int>& labels() const { return labels_; }

 private:
  int k_;
  Grid grid_;
  std::vector<int> labels_;
  int q_ = 0;
};

StepHypergraphon from_hypergraph(const Hypergraph& h, int k);

struct MonteCarloEstimate {
  double value = 0.0;
  double stderr_ = 0.0;
};

// alpha[e] picks the step function used for the e-th edge of F (edge order of F).
MonteCarloEstimate hom_density(const Hypergraph& F, const std::vector<StepHypergraphon>& ws,
                               const std::vector<int>& alpha, std::size_t samples = 1'000'000,
                               std::uint64_t seed = 0);

// v_f and w_f for f in [q]^k, f encoded base q with f_1 most significant.
struct Quotient {
  int k = 0;
  int q = 0;
  std::vector<double> volume;
  std::vector<double> weight;
};

Quotient quotient(const StepHypergraphon& w, const SymmetricGridPartition& q);
double d1_quotient(const Quotient& a, const Quotient& b);
StepHypergraphon stepping(const StepHypergraphon& w, const SymmetricGridPartition& q);

struct CutNormResult {
  double value = 0.0;
  // 0/1 label per cell of the r[k-1] grid for each of u_1..u_k
  std::vector<std::vector<int>> witness;
};

// Lower bound on the cut norm over symmetric 0/1 step functions on W's grid.
CutNormResult cut_norm_estimate(const StepHypergraphon& w, std::size_t trials = 64, std::uint64_t seed = 0);

// |integral of W * prod_i u_i(x_{r([k] minus i)})| for 0/1 labels on the r[k-1] grid.
double cut_objective(const StepHypergraphon& w, const std::vector<std::vector<int>>& u);

struct RegularityReport {
  bool holds = true;
  double estimate = 0.0;
  CutNormResult witness;
};

RegularityReport weak_regular_check(const StepHypergraphon& w, const SymmetricGridPartition& q, double eps,
                                    std::size_t trials = 64, std::uint64_t seed = 0);

// Orbits of grid cells under permutations of [k] as a probability space.
class GridOrbitSpace final : public FiniteSpace {
 public:
  explicit GridOrbitSpace(Grid grid);

  const Grid& grid() const { return grid_; }
  std::size_t class_count() const override { return reps_.size(); }
  const std::vector<double>& masses() const override { return masses_; }
  std::vector<int> representative(std::size_t c) const override;
  std::size_t class_of(std::span<const int> point) const override;
  std::size_t class_of_code(std::size_t code) const { return orbit_[code]; }
  std::uint64_t class_size(std::size_t c) const override { return sizes_[c]; }
  std::string describe() const override;
  bool equals(const FiniteSpace& other) const override;
  int coordinate_range() const override;

 private:
  Grid grid_;
  std::vector<std::size_t> orbit_;  // cell code -> class
  std::vector<std::size_t> reps_;   // class -> canonical cell code
  std::vector<std::uint64_t> sizes_;
  std::vector<double> masses_;
};

// Discretized W-operator on the grid over r[k-1] with vertex resolution n.
MultiPOperator as_multi_op(const StepHypergraphon& w, int n, std::string id = "hypergraphon");

// Indicator of part `part` of a partition, on the space of an as_multi_op operator.
TestFunction part_indicator(const MultiPOperator& op, const SymmetricGridPartition& q, int part);

}  // namespace hyperlim
