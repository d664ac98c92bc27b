#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hyperlim/hypergraph.hpp"
#include "hyperlim/measures.hpp"
#include "hyperlim/multiset.hpp"

namespace hyperlim {

// Finite probability space whose points are symmetry classes. Functions on it
// are value vectors indexed by class.
class FiniteSpace {
 public:
  virtual ~FiniteSpace() = default;
  virtual std::size_t class_count() const = 0;
  virtual const std::vector<double>& masses() const = 0;
  // Canonical member of a class, as integer coordinates.
  virtual std::vector<int> representative(std::size_t c) const = 0;
  // Class of any member point; throws if the point is outside the space.
  virtual std::size_t class_of(std::span<const int> point) const = 0;
  // Number of points in the class.
  virtual std::uint64_t class_size(std::size_t c) const = 0;
  virtual std::string describe() const = 0;
  virtual bool equals(const FiniteSpace& other) const = 0;
  // Largest coordinate value + 1 over all representatives.
  virtual int coordinate_range() const = 0;
};

using SpacePtr = std::shared_ptr<const FiniteSpace>;

bool same_space(const FiniteSpace& a, const FiniteSpace& b);

enum class MeasureFamily { uniform, diagonal_weighted, degree_weighted };

std::string to_string(MeasureFamily f);
MeasureFamily measure_family_from_string(const std::string& name);

class DegenerateMeasureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// ([n]^s, Sym, P) with classes = sorted s-tuples in lexicographic order.
class FiniteSymmetricSpace final : public FiniteSpace {
 public:
  FiniteSymmetricSpace(int n, int s, MeasureFamily family, const Hypergraph* h = nullptr);

  int n() const { return n_; }
  int s() const { return s_; }
  MeasureFamily family() const { return family_; }
  const MultisetIndexer& indexer() const { return index_; }

  std::size_t class_count() const override { return index_.size(); }
  const std::vector<double>& masses() const override { return masses_; }
  std::vector<int> representative(std::size_t c) const override { return index_.unrank(c); }
  std::size_t class_of(std::span<const int> point) const override;
  std::uint64_t class_size(std::size_t c) const override;
  std::string describe() const override;
  bool equals(const FiniteSpace& other) const override;
  int coordinate_range() const override { return n_; }

 private:
  int n_, s_;
  MeasureFamily family_;
  MultisetIndexer index_;
  std::vector<double> masses_;
};

std::shared_ptr<const FiniteSymmetricSpace> build_space(int n, int s, MeasureFamily family,
                                                        const Hypergraph* h = nullptr);

class TestFunction {
 public:
  TestFunction(SpacePtr space, std::vector<double> values, bool clamped = false);
  static TestFunction constant(SpacePtr space, double value);
  // Indicator of the classes containing the listed points.
  static TestFunction indicator(SpacePtr space, const std::vector<std::vector<int>>& points);

  const FiniteSpace& space() const { return *space_; }
  const SpacePtr& space_ptr() const { return space_; }
  const std::vector<double>& values() const { return values_; }
  double operator[](std::size_t c) const { return values_[c]; }
  double at(std::span<const int> point) const { return values_[space_->class_of(point)]; }
  bool clamped() const { return clamped_; }
  // True if every value lies in [-1, 1].
  bool bounded() const;
  TestFunction as_clamped() const;

  // Pointwise ops; results are unclamped.
  TestFunction operator+(const TestFunction& o) const;
  TestFunction operator*(double a) const;

 private:
  SpacePtr space_;
  std::vector<double> values_;
  bool clamped_;
};

double expectation(const TestFunction& f);
// (sum_c P(c) |f|^p)^{1/p}; p = infinity gives the max over classes of positive mass.
double lp_norm(const TestFunction& f, double p);

// Relabel vertices: result(perm[i_1], ..., perm[i_s]) = f(i_1, ..., i_s).
TestFunction relabeled(const TestFunction& f, std::span<const int> perm,
                       const std::shared_ptr<const FiniteSymmetricSpace>& target);

struct CatalogEntry {
  enum class Kind { one, uniform, rademacher, random_subset, indicator, rank_one };
  Kind kind = Kind::one;
  std::vector<std::vector<int>> support;  // points of the user indicator
  std::string label;                      // optional name for the user indicator

  static CatalogEntry of(Kind k) { return {k, {}, {}}; }
  static CatalogEntry user_indicator(std::vector<std::vector<int>> support, std::string label = "indicator") {
    return {Kind::indicator, std::move(support), std::move(label)};
  }
  std::string name() const;
};

// Parses one, uniform, rademacher, random_subset, rank_one; others throw.
CatalogEntry catalog_entry_from_string(const std::string& name);

std::vector<TestFunction> sample_test_functions(const SpacePtr& space, const CatalogEntry& entry, std::size_t count,
                                                std::uint64_t seed);

// Law of (fns_1(w), ..., fns_d(w)) under the space measure.
DiscreteMeasure exact_law(const FiniteSpace& space, std::span<const TestFunction> fns);

}  // namespace hyperlim
