#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace hyperlim {

inline constexpr double kMergeThreshold = 1e-12;

struct Atom {
  std::vector<double> point;
  double mass;
};

// Finitely supported probability measure on R^d. Atoms are kept sorted
// lexicographically by point, with near-equal points merged.
class DiscreteMeasure {
 public:
  DiscreteMeasure(int dimension, std::vector<Atom> atoms);

  static DiscreteMeasure dirac(std::vector<double> point);

  int dimension() const { return dimension_; }
  const std::vector<Atom>& atoms() const { return atoms_; }
  std::size_t size() const { return atoms_.size(); }

  // Pushforward onto the listed coordinates.
  DiscreteMeasure marginal(std::span<const int> coords) const;

  friend bool operator==(const DiscreteMeasure& a, const DiscreteMeasure& b);

 private:
  int dimension_;
  std::vector<Atom> atoms_;
};

// Atomwise comparison with a tolerance on points and masses.
bool approx_equal(const DiscreteMeasure& a, const DiscreteMeasure& b, double tol);

class MeasureSet {
 public:
  explicit MeasureSet(int dimension) : dimension_(dimension) {}
  MeasureSet(int dimension, std::vector<DiscreteMeasure> members);

  // Appends unless an identical measure is already present; returns true if added.
  bool insert(DiscreteMeasure mu);

  int dimension() const { return dimension_; }
  const std::vector<DiscreteMeasure>& members() const { return members_; }
  std::size_t size() const { return members_.size(); }
  bool empty() const { return members_.empty(); }

 private:
  int dimension_;
  std::vector<DiscreteMeasure> members_;
};

// Law of w -> (columns[0][w], ..., columns[d-1][w]) under the class masses.
DiscreteMeasure law_from_columns(std::span<const double> masses,
                                 std::span<const std::vector<double>* const> columns);

double tau(const DiscreteMeasure& mu);

// Levy-Prokhorov distance. `tol` bounds the additive error; the returned value
// is exact up to floating rounding (see lp_distance in measures.cpp).
double lp_distance(const DiscreteMeasure& mu, const DiscreteMeasure& nu, double tol = 1e-9);

// tau(X - Y)^{1/2} k^{3/4} for a joint law of (X, Y) on R^{2k}.
double lp_coupling_bound(const DiscreteMeasure& joint);

double hausdorff(const MeasureSet& a, const MeasureSet& b, double tol = 1e-9);

// Maximum mass that can be moved from mu to nu using only atom pairs at
// Euclidean distance strictly below eps.
double coupled_mass_below(const DiscreteMeasure& mu, const DiscreteMeasure& nu, double eps);

double euclidean(std::span<const double> x, std::span<const double> y);

}  // namespace hyperlim
