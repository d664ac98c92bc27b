#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hyperlim/measures.hpp"
#include "hyperlim/operators.hpp"

namespace hyperlim {

// Tuple t draws all of its k(r-1) functions from catalog[t % catalog.size()].
struct SamplerSpec {
  std::vector<CatalogEntry> catalog;
  std::size_t count = 64;
  std::uint64_t seed = 0;
};

struct FunctionTuple {
  std::vector<TestFunction> functions;  // k groups of r-1
  std::string label;
};

struct ProfileSample {
  std::string operator_id;
  int k = 1;
  int order = 2;
  std::vector<FunctionTuple> tuples;
  std::vector<DiscreteMeasure> laws;  // laws[j] belongs to tuples[j]

  MeasureSet measure_set() const;
};

std::vector<FunctionTuple> sample_tuples(const MultiPOperator& a, int k, const SamplerSpec& spec);

ProfileSample k_profile(const MultiPOperator& a, int k, std::vector<FunctionTuple> tuples);
ProfileSample k_profile(const MultiPOperator& a, int k, const SamplerSpec& spec);

// Law of (f_1^1..f_{r-1}^1, A[f^1], ..., f_1^k..f_{r-1}^k, A[f^k]).
DiscreteMeasure profile_law(const MultiPOperator& a, int k, const FunctionTuple& tuple);

double profile_hausdorff(const MultiPOperator& a, const MultiPOperator& b, int k, const SamplerSpec& spec_a,
                         const SamplerSpec& spec_b, double tol = 1e-9);
double profile_hausdorff(const MultiPOperator& a, const MultiPOperator& b, int k, const SamplerSpec& spec,
                         double tol = 1e-9);

struct DmEstimate {
  double value = 0.0;       // sum over k <= k_max of 2^{-k} d_H
  double truncation = 0.0;  // 2^{-k_max}
  std::vector<double> hausdorff_by_k;
};

DmEstimate dM_estimate(const MultiPOperator& a, const MultiPOperator& b, int k_max, const SamplerSpec& spec_a,
                       const SamplerSpec& spec_b, double tol = 1e-9);
DmEstimate dM_estimate(const MultiPOperator& a, const MultiPOperator& b, int k_max, const SamplerSpec& spec,
                       double tol = 1e-9);

// Lexicographically least permutation psi with t(i..) = u(psi(i)..), if any.
std::optional<std::vector<int>> tensor_isomorphism_oracle(const SymmetricTensor& t, const SymmetricTensor& u);

}  // namespace hyperlim
