#pragma once

#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "hyperlim/spaces.hpp"
#include "hyperlim/tensors.hpp"

namespace hyperlim {

// Multi-linear map from arity() test functions on space() to one function.
class MultiPOperator {
 public:
  using Evaluator = std::function<TestFunction(std::span<const TestFunction>)>;

  MultiPOperator(SpacePtr space, int arity, Evaluator evaluator, std::string id = "operator");

  const FiniteSpace& space() const { return *space_; }
  const SpacePtr& space_ptr() const { return space_; }
  int arity() const { return arity_; }
  // r, the order of the operator (arity + 1)
  int order() const { return arity_ + 1; }
  const std::string& id() const { return id_; }

  TestFunction apply(std::span<const TestFunction> fns) const;
  TestFunction apply(std::initializer_list<TestFunction> fns) const {
    return apply(std::span<const TestFunction>(fns.begin(), fns.size()));
  }

 private:
  SpacePtr space_;
  int arity_;
  Evaluator eval_;
  std::string id_;
};

// s-action of t on ([n]^s, Sym, uniform), or on `space` when given.
MultiPOperator from_tensor_action(const SymmetricTensor& t, int s, SpacePtr space = nullptr,
                                  std::string id = "tensor");
MultiPOperator from_tensor_action(const NormalizedTensor& t, int s, SpacePtr space = nullptr,
                                  std::string id = "tensor");

// E[A[v_1..v_{r-1}] v_r]
double pairing(const MultiPOperator& a, std::span<const TestFunction> fns, const TestFunction& last);

// Sampled lower bound on the (p_1..p_{r-1}, q) operator norm. Use infinity for
// the sup norm.
double norm_estimate(const MultiPOperator& a, std::span<const double> p, double q, std::size_t trials,
                     std::uint64_t seed);

struct Property {
  enum class Kind { symmetric, positive, positivity_preserving, c_regular };
  Kind kind;
  double c = 0.0;

  static Property symmetric() { return {Kind::symmetric, 0.0}; }
  static Property positive() { return {Kind::positive, 0.0}; }
  static Property positivity_preserving() { return {Kind::positivity_preserving, 0.0}; }
  static Property c_regular(double c) { return {Kind::c_regular, c}; }
};

struct PropertyReport {
  bool holds = true;
  double max_violation = 0.0;
  std::string witness;  // description of the first violating sample
};

PropertyReport check_property(const MultiPOperator& a, Property property, std::size_t trials, std::uint64_t seed,
                              double tol);

}  // namespace hyperlim
