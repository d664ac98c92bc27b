#include "hyperlim/profiles.hpp"

#include <cmath>
#include <stdexcept>

#include "hyperlim/rng.hpp"

namespace hyperlim {

MeasureSet ProfileSample::measure_set() const {
  MeasureSet out(order * k);
  for (const auto& mu : laws) out.insert(mu);
  return out;
}

std::vector<FunctionTuple> sample_tuples(const MultiPOperator& a, int k, const SamplerSpec& spec) {
  if (k < 1) throw std::invalid_argument("sample_tuples: k must be >= 1");
  if (spec.catalog.empty() || spec.count < 1) throw std::invalid_argument("sample_tuples: empty sampler");
  const std::size_t per = static_cast<std::size_t>(k) * static_cast<std::size_t>(a.arity());
  std::vector<FunctionTuple> out;
  out.reserve(spec.count);
  for (std::size_t t = 0; t < spec.count; ++t) {
    const auto& entry = spec.catalog[t % spec.catalog.size()];
    out.push_back({sample_test_functions(a.space_ptr(), entry, per, derive_seed(spec.seed, t)), entry.name()});
  }
  return out;
}

DiscreteMeasure profile_law(const MultiPOperator& a, int k, const FunctionTuple& tuple) {
  const int g = a.arity();
  if (static_cast<int>(tuple.functions.size()) != k * g)
    throw std::invalid_argument("profile: tuple must hold k*(r-1) functions");
  for (const auto& f : tuple.functions)
    if (!f.clamped()) throw std::invalid_argument("profile: functions must be clamped to [-1,1]");
  std::vector<TestFunction> images;
  images.reserve(k);
  for (int j = 0; j < k; ++j)
    images.push_back(a.apply(std::span<const TestFunction>(tuple.functions.data() + j * g, g)));
  std::vector<const std::vector<double>*> cols;
  for (int j = 0; j < k; ++j) {
    for (int i = 0; i < g; ++i) cols.push_back(&tuple.functions[j * g + i].values());
    cols.push_back(&images[j].values());
  }
  return law_from_columns(a.space().masses(), cols);
}

ProfileSample k_profile(const MultiPOperator& a, int k, std::vector<FunctionTuple> tuples) {
  if (k < 1) throw std::invalid_argument("k_profile: k must be >= 1");
  if (tuples.empty()) throw std::invalid_argument("k_profile: no tuples");
  std::vector<std::optional<DiscreteMeasure>> laws(tuples.size());
  std::vector<std::string> errors(tuples.size());
#pragma omp parallel for schedule(dynamic)
  for (long long j = 0; j < static_cast<long long>(tuples.size()); ++j) {
    try {
      laws[j] = profile_law(a, k, tuples[j]);
    } catch (const std::exception& e) {
      errors[j] = e.what();
    }
  }
  for (const auto& e : errors)
    if (!e.empty()) throw std::invalid_argument(e);
  ProfileSample out{a.id(), k, a.order(), std::move(tuples), {}};
  out.laws.reserve(laws.size());
  for (auto& l : laws) out.laws.push_back(std::move(*l));
  return out;
}

ProfileSample k_profile(const MultiPOperator& a, int k, const SamplerSpec& spec) {
  return k_profile(a, k, sample_tuples(a, k, spec));
}

double profile_hausdorff(const MultiPOperator& a, const MultiPOperator& b, int k, const SamplerSpec& spec_a,
                         const SamplerSpec& spec_b, double tol) {
  if (a.order() != b.order()) throw std::invalid_argument("profile_hausdorff: operators have different orders");
  if (spec_a.count != spec_b.count) throw std::invalid_argument("profile_hausdorff: sampler budgets differ");
  auto pa = k_profile(a, k, spec_a);
  auto pb = k_profile(b, k, spec_b);
  return hausdorff(pa.measure_set(), pb.measure_set(), tol);
}

double profile_hausdorff(const MultiPOperator& a, const MultiPOperator& b, int k, const SamplerSpec& spec,
                         double tol) {
  return profile_hausdorff(a, b, k, spec, spec, tol);
}

DmEstimate dM_estimate(const MultiPOperator& a, const MultiPOperator& b, int k_max, const SamplerSpec& spec_a,
                       const SamplerSpec& spec_b, double tol) {
  if (k_max < 1) throw std::invalid_argument("dM_estimate: k_max must be >= 1");
  DmEstimate out;
  for (int k = 1; k <= k_max; ++k) {
    double d = profile_hausdorff(a, b, k, spec_a, spec_b, tol);
    out.hausdorff_by_k.push_back(d);
    out.value += std::ldexp(d, -k);
  }
  out.truncation = std::ldexp(1.0, -k_max);
  return out;
}

DmEstimate dM_estimate(const MultiPOperator& a, const MultiPOperator& b, int k_max, const SamplerSpec& spec,
                       double tol) {
  return dM_estimate(a, b, k_max, spec, spec, tol);
}

}  // namespace hyperlim
