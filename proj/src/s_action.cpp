#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "hyperlim/tensors.hpp"

namespace hyperlim {

namespace {

// Fixed block count keeps summation order independent of the thread count.
constexpr std::size_t kBlocks = 64;

struct ActionShape {
  int r, s, n;
  std::vector<std::vector<int>> assignments;  // permutations of the r-1 function slots
  std::vector<std::vector<int>> windows;      // positions read by each slot
};

ActionShape make_shape(const SymmetricTensor& t, int s, std::span<const SymmetricTensor> fns) {
  const int r = t.order(), n = t.dimension();
  if (r < 2) throw std::invalid_argument("s_action: tensor order must be at least 2");
  if (s < 1 || s > r - 1) throw std::invalid_argument("s_action: s must lie in [1, r-1]");
  if (static_cast<int>(fns.size()) != r - 1) throw std::invalid_argument("s_action: expected r-1 functions");
  for (const auto& f : fns)
    if (f.order() != s || f.dimension() != n) throw std::invalid_argument("s_action: function shape mismatch");
  ActionShape shape{r, s, n, {}, {}};
  std::vector<int> sigma(r - 1);
  std::iota(sigma.begin(), sigma.end(), 0);
  do shape.assignments.push_back(sigma);
  while (std::next_permutation(sigma.begin(), sigma.end()));
  // The index sequence is (i_1..i_s, j_1..j_{r-s}); slot p reads the cyclic
  // window of length s starting right after position p.
  for (int p = 0; p < r - 1; ++p) {
    std::vector<int> w(s);
    for (int q = 0; q < s; ++q) w[q] = (p + 1 + q) % r;
    shape.windows.push_back(std::move(w));
  }
  return shape;
}

}  // namespace

SymmetricTensor s_action_apply(const SymmetricTensor& t, int s, std::span<const SymmetricTensor> fns) {
  const ActionShape shape = make_shape(t, s, fns);
  const int r = shape.r, n = shape.n;
  const MultisetIndexer out_index(n, s);
  const std::size_t out_size = out_index.size();
  std::vector<std::vector<double>> fv;
  fv.reserve(fns.size());
  for (const auto& f : fns) fv.push_back(f.canonical_values());

  const NonzeroList nz = t.nonzeros();
  const std::size_t m = nz.size();
  const std::size_t blocks = std::max<std::size_t>(1, std::min(kBlocks, m));
  std::vector<std::vector<double>> partial(blocks);
  const double inv_assign = 1.0 / static_cast<double>(shape.assignments.size());

#pragma omp parallel for schedule(dynamic)
  for (long long b = 0; b < static_cast<long long>(blocks); ++b) {
    auto& acc = partial[b];
    acc.assign(out_size, 0.0);
    const std::size_t lo = m * static_cast<std::size_t>(b) / blocks;
    const std::size_t hi = m * static_cast<std::size_t>(b + 1) / blocks;
    std::vector<int> c(r), win(s), out(s);
    std::vector<std::size_t> wrank(r - 1);
    for (std::size_t e = lo; e < hi; ++e) {
      std::copy_n(nz.indices.begin() + static_cast<std::ptrdiff_t>(e * r), r, c.begin());
      const double v = nz.values[e];
      do {
        for (int p = 0; p < r - 1; ++p) {
          for (int q = 0; q < s; ++q) win[q] = c[shape.windows[p][q]];
          sort_small(win);
          wrank[p] = out_index.rank(win);
        }
        double avg = 0.0;
        for (const auto& sigma : shape.assignments) {
          double prod = 1.0;
          for (int p = 0; p < r - 1 && prod != 0.0; ++p) prod *= fv[sigma[p]][wrank[p]];
          avg += prod;
        }
        if (avg == 0.0) continue;
        std::copy_n(c.begin(), s, out.begin());
        sort_small(out);
        acc[out_index.rank(out)] += v * avg * inv_assign;
      } while (std::next_permutation(c.begin(), c.end()));
    }
  }

  std::vector<double> values(out_size, 0.0);
#pragma omp parallel for schedule(static)
  for (long long k = 0; k < static_cast<long long>(out_size); ++k) {
    double sum = 0.0;
    for (std::size_t b = 0; b < blocks; ++b)
      if (!partial[b].empty()) sum += partial[b][k];
    if (sum != 0.0) {
      auto tuple = out_index.unrank(static_cast<std::size_t>(k));
      sum /= static_cast<double>(MultisetIndexer::orderings(tuple));
    }
    values[k] = sum;
  }
  return SymmetricTensor::from_canonical_values(s, n, std::move(values));
}

SymmetricTensor s_action_apply(const NormalizedTensor& t, int s, std::span<const SymmetricTensor> fns) {
  SymmetricTensor raw = s_action_apply(t.base(), s, fns);
  if (!t.has_output_divisor()) return t.scale() == 1.0 ? raw : raw.scaled(t.scale());
  if (s != t.order() - 1) throw std::invalid_argument("degree normalization is defined for s = r-1 only");
  auto values = raw.canonical_values();
  const auto& d = t.output_divisor();
  for (std::size_t k = 0; k < values.size(); ++k) values[k] = d[k] == 0.0 ? 0.0 : values[k] * t.scale() / d[k];
  return SymmetricTensor::from_canonical_values(s, t.dimension(), std::move(values));
}

}  // namespace hyperlim
