#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "hyperlim/tensors.hpp"

namespace hyperlim::reference {

SymmetricTensor s_action_apply(const SymmetricTensor& t, int s, std::span<const SymmetricTensor> fns) {
  const int r = t.order(), n = t.dimension();
  if (r < 2 || s < 1 || s > r - 1) throw std::invalid_argument("s_action: s must lie in [1, r-1]");
  if (static_cast<int>(fns.size()) != r - 1) throw std::invalid_argument("s_action: expected r-1 functions");
  for (const auto& f : fns)
    if (f.order() != s || f.dimension() != n) throw std::invalid_argument("s_action: function shape mismatch");

  std::vector<int> sigma(r - 1);
  std::iota(sigma.begin(), sigma.end(), 0);
  std::vector<std::vector<int>> assignments;
  do assignments.push_back(sigma);
  while (std::next_permutation(sigma.begin(), sigma.end()));

  std::size_t outer = 1, inner = 1;
  for (int a = 0; a < s; ++a) outer *= static_cast<std::size_t>(n);
  for (int a = s; a < r; ++a) inner *= static_cast<std::size_t>(n);

  // raw[I] for every ordered output tuple I
  std::vector<double> raw(outer, 0.0);
  std::vector<int> c(r), win(s);
  for (std::size_t I = 0; I < outer; ++I) {
    std::size_t x = I;
    for (int a = s - 1; a >= 0; --a) {
      c[a] = static_cast<int>(x % n);
      x /= n;
    }
    double total = 0.0;
    for (std::size_t J = 0; J < inner; ++J) {
      std::size_t y = J;
      for (int a = r - 1; a >= s; --a) {
        c[a] = static_cast<int>(y % n);
        y /= n;
      }
      double tv = t.at(c);
      if (tv == 0.0) continue;
      double avg = 0.0;
      for (const auto& sg : assignments) {
        double prod = 1.0;
        for (int p = 0; p < r - 1; ++p) {
          for (int q = 0; q < s; ++q) win[q] = c[(p + 1 + q) % r];
          prod *= fns[sg[p]].at(win);
        }
        avg += prod;
      }
      total += tv * avg / static_cast<double>(assignments.size());
    }
    raw[I] = total;
  }

  SymmetricTensor out(s, n, Backend::dense);
  std::vector<int> canon(s, 0), perm(s), placed(s);
  do {
    std::iota(perm.begin(), perm.end(), 0);
    double sum = 0.0;
    do {
      std::size_t off = 0;
      for (int a = 0; a < s; ++a) off = off * n + static_cast<std::size_t>(canon[perm[a]]);
      sum += raw[off];
    } while (std::next_permutation(perm.begin(), perm.end()));
    out.set(canon, sum / static_cast<double>(factorial(s)));
  } while (out.indexer().next(canon));
  return out;
}

}  // namespace hyperlim::reference
