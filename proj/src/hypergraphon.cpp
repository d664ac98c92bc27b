#include "hyperlim/hypergraphon.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "hyperlim/multiset.hpp"
#include "hyperlim/rng.hpp"

namespace hyperlim {

namespace {

constexpr int kMaxOrder = 6;
constexpr double kSymmetryTol = 1e-12;
constexpr std::size_t kMaxCells = std::size_t{1} << 28;
constexpr std::size_t kBlocks = 64;
constexpr std::size_t kExhaustiveOrbits = 10;

std::vector<int> elements(std::uint32_t mask) {
  std::vector<int> out;
  for (int b = 0; mask; ++b, mask >>= 1)
    if (mask & 1u) out.push_back(b);
  return out;
}

std::vector<std::vector<int>> all_permutations(int k) {
  std::vector<int> p(k);
  std::iota(p.begin(), p.end(), 0);
  std::vector<std::vector<int>> out;
  do out.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  return out;
}

// Adjacent transpositions generate the symmetric group.
std::vector<std::vector<int>> transpositions(int k) {
  std::vector<std::vector<int>> out;
  for (int a = 0; a + 1 < k; ++a) {
    std::vector<int> p(k);
    std::iota(p.begin(), p.end(), 0);
    std::swap(p[a], p[a + 1]);
    out.push_back(std::move(p));
  }
  return out;
}

// Order-preserving injection [k-1] -> [k] minus {skip}, applied to a mask.
std::uint32_t skip_map(std::uint32_t mask, int skip) {
  std::uint32_t low = mask & ((1u << skip) - 1u);
  std::uint32_t high = mask >> skip;
  return low | (high << (skip + 1));
}

std::vector<int> lcm_levels(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> out(a.size());
  for (std::size_t l = 0; l < a.size(); ++l) out[l] = std::lcm(a[l], b[l]);
  return out;
}

}  // namespace

// ---------------------------------------------------------------- coordinates

CoordinateIndex::CoordinateIndex(int k, int max_size) : k_(k), max_size_(max_size) {
  if (k < 1 || k > kMaxOrder + 1) throw std::invalid_argument("CoordinateIndex: order out of range");
  if (max_size < 1 || max_size > k) throw std::invalid_argument("CoordinateIndex: subset size out of range");
  for (std::uint32_t m = 1; m < (1u << k); ++m)
    if (std::popcount(m) <= max_size) masks_.push_back(m);
  std::sort(masks_.begin(), masks_.end(), [](std::uint32_t a, std::uint32_t b) {
    int pa = std::popcount(a), pb = std::popcount(b);
    if (pa != pb) return pa < pb;
    return elements(a) < elements(b);
  });
  position_.assign(std::size_t{1} << k, -1);
  for (std::size_t i = 0; i < masks_.size(); ++i) position_[masks_[i]] = static_cast<int>(i);
}

int CoordinateIndex::level(std::size_t i) const { return std::popcount(masks_[i]); }

std::size_t CoordinateIndex::position(std::uint32_t mask) const {
  if (mask >= position_.size() || position_[mask] < 0) throw std::out_of_range("CoordinateIndex: subset not indexed");
  return static_cast<std::size_t>(position_[mask]);
}

std::size_t CoordinateIndex::permuted(std::size_t i, std::span<const int> sigma) const {
  if (static_cast<int>(sigma.size()) != k_) throw std::invalid_argument("CoordinateIndex: permutation size");
  std::uint32_t out = 0;
  for (int b : elements(masks_[i])) out |= 1u << sigma[b];
  return position(out);
}

// ---------------------------------------------------------------- grid

Grid::Grid(CoordinateIndex coords, std::vector<int> resolution_by_level)
    : coords_(std::move(coords)), res_by_level_(std::move(resolution_by_level)) {
  if (static_cast<int>(res_by_level_.size()) != coords_.max_size())
    throw std::invalid_argument("Grid: need one resolution per subset size");
  for (int r : res_by_level_)
    if (r < 1) throw std::invalid_argument("Grid: resolution must be positive");
  const std::size_t d = coords_.size();
  res_.resize(d);
  stride_.resize(d);
  for (std::size_t c = 0; c < d; ++c) res_[c] = res_by_level_[coords_.level(c) - 1];
  for (std::size_t c = d; c-- > 0;) {
    stride_[c] = cells_;
    if (cells_ > kMaxCells / static_cast<std::size_t>(res_[c])) throw std::invalid_argument("Grid: too many cells");
    cells_ *= static_cast<std::size_t>(res_[c]);
  }
  for (auto& sigma : all_permutations(coords_.k())) {
    std::vector<int> map(d);
    for (std::size_t c = 0; c < d; ++c) map[c] = static_cast<int>(coords_.permuted(c, sigma));
    perms_.push_back(std::move(map));
  }
}

std::size_t Grid::encode(std::span<const int> cell) const {
  if (cell.size() != res_.size()) throw std::invalid_argument("Grid: cell has wrong length");
  std::size_t code = 0;
  for (std::size_t c = 0; c < res_.size(); ++c) {
    if (cell[c] < 0 || cell[c] >= res_[c]) throw std::out_of_range("Grid: cell index out of range");
    code += static_cast<std::size_t>(cell[c]) * stride_[c];
  }
  return code;
}

void Grid::decode(std::size_t code, std::span<int> cell) const {
  for (std::size_t c = 0; c < res_.size(); ++c) {
    cell[c] = static_cast<int>(code / stride_[c]);
    code %= stride_[c];
  }
}

std::size_t Grid::permute(std::size_t code, std::span<const int> sigma) const {
  std::vector<int> cell(res_.size());
  decode(code, cell);
  std::size_t out = 0;
  for (std::size_t c = 0; c < res_.size(); ++c)
    out += static_cast<std::size_t>(cell[c]) * stride_[coords_.permuted(c, sigma)];
  return out;
}

std::size_t Grid::canonical(std::size_t code) const {
  std::vector<int> cell(res_.size());
  decode(code, cell);
  std::size_t best = code;
  for (const auto& map : perms_) {
    std::size_t out = 0;
    for (std::size_t c = 0; c < res_.size(); ++c) out += static_cast<std::size_t>(cell[c]) * stride_[map[c]];
    best = std::min(best, out);
  }
  return best;
}

namespace {

template <class Values, class Differ>
void check_symmetric(const Grid& g, const Values& values, Differ differ, const char* what) {
  const auto gens = transpositions(g.coords().k());
  std::vector<int> cell(g.coords().size());
  for (std::size_t code = 0; code < g.cell_count(); ++code)
    for (const auto& sigma : gens) {
      std::size_t other = g.permute(code, sigma);
      if (differ(values[code], values[other])) throw std::invalid_argument(std::string(what) + ": not symmetric");
    }
}

}  // namespace

// ---------------------------------------------------------------- step functions

StepHypergraphon::StepHypergraphon(int k, std::vector<int> resolution_by_level, std::vector<double> values,
                                   bool signed_values)
    : k_(k),
      grid_((k < 2 || k > kMaxOrder) ? throw std::invalid_argument("StepHypergraphon: order must be in [2, 6]")
                                     : CoordinateIndex::proper(k),
            std::move(resolution_by_level)),
      values_(std::move(values)),
      signed_(signed_values) {
  if (values_.size() != grid_.cell_count()) throw std::invalid_argument("StepHypergraphon: value count mismatch");
  const double lo = signed_ ? -1.0 : 0.0;
  for (double v : values_)
    if (!std::isfinite(v) || v < lo || v > 1.0) throw std::invalid_argument("StepHypergraphon: value out of range");
  check_symmetric(grid_, values_, [](double a, double b) { return std::abs(a - b) > kSymmetryTol; },
                  "StepHypergraphon");
}

StepHypergraphon StepHypergraphon::from_function(int k, std::vector<int> resolution_by_level,
                                                 const std::function<double(std::span<const int>)>& value,
                                                 bool signed_values) {
  if (k < 2 || k > kMaxOrder) throw std::invalid_argument("StepHypergraphon: order must be in [2, 6]");
  Grid g(CoordinateIndex::proper(k), resolution_by_level);
  std::vector<double> vals(g.cell_count());
  std::vector<int> cell(g.coords().size());
  for (std::size_t code = 0; code < vals.size(); ++code) {
    g.decode(code, cell);
    vals[code] = value(cell);
  }
  return StepHypergraphon(k, std::move(resolution_by_level), std::move(vals), signed_values);
}

StepHypergraphon StepHypergraphon::constant(int k, double value) {
  if (k < 2 || k > kMaxOrder) throw std::invalid_argument("StepHypergraphon: order must be in [2, 6]");
  return StepHypergraphon(k, std::vector<int>(k - 1, 1), {value}, value < 0.0);
}

double StepHypergraphon::mean() const {
  long double s = 0.0L;
  for (double v : values_) s += v;
  return static_cast<double>(s / static_cast<long double>(values_.size()));
}

StepHypergraphon StepHypergraphon::refined(const std::vector<int>& resolution_by_level) const {
  const auto& old = grid_.resolution_by_level();
  if (resolution_by_level.size() != old.size()) throw std::invalid_argument("refined: level count mismatch");
  for (std::size_t l = 0; l < old.size(); ++l)
    if (resolution_by_level[l] < 1 || resolution_by_level[l] % old[l] != 0)
      throw std::invalid_argument("refined: resolution must be a multiple of the current one");
  Grid fine(CoordinateIndex::proper(k_), resolution_by_level);
  std::vector<double> vals(fine.cell_count());
  const std::size_t d = fine.coords().size();
  std::vector<int> cell(d);
  for (std::size_t code = 0; code < vals.size(); ++code) {
    fine.decode(code, cell);
    for (std::size_t c = 0; c < d; ++c) cell[c] /= fine.resolution(c) / grid_.resolution(c);
    vals[code] = values_[grid_.encode(cell)];
  }
  return StepHypergraphon(k_, resolution_by_level, std::move(vals), signed_);
}

StepHypergraphon StepHypergraphon::operator-(const StepHypergraphon& other) const {
  if (other.k_ != k_) throw std::invalid_argument("StepHypergraphon difference: order mismatch");
  auto res = lcm_levels(grid_.resolution_by_level(), other.grid_.resolution_by_level());
  StepHypergraphon a = refined(res), b = other.refined(res);
  std::vector<double> vals(a.values_.size());
  for (std::size_t i = 0; i < vals.size(); ++i) vals[i] = std::clamp(a.values_[i] - b.values_[i], -1.0, 1.0);
  return StepHypergraphon(k_, std::move(res), std::move(vals), true);
}

// ---------------------------------------------------------------- partitions

SymmetricGridPartition::SymmetricGridPartition(int k, std::vector<int> resolution_by_level, std::vector<int> labels)
    : k_(k),
      grid_((k < 2 || k > kMaxOrder) ? throw std::invalid_argument("SymmetricGridPartition: order must be in [2, 6]")
                                     : CoordinateIndex::all(k - 1),
            std::move(resolution_by_level)),
      labels_(std::move(labels)) {
  if (labels_.size() != grid_.cell_count()) throw std::invalid_argument("SymmetricGridPartition: label count mismatch");
  for (int l : labels_) {
    if (l < 0) throw std::invalid_argument("SymmetricGridPartition: negative label");
    q_ = std::max(q_, l + 1);
  }
  check_symmetric(grid_, labels_, [](int a, int b) { return a != b; }, "SymmetricGridPartition");
}

SymmetricGridPartition SymmetricGridPartition::from_function(int k, std::vector<int> resolution_by_level,
                                                             const std::function<int(std::span<const int>)>& label) {
  if (k < 2 || k > kMaxOrder) throw std::invalid_argument("SymmetricGridPartition: order must be in [2, 6]");
  Grid g(CoordinateIndex::all(k - 1), resolution_by_level);
  std::vector<int> labels(g.cell_count());
  std::vector<int> cell(g.coords().size());
  for (std::size_t code = 0; code < labels.size(); ++code) {
    g.decode(code, cell);
    labels[code] = label(cell);
  }
  return SymmetricGridPartition(k, std::move(resolution_by_level), std::move(labels));
}

// ---------------------------------------------------------------- hypergraph embedding

StepHypergraphon from_hypergraph(const Hypergraph& h, int k) {
  if (k < 2 || k > kMaxOrder) throw std::invalid_argument("from_hypergraph: order must be in [2, 6]");
  if (!h.is_uniform(k)) throw std::invalid_argument("from_hypergraph: hypergraph is not k-uniform");
  if (h.vertex_count() < 1) throw std::invalid_argument("from_hypergraph: no vertices");
  std::vector<int> res(k - 1, 1);
  res[0] = h.vertex_count();
  std::vector<int> block(k);
  return StepHypergraphon::from_function(k, res, [&](std::span<const int> cell) {
    // singleton coordinates come first
    std::copy(cell.begin(), cell.begin() + k, block.begin());
    std::sort(block.begin(), block.end());
    if (std::adjacent_find(block.begin(), block.end()) != block.end()) return 0.0;
    return h.contains(block) ? 1.0 : 0.0;
  });
}

// ---------------------------------------------------------------- homomorphism density

MonteCarloEstimate hom_density(const Hypergraph& F, const std::vector<StepHypergraphon>& ws,
                               const std::vector<int>& alpha, std::size_t samples, std::uint64_t seed) {
  if (ws.empty()) throw std::invalid_argument("hom_density: no step functions");
  if (samples == 0) throw std::invalid_argument("hom_density: need at least one sample");
  const int k = ws.front().k();
  for (const auto& w : ws)
    if (w.k() != k) throw std::invalid_argument("hom_density: step functions of different orders");
  if (!F.is_uniform(k)) throw std::invalid_argument("hom_density: F must be k-uniform");
  if (alpha.size() != F.edge_count()) throw std::invalid_argument("hom_density: alpha must cover every edge");
  for (int a : alpha)
    if (a < 0 || a >= static_cast<int>(ws.size())) throw std::invalid_argument("hom_density: alpha out of range");
  const int v = F.vertex_count();
  if (v > 24) throw std::invalid_argument("hom_density: F has too many vertices");

  const CoordinateIndex coords = CoordinateIndex::proper(k);
  const std::size_t d = coords.size();
  const std::size_t m = F.edge_count();
  // uniform variable per used subset of V(F)
  std::vector<int> id_of(std::size_t{1} << v, -1);
  std::vector<int> var(m * d);
  int vars = 0;
  for (std::size_t e = 0; e < m; ++e) {
    auto edge = F.edge(e);
    for (std::size_t c = 0; c < d; ++c) {
      std::uint32_t sub = 0;
      for (int b : elements(coords.mask(c))) sub |= 1u << edge[b];
      if (id_of[sub] < 0) id_of[sub] = vars++;
      var[e * d + c] = id_of[sub];
    }
  }

  const std::size_t batches = std::min<std::size_t>(100, samples);
  std::vector<double> batch_sum(batches, 0.0);
  std::vector<std::size_t> batch_n(batches);
  for (std::size_t b = 0; b < batches; ++b) batch_n[b] = samples / batches + (b < samples % batches ? 1 : 0);

#pragma omp parallel for schedule(dynamic)
  for (std::size_t b = 0; b < batches; ++b) {
    Engine eng = make_engine(seed, b);
    std::vector<double> x(vars);
    std::vector<int> cell(d);
    double acc = 0.0;
    for (std::size_t s = 0; s < batch_n[b]; ++s) {
      for (auto& xi : x) xi = uniform01(eng);
      double prod = 1.0;
      for (std::size_t e = 0; e < m && prod != 0.0; ++e) {
        const auto& w = ws[alpha[e]];
        for (std::size_t c = 0; c < d; ++c) {
          int r = w.grid().resolution(c);
          cell[c] = std::min(r - 1, static_cast<int>(x[var[e * d + c]] * r));
        }
        prod *= w.at_cell(cell);
      }
      acc += prod;
    }
    batch_sum[b] = acc;
  }

  double total = 0.0;
  for (double s : batch_sum) total += s;
  MonteCarloEstimate out;
  out.value = total / static_cast<double>(samples);
  if (batches > 1) {
    double ss = 0.0;
    for (std::size_t b = 0; b < batches; ++b) {
      double mb = batch_sum[b] / static_cast<double>(batch_n[b]);
      ss += (mb - out.value) * (mb - out.value);
    }
    double sd = std::sqrt(ss / static_cast<double>(batches - 1));
    out.stderr_ = sd / std::sqrt(static_cast<double>(batches));
  }
  return out;
}

// ---------------------------------------------------------------- induced cells

namespace {

// For a cell of W's grid, the cell of a grid over r[k-1] seen by slot i
// (coordinates r([k] minus i)), coarsened by the per-level ratio.
class SlotProjector {
 public:
  SlotProjector(const Grid& fine, const Grid& target) : target_(target) {
    const int k = fine.coords().k();
    const std::size_t dt = target.coords().size();
    pos_.assign(static_cast<std::size_t>(k) * dt, 0);
    ratio_.resize(dt);
    for (std::size_t t = 0; t < dt; ++t) {
      int lvl = target.coords().level(t);
      int rf = fine.resolution_by_level()[lvl - 1];
      int rt = target.resolution_by_level()[lvl - 1];
      if (rf % rt != 0) throw std::invalid_argument("partition resolution must divide the step function's");
      ratio_[t] = rf / rt;
      for (int i = 0; i < k; ++i)
        pos_[i * dt + t] = fine.coords().position(skip_map(target.coords().mask(t), i));
    }
  }

  std::size_t project(std::span<const int> fine_cell, int slot, std::span<int> scratch) const {
    const std::size_t dt = ratio_.size();
    for (std::size_t t = 0; t < dt; ++t) scratch[t] = fine_cell[pos_[slot * dt + t]] / ratio_[t];
    return target_.encode(scratch);
  }

  std::size_t target_dim() const { return ratio_.size(); }

 private:
  const Grid& target_;
  std::vector<std::size_t> pos_;
  std::vector<int> ratio_;
};

void check_quotient_args(const StepHypergraphon& w, const SymmetricGridPartition& q) {
  if (w.k() != q.k()) throw std::invalid_argument("quotient: partition and step function orders differ");
  const auto& rw = w.grid().resolution_by_level();
  const auto& rq = q.grid().resolution_by_level();
  for (std::size_t l = 0; l < rw.size(); ++l)
    if (rw[l] % rq[l] != 0) throw std::invalid_argument("quotient: partition resolution must divide W's");
  if (q.parts() < 1) throw std::invalid_argument("quotient: empty partition");
  double cells = std::pow(static_cast<double>(q.parts()), w.k());
  if (cells > 1e7) throw std::invalid_argument("quotient: too many induced cells");
}

// f index of each W cell
std::vector<std::size_t> induced_cells(const StepHypergraphon& w, const SymmetricGridPartition& q) {
  SlotProjector proj(w.grid(), q.grid());
  const std::size_t n = w.grid().cell_count();
  std::vector<std::size_t> out(n);
#pragma omp parallel
  {
    std::vector<int> cell(w.grid().coords().size()), scratch(proj.target_dim());
#pragma omp for schedule(static)
    for (std::size_t code = 0; code < n; ++code) {
      w.grid().decode(code, cell);
      std::size_t f = 0;
      for (int i = 0; i < w.k(); ++i)
        f = f * static_cast<std::size_t>(q.parts()) + static_cast<std::size_t>(q.label(proj.project(cell, i, scratch)));
      out[code] = f;
    }
  }
  return out;
}

}  // namespace

Quotient quotient(const StepHypergraphon& w, const SymmetricGridPartition& q) {
  check_quotient_args(w, q);
  const auto f_of = induced_cells(w, q);
  std::size_t m = 1;
  for (int i = 0; i < w.k(); ++i) m *= static_cast<std::size_t>(q.parts());

  // per-block cell counts and value sums, reduced in block order
  const std::size_t n = f_of.size();
  const std::size_t blocks = std::max<std::size_t>(1, std::min(kBlocks, n));
  std::vector<std::vector<std::size_t>> cnt(blocks, std::vector<std::size_t>(m, 0));
  std::vector<std::vector<double>> sum(blocks, std::vector<double>(m, 0.0));
#pragma omp parallel for schedule(static)
  for (std::size_t b = 0; b < blocks; ++b) {
    const std::size_t lo = n * b / blocks, hi = n * (b + 1) / blocks;
    for (std::size_t c = lo; c < hi; ++c) {
      ++cnt[b][f_of[c]];
      sum[b][f_of[c]] += w.values()[c];
    }
  }
  Quotient out;
  out.k = w.k();
  out.q = q.parts();
  out.volume.assign(m, 0.0);
  out.weight.assign(m, 0.0);
  for (std::size_t f = 0; f < m; ++f) {
    std::size_t c = 0;
    double s = 0.0;
    for (std::size_t b = 0; b < blocks; ++b) {
      c += cnt[b][f];
      s += sum[b][f];
    }
    out.volume[f] = static_cast<double>(c) / static_cast<double>(n);
    out.weight[f] = c ? s / static_cast<double>(c) : 0.0;
  }
  return out;
}

double d1_quotient(const Quotient& a, const Quotient& b) {
  if (a.k != b.k || a.q != b.q || a.volume.size() != b.volume.size() || a.weight.size() != b.weight.size() ||
      a.volume.size() != a.weight.size())
    throw std::invalid_argument("d1_quotient: shape mismatch");
  double s = 0.0;
  for (std::size_t f = 0; f < a.volume.size(); ++f)
    s += std::abs(a.volume[f] - b.volume[f]) + std::abs(a.volume[f] * a.weight[f] - b.volume[f] * b.weight[f]);
  return s;
}

StepHypergraphon stepping(const StepHypergraphon& w, const SymmetricGridPartition& q) {
  const Quotient qt = quotient(w, q);
  const auto f_of = induced_cells(w, q);
  std::vector<double> vals(f_of.size());
  for (std::size_t c = 0; c < vals.size(); ++c) vals[c] = qt.weight[f_of[c]];
  return StepHypergraphon(w.k(), w.grid().resolution_by_level(), std::move(vals), w.signed_values());
}

// ---------------------------------------------------------------- cut norm

namespace {

struct CutProblem {
  const StepHypergraphon& w;
  int k;
  Grid udomain;
  std::vector<std::size_t> orbit_of_code;  // u-domain cell -> orbit
  std::size_t orbits = 0;
  std::vector<std::size_t> slot_orbit;  // [slot * cells + cell]

  explicit CutProblem(const StepHypergraphon& w_)
      : w(w_), k(w_.k()), udomain(CoordinateIndex::all(w_.k() - 1), w_.grid().resolution_by_level()) {
    const std::size_t uc = udomain.cell_count();
    orbit_of_code.resize(uc);
    std::vector<std::size_t> canon(uc);
    for (std::size_t c = 0; c < uc; ++c) canon[c] = udomain.canonical(c);
    std::vector<std::size_t> reps(canon);
    std::sort(reps.begin(), reps.end());
    reps.erase(std::unique(reps.begin(), reps.end()), reps.end());
    orbits = reps.size();
    for (std::size_t c = 0; c < uc; ++c)
      orbit_of_code[c] = static_cast<std::size_t>(std::lower_bound(reps.begin(), reps.end(), canon[c]) - reps.begin());

    SlotProjector proj(w.grid(), udomain);
    const std::size_t n = w.grid().cell_count();
    slot_orbit.resize(static_cast<std::size_t>(k) * n);
    std::vector<int> cell(w.grid().coords().size()), scratch(proj.target_dim());
    for (std::size_t code = 0; code < n; ++code) {
      w.grid().decode(code, cell);
      for (int i = 0; i < k; ++i) slot_orbit[i * n + code] = orbit_of_code[proj.project(cell, i, scratch)];
    }
  }

  double objective(const std::vector<std::vector<char>>& u) const {
    const std::size_t n = w.grid().cell_count();
    double s = 0.0;
    for (std::size_t c = 0; c < n; ++c) {
      bool on = true;
      for (int i = 0; i < k && on; ++i) on = u[i][slot_orbit[i * n + c]];
      if (on) s += w.values()[c];
    }
    return s * w.grid().cell_volume();
  }

  // Best response of slot i for maximizing sign * objective. Returns true if u changed.
  bool best_response(std::vector<std::vector<char>>& u, int i, double sign) const {
    const std::size_t n = w.grid().cell_count();
    std::vector<double> coef(orbits, 0.0);
    for (std::size_t c = 0; c < n; ++c) {
      bool on = true;
      for (int j = 0; j < k && on; ++j)
        if (j != i) on = u[j][slot_orbit[j * n + c]];
      if (on) coef[slot_orbit[i * n + c]] += w.values()[c];
    }
    bool changed = false;
    for (std::size_t o = 0; o < orbits; ++o) {
      double g = sign * coef[o];
      if (g > 0.0 && !u[i][o]) u[i][o] = 1, changed = true;
      if (g < 0.0 && u[i][o]) u[i][o] = 0, changed = true;
    }
    return changed;
  }

  // Coordinate ascent over slots [0, free_slots).
  void ascend(std::vector<std::vector<char>>& u, int free_slots, double sign) const {
    bool changed = true;
    while (changed) {
      changed = false;
      for (int i = 0; i < free_slots; ++i) changed = best_response(u, i, sign) || changed;
    }
  }

  std::vector<std::vector<int>> expand(const std::vector<std::vector<char>>& u) const {
    std::vector<std::vector<int>> out(k, std::vector<int>(udomain.cell_count()));
    for (int i = 0; i < k; ++i)
      for (std::size_t c = 0; c < udomain.cell_count(); ++c) out[i][c] = u[i][orbit_of_code[c]];
    return out;
  }
};

struct Candidate {
  double value = -1.0;
  std::vector<std::vector<char>> u;
};

}  // namespace

CutNormResult cut_norm_estimate(const StepHypergraphon& w, std::size_t trials, std::uint64_t seed) {
  const CutProblem pb(w);
  const int k = pb.k;

  std::vector<Candidate> exhaustive;
  if (pb.orbits <= kExhaustiveOrbits) {
    // enumerate the last slot; the others ascend from all-ones
    const std::size_t labelings = std::size_t{1} << pb.orbits;
    exhaustive.resize(labelings);
#pragma omp parallel for schedule(dynamic)
    for (std::size_t mask = 0; mask < labelings; ++mask) {
      Candidate best;
      for (double sign : {1.0, -1.0}) {
        std::vector<std::vector<char>> u(k, std::vector<char>(pb.orbits, 1));
        for (std::size_t o = 0; o < pb.orbits; ++o) u[k - 1][o] = (mask >> o) & 1u;
        pb.ascend(u, k - 1, sign);
        double v = std::abs(pb.objective(u));
        if (v > best.value) best = {v, u};
      }
      exhaustive[mask] = std::move(best);
    }
  }

  std::vector<Candidate> sampled(trials);
#pragma omp parallel for schedule(dynamic)
  for (std::size_t t = 0; t < trials; ++t) {
    Engine eng = make_engine(seed, t);
    std::vector<std::vector<char>> start(k, std::vector<char>(pb.orbits));
    for (auto& ui : start)
      for (auto& x : ui) x = static_cast<char>(eng() >> 63);
    Candidate best;
    for (double sign : {1.0, -1.0}) {
      auto u = start;
      pb.ascend(u, k, sign);
      double v = std::abs(pb.objective(u));
      if (v > best.value) best = {v, u};
    }
    sampled[t] = std::move(best);
  }

  // all-ones start, so constant functions are always covered
  Candidate best;
  for (double sign : {1.0, -1.0}) {
    std::vector<std::vector<char>> u(k, std::vector<char>(pb.orbits, 1));
    pb.ascend(u, k, sign);
    double v = std::abs(pb.objective(u));
    if (v > best.value) best = {v, u};
  }
  for (auto* list : {&exhaustive, &sampled})
    for (auto& c : *list)
      if (c.value > best.value) best = std::move(c);

  CutNormResult out;
  out.value = best.value;
  out.witness = pb.expand(best.u);
  return out;
}

double cut_objective(const StepHypergraphon& w, const std::vector<std::vector<int>>& u) {
  const CutProblem pb(w);
  if (static_cast<int>(u.size()) != pb.k) throw std::invalid_argument("cut_objective: need k functions");
  SlotProjector proj(w.grid(), pb.udomain);
  const std::size_t n = w.grid().cell_count();
  for (const auto& ui : u)
    if (ui.size() != pb.udomain.cell_count()) throw std::invalid_argument("cut_objective: labeling size mismatch");
  std::vector<int> cell(w.grid().coords().size()), scratch(proj.target_dim());
  double s = 0.0;
  for (std::size_t code = 0; code < n; ++code) {
    w.grid().decode(code, cell);
    double p = w.values()[code];
    for (int i = 0; i < pb.k && p != 0.0; ++i) p *= u[i][proj.project(cell, i, scratch)];
    s += p;
  }
  return std::abs(s * w.grid().cell_volume());
}

RegularityReport weak_regular_check(const StepHypergraphon& w, const SymmetricGridPartition& q, double eps,
                                    std::size_t trials, std::uint64_t seed) {
  if (!(eps >= 0.0)) throw std::invalid_argument("weak_regular_check: eps must be non-negative");
  const StepHypergraphon diff = w - stepping(w, q);
  RegularityReport out;
  out.witness = cut_norm_estimate(diff, trials, seed);
  out.estimate = out.witness.value;
  // slack for rounding in the cell averages
  out.holds = out.estimate <= eps + 1e-12;
  return out;
}

// ---------------------------------------------------------------- operator bridge

GridOrbitSpace::GridOrbitSpace(Grid grid) : grid_(std::move(grid)) {
  const std::size_t n = grid_.cell_count();
  std::vector<std::size_t> canon(n);
  for (std::size_t c = 0; c < n; ++c) canon[c] = grid_.canonical(c);
  reps_ = canon;
  std::sort(reps_.begin(), reps_.end());
  reps_.erase(std::unique(reps_.begin(), reps_.end()), reps_.end());
  orbit_.resize(n);
  sizes_.assign(reps_.size(), 0);
  for (std::size_t c = 0; c < n; ++c) {
    orbit_[c] = static_cast<std::size_t>(std::lower_bound(reps_.begin(), reps_.end(), canon[c]) - reps_.begin());
    ++sizes_[orbit_[c]];
  }
  masses_.resize(reps_.size());
  for (std::size_t o = 0; o < reps_.size(); ++o) masses_[o] = static_cast<double>(sizes_[o]) * grid_.cell_volume();
}

std::vector<int> GridOrbitSpace::representative(std::size_t c) const {
  std::vector<int> cell(grid_.coords().size());
  grid_.decode(reps_.at(c), cell);
  return cell;
}

std::size_t GridOrbitSpace::class_of(std::span<const int> point) const { return orbit_[grid_.encode(point)]; }

std::string GridOrbitSpace::describe() const {
  std::ostringstream os;
  os << "grid-orbits(k=" << grid_.coords().k() << ", res=";
  for (std::size_t l = 0; l < grid_.resolution_by_level().size(); ++l)
    os << (l ? "x" : "") << grid_.resolution_by_level()[l];
  os << ")";
  return os.str();
}

bool GridOrbitSpace::equals(const FiniteSpace& other) const {
  auto* o = dynamic_cast<const GridOrbitSpace*>(&other);
  return o && o->grid_.coords().k() == grid_.coords().k() && o->grid_.coords().max_size() == grid_.coords().max_size() &&
         o->grid_.resolution_by_level() == grid_.resolution_by_level();
}

int GridOrbitSpace::coordinate_range() const {
  return *std::max_element(grid_.resolution_by_level().begin(), grid_.resolution_by_level().end());
}

MultiPOperator as_multi_op(const StepHypergraphon& w, int n, std::string id) {
  const int k = w.k();
  const auto& wres = w.grid().resolution_by_level();
  if (n < 1 || n % wres[0] != 0) throw std::invalid_argument("as_multi_op: W's vertex resolution must divide n");
  std::vector<int> dres = wres;
  dres[0] = n;
  auto space = std::make_shared<const GridOrbitSpace>(Grid(CoordinateIndex::all(k - 1), dres));

  // Point over r_<[k]: coordinates inside [k-1] come from the output cell, the
  // rest (those containing the last element) are integrated out.
  const CoordinateIndex& wc = w.grid().coords();
  const CoordinateIndex& dc = space->grid().coords();
  const std::size_t d = wc.size();
  const std::uint32_t last = 1u << (k - 1);
  std::vector<int> from_output(d, -1);
  std::vector<std::size_t> integrated;
  std::vector<int> ratio(d);
  for (std::size_t c = 0; c < d; ++c) {
    if (wc.mask(c) & last)
      integrated.push_back(c);
    else
      from_output[c] = static_cast<int>(dc.position(wc.mask(c)));
    ratio[c] = wc.level(c) == 1 ? n / wres[0] : 1;
  }
  std::vector<int> zres(integrated.size());
  std::size_t zcells = 1;
  for (std::size_t j = 0; j < integrated.size(); ++j) {
    zres[j] = ratio[integrated[j]] * w.grid().resolution(integrated[j]);
    zcells *= static_cast<std::size_t>(zres[j]);
  }
  // slot i reads r([k] minus i) mapped back onto r[k-1]
  const std::size_t dd = dc.size();
  std::vector<std::size_t> slot_pos(static_cast<std::size_t>(k - 1) * dd);
  for (int i = 0; i + 1 < k; ++i)
    for (std::size_t t = 0; t < dd; ++t) slot_pos[i * dd + t] = wc.position(skip_map(dc.mask(t), i));
  const auto perms = all_permutations(k - 1);

  auto eval = [=](std::span<const TestFunction> fns) {
    const std::size_t classes = space->class_count();
    std::vector<double> out(classes, 0.0);
    const double zvol = 1.0 / static_cast<double>(zcells);
    const double pnorm = 1.0 / static_cast<double>(perms.size());
#pragma omp parallel
    {
      std::vector<int> point(d), wcell(d), arg(dd), z(integrated.size());
      std::vector<double> slot_val(static_cast<std::size_t>(k - 1) * (k - 1));
#pragma omp for schedule(dynamic)
      for (std::size_t o = 0; o < classes; ++o) {
        const auto y = space->representative(o);
        for (std::size_t c = 0; c < d; ++c)
          if (from_output[c] >= 0) point[c] = y[from_output[c]];
        double acc = 0.0;
        for (std::size_t zc = 0; zc < zcells; ++zc) {
          std::size_t rem = zc;
          for (std::size_t j = integrated.size(); j-- > 0;) {
            point[integrated[j]] = static_cast<int>(rem % zres[j]);
            rem /= zres[j];
          }
          for (std::size_t c = 0; c < d; ++c) wcell[c] = point[c] / ratio[c];
          const double wv = w.at_cell(wcell);
          if (wv == 0.0) continue;
          // slot_val[i*(k-1)+a] = f_a at the argument of slot i
          for (int i = 0; i + 1 < k; ++i) {
            for (std::size_t t = 0; t < dd; ++t) arg[t] = point[slot_pos[i * dd + t]];
            const std::size_t cls = space->class_of(arg);
            for (int a = 0; a + 1 < k; ++a) slot_val[i * (k - 1) + a] = fns[a][cls];
          }
          double sym = 0.0;
          for (const auto& sigma : perms) {
            double p = 1.0;
            for (int i = 0; i + 1 < k; ++i) p *= slot_val[i * (k - 1) + sigma[i]];
            sym += p;
          }
          acc += wv * sym * pnorm;
        }
        out[o] = acc * zvol;
      }
    }
    return TestFunction(space, std::move(out));
  };
  return MultiPOperator(space, k - 1, eval, std::move(id));
}

TestFunction part_indicator(const MultiPOperator& op, const SymmetricGridPartition& q, int part) {
  auto* space = dynamic_cast<const GridOrbitSpace*>(&op.space());
  if (!space) throw std::invalid_argument("part_indicator: operator is not on a grid orbit space");
  if (q.k() != op.order()) throw std::invalid_argument("part_indicator: partition order mismatch");
  const Grid& g = space->grid();
  const auto& gr = g.resolution_by_level();
  const auto& qr = q.grid().resolution_by_level();
  for (std::size_t l = 0; l < gr.size(); ++l)
    if (gr[l] % qr[l] != 0) throw std::invalid_argument("part_indicator: partition resolution must divide the space's");
  std::vector<double> vals(space->class_count());
  for (std::size_t o = 0; o < vals.size(); ++o) {
    auto cell = space->representative(o);
    for (std::size_t c = 0; c < cell.size(); ++c) cell[c] /= gr[g.coords().level(c) - 1] / qr[g.coords().level(c) - 1];
    vals[o] = q.label(q.grid().encode(cell)) == part ? 1.0 : 0.0;
  }
  return TestFunction(op.space_ptr(), std::move(vals), true);
}

}  // namespace hyperlim
