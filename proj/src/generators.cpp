#include "hyperlim/generators.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>

#include "hyperlim/rng.hpp"

namespace hyperlim {

namespace {

// RNG streams, one per random layer.
constexpr std::uint64_t kGraphStream = 1;
constexpr std::uint64_t kEdgeStream = 2;
constexpr std::uint64_t kOrientStream = 3;
constexpr std::uint64_t kColorStream = 4;

const std::map<std::string, Model>& model_names() {
  static const std::map<std::string, Model> names = {
      {"complete", Model::complete},
      {"complete_uniform", Model::complete_uniform},
      {"er_graph", Model::er_graph},
      {"er_uniform", Model::er_uniform},
      {"triangles_of_er", Model::triangles_of_er},
      {"iterated", Model::iterated},
      {"tournament", Model::tournament},
      {"tournament_cycles", Model::tournament_cycles},
      {"sbm3", Model::sbm3},
      {"colored_pairs", Model::colored_pairs},
      {"tight_path", Model::tight_path}};
  return names;
}

std::uint64_t tuple_key(const int* c, int r, int n) {
  std::uint64_t k = 0;
  for (int i = 0; i < r; ++i) k = k * static_cast<std::uint64_t>(n) + static_cast<std::uint64_t>(c[i]);
  return k;
}

std::size_t pair_rank(int i, int j, int n) {
  return static_cast<std::size_t>(i) * (2 * static_cast<std::size_t>(n) - i - 1) / 2 + static_cast<std::size_t>(j - i - 1);
}

// Keeps the r-subsets accepted by `keep`, scanning in lexicographic order.
template <class Keep>
Hypergraph select_subsets(int n, int r, Keep keep) {
  std::vector<std::vector<int>> per(std::max(n, 0));
  if (r >= 1 && r <= n) {
#pragma omp parallel for schedule(dynamic)
    for (int a = 0; a <= n - r; ++a) {
      std::vector<int> c(r);
      for (int i = 0; i < r; ++i) c[i] = a + i;
      auto& out = per[a];
      while (true) {
        if (keep(c.data())) out.insert(out.end(), c.begin(), c.end());
        int t = r - 1;
        while (t >= 1 && c[t] == n - r + t) --t;
        if (t < 1) break;
        ++c[t];
        for (int u = t + 1; u < r; ++u) c[u] = c[u - 1] + 1;
      }
    }
  }
  std::vector<int> flat;
  std::vector<std::size_t> offsets{0};
  for (auto& v : per) {
    for (std::size_t i = 0; i < v.size(); i += static_cast<std::size_t>(r)) {
      flat.insert(flat.end(), v.begin() + static_cast<std::ptrdiff_t>(i), v.begin() + static_cast<std::ptrdiff_t>(i + r));
      offsets.push_back(flat.size());
    }
    std::vector<int>().swap(v);
  }
  return Hypergraph(n, std::move(flat), std::move(offsets));
}

void check_probability(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("model probability outside [0,1]");
}

std::vector<char> random_graph(int n, double p, std::uint64_t seed, std::vector<std::pair<int, int>>& edges) {
  std::vector<char> adj(static_cast<std::size_t>(n) * n, 0);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      int c[2] = {i, j};
      if (counter_uniform(seed, kGraphStream, tuple_key(c, 2, n)) < p) {
        adj[static_cast<std::size_t>(i) * n + j] = adj[static_cast<std::size_t>(j) * n + i] = 1;
        edges.emplace_back(i, j);
      }
    }
  return adj;
}

}  // namespace

std::string model_name(Model m) {
  for (const auto& [k, v] : model_names())
    if (v == m) return k;
  return "?";
}

ModelSpec parse_model_spec(const std::string& text) {
  ModelSpec spec;
  auto colon = text.find(':');
  std::string name = text.substr(0, colon);
  auto it = model_names().find(name);
  if (it == model_names().end()) throw std::invalid_argument("unknown model: " + name);
  spec.model = it->second;
  std::map<std::string, std::string> kv;
  if (colon != std::string::npos) {
    std::stringstream ss(text.substr(colon + 1));
    std::string item;
    while (std::getline(ss, item, ',')) {
      if (item.empty()) continue;
      auto eq = item.find('=');
      if (eq == std::string::npos) throw std::invalid_argument("model parameter without '=': " + item);
      kv[item.substr(0, eq)] = item.substr(eq + 1);
    }
  }
  auto take = [&](const std::string& key) -> std::string {
    auto f = kv.find(key);
    if (f == kv.end()) return {};
    std::string v = f->second;
    kv.erase(f);
    return v;
  };
  if (auto v = take("n"); !v.empty()) spec.n = std::stoi(v);
  if (auto v = take("r"); !v.empty()) spec.r = std::stoi(v);
  if (auto v = take("p"); !v.empty()) {
    std::stringstream ss(v);
    std::string x;
    while (std::getline(ss, x, ';')) spec.p.push_back(std::stod(x));
  }
  if (spec.model == Model::sbm3) {
    for (const char* key : {"p111", "p112", "p122", "p222"}) {
      auto v = take(key);
      if (v.empty()) throw std::invalid_argument(std::string("sbm3 needs ") + key);
      spec.p.push_back(std::stod(v));
    }
  }
  if (!kv.empty()) throw std::invalid_argument("unknown model parameter: " + kv.begin()->first);
  switch (spec.model) {
    case Model::er_graph:
    case Model::triangles_of_er:
    case Model::tournament:
    case Model::tournament_cycles:
    case Model::sbm3:
    case Model::colored_pairs:
    case Model::tight_path:
      if (spec.r != 0 && spec.r != (spec.model == Model::er_graph || spec.model == Model::tournament ? 2 : 3))
        throw std::invalid_argument("model has a fixed edge cardinality");
      spec.r = spec.model == Model::er_graph || spec.model == Model::tournament ? 2 : 3;
      break;
    case Model::iterated:
      if (spec.r == 0) spec.r = static_cast<int>(spec.p.size()) + 1;
      break;
    default:
      break;
  }
  return spec;
}

std::string format_model_spec(const ModelSpec& spec) {
  std::ostringstream out;
  out.precision(17);
  out << model_name(spec.model);
  std::vector<std::string> parts;
  if (spec.n > 0) parts.push_back("n=" + std::to_string(spec.n));
  auto num = [](double x) {
    std::ostringstream o;
    o.precision(17);
    o << x;
    return o.str();
  };
  if (spec.model == Model::sbm3 && spec.p.size() == 4) {
    const char* keys[4] = {"p111", "p112", "p122", "p222"};
    for (int i = 0; i < 4; ++i) parts.push_back(std::string(keys[i]) + "=" + num(spec.p[i]));
  } else if (!spec.p.empty()) {
    std::string p = "p=";
    for (std::size_t i = 0; i < spec.p.size(); ++i) p += (i ? ";" : "") + num(spec.p[i]);
    parts.push_back(p);
  }
  if (spec.model == Model::complete_uniform || spec.model == Model::er_uniform || spec.model == Model::iterated)
    parts.push_back("r=" + std::to_string(spec.r));
  for (std::size_t i = 0; i < parts.size(); ++i) out << (i ? "," : ":") << parts[i];
  return out.str();
}

GeneratedHypergraph generate(const ModelSpec& spec, std::uint64_t seed) {
  const int n = spec.n;
  if (n < 1) throw std::invalid_argument("generate: n must be positive");
  for (double p : spec.p) check_probability(p);
  auto need_p = [&](std::size_t count) {
    if (spec.p.size() != count) throw std::invalid_argument("generate: wrong number of probabilities");
  };
  GeneratedHypergraph out;
  switch (spec.model) {
    case Model::complete: {
      if (n > 24) throw std::invalid_argument("complete: n too large (2^n edges)");
      std::vector<std::vector<int>> edges;
      for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
        std::vector<int> e;
        for (int i = 0; i < n; ++i)
          if (mask >> i & 1u) e.push_back(i);
        edges.push_back(std::move(e));
      }
      out.hypergraph = Hypergraph(n, std::move(edges));
      break;
    }
    case Model::complete_uniform:
      if (spec.r < 1 || spec.r > n) throw std::invalid_argument("complete_uniform: need 1 <= r <= n");
      out.hypergraph = select_subsets(n, spec.r, [](const int*) { return true; });
      break;
    case Model::er_graph: {
      need_p(1);
      random_graph(n, spec.p[0], seed, out.graph_edges);
      out.symmetric_set = out.graph_edges;
      std::vector<std::vector<int>> edges;
      for (auto [i, j] : out.graph_edges) edges.push_back({i, j});
      out.hypergraph = Hypergraph(n, std::move(edges));
      break;
    }
    case Model::er_uniform: {
      need_p(1);
      const int r = spec.r;
      if (r < 1 || r > n) throw std::invalid_argument("er_uniform: need 1 <= r <= n");
      const double p = spec.p[0];
      out.hypergraph = select_subsets(n, r, [&](const int* c) {
        return counter_uniform(seed, kEdgeStream, tuple_key(c, r, n)) < p;
      });
      break;
    }
    case Model::iterated:
    case Model::triangles_of_er: {
      // Layer 2 is G(n, p_1); layer k keeps each k-set whose (k-1)-subsets are
      // all layer-(k-1) edges with probability p_{k-1}.
      std::vector<double> probs = spec.p;
      int r = spec.r;
      if (spec.model == Model::triangles_of_er) {
        need_p(1);
        probs = {spec.p[0], 1.0};
        r = 3;
      }
      if (r < 2 || static_cast<int>(probs.size()) != r - 1) throw std::invalid_argument("iterated: need r-1 probabilities");
      if (r > n) throw std::invalid_argument("iterated: need r <= n");
      random_graph(n, probs[0], seed, out.graph_edges);
      out.symmetric_set = out.graph_edges;
      std::vector<std::vector<int>> edges;
      for (auto [i, j] : out.graph_edges) edges.push_back({i, j});
      Hypergraph layer(n, std::move(edges));
      for (int k = 3; k <= r; ++k) {
        const double p = probs[k - 2];
        const Hypergraph prev = layer;
        layer = select_subsets(n, k, [&](const int* c) {
          int sub[8];
          for (int drop = 0; drop < k; ++drop) {
            int m = 0;
            for (int a = 0; a < k; ++a)
              if (a != drop) sub[m++] = c[a];
            if (!prev.contains(std::span<const int>(sub, k - 1))) return false;
          }
          return counter_uniform(seed, kEdgeStream + static_cast<std::uint64_t>(k), tuple_key(c, k, n)) < p;
        });
      }
      out.hypergraph = std::move(layer);
      break;
    }
    case Model::tournament:
    case Model::tournament_cycles: {
      std::vector<char> to(static_cast<std::size_t>(n) * n, 0);  // to[i*n+j]: i -> j
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
          int c[2] = {i, j};
          bool forward = counter_uniform(seed, kOrientStream, tuple_key(c, 2, n)) < 0.5;
          if (forward) {
            to[static_cast<std::size_t>(i) * n + j] = 1;
            out.arcs.emplace_back(i, j);
          } else {
            to[static_cast<std::size_t>(j) * n + i] = 1;
            out.arcs.emplace_back(j, i);
            out.symmetric_set.emplace_back(i, j);  // arc from the larger to the smaller vertex
          }
        }
      if (spec.model == Model::tournament) {
        std::vector<std::vector<int>> edges;
        for (auto [a, b] : out.arcs) edges.push_back({std::min(a, b), std::max(a, b)});
        out.hypergraph = Hypergraph(n, std::move(edges));
      } else {
        out.hypergraph = select_subsets(n, 3, [&](const int* c) {
          auto arc = [&](int a, int b) { return to[static_cast<std::size_t>(a) * n + b] != 0; };
          return (arc(c[0], c[1]) && arc(c[1], c[2]) && arc(c[2], c[0])) ||
                 (arc(c[1], c[0]) && arc(c[2], c[1]) && arc(c[0], c[2]));
        });
      }
      break;
    }
    case Model::sbm3: {
      need_p(4);
      const int first = (n + 1) / 2;
      out.blocks.resize(n);
      for (int i = 0; i < n; ++i) out.blocks[i] = i < first ? 0 : 1;
      out.hypergraph = select_subsets(n, 3, [&](const int* c) {
        int second = out.blocks[c[0]] + out.blocks[c[1]] + out.blocks[c[2]];
        return counter_uniform(seed, kEdgeStream, tuple_key(c, 3, n)) < spec.p[second];
      });
      break;
    }
    case Model::colored_pairs: {
      need_p(1);
      out.pair_colors.resize(static_cast<std::size_t>(n) * (n - 1) / 2);
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
          int c[2] = {i, j};
          double u = counter_uniform(seed, kColorStream, tuple_key(c, 2, n));
          out.pair_colors[pair_rank(i, j, n)] = static_cast<PairColor>(std::min(2, static_cast<int>(u * 3.0)));
        }
      const double p = spec.p[0];
      out.hypergraph = select_subsets(n, 3, [&](const int* c) {
        PairColor a = out.pair_colors[pair_rank(c[0], c[1], n)];
        if (a != out.pair_colors[pair_rank(c[0], c[2], n)] || a != out.pair_colors[pair_rank(c[1], c[2], n)])
          return false;
        if (a == PairColor::white) return true;
        if (a == PairColor::black) return false;
        return counter_uniform(seed, kEdgeStream, tuple_key(c, 3, n)) < p;
      });
      break;
    }
    case Model::tight_path: {
      std::vector<std::vector<int>> edges;
      for (int i = 0; i + 2 < n; ++i) edges.push_back({i, i + 1, i + 2});
      out.hypergraph = Hypergraph(n, std::move(edges));
      break;
    }
  }
  return out;
}

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double b = 1.0;
  for (int i = 1; i <= k; ++i) b = b * (n - k + i) / i;
  return std::round(b);
}

DensityStats edge_density_stats(const Hypergraph& h, int r) {
  DensityStats s;
  for (std::size_t e = 0; e < h.edge_count(); ++e)
    if (static_cast<int>(h.edge(e).size()) == r) ++s.edge_count;
  double total = binomial(h.vertex_count(), r);
  s.density = total > 0.0 ? static_cast<double>(s.edge_count) / total : 0.0;
  return s;
}

}  // namespace hyperlim
