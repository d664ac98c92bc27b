#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "hyperlim/hypergraph.hpp"

namespace hyperlim {

enum class Model {
  complete,
  complete_uniform,
  er_graph,
  er_uniform,
  triangles_of_er,
  iterated,
  tournament,
  tournament_cycles,
  sbm3,
  colored_pairs,
  tight_path
};

// Parameters per model:
//   er_graph, er_uniform, triangles_of_er, colored_pairs: p = {p}
//   iterated: p = {p_1, ..., p_{r-1}}
//   sbm3: p = {p111, p112, p122, p222}  (labels count block-2 members)
struct ModelSpec {
  Model model = Model::er_uniform;
  int n = 0;
  int r = 0;
  std::vector<double> p;
};

// "er_uniform:n=200,p=0.125,r=3", "iterated:n=50,p=0.5;1,r=3",
// "sbm3:n=400,p111=0.8,p112=0.2,p122=0.5,p222=0.1". n may be omitted and
// supplied later.
ModelSpec parse_model_spec(const std::string& text);
std::string format_model_spec(const ModelSpec& spec);
std::string model_name(Model m);

enum class PairColor : std::uint8_t { white = 0, black = 1, grey = 2 };

struct GeneratedHypergraph {
  Hypergraph hypergraph;
  std::vector<std::pair<int, int>> graph_edges;    // underlying random graph, i < j
  std::vector<std::pair<int, int>> arcs;           // orientation tail -> head
  std::vector<std::pair<int, int>> symmetric_set;  // pair set used as a test-function support, i < j
  std::vector<int> blocks;                         // sbm3 block of each vertex (0 or 1)
  std::vector<PairColor> pair_colors;              // colored_pairs, pairs i < j in lexicographic order
};

GeneratedHypergraph generate(const ModelSpec& spec, std::uint64_t seed);

struct DensityStats {
  std::size_t edge_count = 0;  // edges of cardinality r
  double density = 0.0;        // relative to binom(n, r)
};

DensityStats edge_density_stats(const Hypergraph& h, int r);

double binomial(int n, int k);

}  // namespace hyperlim
