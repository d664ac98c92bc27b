#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <omp.h>

#include <CLI11.hpp>

#include "hyperlim/experiment.hpp"
#include "hyperlim/generators.hpp"
#include "hyperlim/hypergraphon.hpp"
#include "hyperlim/operators.hpp"
#include "hyperlim/profiles.hpp"
#include "hyperlim/serialization.hpp"

using namespace hyperlim;

namespace {

void emit(const std::string& out, const std::string& text) {
  if (out.empty() || out == "-")
    std::cout << text;
  else
    write_text_file(out, text);
}

Hypergraph load_hypergraph(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return read_hypergraph(in);
}

SymmetricTensor load_tensor(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return read_tensor(in);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string part;
  while (std::getline(ss, part, sep))
    if (!part.empty()) out.push_back(part);
  return out;
}

MeasureSet measures_of(const Json& j) {
  if (j.contains("laws")) {
    MeasureSet set(j.at("laws").empty() ? 0 : j.at("laws").front().at("dimension").get<int>());
    for (const auto& m : j.at("laws")) set.insert(measure_from_json(m));
    return set;
  }
  DiscreteMeasure mu = measure_from_json(j);
  MeasureSet set(mu.dimension());
  set.insert(mu);
  return set;
}

}  // namespace

int main(int argc, char** argv) {
  if (const char* t = std::getenv("HYPERLIM_THREADS")) {
    int threads = std::atoi(t);
    if (threads > 0) omp_set_num_threads(threads);
  }

  CLI::App app{"Action convergence toolkit for hypergraphs and symmetric tensors"};
  app.set_version_flag("--version", version_string());
  app.require_subcommand(1);

  // generate
  auto* gen = app.add_subcommand("generate", "sample a random hypergraph model");
  std::string gen_model, gen_out;
  int gen_n = 0;
  std::uint64_t gen_seed = 0;
  gen->add_option("model", gen_model, "model spec, e.g. er_uniform:n=200,p=0.125,r=3")->required();
  gen->add_option("-n,--n", gen_n, "number of vertices (overrides the spec)");
  gen->add_option("--seed", gen_seed, "random seed");
  gen->add_option("--out", gen_out, "hypergraph file; the sidecar goes to <out>.aux.json");

  // tensor
  auto* ten = app.add_subcommand("tensor", "adjacency tensor of a hypergraph, optionally applied to functions");
  std::string ten_in, ten_out, ten_norm = "none", ten_measure = "uniform";
  int ten_r = 0, ten_s = 0;
  std::vector<std::string> ten_apply;
  ten->add_option("hypergraph", ten_in, "hypergraph file")->required();
  ten->add_option("-r,--order", ten_r, "tensor order (default: largest edge)");
  ten->add_option("--normalization", ten_norm, "none | uniform | degree | sparse:<s_n> | sparse:n^<e>");
  ten->add_option("--action", ten_s, "apply the s-action to the --apply functions");
  ten->add_option("--apply", ten_apply, "test function JSON files (r-1 of them)");
  ten->add_option("--measure", ten_measure, "uniform | diagonal_weighted | degree_weighted");
  ten->add_option("--out", ten_out, "output file");

  // profile
  auto* pro = app.add_subcommand("profile", "sampled k-profile of a hypergraph's s-action");
  std::string pro_in, pro_out, pro_norm = "uniform", pro_measure = "uniform", pro_catalog = "one,rademacher";
  int pro_s = 2, pro_k = 1, pro_r = 0;
  std::size_t pro_count = 16;
  std::uint64_t pro_seed = 0;
  pro->add_option("hypergraph", pro_in, "hypergraph file")->required();
  pro->add_option("-r,--order", pro_r, "tensor order (default: largest edge)");
  pro->add_option("--action", pro_s, "action s");
  pro->add_option("-k", pro_k, "profile order k");
  pro->add_option("--normalization", pro_norm, "normalization scheme");
  pro->add_option("--measure", pro_measure, "measure family");
  pro->add_option("--catalog", pro_catalog, "comma separated: one,uniform,rademacher,random_subset,rank_one");
  pro->add_option("--count", pro_count, "number of tuples");
  pro->add_option("--seed", pro_seed, "sampler seed");
  pro->add_option("--out", pro_out, "profile JSON");

  // distance
  auto* dis = app.add_subcommand("distance", "LP distance between measures, Hausdorff between profile dumps");
  std::string dis_a, dis_b;
  double dis_tol = 1e-9;
  dis->add_option("a", dis_a, "measure or profile JSON")->required();
  dis->add_option("b", dis_b, "measure or profile JSON")->required();
  dis->add_option("--tol", dis_tol, "tolerance");

  // experiment
  auto* exp = app.add_subcommand("experiment", "run an experiment config and write CSV");
  std::string exp_config, exp_out;
  std::vector<std::uint64_t> exp_seeds;
  bool exp_assert = false;
  double exp_tol = 0.0;
  exp->add_option("--config", exp_config, "experiment JSON")->required();
  exp->add_option("--seed", exp_seeds, "override the config's seeds");
  exp->add_option("--tol", exp_tol, "override the config's tolerance");
  exp->add_flag("--assert", exp_assert, "exit nonzero when a target row fails");
  exp->add_option("--out", exp_out, "CSV output (default stdout)");

  // isocheck
  auto* iso = app.add_subcommand("isocheck", "search a vertex relabeling between two tensors");
  std::string iso_a, iso_b;
  bool iso_assert = false;
  iso->add_option("a", iso_a, "tensor file")->required();
  iso->add_option("b", iso_b, "tensor file")->required();
  iso->add_flag("--assert", iso_assert, "exit nonzero when none exists");

  // hypergraphon
  auto* hgn = app.add_subcommand("hypergraphon", "step hypergraphon utilities");
  std::string hgn_in, hgn_graph, hgn_hom, hgn_out;
  int hgn_k = 0;
  bool hgn_cut = false;
  std::size_t hgn_samples = 1'000'000, hgn_trials = 64;
  std::uint64_t hgn_seed = 0;
  hgn->add_option("--in", hgn_in, "hypergraphon file");
  hgn->add_option("--from-hypergraph", hgn_graph, "build from a k-uniform hypergraph file");
  hgn->add_option("-k", hgn_k, "order for --from-hypergraph");
  hgn->add_flag("--cut-norm", hgn_cut, "estimate the cut norm");
  hgn->add_option("--trials", hgn_trials, "cut-norm random starts");
  hgn->add_option("--hom", hgn_hom, "homomorphism density of this k-uniform hypergraph file");
  hgn->add_option("--samples", hgn_samples, "Monte-Carlo samples for --hom");
  hgn->add_option("--seed", hgn_seed, "random seed");
  hgn->add_option("--out", hgn_out, "write the hypergraphon file");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen) {
      ModelSpec spec = parse_model_spec(gen_model);
      if (gen_n > 0) spec.n = gen_n;
      if (spec.n < 1) throw std::invalid_argument("generate: n is required");
      GeneratedHypergraph g = generate(spec, gen_seed);
      std::ostringstream os;
      write_hypergraph(os, g.hypergraph);
      emit(gen_out, os.str());
      if (!gen_out.empty() && gen_out != "-")
        write_text_file(gen_out + ".aux.json", aux_to_json(spec, gen_seed, g).dump(1) + "\n");
    } else if (*ten) {
      Hypergraph h = load_hypergraph(ten_in);
      int r = ten_r > 0 ? ten_r : h.max_edge_cardinality();
      SymmetricTensor t = adjacency_tensor(h, r);
      if (ten_apply.empty()) {
        std::ostringstream os;
        write_tensor(os, t);
        emit(ten_out, os.str());
      } else {
        int s = ten_s > 0 ? ten_s : r - 1;
        auto space = build_space(h.vertex_count(), s, measure_family_from_string(ten_measure), &h);
        MultiPOperator op = from_tensor_action(normalize(t, resolve_normalization(ten_norm, h.vertex_count())), s, space);
        std::vector<TestFunction> fns;
        for (const auto& path : ten_apply) {
          TestFunction f = test_function_from_json(read_json_file(path), &h);
          fns.emplace_back(space, f.values(), f.clamped());
        }
        emit(ten_out, to_json(op.apply(fns)).dump(1) + "\n");
      }
    } else if (*pro) {
      Hypergraph h = load_hypergraph(pro_in);
      int r = pro_r > 0 ? pro_r : h.max_edge_cardinality();
      SymmetricTensor t = adjacency_tensor(h, r);
      auto space = build_space(h.vertex_count(), pro_s, measure_family_from_string(pro_measure), &h);
      MultiPOperator op =
          from_tensor_action(normalize(t, resolve_normalization(pro_norm, h.vertex_count())), pro_s, space, pro_in);
      SamplerSpec spec;
      for (const auto& name : split(pro_catalog, ',')) spec.catalog.push_back(catalog_entry_from_string(name));
      spec.count = pro_count;
      spec.seed = pro_seed;
      emit(pro_out, to_json(k_profile(op, pro_k, spec)).dump(1) + "\n");
    } else if (*dis) {
      MeasureSet a = measures_of(read_json_file(dis_a));
      MeasureSet b = measures_of(read_json_file(dis_b));
      double d = (a.size() == 1 && b.size() == 1) ? lp_distance(a.members()[0], b.members()[0], dis_tol)
                                                  : hausdorff(a, b, dis_tol);
      std::cout.precision(17);
      std::cout << d << '\n';
    } else if (*exp) {
      ExperimentConfig cfg = parse_experiment_config(read_json_file(exp_config));
      if (!exp_seeds.empty()) cfg.seeds = exp_seeds;
      if (exp_tol > 0.0) cfg.tolerance = exp_tol;
      ExperimentResult res = run_experiment(cfg);
      emit(exp_out, res.csv());
      if (res.failures) {
        std::cerr << res.failures << " target row(s) exceeded their threshold\n";
        if (exp_assert) return 1;
      }
    } else if (*iso) {
      auto psi = tensor_isomorphism_oracle(load_tensor(iso_a), load_tensor(iso_b));
      if (!psi) {
        std::cout << "none\n";
        return iso_assert ? 1 : 0;
      }
      for (std::size_t i = 0; i < psi->size(); ++i) std::cout << (i ? " " : "") << (*psi)[i] + 1;
      std::cout << '\n';
    } else if (*hgn) {
      if (hgn_in.empty() == hgn_graph.empty())
        throw std::invalid_argument("hypergraphon: give exactly one of --in and --from-hypergraph");
      auto w = [&] {
        if (!hgn_graph.empty()) {
          Hypergraph h = load_hypergraph(hgn_graph);
          return from_hypergraph(h, hgn_k > 0 ? hgn_k : h.max_edge_cardinality());
        }
        std::ifstream in(hgn_in);
        if (!in) throw std::runtime_error("cannot open " + hgn_in);
        return read_hypergraphon(in);
      }();
      std::cout.precision(17);
      std::cout << "mean " << w.mean() << '\n';
      if (hgn_cut) std::cout << "cut_norm_estimate " << cut_norm_estimate(w, hgn_trials, hgn_seed).value << '\n';
      if (!hgn_hom.empty()) {
        Hypergraph f = load_hypergraph(hgn_hom);
        auto est = hom_density(f, {w}, std::vector<int>(f.edge_count(), 0), hgn_samples, hgn_seed);
        std::cout << "hom_density " << est.value << " stderr " << est.stderr_ << '\n';
      }
      if (!hgn_out.empty()) {
        std::ostringstream os;
        write_hypergraphon(os, w);
        write_text_file(hgn_out, os.str());
      }
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
