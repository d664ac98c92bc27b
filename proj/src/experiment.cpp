#include "hyperlim/experiment.hpp"

#include <cctype>
#include <cmath>
#include <exception>
#include <filesystem>
#include <sstream>

#include "hyperlim/operators.hpp"
#include "hyperlim/profiles.hpp"
#include "hyperlim/rng.hpp"

#ifndef HYPERLIM_VERSION
#define HYPERLIM_VERSION "unknown"
#endif

namespace hyperlim {

std::string version_string() { return HYPERLIM_VERSION; }

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
  return out + "\"";
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

std::string file_safe(const std::string& s) {
  std::string out;
  for (char c : s) out += std::isalnum(static_cast<unsigned char>(c)) || c == '.' || c == '-' ? c : '_';
  return out;
}

struct ModelRun {
  std::vector<ProfileSample> profiles;  // k = 1..k_max
  std::vector<MeasureSet> sets;
  double lp = -1.0;
};

}  // namespace

ExperimentConfig parse_experiment_config(const Json& j) {
  ExperimentConfig c;
  try {
    for (const auto& m : j.at("models")) {
      ExperimentModel em;
      std::string spec = m.is_string() ? m.get<std::string>() : m.at("spec").get<std::string>();
      em.label = m.is_object() ? m.value("name", spec) : spec;
      em.spec = parse_model_spec(spec);
      c.models.push_back(std::move(em));
    }
    c.sizes = j.at("n").is_array() ? j.at("n").get<std::vector<int>>() : std::vector<int>{j.at("n").get<int>()};
    c.action = j.value("action", c.action);
    c.normalization = j.value("normalization", c.normalization);
    c.measure = measure_family_from_string(j.value("measure", std::string("uniform")));
    c.k_max = j.value("k_max", c.k_max);
    if (j.contains("sampler")) {
      const auto& s = j.at("sampler");
      c.catalog = s.value("catalog", c.catalog);
      c.count = s.value("count", c.count);
    }
    if (j.contains("seeds")) c.seeds = j.at("seeds").get<std::vector<std::uint64_t>>();
    if (j.contains("targets"))
      for (const auto& [label, t] : j.at("targets").items())
        c.targets.emplace(label, TargetSpec{measure_from_json(t.at("measure")), t.value("max_lp", 1.0)});
    c.tolerance = j.value("tolerance", c.tolerance);
    c.quantize = j.value("quantize", c.quantize);
    c.pairwise = j.value("pairwise", c.pairwise);
    c.profile_dir = j.value("profile_dir", std::string());
  } catch (const Json::exception& e) {
    throw ParseError(std::string("experiment config: ") + e.what());
  }
  if (c.models.empty()) throw std::invalid_argument("experiment config: no models");
  if (c.sizes.empty()) throw std::invalid_argument("experiment config: empty n schedule");
  for (int n : c.sizes)
    if (n < 1) throw std::invalid_argument("experiment config: sizes must be positive");
  if (c.k_max < 1) throw std::invalid_argument("experiment config: k_max must be >= 1");
  if (c.count < 1) throw std::invalid_argument("experiment config: sampler count must be >= 1");
  if (c.catalog.empty()) throw std::invalid_argument("experiment config: empty catalog");
  if (c.seeds.empty()) throw std::invalid_argument("experiment config: no seeds");
  if (!(c.tolerance > 0.0)) throw std::invalid_argument("experiment config: tolerance must be positive");
  if (c.quantize < 0.0) throw std::invalid_argument("experiment config: quantize must be >= 0");
  for (const auto& name : c.catalog)
    if (name != "aux") catalog_entry_from_string(name);
  for (const auto& [label, t] : c.targets) {
    bool known = false;
    for (const auto& m : c.models) known = known || m.label == label;
    if (!known) throw std::invalid_argument("experiment config: target for unknown model '" + label + "'");
  }
  for (std::size_t a = 0; a < c.models.size(); ++a)
    for (std::size_t b = a + 1; b < c.models.size(); ++b)
      if (c.models[a].label == c.models[b].label)
        throw std::invalid_argument("experiment config: duplicate model label '" + c.models[a].label + "'");
  resolve_normalization(c.normalization, c.sizes.front());
  return c;
}

Normalization resolve_normalization(const std::string& scheme, int n) {
  if (scheme == "none") return Normalization::none();
  if (scheme == "uniform") return Normalization::uniform();
  if (scheme == "degree") return Normalization::degree();
  if (scheme.rfind("sparse:", 0) == 0) {
    std::string arg = scheme.substr(7);
    try {
      if (arg.rfind("n^", 0) == 0) return Normalization::sparse(std::pow(static_cast<double>(n), std::stod(arg.substr(2))));
      std::size_t used = 0;
      double s = std::stod(arg, &used);
      if (used == arg.size()) return Normalization::sparse(s);
    } catch (const std::logic_error&) {
    }
  }
  throw std::invalid_argument("unknown normalization '" + scheme + "'");
}

DiscreteMeasure quantized(const DiscreteMeasure& mu, double step) {
  if (!(step > 0.0)) throw std::invalid_argument("quantized: step must be positive");
  std::vector<Atom> atoms = mu.atoms();
  for (auto& a : atoms)
    for (auto& x : a.point) x = std::round(x / step) * step;
  return DiscreteMeasure(mu.dimension(), std::move(atoms));
}

std::string ExperimentResult::csv() const {
  std::ostringstream os;
  os << "# hyperlim " << version_string() << '\n';
  os << "model,n,k,metric,value,target,seed\n";
  for (const auto& r : rows)
    os << csv_field(r.model) << ',' << r.n << ',' << r.k << ',' << r.metric << ',' << fmt(r.value) << ','
       << csv_field(r.target) << ',' << r.seed << '\n';
  return os.str();
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
  ExperimentResult result;
  const std::size_t nm = config.models.size();
  const int s = config.action;
  if (!config.profile_dir.empty()) std::filesystem::create_directories(config.profile_dir);

  for (int n : config.sizes)
    for (std::uint64_t seed : config.seeds) {
      std::vector<ModelRun> runs(nm);
      std::vector<std::exception_ptr> errors(nm);
#pragma omp parallel for schedule(dynamic)
      for (std::size_t m = 0; m < nm; ++m) {
        try {
          ModelSpec spec = config.models[m].spec;
          spec.n = n;
          const GeneratedHypergraph g = generate(spec, seed);
          const int r = spec.r > 0 ? spec.r : g.hypergraph.max_edge_cardinality();
          const SymmetricTensor t = adjacency_tensor(g.hypergraph, r);
          auto space = build_space(n, s, config.measure, &g.hypergraph);
          const MultiPOperator op =
              from_tensor_action(normalize(t, resolve_normalization(config.normalization, n)), s, space,
                                 config.models[m].label);

          SamplerSpec sampler;
          sampler.count = config.count;
          sampler.seed = derive_seed(seed, 0x5eed);
          for (const auto& name : config.catalog) {
            if (name != "aux") {
              sampler.catalog.push_back(catalog_entry_from_string(name));
              continue;
            }
            if (s != 2) throw std::invalid_argument("catalog entry 'aux' needs action 2");
            std::vector<std::vector<int>> pts;
            for (auto [i, j] : g.symmetric_set) pts.push_back({i, j});
            sampler.catalog.push_back(CatalogEntry::user_indicator(std::move(pts), "aux"));
          }

          ModelRun& run = runs[m];
          for (int k = 1; k <= config.k_max; ++k) {
            ProfileSample p = k_profile(op, k, sampler);
            if (config.quantize > 0.0)
              for (auto& law : p.laws) law = quantized(law, config.quantize);
            run.sets.push_back(p.measure_set());
            run.profiles.push_back(std::move(p));
          }

          if (auto it = config.targets.find(config.models[m].label); it != config.targets.end()) {
            std::vector<TestFunction> ones(op.arity(), TestFunction::constant(op.space_ptr(), 1.0));
            DiscreteMeasure law = profile_law(op, 1, FunctionTuple{ones, "one"});
            if (config.quantize > 0.0) law = quantized(law, config.quantize);
            if (law.dimension() != it->second.measure.dimension())
              throw std::invalid_argument("target measure for '" + it->first + "' has dimension " +
                                          std::to_string(it->second.measure.dimension()) + ", expected " +
                                          std::to_string(law.dimension()));
            run.lp = lp_distance(law, it->second.measure, config.tolerance);
          }
        } catch (...) {
          errors[m] = std::current_exception();
        }
      }
      for (auto& e : errors)
        if (e) std::rethrow_exception(e);

      for (std::size_t m = 0; m < nm; ++m) {
        const auto& label = config.models[m].label;
        if (runs[m].lp >= 0.0) {
          ExperimentRow row{label, n, 1, "lp_target", runs[m].lp, fmt(config.targets.at(label).max_lp), seed, false};
          row.failed = row.value > config.targets.at(label).max_lp;
          result.failures += row.failed;
          result.rows.push_back(row);
        }
        if (!config.profile_dir.empty())
          for (const auto& p : runs[m].profiles) {
            std::string path = config.profile_dir + "/" + file_safe(label) + "_n" + std::to_string(n) + "_seed" +
                               std::to_string(seed) + "_k" + std::to_string(p.k) + ".json";
            write_text_file(path, to_json(p).dump(1) + "\n");
          }
      }
      if (!config.pairwise) continue;
      for (std::size_t a = 0; a < nm; ++a)
        for (std::size_t b = a + 1; b < nm; ++b) {
          const auto& la = config.models[a].label;
          const auto& lb = config.models[b].label;
          if (runs[a].profiles.front().order != runs[b].profiles.front().order) continue;
          double dm = 0.0;
          for (int k = 1; k <= config.k_max; ++k) {
            double dh = hausdorff(runs[a].sets[k - 1], runs[b].sets[k - 1], config.tolerance);
            dm += std::ldexp(dh, -k);
            result.rows.push_back({la, n, k, "d_H", dh, lb, seed, false});
          }
          result.rows.push_back({la, n, config.k_max, "d_M", dm, lb, seed, false});
        }
    }
  return result;
}

}  // namespace hyperlim
