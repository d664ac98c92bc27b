#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "hyperlim/generators.hpp"
#include "hyperlim/measures.hpp"
#include "hyperlim/serialization.hpp"
#include "hyperlim/spaces.hpp"
#include "hyperlim/tensors.hpp"

namespace hyperlim {

struct TargetSpec {
  DiscreteMeasure measure;
  double max_lp = 1.0;
};

struct ExperimentModel {
  std::string label;
  ModelSpec spec;  // n filled per run
};

struct ExperimentConfig {
  std::vector<ExperimentModel> models;
  std::vector<int> sizes;
  int action = 2;
  std::string normalization = "uniform";  // none | uniform | degree | sparse:<s_n> | sparse:n^<e>
  MeasureFamily measure = MeasureFamily::uniform;
  int k_max = 1;
  std::vector<std::string> catalog = {"one"};  // catalog names, plus "aux" for the generator's pair set
  std::size_t count = 1;
  std::vector<std::uint64_t> seeds = {0};
  std::map<std::string, TargetSpec> targets;  // by model label
  double tolerance = 1e-9;
  double quantize = 0.0;  // grid step for laws before LP; 0 keeps them exact
  bool pairwise = true;
  std::string profile_dir;
};

ExperimentConfig parse_experiment_config(const Json& j);

Normalization resolve_normalization(const std::string& scheme, int n);

// Rounds every coordinate to the nearest multiple of step. Each atom moves by at
// most step * sqrt(d) / 2, which bounds the change in LP distance.
DiscreteMeasure quantized(const DiscreteMeasure& mu, double step);

struct ExperimentRow {
  std::string model;
  int n = 0;
  int k = 0;
  std::string metric;  // lp_target | d_H | d_M
  double value = 0.0;
  std::string target;  // threshold for lp_target, the other model for d_H / d_M
  std::uint64_t seed = 0;
  bool failed = false;
};

struct ExperimentResult {
  std::vector<ExperimentRow> rows;
  std::size_t failures = 0;
  std::string csv() const;
};

ExperimentResult run_experiment(const ExperimentConfig& config);

std::string version_string();

}  // namespace hyperlim
