#include <gtest/gtest.h>

#include <cmath>

#include "hyperlim/experiment.hpp"

using namespace hyperlim;

namespace {

Json small_config() {
  return Json::parse(R"({
    "models": [{"name": "a", "spec": "er_uniform:p=0.5,r=3"}, {"name": "b", "spec": "er_uniform:p=0.5,r=3"},
               "er_uniform:p=0.25,r=3"],
    "n": [8, 10],
    "action": 2,
    "normalization": "uniform",
    "k_max": 2,
    "sampler": {"catalog": ["one", "uniform"], "count": 3},
    "seeds": [1, 2],
    "targets": {"a": {"measure": {"dimension": 3, "atoms": [{"point": [1, 1, 0.125], "mass": 1}]}, "max_lp": 0.5}}
  })");
}

}  // namespace

TEST(ExperimentConfig, ParsesAndValidates) {
  auto c = parse_experiment_config(small_config());
  EXPECT_EQ(c.models.size(), 3u);
  EXPECT_EQ(c.models[2].label, "er_uniform:p=0.25,r=3");
  EXPECT_EQ(c.sizes, (std::vector<int>{8, 10}));
  EXPECT_EQ(c.count, 3u);
  EXPECT_EQ(c.targets.count("a"), 1u);

  auto bad = small_config();
  bad["models"] = Json::array();
  EXPECT_THROW(parse_experiment_config(bad), std::invalid_argument);
  bad = small_config();
  bad["targets"]["zzz"] = bad["targets"]["a"];
  EXPECT_THROW(parse_experiment_config(bad), std::invalid_argument);
  bad = small_config();
  bad["sampler"]["catalog"] = {"nonsense"};
  EXPECT_THROW(parse_experiment_config(bad), std::invalid_argument);
  bad = small_config();
  bad["models"][1]["name"] = "a";
  EXPECT_THROW(parse_experiment_config(bad), std::invalid_argument);
  bad = small_config();
  bad.erase("n");
  EXPECT_THROW(parse_experiment_config(bad), ParseError);
  bad = small_config();
  bad["k_max"] = 0;
  EXPECT_THROW(parse_experiment_config(bad), std::invalid_argument);
}

TEST(ExperimentConfig, Normalizations) {
  EXPECT_EQ(resolve_normalization("none", 5).kind, Normalization::Kind::none);
  EXPECT_EQ(resolve_normalization("degree", 5).kind, Normalization::Kind::degree);
  auto s = resolve_normalization("sparse:n^2", 10);
  EXPECT_EQ(s.kind, Normalization::Kind::sparse);
  EXPECT_DOUBLE_EQ(s.s_n, 100.0);
  EXPECT_DOUBLE_EQ(resolve_normalization("sparse:3.5", 10).s_n, 3.5);
  EXPECT_THROW(resolve_normalization("bogus", 3), std::invalid_argument);
}

TEST(Quantized, MovesAtomsOntoGrid) {
  DiscreteMeasure mu(2, {{{0.3, 0.7}, 0.5}, {{0.35, 0.65}, 0.5}});
  auto q = quantized(mu, 0.5);
  ASSERT_EQ(q.size(), 1u);
  EXPECT_EQ(q.atoms()[0].point, (std::vector<double>{0.5, 0.5}));
  EXPECT_LE(lp_distance(mu, q), 0.5 * std::sqrt(2.0) / 2 + 1e-12);
  EXPECT_THROW(quantized(mu, 0.0), std::invalid_argument);
}

TEST(Experiment, IdenticalModelsHaveZeroDistance) {
  auto c = parse_experiment_config(small_config());
  auto res = run_experiment(c);
  std::size_t dh = 0, lp = 0;
  for (const auto& row : res.rows) {
    if (row.metric == "lp_target") {
      ++lp;
      EXPECT_EQ(row.model, "a");
      EXPECT_GE(row.value, 0.0);
    }
    if (row.model == "a" && row.target == "b" && (row.metric == "d_H" || row.metric == "d_M")) {
      ++dh;
      EXPECT_EQ(row.value, 0.0);
    }
  }
  EXPECT_EQ(lp, 4u);
  EXPECT_EQ(dh, 2u * 2u * 3u);
}

TEST(Experiment, CsvIsDeterministic) {
  auto c = parse_experiment_config(small_config());
  auto a = run_experiment(c).csv();
  auto b = run_experiment(c).csv();
  EXPECT_EQ(a, b);
  EXPECT_EQ(a.rfind("# hyperlim ", 0), 0u);
  EXPECT_NE(a.find("\nmodel,n,k,metric,value,target,seed\n"), std::string::npos);
  // labels with commas are quoted
  EXPECT_NE(a.find(",\"er_uniform:p=0.25,r=3\","), std::string::npos);
}

TEST(Experiment, AuxNeedsPairAction) {
  auto j = small_config();
  j["action"] = 1;
  j["sampler"]["catalog"] = {"aux"};
  j.erase("targets");
  EXPECT_THROW(run_experiment(parse_experiment_config(j)), std::invalid_argument);
}
