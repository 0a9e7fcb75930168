#include <doctest.h>

#include <json.hpp>

#include <cmath>
#include <sstream>

#include "structsparse/checks.hpp"
#include "structsparse/descriptors.hpp"
#include "structsparse/experiment.hpp"
#include "structsparse/io.hpp"
#include "structsparse/signals.hpp"
#include "structsparse/wavelet.hpp"

using namespace structsparse;
using nlohmann::json;

namespace {

json tiny_config_json() {
  return json{
      {"signal", {{"kind", "strong-1d"}, {"p", 32}, {"k", 4}, {"g", 2}}},
      {"n", {24}},
      {"sigma", 0.01},
      {"trials", 2},
      {"seed", 99},
      {"methods",
       {{{"name", "structomp"}}, {{"name", "omp"}}, {{"name", "lasso"},
         {"grid_points", 20}}}}};
}

}  // namespace

TEST_CASE("descriptor factories build every advertised kind") {
  CHECK(block_set_from_json({{"kind", "singleton"}, {"p", 6}}).size() == 6);
  CHECK(block_set_from_json({{"kind", "line"}, {"p", 8}, {"max_len", 2}}).size() == 15);
  CHECK(block_set_from_json({{"kind", "grid"}, {"h", 4}, {"w", 4}, {"max_area", 4}})
            .size() == 73);
  CHECK(block_set_from_json({{"kind", "group"}, {"p", 8}, {"group_size", 2}})
            .size() == 12);
  CHECK(block_set_from_json({{"kind", "tree-wavelet"}, {"h", 4}, {"w", 4}})
            .size() == 32);

  CHECK(scheme_from_json({{"kind", "standard"}, {"p", 8}})->name() == "standard");
  CHECK(scheme_from_json({{"kind", "nonuniform"}, {"costs", {4.0, 4.0, 4.0}}})
            ->dimension() == 3);
  CHECK(scheme_from_json({{"kind", "group"}, {"p", 8}, {"group_size", 2}})->name() ==
        "group");
  CHECK(scheme_from_json({{"kind", "graph-line"}, {"p", 8}})->name() == "graph");
  CHECK(scheme_from_json({{"kind", "graph-grid"}, {"h", 3}, {"w", 3}})->name() ==
        "graph");
  CHECK(scheme_from_json({{"kind", "tree-wavelet"}, {"h", 4}, {"w", 4}})->name() ==
        "tree");
  CHECK(scheme_from_json({{"kind", "tree-binary"}, {"depth", 3}})->dimension() == 8);
  CHECK(scheme_from_json(
            {{"kind", "block"},
             {"blocks", {{"kind", "line"}, {"p", 8}, {"max_len", 2}}}})
            ->name() == "block");
  CHECK_THROWS_AS(scheme_from_json({{"kind", "mystery"}}), std::invalid_argument);
  CHECK_THROWS_AS(block_set_from_json({{"kind", "line"}}), std::invalid_argument);
}

TEST_CASE("experiment config parsing, defaults and validation") {
  const ExperimentConfig cfg = ExperimentConfig::from_json(tiny_config_json());
  CHECK(cfg.signal.kind == SignalKind::strong_1d);
  CHECK(cfg.signal.energy_quantile == 1.0);
  CHECK(cfg.n_values == std::vector<Index>{24});
  CHECK(cfg.methods.size() == 3);
  CHECK(cfg.methods[0].id == "structomp");

  json ratios = tiny_config_json();
  ratios.erase("n");
  ratios["n_over_k"] = {1.5, 2.0};
  const ExperimentConfig from_ratio = ExperimentConfig::from_json(ratios);
  CHECK(from_ratio.n_values == std::vector<Index>{6, 8});

  json bad = tiny_config_json();
  bad["methods"] = json::array();
  CHECK_THROWS_AS(ExperimentConfig::from_json(bad), std::invalid_argument);
  json big_n = tiny_config_json();
  big_n["n"] = {64};
  CHECK_THROWS_AS(ExperimentConfig::from_json(big_n), std::invalid_argument);
}

TEST_CASE("run_experiment: row layout, determinism, thread independence") {
  const ExperimentConfig cfg = ExperimentConfig::from_json(tiny_config_json());
  const auto results = run_experiment(cfg, 1);
  REQUIRE(results.size() == 3 * 1 * 2);
  // Ordered by (method, n, trial).
  CHECK(results[0].method == "structomp");
  CHECK(results[0].trial == 0);
  CHECK(results[1].method == "structomp");
  CHECK(results[1].trial == 1);
  CHECK(results[2].method == "omp");
  CHECK(results[5].method == "lasso");

  const auto again = run_experiment(cfg, 1);
  const auto threaded = run_experiment(cfg, 2);
  for (std::size_t i = 0; i < results.size(); ++i) {
    CHECK(results[i].recovery_error == again[i].recovery_error);
    CHECK(results[i].recovery_error == threaded[i].recovery_error);
    CHECK(results[i].seed == again[i].seed);
  }
  // All methods of one trial share the derived trial seed.
  CHECK(results[0].seed == results[2].seed);
}

TEST_CASE("one method, one trial gives exactly one row") {
  json spec = tiny_config_json();
  spec["methods"] = {{{"name", "omp"}}};
  spec["trials"] = 1;
  const auto results = run_experiment(ExperimentConfig::from_json(spec), 1);
  CHECK(results.size() == 1);
  CHECK(results[0].method == "omp");
}

TEST_CASE("results CSV round trip and schema header") {
  const ExperimentConfig cfg = ExperimentConfig::from_json(tiny_config_json());
  const auto results = run_experiment(cfg, 1);
  std::ostringstream os;
  write_results_csv(os, results);
  const std::string text = os.str();
  CHECK(text.rfind("# schema: structsparse.run.v1", 0) == 0);
  CHECK(text.find("method,n,trial,seed,recovery_error,residual_norm,"
                  "model_complexity,model_nnz") != std::string::npos);

  std::istringstream is(text);
  const auto parsed = read_results_csv(is);
  REQUIRE(parsed.size() == results.size());
  for (std::size_t i = 0; i < parsed.size(); ++i) {
    CHECK(parsed[i].method == results[i].method);
    CHECK(parsed[i].recovery_error == results[i].recovery_error);
    CHECK(parsed[i].seed == results[i].seed);
  }
}

TEST_CASE("aggregation: means, stds and the single-trial case") {
  std::vector<TrialResult> rows(3);
  rows[0] = {"m", 10, 0, 0, 0.2, 0, 0, 0};
  rows[1] = {"m", 10, 1, 0, 0.4, 0, 0, 0};
  rows[2] = {"m", 20, 0, 0, 0.5, 0, 0, 0};
  const auto agg = aggregate(rows, 5);
  REQUIRE(agg.size() == 2);
  CHECK(agg[0].method == "m");
  CHECK(agg[0].n == 10);
  CHECK(agg[0].ratio == doctest::Approx(2.0));
  CHECK(agg[0].trials == 2);
  CHECK(agg[0].mean_error == doctest::Approx(0.3));
  CHECK(agg[0].std_error ==
        doctest::Approx(std::sqrt((0.01 + 0.01) / 1.0)).epsilon(1e-9));
  CHECK(agg[1].trials == 1);
  CHECK(agg[1].std_error == 0.0);  // single trial
}

TEST_CASE("manifest lists every derived seed") {
  const ExperimentConfig cfg = ExperimentConfig::from_json(tiny_config_json());
  const json manifest = run_manifest(cfg);
  CHECK(manifest.at("schema") == "structsparse.manifest.v1");
  const auto& seeds = manifest.at("seeds");
  REQUIRE(seeds.size() == cfg.n_values.size() * static_cast<std::size_t>(cfg.trials));
  for (const auto& entry : seeds) {
    CHECK(entry.contains("signal"));
    CHECK(entry.contains("design"));
    CHECK(entry.contains("noise"));
    CHECK(entry.at("signal") != entry.at("noise"));
  }
  CHECK(manifest.at("config").at("seed") == 99);
}

TEST_CASE("recovery budgets follow the scheme structure") {
  // Group scheme: the budget covers whole touched groups.
  GroupCoding groups = GroupCoding::uniform(8, 2);
  Vector beta = Vector::Zero(8);
  beta[3] = 1.0;
  CHECK(recovery_budget(groups, beta, 1.0, 1.0, 8) ==
        doctest::Approx(groups.complexity(SupportSet{2, 3})));
  // Tree scheme: the budget covers the root path.
  TreeCoding tree_scheme(wavelet_tree(4, 4, 2), 16);
  Vector w = Vector::Zero(16);
  w[7] = 1.0;  // a finest-level cell whose chain is 7 -> 1 -> 0
  const SupportSet closed{0, 1, 7};
  CHECK(recovery_budget(tree_scheme, w, 1.0, 2.0, 16) ==
        doctest::Approx(2.0 * tree_scheme.complexity(closed)));
  // The sample cap keeps only the strongest entries.
  Vector two = Vector::Zero(8);
  two[1] = 2.0;
  two[6] = 0.5;
  StandardCoding flat(8);
  CHECK(recovery_budget(flat, two, 1.0, 1.0, 1) ==
        doctest::Approx(flat.complexity(SupportSet{1})));
}

TEST_CASE("fast check suites pass") {
  CHECK(check_kraft_suite().pass);
  CHECK(check_subadditive_suite().pass);
  CHECK(check_haar_suite().pass);
  CHECK_THROWS_AS(run_check_suite("bogus"), std::invalid_argument);
}
