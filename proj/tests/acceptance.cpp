// Acceptance suite: end-to-end recovery experiments and property checks,
// one pass/fail line per criterion. Exits nonzero if any criterion fails.
//
// Usage: acceptance [path-to-cli-binary]
// The CLI path is needed only for the byte-identical-rerun criterion; it is
// skipped (and fails) when the path is missing.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "structsparse/baselines.hpp"
#include "structsparse/checks.hpp"
#include "structsparse/descriptors.hpp"
#include "structsparse/eigen_probe.hpp"
#include "structsparse/experiment.hpp"
#include "structsparse/io.hpp"
#include "structsparse/linalg.hpp"
#include "structsparse/rng.hpp"
#include "structsparse/signals.hpp"
#include "structsparse/structomp.hpp"
#include "structsparse/wavelet.hpp"

namespace ssp = structsparse;
using ssp::Index;
using ssp::Matrix;
using ssp::SupportSet;
using ssp::Vector;

namespace {

int failures = 0;

void report(int id, const std::string& name, bool pass, const std::string& detail) {
  std::cout << (pass ? "[PASS] " : "[FAIL] ") << "criterion " << id << ": "
            << name << " — " << detail << '\n';
  std::cout.flush();
  if (!pass) ++failures;
}

double mean_error(const std::vector<ssp::TrialResult>& rows,
                  const std::string& method, Index n) {
  double sum = 0.0;
  Index count = 0;
  for (const auto& r : rows)
    if (r.method == method && r.n == n) {
      sum += r.recovery_error;
      ++count;
    }
  return sum / static_cast<double>(count);
}

nlohmann::json strong_1d_config() {
  return nlohmann::json{
      {"signal", {{"kind", "strong-1d"}, {"p", 512}, {"k", 64}, {"g", 4}}},
      {"n", {160}},
      {"sigma", 0.01},
      {"trials", 20},
      {"seed", 20250810},
      {"methods",
       {{{"name", "structomp"}},
        {{"name", "omp"}},
        {{"name", "lasso"}},
        {{"name", "group-lasso"}, {"group_size", 8}}}}};
}

// Criterion 1: strong 1D line-sparsity experiment at n = 160.
void criterion_1() {
  const auto start = std::chrono::steady_clock::now();
  const auto cfg = ssp::ExperimentConfig::from_json(strong_1d_config());
  const auto rows = ssp::run_experiment(cfg, 1);
  const double structomp = mean_error(rows, "structomp", 160);
  const double omp = mean_error(rows, "omp", 160);
  const double lasso = mean_error(rows, "lasso", 160);
  const double group = mean_error(rows, "group-lasso-gs8", 160);
  const double minutes =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count() /
      60.0;
  const bool pass = structomp <= 0.15 && omp >= 0.5 && lasso >= 0.5 &&
                    structomp < group && minutes <= 5.0;
  std::ostringstream detail;
  detail << "mean errors structomp=" << structomp << " omp=" << omp
         << " lasso=" << lasso << " group-lasso-gs8=" << group << " ("
         << minutes << " min)";
  report(1, "strong 1d recovery at n=160", pass, detail.str());
}

// Criterion 2: weak 1D sparsity at n = 48; orderings are the contract.
void criterion_2() {
  nlohmann::json spec{
      {"signal", {{"kind", "weak-1d"}, {"p", 512}, {"g", 2}, {"k", 32}}},
      {"n", {48}},
      {"sigma", 0.01},
      {"trials", 20},
      {"seed", 20250811},
      {"methods",
       {{{"name", "structomp"}}, {{"name", "omp"}}, {{"name", "lasso"}}}}};
  const auto cfg = ssp::ExperimentConfig::from_json(spec);
  const auto rows = ssp::run_experiment(cfg, 1);
  const double structomp = mean_error(rows, "structomp", 48);
  const double omp = mean_error(rows, "omp", 48);
  const double lasso = mean_error(rows, "lasso", 48);
  const bool pass = structomp < omp && omp < lasso && structomp <= 0.3;
  std::ostringstream detail;
  detail << "mean errors structomp=" << structomp << " omp=" << omp
         << " lasso=" << lasso;
  report(2, "weak 1d ordering structomp < omp < lasso", pass, detail.str());
}

// Criterion 3: tree-structured wavelet recovery on 32x32 images.
void criterion_3() {
  nlohmann::json spec{
      {"signal", {{"kind", "piecewise-2d"}, {"h", 32}, {"w", 32}}},
      {"n", {256, 384, 512}},
      {"sigma", 0.01},
      {"trials", 10},
      {"seed", 20250812},
      {"methods",
       {{{"name", "structomp"}}, {{"name", "omp"}}, {{"name", "lasso"}}}}};
  const auto cfg = ssp::ExperimentConfig::from_json(spec);
  const auto rows = ssp::run_experiment(cfg, 1);
  bool pass = true;
  std::ostringstream detail;
  for (Index n : {256, 384, 512}) {
    const double structomp = mean_error(rows, "structomp", n);
    const double omp = mean_error(rows, "omp", n);
    const double lasso = mean_error(rows, "lasso", n);
    pass = pass && structomp < omp && structomp < lasso;
    detail << "n=" << n << ": " << structomp << " vs omp " << omp << ", lasso "
           << lasso << "; ";
  }
  report(3, "tree-sparsity image recovery ordering", pass, detail.str());
}

// Criterion 4: noiseless exact recovery of <= 2-block signals.
void criterion_4() {
  const Index p = 64;
  const ssp::BlockSet blocks = ssp::line_connected_blocks(p, 6);
  const ssp::GraphCoding scheme = ssp::GraphCoding::line(p);
  Index hits = 0;
  const Index seeds = 100;
  for (Index seed = 0; seed < seeds; ++seed) {
    ssp::Rng rng(ssp::derive_seed(424242, "exact-recovery", seed));
    // One or two base blocks, separated so they stay distinct regions.
    const Index count = 1 + rng.uniform_int(0, 1);
    Vector truth = Vector::Zero(p);
    const Index len1 = rng.uniform_int(2, 6);
    const Index start1 = rng.uniform_int(0, p / 2 - len1 - 2);
    for (Index j = start1; j < start1 + len1; ++j)
      truth[j] = rng.uniform() < 0.5 ? -1.0 : 1.0;
    if (count == 2) {
      const Index len2 = rng.uniform_int(2, 6);
      const Index start2 = p / 2 + rng.uniform_int(0, p / 2 - len2 - 1);
      for (Index j = start2; j < start2 + len2; ++j)
        truth[j] = rng.uniform() < 0.5 ? -1.0 : 1.0;
    }
    const double c_truth = scheme.complexity(ssp::support_of(truth));
    const Index n = static_cast<Index>(std::ceil(4.0 * c_truth));
    const Matrix X = ssp::gen_design_gaussian(
        n, p, ssp::derive_seed(424242, "exact-design", seed));
    const Vector y = X * truth;

    ssp::GreedyConfig cfg;
    cfg.budget = c_truth;
    const ssp::GreedyPath path = ssp::struct_omp(X, y, blocks, scheme, cfg);
    if (path.final_state().residual_norm <= 1e-6 &&
        ssp::recovery_error(path.final_state().coefficients, truth) <= 1e-6)
      ++hits;
  }
  std::ostringstream detail;
  detail << hits << "/" << seeds << " exact recoveries";
  report(4, "noiseless exact recovery at n >= 4 c(beta)", hits >= 95, detail.str());
}

// Criterion 5: oracle dominance and support agreement at inflated budgets.
void criterion_5() {
  const ssp::CheckResult result = ssp::check_oracle_suite();
  report(5, "exhaustive-oracle dominance and support match", result.pass,
         result.detail);
}

// Criterion 6: Kraft inequality across the shipped schemes.
void criterion_6() {
  const ssp::CheckResult result = ssp::check_kraft_suite();
  report(6, "Kraft sums <= 1 + 1e-9", result.pass, result.detail);
}

// Criterion 7: sub-additivity of the schemes the theory relies on.
void criterion_7() {
  const ssp::CheckResult result = ssp::check_subadditive_suite();
  report(7, "sub-additivity by enumeration", result.pass, result.detail);
}

// Criterion 8: structured RIP success rate and group-vs-standard dominance.
void criterion_8() {
  const ssp::CheckResult result = ssp::check_rip_suite();
  report(8, "structured RIP at the theorem's sample bound", result.pass,
         result.detail);
}

// Criterion 9: numerical kernel tolerances.
void criterion_9() {
  std::ostringstream detail;
  bool pass = true;

  // Restricted-LS residual orthogonality at 1e-8.
  double worst_orth = 0.0;
  for (Index seed = 0; seed < 50; ++seed) {
    const Matrix X =
        ssp::gen_design_gaussian(20, 12, ssp::derive_seed(5150, "ls", seed));
    ssp::Rng rng(ssp::derive_seed(5150, "ls-y", seed));
    Vector y(20);
    for (Index i = 0; i < 20; ++i) y[i] = rng.normal();
    const SupportSet F{0, 3, 5, 9};
    const Vector beta = ssp::restricted_least_squares(X, y, F);
    const Vector r = X * beta - y;
    double defect = 0.0;
    for (Index j : F) defect = std::max(defect, std::abs(X.col(j).dot(r)));
    worst_orth = std::max(
        worst_orth, defect / (X.cwiseAbs().maxCoeff() * y.norm()));
  }
  pass = pass && worst_orth <= 1e-8;
  detail << "ls-orthogonality=" << worst_orth;

  // Haar round trip at 1e-10.
  const ssp::CheckResult haar = ssp::check_haar_suite();
  pass = pass && haar.pass;
  detail << "; haar: " << haar.detail;

  // Lasso KKT at 1e-6 relative.
  {
    const Matrix X = ssp::gen_design_gaussian(40, 24, 6001);
    const Vector truth = ssp::gen_1d_strong(24, 6, 2, 6002);
    const Vector y = ssp::add_noise(X * truth, {0.01, 6003});
    const auto grid = ssp::make_lambda_grid(ssp::lasso_lambda_max(X, y), 40);
    const auto path = ssp::lasso_path(X, y, grid);
    const double scale = 40.0 * ssp::lasso_lambda_max(X, y);
    double worst_kkt = 0.0;
    for (const auto& pt : path) {
      const Vector r = y - X * pt.coefficients;
      for (Index j = 0; j < 24; ++j) {
        const double corr = X.col(j).dot(r);
        const double target = 40.0 * pt.lambda;
        const double violation =
            pt.coefficients[j] == 0.0
                ? std::max(0.0, std::abs(corr) - target)
                : std::abs(corr - target * (pt.coefficients[j] > 0 ? 1 : -1));
        worst_kkt = std::max(worst_kkt, violation / scale);
      }
    }
    pass = pass && worst_kkt <= 1e-6;
    detail << "; lasso-kkt=" << worst_kkt;
  }

  // Gain-ratio band on 1000 random (instance, block) pairs.
  {
    Index checked = 0;
    bool band_ok = true;
    for (Index seed = 0; checked < 1000; ++seed) {
      const Index n = 12, p = 10;
      const Matrix X =
          ssp::gen_design_gaussian(n, p, ssp::derive_seed(7007, "band-x", seed));
      ssp::Rng rng(ssp::derive_seed(7007, "band-r", seed));
      Vector r(n);
      for (Index i = 0; i < n; ++i) r[i] = rng.normal();
      const ssp::GraphCoding scheme = ssp::GraphCoding::line(p);
      const SupportSet F{0, 1};
      for (Index start = 2; start + 3 <= p && checked < 1000; start += 2) {
        const ssp::Block block{SupportSet{start, start + 1, start + 2}, 3.0};
        const double phi = ssp::gain_phi(X, r, F, block, scheme);
        const double phi_tilde = ssp::gain_phi_tilde(X, r, F, block, scheme);
        if (phi <= 0.0) continue;
        const SupportSet novel = ssp::set_difference(block.indices, F);
        const auto [lo, hi] = ssp::restricted_eigs(X, novel);
        const double ratio = phi_tilde / phi;
        band_ok = band_ok && ratio >= n * lo - 1e-8 && ratio <= n * hi + 1e-8;
        ++checked;
      }
    }
    pass = pass && band_ok;
    detail << "; gain-band pairs=" << checked << (band_ok ? " ok" : " FAIL");
  }
  report(9, "numerical kernel tolerances", pass, detail.str());
}

// Criterion 10: cmd_run twice with one config -> byte-identical CSV.
void criterion_10(const std::string& cli_path) {
  if (cli_path.empty()) {
    report(10, "byte-identical reruns", false, "no CLI path supplied");
    return;
  }
  namespace fs = std::filesystem;
  const fs::path dir =
      fs::temp_directory_path() / "structsparse-acceptance";
  fs::create_directories(dir);
  const fs::path config_path = dir / "config.json";
  {
    nlohmann::json spec{
        {"signal", {{"kind", "strong-1d"}, {"p", 64}, {"k", 8}, {"g", 2}}},
        {"n", {40}},
        {"sigma", 0.01},
        {"trials", 3},
        {"seed", 7},
        {"methods", {{{"name", "structomp"}}, {{"name", "omp"}}}}};
    std::ofstream os(config_path);
    os << spec.dump(2);
  }
  auto run_once = [&](const std::string& out) {
    const std::string cmd = cli_path + " run --config " + config_path.string() +
                            " --out " + (dir / out).string() + " >/dev/null 2>&1";
    return std::system(cmd.c_str());
  };
  const int rc1 = run_once("a.csv");
  const int rc2 = run_once("b.csv");
  auto slurp = [&](const std::string& name) {
    std::ifstream is(dir / name, std::ios::binary);
    std::stringstream ss;
    ss << is.rdbuf();
    return ss.str();
  };
  const std::string a = slurp("a.csv");
  const std::string b = slurp("b.csv");
  const bool pass = rc1 == 0 && rc2 == 0 && !a.empty() && a == b;
  std::ostringstream detail;
  detail << "rc=" << rc1 << "/" << rc2 << ", " << a.size()
         << " bytes, identical=" << (a == b ? "yes" : "no");
  report(10, "byte-identical reruns", pass, detail.str());
}

}  // namespace

int main(int argc, char** argv) {
  const std::string cli_path = argc > 1 ? argv[1] : "";
  criterion_6();
  criterion_7();
  criterion_9();
  criterion_5();
  criterion_8();
  criterion_4();
  criterion_10(cli_path);
  criterion_2();
  criterion_1();
  criterion_3();
  std::cout << (failures == 0 ? "ACCEPTANCE PASSED"
                              : "ACCEPTANCE FAILED (" + std::to_string(failures) +
                                    " criteria)")
            << '\n';
  return failures == 0 ? 0 : 1;
}
