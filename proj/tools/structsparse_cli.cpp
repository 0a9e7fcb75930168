// Command-line experiment runner: deterministic synthetic recovery
// benchmarks (gen | run | sweep | report) and property-check suites (check).

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "structsparse/checks.hpp"
#include "structsparse/experiment.hpp"
#include "structsparse/io.hpp"
#include "structsparse/signals.hpp"
#include "structsparse/wavelet.hpp"

namespace ssp = structsparse;
using nlohmann::json;

namespace {

struct CommonOptions {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<ssp::Index> trials;
  std::string out;
  int threads = 1;
};

void add_common(CLI::App* cmd, CommonOptions& opts, bool config_required = true) {
  auto* config = cmd->add_option("--config", opts.config_path,
                                 "JSON experiment config");
  if (config_required) config->required();
  cmd->add_option("--seed", opts.seed, "master seed (overrides config)");
  cmd->add_option("--trials", opts.trials, "trial count (overrides config)");
  cmd->add_option("--out", opts.out, "output path (overrides config)");
  cmd->add_option("--threads", opts.threads, "worker threads")
      ->check(CLI::PositiveNumber);
}

ssp::ExperimentConfig load_config(const CommonOptions& opts) {
  std::ifstream is(opts.config_path);
  if (!is) throw std::runtime_error("cannot open config: " + opts.config_path);
  json spec = json::parse(is);
  ssp::ExperimentConfig config = ssp::ExperimentConfig::from_json(spec);
  if (opts.seed) config.master_seed = *opts.seed;
  if (opts.trials) config.trials = *opts.trials;
  if (!opts.out.empty()) config.out = opts.out;
  if (config.out.empty()) config.out = "results.csv";
  return config;
}

void write_manifest(const ssp::ExperimentConfig& config,
                    const std::vector<std::string>& outputs,
                    const std::string& path) {
  json manifest = ssp::run_manifest(config);
  manifest["outputs"] = outputs;
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot write manifest: " + path);
  os << manifest.dump(2) << '\n';
}

int cmd_gen(const CommonOptions& opts) {
  const ssp::ExperimentConfig config = load_config(opts);
  const std::filesystem::path dir =
      std::filesystem::path(config.out).has_extension()
          ? std::filesystem::path(config.out).parent_path()
          : std::filesystem::path(config.out);
  if (!dir.empty()) std::filesystem::create_directories(dir);
  auto in_dir = [&dir](const std::string& name) {
    return (dir / name).string();
  };

  const ssp::Index n = config.n_values.front();
  const ssp::TrialData data =
      ssp::make_trial_data(config.signal, n, config.sigma, config.master_seed, 0);
  std::vector<std::string> outputs;
  ssp::save_matrix_csv(in_dir("design.csv"), data.X);
  outputs.push_back(in_dir("design.csv"));
  ssp::save_vector_csv(in_dir("observation.csv"), data.y);
  outputs.push_back(in_dir("observation.csv"));
  ssp::save_vector_csv(in_dir("truth.csv"), data.truth);
  outputs.push_back(in_dir("truth.csv"));
  if (config.signal.kind == ssp::SignalKind::blobs_2d ||
      config.signal.kind == ssp::SignalKind::piecewise_2d) {
    const ssp::Matrix image = ssp::unflatten_row_major(
        config.signal.kind == ssp::SignalKind::piecewise_2d
            ? ssp::flatten_row_major(ssp::haar2_inverse(
                  ssp::unflatten_row_major(data.truth, config.signal.h,
                                           config.signal.w),
                  ssp::max_haar_levels(config.signal.h, config.signal.w)))
            : data.truth,
        config.signal.h, config.signal.w);
    ssp::save_pgm(in_dir("truth.pgm"), image);
    outputs.push_back(in_dir("truth.pgm"));
  }
  write_manifest(config, outputs, in_dir("manifest.json"));
  std::cout << "wrote " << outputs.size() << " artifacts to "
            << (dir.empty() ? "." : dir.string()) << '\n';
  return 0;
}

int cmd_run(const CommonOptions& opts, bool aggregate_output) {
  const ssp::ExperimentConfig config = load_config(opts);
  const auto results = ssp::run_experiment(config, opts.threads);
  std::ofstream os(config.out, std::ios::binary);
  if (!os) throw std::runtime_error("cannot write output: " + config.out);
  if (aggregate_output) {
    ssp::write_sweep_csv(os, ssp::aggregate(results, config.signal.nominal_k()));
  } else {
    ssp::write_results_csv(os, results);
  }
  const std::string manifest_path =
      std::filesystem::path(config.out).replace_extension(".manifest.json").string();
  write_manifest(config, {config.out}, manifest_path);
  std::cout << "wrote " << config.out << " and " << manifest_path << '\n';
  return 0;
}

int cmd_report(const std::string& input, const std::string& output,
               ssp::Index nominal_k) {
  std::ifstream is(input);
  if (!is) throw std::runtime_error("cannot open results: " + input);
  const auto results = ssp::read_results_csv(is);
  if (results.empty()) throw std::runtime_error("no rows in: " + input);
  std::ofstream os(output, std::ios::binary);
  if (!os) throw std::runtime_error("cannot write output: " + output);
  ssp::write_sweep_csv(os, ssp::aggregate(results, nominal_k));
  std::cout << "wrote " << output << '\n';
  return 0;
}

int cmd_check(const std::string& suite, const std::string& report_path) {
  std::vector<ssp::RipTrial> rip_rows;
  const ssp::CheckResult result = ssp::run_check_suite(
      suite, suite == "rip" ? &rip_rows : nullptr);
  std::cout << (result.pass ? "[PASS] " : "[FAIL] ") << suite << ": "
            << result.detail << '\n';
  if (!report_path.empty() && suite == "rip") {
    std::ofstream os(report_path, std::ios::binary);
    os << "# schema: structsparse.rip.v1\n";
    os << "trial,rho_minus,rho_plus,pass\n";
    for (std::size_t i = 0; i < rip_rows.size(); ++i)
      os << i << ',' << ssp::format_double(rip_rows[i].rho_minus) << ','
         << ssp::format_double(rip_rows[i].rho_plus) << ','
         << (rip_rows[i].pass ? 1 : 0) << '\n';
  }
  return result.pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"structured sparse recovery toolbox"};
  app.require_subcommand(1);

  CommonOptions gen_opts, run_opts, sweep_opts;
  auto* gen = app.add_subcommand("gen", "write one trial's artifacts (CSV/PGM + manifest)");
  add_common(gen, gen_opts);
  auto* run = app.add_subcommand("run", "per-trial recovery results (CSV)");
  add_common(run, run_opts);
  auto* sweep = app.add_subcommand("sweep", "aggregated mean/std per (method, n)");
  add_common(sweep, sweep_opts);

  std::string report_in, report_out;
  ssp::Index report_k = 1;
  auto* report = app.add_subcommand("report", "aggregate an existing run CSV");
  report->add_option("--in", report_in, "run CSV")->required();
  report->add_option("--out", report_out, "aggregated CSV")->required();
  report->add_option("--k", report_k, "nominal sparsity for the n/k column")
      ->required();

  std::string suite, check_report;
  auto* check = app.add_subcommand("check", "property suites");
  check->add_option("suite", suite, "kraft | subadditive | rip | oracle | haar")
      ->required();
  check->add_option("--out", check_report, "per-trial CSV (rip suite)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) return cmd_gen(gen_opts);
    if (run->parsed()) return cmd_run(run_opts, false);
    if (sweep->parsed()) return cmd_run(sweep_opts, true);
    if (report->parsed()) return cmd_report(report_in, report_out, report_k);
    if (check->parsed()) return cmd_check(suite, check_report);
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << '\n';
    return 1;
  }
  return 0;
}
