#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

#include <json.hpp>

#include "structsparse/structomp.hpp"
#include "structsparse/types.hpp"

namespace structsparse {

enum class SignalKind { strong_1d, weak_1d, blobs_2d, piecewise_2d };

std::string to_string(SignalKind kind);
SignalKind signal_kind_from_string(const std::string& name);

struct SignalSpec {
  SignalKind kind = SignalKind::strong_1d;
  Index p = 0;          // 1D length (2D kinds use h * w)
  Index h = 0, w = 0;   // 2D dims
  Index k = 0;          // nominal sparsity
  Index g = 0;          // region count
  Index blob_size = 0;  // blobs_2d
  double decay = 3.0;   // weak_1d exponent
  /// Energy fraction of the truth that the recovery budget must cover;
  /// defaults: 1.0 strong/blobs, 0.95 weak, 0.90 piecewise.
  double energy_quantile = 1.0;

  Index dimension() const;
  Index nominal_k() const;

  static SignalSpec from_json(const nlohmann::json& spec);
  nlohmann::json to_json() const;
};

struct MethodSpec {
  std::string name;  // structomp | omp | lasso | group-lasso
  std::string id;    // row label; defaults to the name (+ group size)
  nlohmann::json blocks;  // block set descriptor; empty -> derived from signal
  nlohmann::json scheme;  // coding scheme descriptor; empty -> derived
  double budget_factor = 1.0;
  GainMode gain = GainMode::correlation;
  Index k_max = 0;           // omp; 0 -> nominal_k
  Index grid_points = 100;   // lasso grids
  double grid_min_ratio = 1e-4;
  Index group_size = 8;      // group-lasso

  static MethodSpec from_json(const nlohmann::json& spec);
  nlohmann::json to_json() const;
};

struct ExperimentConfig {
  SignalSpec signal;
  std::vector<Index> n_values;
  double sigma = 0.01;
  std::vector<MethodSpec> methods;
  Index trials = 20;
  std::uint64_t master_seed = 0;
  std::string out;

  static ExperimentConfig from_json(const nlohmann::json& spec);
  nlohmann::json to_json() const;
};

struct TrialResult {
  std::string method;
  Index n = 0;
  Index trial = 0;
  std::uint64_t seed = 0;
  double recovery_error = 0.0;
  double residual_norm = 0.0;
  double model_complexity = 0.0;
  Index model_nnz = 0;
};

/// The data every method of one trial sees (paired comparison): design,
/// ground-truth coefficients and noisy observation, all derived from the
/// master seed, the sample size and the trial index.
struct TrialData {
  Matrix X;
  Vector truth;
  Vector y;
};

TrialData make_trial_data(const SignalSpec& signal, Index n, double sigma,
                          std::uint64_t master_seed, Index trial);

/// Fits one method on prepared trial data.
TrialResult run_method(const MethodSpec& method, const SignalSpec& signal,
                       const TrialData& data);

/// Runs every (method, n, trial) cell; rows come back ordered by
/// (method, n, trial) no matter how many worker threads ran them.
std::vector<TrialResult> run_experiment(const ExperimentConfig& config,
                                        int threads = 1);

struct SweepRow {
  std::string method;
  Index n = 0;
  double ratio = 0.0;  // n / nominal k
  Index trials = 0;
  double mean_error = 0.0;
  double std_error = 0.0;  // sample standard deviation (0 for a single trial)
};

std::vector<SweepRow> aggregate(const std::vector<TrialResult>& results,
                                Index nominal_k);

void write_results_csv(std::ostream& os, const std::vector<TrialResult>& results);
std::vector<TrialResult> read_results_csv(std::istream& is);
void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows);

/// Manifest: resolved config plus every derived seed, so a run is fully
/// reconstructible from this one document.
nlohmann::json run_manifest(const ExperimentConfig& config);

/// Recovery budget for a structured method: the scheme complexity of the
/// structural cover (zero-tree closure for tree coding, group closure for
/// group coding) of the truth's top energy_quantile support, truncated to
/// at most support_cap entries so the budget never asks for more features
/// than the sample size supports.
double recovery_budget(const CodingScheme& scheme, const Vector& truth,
                       double energy_quantile, double factor,
                       Index support_cap);

}  // namespace structsparse
