#include "structsparse/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "structsparse/baselines.hpp"
#include "structsparse/descriptors.hpp"
#include "structsparse/io.hpp"
#include "structsparse/rng.hpp"
#include "structsparse/signals.hpp"
#include "structsparse/wavelet.hpp"

namespace structsparse {

using nlohmann::json;

std::string to_string(SignalKind kind) {
  switch (kind) {
    case SignalKind::strong_1d: return "strong-1d";
    case SignalKind::weak_1d: return "weak-1d";
    case SignalKind::blobs_2d: return "blobs-2d";
    case SignalKind::piecewise_2d: return "piecewise-2d";
  }
  throw std::logic_error("to_string: unknown signal kind");
}

SignalKind signal_kind_from_string(const std::string& name) {
  if (name == "strong-1d") return SignalKind::strong_1d;
  if (name == "weak-1d") return SignalKind::weak_1d;
  if (name == "blobs-2d") return SignalKind::blobs_2d;
  if (name == "piecewise-2d") return SignalKind::piecewise_2d;
  throw std::invalid_argument("unknown signal kind: " + name);
}

Index SignalSpec::dimension() const {
  return (kind == SignalKind::strong_1d || kind == SignalKind::weak_1d) ? p : h * w;
}

Index SignalSpec::nominal_k() const {
  switch (kind) {
    case SignalKind::strong_1d: return k;
    case SignalKind::weak_1d: return k > 0 ? k : 32;
    case SignalKind::blobs_2d: return g * blob_size;
    case SignalKind::piecewise_2d: return std::max<Index>(1, h * w / 10);
  }
  throw std::logic_error("nominal_k: unknown signal kind");
}

SignalSpec SignalSpec::from_json(const json& spec) {
  SignalSpec s;
  s.kind = signal_kind_from_string(spec.at("kind").get<std::string>());
  s.p = spec.value("p", Index{0});
  s.h = spec.value("h", Index{0});
  s.w = spec.value("w", Index{0});
  s.k = spec.value("k", Index{0});
  s.g = spec.value("g", Index{0});
  s.blob_size = spec.value("blob_size", Index{0});
  s.decay = spec.value("decay", 1.0);
  const double default_quantile = (s.kind == SignalKind::weak_1d ||
                                   s.kind == SignalKind::piecewise_2d)
                                      ? 0.99
                                      : 1.0;
  s.energy_quantile = spec.value("energy_quantile", default_quantile);
  if (s.kind == SignalKind::weak_1d && s.k == 0) s.k = 32;
  if (s.dimension() < 1)
    throw std::invalid_argument("signal spec: missing dimensions");
  return s;
}

json SignalSpec::to_json() const {
  json out{{"kind", to_string(kind)},
           {"decay", decay},
           {"energy_quantile", energy_quantile}};
  if (p > 0) out["p"] = p;
  if (h > 0) out["h"] = h;
  if (w > 0) out["w"] = w;
  if (k > 0) out["k"] = k;
  if (g > 0) out["g"] = g;
  if (blob_size > 0) out["blob_size"] = blob_size;
  return out;
}

MethodSpec MethodSpec::from_json(const json& spec) {
  MethodSpec m;
  m.name = spec.at("name").get<std::string>();
  if (m.name != "structomp" && m.name != "omp" && m.name != "lasso" &&
      m.name != "group-lasso")
    throw std::invalid_argument("unknown method: " + m.name);
  if (spec.contains("blocks")) m.blocks = spec.at("blocks");
  if (spec.contains("scheme")) m.scheme = spec.at("scheme");
  m.budget_factor = spec.value("budget_factor", 1.0);
  m.gain = spec.value("gain", std::string("correlation")) == "projection"
               ? GainMode::projection
               : GainMode::correlation;
  m.k_max = spec.value("k_max", Index{0});
  m.grid_points = spec.value("grid_points", Index{100});
  m.grid_min_ratio = spec.value("grid_min_ratio", 1e-4);
  m.group_size = spec.value("group_size", Index{8});
  m.id = spec.value("id", std::string());
  if (m.id.empty())
    m.id = m.name == "group-lasso" ? m.name + "-gs" + std::to_string(m.group_size)
                                   : m.name;
  return m;
}

json MethodSpec::to_json() const {
  json out{{"name", name}, {"id", id}};
  if (name == "structomp") {
    out["budget_factor"] = budget_factor;
    out["gain"] = gain == GainMode::projection ? "projection" : "correlation";
    if (!blocks.empty()) out["blocks"] = blocks;
    if (!scheme.empty()) out["scheme"] = scheme;
  } else if (name == "omp") {
    if (k_max > 0) out["k_max"] = k_max;
  } else {
    out["grid_points"] = grid_points;
    out["grid_min_ratio"] = grid_min_ratio;
    if (name == "group-lasso") out["group_size"] = group_size;
  }
  return out;
}

ExperimentConfig ExperimentConfig::from_json(const json& spec) {
  ExperimentConfig cfg;
  cfg.signal = SignalSpec::from_json(spec.at("signal"));
  if (spec.contains("n")) {
    cfg.n_values = spec.at("n").get<std::vector<Index>>();
  } else if (spec.contains("n_over_k")) {
    for (double ratio : spec.at("n_over_k").get<std::vector<double>>())
      cfg.n_values.push_back(static_cast<Index>(
          std::lround(ratio * static_cast<double>(cfg.signal.nominal_k()))));
  } else {
    for (double ratio = 1.5; ratio <= 5.0 + 1e-9; ratio += 0.5)
      cfg.n_values.push_back(static_cast<Index>(
          std::lround(ratio * static_cast<double>(cfg.signal.nominal_k()))));
  }
  for (Index n : cfg.n_values)
    if (n < 1 || n > cfg.signal.dimension())
      throw std::invalid_argument("experiment config: n must be in [1, p]");
  cfg.sigma = spec.value("sigma", 0.01);
  if (!spec.contains("methods") || spec.at("methods").empty())
    throw std::invalid_argument("experiment config: methods must be nonempty");
  for (const auto& m : spec.at("methods")) cfg.methods.push_back(MethodSpec::from_json(m));
  cfg.trials = spec.value("trials", Index{20});
  if (cfg.trials < 1) throw std::invalid_argument("experiment config: trials must be >= 1");
  cfg.master_seed = spec.value("seed", std::uint64_t{0});
  cfg.out = spec.value("out", std::string());
  return cfg;
}

json ExperimentConfig::to_json() const {
  json methods_json = json::array();
  for (const MethodSpec& m : methods) methods_json.push_back(m.to_json());
  return json{{"signal", signal.to_json()}, {"n", n_values},
              {"sigma", sigma},             {"methods", methods_json},
              {"trials", trials},           {"seed", master_seed},
              {"out", out}};
}

namespace {

Vector make_truth(const SignalSpec& signal, std::uint64_t seed) {
  switch (signal.kind) {
    case SignalKind::strong_1d:
      return gen_1d_strong(signal.p, signal.k, signal.g, seed);
    case SignalKind::weak_1d:
      return gen_1d_weak(signal.p, signal.g, signal.decay, seed).coefficients;
    case SignalKind::blobs_2d:
      return gen_2d_blobs(signal.h, signal.w, signal.g, signal.blob_size, seed);
    case SignalKind::piecewise_2d: {
      const Matrix image = gen_2d_piecewise(signal.h, signal.w, seed);
      return flatten_row_major(
          haar2_forward(image, max_haar_levels(signal.h, signal.w)));
    }
  }
  throw std::logic_error("make_truth: unknown signal kind");
}

json default_blocks_json(const SignalSpec& signal) {
  switch (signal.kind) {
    case SignalKind::strong_1d:
    case SignalKind::weak_1d:
      return json{{"kind", "line"}, {"p", signal.p}};
    case SignalKind::blobs_2d:
      return json{{"kind", "grid"}, {"h", signal.h}, {"w", signal.w}};
    case SignalKind::piecewise_2d:
      return json{{"kind", "tree-wavelet"}, {"h", signal.h}, {"w", signal.w}};
  }
  throw std::logic_error("default_blocks_json: unknown signal kind");
}

json default_scheme_json(const SignalSpec& signal) {
  switch (signal.kind) {
    case SignalKind::strong_1d:
    case SignalKind::weak_1d:
      return json{{"kind", "graph-line"}, {"p", signal.p}};
    case SignalKind::blobs_2d:
      return json{{"kind", "graph-grid"}, {"h", signal.h}, {"w", signal.w}};
    case SignalKind::piecewise_2d:
      return json{{"kind", "tree-wavelet"}, {"h", signal.h}, {"w", signal.w}};
  }
  throw std::logic_error("default_scheme_json: unknown signal kind");
}

void parallel_for(Index count, int threads, const std::function<void(Index)>& body) {
  if (threads <= 1 || count <= 1) {
    for (Index i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<Index> next{0};
  auto worker = [&] {
    while (true) {
      const Index i = next.fetch_add(1);
      if (i >= count) return;
      body(i);
    }
  };
  std::vector<std::thread> pool;
  const int workers = static_cast<int>(
      std::min<Index>(count, static_cast<Index>(threads)));
  pool.reserve(static_cast<std::size_t>(workers));
  for (int t = 0; t < workers; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
}

}  // namespace

double recovery_budget(const CodingScheme& scheme, const Vector& truth,
                       double energy_quantile, double factor,
                       Index support_cap) {
  SupportSet target = top_energy_support(truth, energy_quantile);
  if (target.size() > support_cap) {
    // Keep the support_cap largest magnitudes.
    std::vector<std::pair<double, Index>> ranked;
    for (Index j : target) ranked.emplace_back(-std::abs(truth[j]), j);
    std::sort(ranked.begin(), ranked.end());
    std::vector<Index> kept;
    for (Index i = 0; i < support_cap; ++i)
      kept.push_back(ranked[static_cast<std::size_t>(i)].second);
    target = SupportSet(std::move(kept));
  }
  if (const auto* tree_scheme = dynamic_cast<const TreeCoding*>(&scheme))
    target = zero_tree_closure(tree_scheme->tree(), target, scheme.dimension());
  else
    target = scheme.canonical_cover(target);
  return factor * scheme.complexity(target);
}

TrialData make_trial_data(const SignalSpec& signal, Index n, double sigma,
                          std::uint64_t master_seed, Index trial) {
  TrialData data;
  data.truth = make_truth(signal, derive_seed(master_seed, "signal",
                                              static_cast<std::uint64_t>(n),
                                              static_cast<std::uint64_t>(trial)));
  data.X = gen_design_gaussian(n, signal.dimension(),
                               derive_seed(master_seed, "design",
                                           static_cast<std::uint64_t>(n),
                                           static_cast<std::uint64_t>(trial)));
  data.y = add_noise(data.X * data.truth,
                     {sigma, derive_seed(master_seed, "noise",
                                         static_cast<std::uint64_t>(n),
                                         static_cast<std::uint64_t>(trial))});
  return data;
}

TrialResult run_method(const MethodSpec& method, const SignalSpec& signal,
                       const TrialData& data) {
  const Index p = signal.dimension();
  const Index n = data.X.rows();
  TrialResult row;
  row.method = method.id;
  row.n = n;

  Vector estimate;
  if (method.name == "structomp") {
    const BlockSet blocks = block_set_from_json(
        method.blocks.empty() ? default_blocks_json(signal) : method.blocks);
    const auto scheme = scheme_from_json(
        method.scheme.empty() ? default_scheme_json(signal) : method.scheme);
    GreedyConfig cfg;
    cfg.budget = recovery_budget(*scheme, data.truth, signal.energy_quantile,
                                 method.budget_factor, n);
    cfg.gain = method.gain;
    const GreedyPath path = struct_omp(data.X, data.y, blocks, *scheme, cfg);
    // Reported errors use the best state against the truth, the same oracle
    // selection the baseline paths get.
    const GreedyState* best = &path.final_state();
    for (const GreedyState& state : path.states)
      if (recovery_error(state.coefficients, data.truth) <
          recovery_error(best->coefficients, data.truth))
        best = &state;
    estimate = best->coefficients;
    row.residual_norm = best->residual_norm;
    row.model_complexity = best->complexity;
  } else if (method.name == "omp") {
    const Index k_max = std::min(
        {method.k_max > 0 ? method.k_max : signal.nominal_k(), n, p});
    const auto path = omp(data.X, data.y, k_max);
    const Index pick =
        select_model(path, SelectionCriterion::min_true_error(data.truth));
    estimate = path[static_cast<std::size_t>(pick)].coefficients;
    row.residual_norm = path[static_cast<std::size_t>(pick)].residual_norm;
  } else {
    const auto grid =
        make_lambda_grid(method.name == "lasso"
                             ? lasso_lambda_max(data.X, data.y)
                             : group_lasso_lambda_max(
                                   data.X, data.y,
                                   consecutive_groups(p, method.group_size)),
                         method.grid_points, method.grid_min_ratio);
    const auto path =
        method.name == "lasso"
            ? lasso_path(data.X, data.y, grid)
            : group_lasso_path(data.X, data.y,
                               consecutive_groups(p, method.group_size), grid);
    const Index pick =
        select_model(path, SelectionCriterion::min_true_error(data.truth));
    estimate = path[static_cast<std::size_t>(pick)].coefficients;
    row.residual_norm = path[static_cast<std::size_t>(pick)].residual_norm;
  }

  if (method.name != "structomp")
    row.model_complexity = StandardCoding(p).vector_complexity(estimate);
  row.model_nnz = support_of(estimate).size();
  row.recovery_error = recovery_error(estimate, data.truth);
  return row;
}

std::vector<TrialResult> run_experiment(const ExperimentConfig& config,
                                        int threads) {
  const Index cells =
      static_cast<Index>(config.n_values.size()) * config.trials;
  const Index method_count = static_cast<Index>(config.methods.size());
  std::vector<TrialResult> results(
      static_cast<std::size_t>(cells * method_count));

  parallel_for(cells, threads, [&](Index cell) {
    const Index n_idx = cell / config.trials;
    const Index trial = cell % config.trials;
    const Index n = config.n_values[static_cast<std::size_t>(n_idx)];
    const TrialData data =
        make_trial_data(config.signal, n, config.sigma, config.master_seed, trial);
    for (Index m = 0; m < method_count; ++m) {
      TrialResult row;
      try {
        row = run_method(config.methods[static_cast<std::size_t>(m)],
                         config.signal, data);
      } catch (const std::exception& err) {
        // A solver failure flags the row and the run continues.
        row.method = config.methods[static_cast<std::size_t>(m)].id;
        row.n = n;
        row.recovery_error = std::numeric_limits<double>::quiet_NaN();
        row.residual_norm = std::numeric_limits<double>::quiet_NaN();
      }
      row.trial = trial;
      row.seed = derive_seed(config.master_seed, "trial",
                             static_cast<std::uint64_t>(n),
                             static_cast<std::uint64_t>(trial));
      // Row slot ordered by (method, n, trial).
      results[static_cast<std::size_t>(m * cells + cell)] = std::move(row);
    }
  });
  return results;
}

std::vector<SweepRow> aggregate(const std::vector<TrialResult>& results,
                                Index nominal_k) {
  std::vector<SweepRow> rows;
  for (const TrialResult& r : results) {
    auto it = std::find_if(rows.begin(), rows.end(), [&r](const SweepRow& s) {
      return s.method == r.method && s.n == r.n;
    });
    if (it == rows.end()) {
      rows.push_back({r.method, r.n,
                      static_cast<double>(r.n) / static_cast<double>(nominal_k),
                      0, 0.0, 0.0});
      it = std::prev(rows.end());
    }
    ++it->trials;
    it->mean_error += r.recovery_error;  // running sum for now
    it->std_error += r.recovery_error * r.recovery_error;
  }
  for (SweepRow& s : rows) {
    const double count = static_cast<double>(s.trials);
    const double mean = s.mean_error / count;
    const double sq = s.std_error / count;
    s.mean_error = mean;
    s.std_error = s.trials > 1
                      ? std::sqrt(std::max(0.0, (sq - mean * mean) * count / (count - 1.0)))
                      : 0.0;
  }
  return rows;
}

void write_results_csv(std::ostream& os, const std::vector<TrialResult>& results) {
  os << "# schema: structsparse.run.v1\n";
  os << "method,n,trial,seed,recovery_error,residual_norm,model_complexity,model_nnz\n";
  for (const TrialResult& r : results)
    os << r.method << ',' << r.n << ',' << r.trial << ',' << r.seed << ','
       << format_double(r.recovery_error) << ',' << format_double(r.residual_norm)
       << ',' << format_double(r.model_complexity) << ',' << r.model_nnz << '\n';
}

std::vector<TrialResult> read_results_csv(std::istream& is) {
  std::vector<TrialResult> results;
  std::string line;
  bool header_seen = false;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (!header_seen) {
      header_seen = true;  // column header row
      continue;
    }
    std::stringstream ss(line);
    std::string cell;
    TrialResult r;
    std::getline(ss, cell, ',');
    r.method = cell;
    std::getline(ss, cell, ',');
    r.n = std::stoll(cell);
    std::getline(ss, cell, ',');
    r.trial = std::stoll(cell);
    std::getline(ss, cell, ',');
    r.seed = std::stoull(cell);
    std::getline(ss, cell, ',');
    r.recovery_error = std::stod(cell);
    std::getline(ss, cell, ',');
    r.residual_norm = std::stod(cell);
    std::getline(ss, cell, ',');
    r.model_complexity = std::stod(cell);
    std::getline(ss, cell, ',');
    r.model_nnz = std::stoll(cell);
    results.push_back(std::move(r));
  }
  return results;
}

void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows) {
  os << "# schema: structsparse.sweep.v1\n";
  os << "method,n,ratio,trials,mean_error,std_error\n";
  for (const SweepRow& s : rows)
    os << s.method << ',' << s.n << ',' << format_double(s.ratio) << ','
       << s.trials << ',' << format_double(s.mean_error) << ','
       << format_double(s.std_error) << '\n';
}

nlohmann::json run_manifest(const ExperimentConfig& config) {
  json seeds = json::array();
  for (Index n : config.n_values)
    for (Index trial = 0; trial < config.trials; ++trial)
      seeds.push_back(
          {{"n", n},
           {"trial", trial},
           {"signal", derive_seed(config.master_seed, "signal",
                                  static_cast<std::uint64_t>(n),
                                  static_cast<std::uint64_t>(trial))},
           {"design", derive_seed(config.master_seed, "design",
                                  static_cast<std::uint64_t>(n),
                                  static_cast<std::uint64_t>(trial))},
           {"noise", derive_seed(config.master_seed, "noise",
                                 static_cast<std::uint64_t>(n),
                                 static_cast<std::uint64_t>(trial))}});
  return json{{"schema", "structsparse.manifest.v1"},
              {"config", config.to_json()},
              {"seeds", seeds}};
}

}  // namespace structsparse
