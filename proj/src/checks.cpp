#include "structsparse/checks.hpp"

#include <cmath>
#include <sstream>

#include "structsparse/io.hpp"
#include "structsparse/linalg.hpp"
#include "structsparse/rng.hpp"
#include "structsparse/signals.hpp"
#include "structsparse/structomp.hpp"
#include "structsparse/wavelet.hpp"

namespace structsparse {

namespace {
constexpr double kKraftSlack = 1e-9;
constexpr std::uint64_t kSuiteSeed = 0x5eed5eedULL;
}  // namespace

CheckResult check_kraft_suite() {
  std::ostringstream detail;
  bool pass = true;
  auto record = [&](const std::string& label, double sum) {
    const bool ok = sum <= 1.0 + kKraftSlack;
    pass = pass && ok;
    detail << label << "=" << format_double(sum) << (ok ? "" : " (FAIL)") << "; ";
  };

  record("standard(p=10)", kraft_sum(StandardCoding(10)));
  {
    std::vector<double> costs;
    for (Index j = 0; j < 10; ++j)
      costs.push_back(std::log2(10.0) + (j % 2 == 0 ? 1.0 : 2.0));
    record("nonuniform(p=10)", kraft_sum(NonUniformSingletonCoding(10, costs)));
  }
  record("group(p=12,gs=3)", kraft_sum(GroupCoding::uniform(12, 3)));
  record("block-exact(p=10,line)",
         kraft_sum(BlockInducedCoding(line_connected_blocks(10, 3),
                                      BlockInducedCoding::Mode::exact)));
  record("tree(depth=3)", kraft_sum(TreeCoding(complete_binary_tree(3), 8)));
  record("graph-path(p=10)", kraft_sum(GraphCoding::line(10)));
  record("graph-grid(3x3)", kraft_sum(GraphCoding::grid(3, 3)));
  return {pass, detail.str()};
}

CheckResult check_subadditive_suite() {
  std::ostringstream detail;
  bool pass = true;
  auto record = [&](const std::string& label, const CodingScheme& scheme) {
    const SubadditivityReport report = check_subadditive(scheme);
    pass = pass && report.ok;
    detail << label << (report.ok ? "=ok" : "=FAIL") << "; ";
  };
  record("standard(p=10)", StandardCoding(10));
  record("block-exact(p=10,line)",
         BlockInducedCoding(line_connected_blocks(10, 3),
                            BlockInducedCoding::Mode::exact));
  record("graph-path(p=10)", GraphCoding::line(10));
  record("graph-grid(3x3)", GraphCoding::grid(3, 3));
  return {pass, detail.str()};
}

CheckResult check_rip_suite(std::vector<RipTrial>* report) {
  const Index p = 12;
  const GroupCoding scheme = GroupCoding::uniform(p, 3);
  const double s = scheme.complexity(scheme.groups().front());
  const double delta = 0.5;
  const double t = std::log(20.0);
  const Index n = static_cast<Index>(std::ceil(rip_sample_bound(delta, t, s)));
  const Index trials = 200;

  std::vector<RipTrial> local;
  std::vector<RipTrial>& rows = report != nullptr ? *report : local;
  const double fraction =
      check_structured_rip(n, p, scheme, s, delta, trials, kSuiteSeed, &rows);

  // Matched-cardinality comparison: the group-feasible family at budget s
  // holds supports of at most `max_card` features, so its rho_- can only
  // dominate the unstructured one at that cardinality.
  const auto group_family = feasible_supports(scheme, s);
  Index max_card = 0;
  for (const SupportSet& F : group_family) max_card = std::max(max_card, F.size());
  const auto standard_family = supports_up_to_cardinality(p, max_card);
  bool dominance = true;
  for (Index trial = 0; trial < trials && dominance; ++trial) {
    const Matrix X =
        gen_design_gaussian_raw(n, p, derive_seed(kSuiteSeed, "rip-trial", trial));
    const double group_min = rho_over_supports(X, group_family).rho_minus;
    const double standard_min = rho_over_supports(X, standard_family).rho_minus;
    dominance = group_min >= standard_min - 1e-12;
  }

  std::ostringstream detail;
  detail << "n=" << n << " s=" << format_double(s)
         << " success=" << format_double(fraction)
         << " rho-dominance=" << (dominance ? "ok" : "FAIL");
  return {fraction >= 0.95 && dominance, detail.str()};
}

CheckResult check_oracle_suite() {
  const Index p = 12;
  const Index n = 12;
  const Index seeds = 100;
  const BlockSet blocks = line_connected_blocks(p, 4);
  const GraphCoding scheme = GraphCoding::line(p);

  Index dominated = 0;
  Index support_matches = 0;
  for (Index seed = 0; seed < seeds; ++seed) {
    Rng rng(derive_seed(kSuiteSeed, "oracle", seed));
    const Index len = rng.uniform_int(2, 4);
    const Index start = rng.uniform_int(0, p - len);
    Vector truth = Vector::Zero(p);
    for (Index j = start; j < start + len; ++j)
      truth[j] = rng.uniform() < 0.5 ? -1.0 : 1.0;

    const Matrix X =
        gen_design_gaussian(n, p, derive_seed(kSuiteSeed, "oracle-design", seed));
    const Vector y = X * truth;  // noiseless
    const double budget = 4.0 * scheme.complexity(support_of(truth));

    GreedyConfig cfg;
    cfg.budget = budget;
    cfg.gain = GainMode::projection;
    const GreedyPath path = struct_omp(X, y, blocks, scheme, cfg);
    // Equal-budget contest: the oracle must never lose to the greedy model
    // that still respects the budget.
    const Vector greedy = path.budget_state().coefficients;
    const double greedy_obj = (X * greedy - y).squaredNorm();

    const Vector oracle = exhaustive_constrained_solver(X, y, scheme, budget);
    const double oracle_obj = (X * oracle - y).squaredNorm();
    if (oracle_obj <= greedy_obj + 1e-9 * y.squaredNorm()) ++dominated;

    const double tol = 1e-8 * truth.cwiseAbs().maxCoeff();
    if (support_of(greedy, tol) == support_of(oracle, tol)) ++support_matches;
  }

  std::ostringstream detail;
  detail << "dominance=" << dominated << "/" << seeds
         << " support-match=" << support_matches << "/" << seeds;
  return {dominated == seeds && support_matches >= 90, detail.str()};
}

CheckResult check_haar_suite() {
  Rng rng(kSuiteSeed);
  Matrix image(32, 32);
  for (Index r = 0; r < 32; ++r)
    for (Index c = 0; c < 32; ++c) image(r, c) = rng.normal();
  const int levels = max_haar_levels(32, 32);
  const Matrix coeffs = haar2_forward(image, levels);
  const Matrix back = haar2_inverse(coeffs, levels);
  const double round_trip = (back - image).cwiseAbs().maxCoeff();
  const double parseval =
      std::abs(coeffs.norm() - image.norm()) / image.norm();
  std::ostringstream detail;
  detail << "round-trip=" << format_double(round_trip)
         << " parseval=" << format_double(parseval);
  return {round_trip <= 1e-10 && parseval <= 1e-10, detail.str()};
}

CheckResult run_check_suite(const std::string& name, std::vector<RipTrial>* report) {
  if (name == "kraft") return check_kraft_suite();
  if (name == "subadditive") return check_subadditive_suite();
  if (name == "rip") return check_rip_suite(report);
  if (name == "oracle") return check_oracle_suite();
  if (name == "haar") return check_haar_suite();
  throw std::invalid_argument("unknown check suite: " + name);
}

}  // namespace structsparse
