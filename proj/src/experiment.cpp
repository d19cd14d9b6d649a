#include "cnflab/experiment.hpp"

#include "cnflab/rng.hpp"
#include "cnflab/sparsify.hpp"

namespace cnflab {

ExperimentReport analyze_lk_formula(const Formula& f, const LkParams& params, std::uint64_t mc_trials) {
  ExperimentReport r;
  r.params = params;
  r.seed = params.seed;
  r.sizes = lk_target_sizes(params);
  r.stats = conflict_stats(f);
  r.oracle = brute_force_sat(f);
  r.counting = counting_certificate(f, params.rho);
  const auto uniform = AssignmentDistribution::uniform(f.num_variables(), params.rho);
  if (!f.has_empty_clause()) r.lll = lll_certificate(f, uniform);
  if (f.uniform_width() && params.k >= 2) r.lower_bound = lower_bound_estimate(params.k);
  r.kcnfify_conflict_bound = kcnfify_conflict_bound(params.ell, params.k, r.sizes.positive, r.sizes.negative);
  r.kcnfify_conflicts = conflict_stats(kcnfify(f, params.k)).e;
  if (mc_trials > 0) r.monte_carlo = monte_carlo_sat_prob(f, uniform, mc_trials, derive_seed(params.seed, 0xC0FFEE));
  return r;
}

VerifiedFormula generate_verified(const LkParams& params, std::size_t max_retries, std::uint64_t mc_trials) {
  params.validate();
  if (params.variables() > kDefaultOracleCap)
    throw Error("n = " + std::to_string(params.variables()) + " exceeds the brute-force cap of " +
                std::to_string(kDefaultOracleCap) + " variables");
  if (max_retries == 0) throw Error("max_retries must be >= 1");

  LkParams current = params;
  std::uint64_t counter = 0;
  std::size_t attempts = 0;
  std::optional<Formula> last_formula;
  for (int round = 0; round < 2; ++round) {
    if (round == 1) current.c *= 2.0;
    for (std::size_t i = 0; i < max_retries; ++i) {
      current.seed = derive_seed(params.seed, counter++);
      Formula f = random_lk(current);
      const OracleResult oracle = brute_force_sat(f);
      if (!oracle.sat) {
        ExperimentReport report = analyze_lk_formula(f, current, mc_trials);
        report.master_seed = params.seed;
        report.retries = attempts;
        report.c_doubled = round == 1;
        return VerifiedFormula{std::move(f), std::move(report)};
      }
      ++attempts;
      last_formula = std::move(f);
    }
  }
  ExperimentReport last = analyze_lk_formula(*last_formula, current, 0);
  last.master_seed = params.seed;
  last.retries = attempts;
  last.c_doubled = true;
  throw GenerateError("no unsatisfiable formula within " + std::to_string(max_retries) +
                          " retries at c and 2c; the construction constant is too small for these parameters",
                      std::move(last));
}

}  // namespace cnflab
