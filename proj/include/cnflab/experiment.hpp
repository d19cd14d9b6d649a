#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>

#include "cnflab/conflict.hpp"
#include "cnflab/constructions.hpp"
#include "cnflab/oracle.hpp"

namespace cnflab {

struct ExperimentReport {
  LkParams params;           // as finally used (c possibly doubled)
  std::uint64_t master_seed = 0;
  std::uint64_t seed = 0;    // derived seed of the returned formula
  std::size_t retries = 0;   // formulas generated before the returned one
  bool c_doubled = false;
  LkSizes sizes;
  ConflictStats stats;
  OracleResult oracle;
  Certificate counting;      // at the generator's rho
  std::optional<Certificate> lll;  // uniform rho distribution; absent with an empty clause
  std::optional<double> lower_bound;  // 2^(2k-S_k)/(128k), when the formula is k-uniform
  double kcnfify_conflict_bound = 0.0;
  std::uint64_t kcnfify_conflicts = 0;
  std::optional<MonteCarloEstimate> monte_carlo;
};

// Builds the report for a single formula of the construction.
[[nodiscard]] ExperimentReport analyze_lk_formula(const Formula& f, const LkParams& params,
                                                  std::uint64_t mc_trials = 10'000);

class GenerateError : public Error {
 public:
  GenerateError(const std::string& what, ExperimentReport last)
      : Error(what), last_{std::move(last)} {}
  [[nodiscard]] const ExperimentReport& last_report() const { return last_; }

 private:
  ExperimentReport last_;
};

struct VerifiedFormula {
  Formula formula;
  ExperimentReport report;
};

// Draws random (ell,k)-CNFs with seeds derived from params.seed until one is
// brute-force UNSAT; after max_retries failures c is doubled once for another
// max_retries attempts. Throws GenerateError if none is found.
[[nodiscard]] VerifiedFormula generate_verified(const LkParams& params, std::size_t max_retries = 20,
                                                std::uint64_t mc_trials = 10'000);

}  // namespace cnflab
