#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>

#include "cnflab/certify.hpp"
#include "cnflab/formula.hpp"

namespace cnflab {

inline constexpr Var kDefaultOracleCap = 26;

struct OracleResult {
  bool sat = false;
  std::optional<Assignment> witness;  // lowest satisfying assignment as an integer
  std::uint64_t assignments_checked = 0;
};

// Exhaustive search over assignments 0..2^n-1 (bit x-1 holds variable x).
// Ranges of assignments falsifying a known clause are skipped, which changes
// neither the verdict nor the witness.
[[nodiscard]] OracleResult brute_force_sat(const Formula& f, Var cap = kDefaultOracleCap);

struct MonteCarloEstimate {
  double estimate = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  std::uint64_t trials = 0;
  std::uint64_t satisfied = 0;
};

// Fraction of sampled assignments satisfying f, with a 95% normal interval.
[[nodiscard]] MonteCarloEstimate monte_carlo_sat_prob(const Formula& f, const AssignmentDistribution& dist,
                                                      std::uint64_t trials, std::uint64_t seed);

}  // namespace cnflab
