#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "cnflab/certify.hpp"
#include "cnflab/formula.hpp"

namespace cnflab {

struct DistributionOptions {
  // Pure variables break occ(u) <= e(F); when allowed, p(x) is capped at 1.
  bool allow_pure = false;
};

// p(x) = max{1/2, (occ(x) / (16 e(F)))^(1/k)} for a k-uniform,
// orientation-normalized formula with e(F) >= 1.
[[nodiscard]] AssignmentDistribution lower_bound_distribution(const Formula& f,
                                                              const DistributionOptions& options = {});

struct ClausePartition {
  std::vector<std::size_t> good;
  std::vector<std::size_t> bad;  // some literal has p(u) < 1/2
};

[[nodiscard]] ClausePartition classify_clauses(const Formula& f, const AssignmentDistribution& dist);

// Sum of Pr[alpha !|= C] over bad clauses.
[[nodiscard]] double bad_mass(const Formula& f, const AssignmentDistribution& dist);

struct SparsifyStep {
  Literal removed;
  std::size_t clause;
  Clause before;
  double literal_sum;   // sum over good clauses containing the literal
  double clause_prob;   // Pr[alpha !|= before]
};

enum class SparsifyOutcome { EmptyClause, Fixpoint };

struct SparsifyTrace {
  std::vector<SparsifyStep> steps;
  SparsifyOutcome outcome = SparsifyOutcome::Fixpoint;
  std::optional<std::size_t> empty_clause;    // first clause emptied
  std::vector<std::size_t> emptied_clauses;   // all fully deleted good clauses, in order
  Formula final_formula;
  AssignmentDistribution distribution;
  std::vector<std::size_t> bad_clauses;
  double threshold = 0.0;  // 1/(8k)
  std::size_t k = 0;
};

struct SparsifyOptions {
  bool short_circuit = true;
  bool allow_pure = false;
};

// Deletes literals u whose good-clause mass exceeds 1/(8k) from the most
// likely unsatisfied good clause containing u, until no such literal remains
// (or, with short_circuit, until a clause becomes empty). Literals are scanned
// by variable ascending, positive first; ties between clauses go to the lowest
// clause index.
[[nodiscard]] SparsifyTrace sparsification_process(const Formula& f, const SparsifyOptions& options = {});

struct QSequence {
  std::vector<double> q;
  std::optional<std::size_t> ell_star;  // 1-based, first q_i > 1/2
  // 1-based index of the first inequality no q in [1/2, 1] satisfies; then q
  // holds only the feasible prefix.
  std::optional<std::size_t> infeasible_at;
  double target = 0.0;  // 1 / (128 k e)
};

// Componentwise-minimal q in [1/2,1]^k with q_l^k prod_{i<=l} (1 - q_i) >= 1/(128 k e).
[[nodiscard]] QSequence q_sequence(double e, std::size_t k);

// 2^(2k - S_k) / (128 k).
[[nodiscard]] double lower_bound_estimate(std::size_t k);

}  // namespace cnflab
