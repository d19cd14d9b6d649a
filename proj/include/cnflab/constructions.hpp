#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>

#include "cnflab/formula.hpp"

namespace cnflab {

// Parameters of the random (ell, k)-CNF: all-positive ell-clauses F+ and
// all-negative k-clauses F-, sampled uniformly with replacement over n
// variables.
struct LkParams {
  std::size_t ell = 0;
  std::size_t k = 0;
  double rho = 0.5;
  double c = 1.0;
  std::optional<Var> n;  // defaults to k*k
  std::uint64_t seed = 0;
  bool dedup = false;
  std::size_t clause_budget = 10'000'000;

  [[nodiscard]] Var variables() const { return n.value_or(static_cast<Var>(k * k)); }
  void validate() const;
};

struct LkSizes {
  std::size_t positive = 0;  // |F+| = ceil(c k^2 (1-rho)^-ell)
  std::size_t negative = 0;  // |F-| = ceil(c k^2 rho^-k)
};

[[nodiscard]] LkSizes lk_target_sizes(const LkParams& p);

// Ceiling that ignores floating noise just above an integer, e.g.
// 9 * (1/3)^-3 = 243.00000000000003.
[[nodiscard]] std::size_t ceil_count(double x);

// All 2^k clauses over x_1..x_k.
[[nodiscard]] Formula complete_kcnf(std::size_t k);

// Pads every clause of width k' < k with the complete (k-k')-CNF over fresh
// variables, appended after f's variables in clause order.
[[nodiscard]] Formula kcnfify(const Formula& f, std::size_t k);

// F+ then F-, deterministic in the seed.
[[nodiscard]] Formula random_lk(const LkParams& p);

// Monotone k-CNF with rho = 1/a: occ(~x) <= |F-| ~ c k^2 a^k and
// occ(x) <= |F+| ~ c k^2 (a/(a-1))^k.
[[nodiscard]] LkParams unbalanced_params(double a, std::size_t k, double c, std::uint64_t seed);
[[nodiscard]] Formula unbalanced_formula(double a, std::size_t k, double c, std::uint64_t seed);

// ell = ceil(0.2055 k), rho = k/(k+ell), then k-CNFified.
[[nodiscard]] LkParams low_product_params(std::size_t k, double c, std::uint64_t seed);
[[nodiscard]] Formula low_product_formula(std::size_t k, double c, std::uint64_t seed);

// rho = 0.6298, ell = ceil(0.333 k), then k-CNFified.
[[nodiscard]] LkParams sparse_conflict_params(std::size_t k, double c, std::uint64_t seed);
[[nodiscard]] Formula sparse_conflict_formula(std::size_t k, double c, std::uint64_t seed);

// Proposition-style bounds for the k-CNFification G of an (ell,k)-CNF.
[[nodiscard]] double kcnfify_conflict_bound(std::size_t ell, std::size_t k, std::size_t pos,
                                            std::size_t neg);
[[nodiscard]] double kcnfify_product_bound(std::size_t ell, std::size_t k, std::size_t pos,
                                           std::size_t neg);

// Removes repeated clauses, keeping first occurrences.
[[nodiscard]] Formula dedup_clauses(const Formula& f);

}  // namespace cnflab
