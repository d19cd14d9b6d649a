#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "cnflab/formula.hpp"

namespace cnflab {

// Literal occurrence counts, indexed by Literal::index().
class OccurrenceTable {
 public:
  explicit OccurrenceTable(const Formula& f);

  [[nodiscard]] std::size_t occ(Literal lit) const { return counts_[lit.index()]; }
  [[nodiscard]] std::size_t degree(Var x) const {
    return occ(Literal{x, true}) + occ(Literal{x, false});
  }
  [[nodiscard]] Var num_variables() const { return num_variables_; }

 private:
  Var num_variables_;
  std::vector<std::size_t> counts_;
};

// Conflict-graph statistics. Vertices are clause instances; a pair clashing on
// several variables is one edge. Per-variable tables are indexed by variable
// (slot 0 unused).
struct ConflictStats {
  std::uint64_t e = 0;
  std::size_t delta = 0;
  std::vector<std::size_t> degree_of_clause;
  std::vector<std::size_t> occ_pos;
  std::vector<std::size_t> occ_neg;
  std::vector<std::size_t> var_degree;
  std::size_t d_max = 0;
  std::vector<std::uint64_t> occ_products;
  // Inequality e(F) >= (1/k) sum_x occ(x) occ(~x), k = max clause width.
  double ineq1_lhs = 0.0;
  double ineq1_rhs = 0.0;
  std::size_t k = 0;
};

[[nodiscard]] ConflictStats conflict_stats(const Formula& f);

// For each clause, the indices of the clauses conflicting with it (ascending).
[[nodiscard]] std::vector<std::vector<std::size_t>> conflict_neighbors(const Formula& f);

// Flips every variable with occ(~x) > occ(x), so occ(~x) <= occ(x) afterwards.
[[nodiscard]] Formula normalize_orientation(const Formula& f);
[[nodiscard]] bool is_orientation_normalized(const Formula& f);

// Variables that occur in exactly one polarity.
[[nodiscard]] std::vector<Var> pure_variables(const Formula& f);

struct PureEliminationResult {
  Formula formula;
  std::vector<Literal> assigned;  // pure literals set true, in elimination order
  std::size_t removed_clauses = 0;
};

// Repeatedly drops clauses containing a pure literal.
[[nodiscard]] PureEliminationResult eliminate_pure_literals(const Formula& f);

}  // namespace cnflab
