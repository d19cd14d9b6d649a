#include "cnflab/conflict.hpp"

#include <algorithm>

namespace cnflab {

namespace {

// Clause ids per literal slot.
std::vector<std::vector<std::size_t>> occurrence_lists(const Formula& f) {
  std::vector<std::vector<std::size_t>> lists(2 * (std::size_t{f.num_variables()} + 1));
  for (std::size_t i = 0; i < f.size(); ++i)
    for (Literal l : f[i]) lists[l.index()].push_back(i);
  return lists;
}

}  // namespace

OccurrenceTable::OccurrenceTable(const Formula& f)
    : num_variables_{f.num_variables()}, counts_(2 * (std::size_t{f.num_variables()} + 1), 0) {
  for (const auto& c : f)
    for (Literal l : c) ++counts_[l.index()];
}

std::vector<std::vector<std::size_t>> conflict_neighbors(const Formula& f) {
  const auto lists = occurrence_lists(f);
  std::vector<std::vector<std::size_t>> out(f.size());
  // stamp[j] == i + 1 marks j as already recorded for clause i.
  std::vector<std::size_t> stamp(f.size(), 0);
  for (std::size_t i = 0; i < f.size(); ++i) {
    auto& nb = out[i];
    for (Literal l : f[i]) {
      for (std::size_t j : lists[(~l).index()]) {
        if (stamp[j] == i + 1) continue;
        stamp[j] = i + 1;
        nb.push_back(j);
      }
    }
    std::sort(nb.begin(), nb.end());
  }
  return out;
}

ConflictStats conflict_stats(const Formula& f) {
  ConflictStats s;
  const std::size_t n = f.num_variables();
  const auto neighbors = conflict_neighbors(f);
  s.degree_of_clause.resize(f.size());
  std::uint64_t degree_sum = 0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    s.degree_of_clause[i] = neighbors[i].size();
    s.delta = std::max(s.delta, neighbors[i].size());
    degree_sum += neighbors[i].size();
  }
  s.e = degree_sum / 2;

  const OccurrenceTable occ(f);
  s.occ_pos.assign(n + 1, 0);
  s.occ_neg.assign(n + 1, 0);
  s.var_degree.assign(n + 1, 0);
  s.occ_products.assign(n + 1, 0);
  double product_sum = 0.0;
  for (Var x = 1; x <= n; ++x) {
    s.occ_pos[x] = occ.occ(Literal{x, true});
    s.occ_neg[x] = occ.occ(Literal{x, false});
    s.var_degree[x] = s.occ_pos[x] + s.occ_neg[x];
    s.d_max = std::max(s.d_max, s.var_degree[x]);
    s.occ_products[x] = std::uint64_t{s.occ_pos[x]} * s.occ_neg[x];
    product_sum += static_cast<double>(s.occ_products[x]);
  }
  s.k = f.max_width();
  s.ineq1_lhs = static_cast<double>(s.e);
  s.ineq1_rhs = s.k == 0 ? 0.0 : product_sum / static_cast<double>(s.k);
  return s;
}

Formula normalize_orientation(const Formula& f) {
  const OccurrenceTable occ(f);
  std::vector<bool> flip(std::size_t{f.num_variables()} + 1, false);
  bool any = false;
  for (Var x = 1; x <= f.num_variables(); ++x) {
    flip[x] = occ.occ(Literal{x, false}) > occ.occ(Literal{x, true});
    any = any || flip[x];
  }
  if (!any) return f;
  std::vector<Clause> clauses;
  clauses.reserve(f.size());
  for (const auto& c : f) {
    std::vector<Literal> lits;
    lits.reserve(c.width());
    for (Literal l : c) lits.push_back(flip[l.var()] ? ~l : l);
    clauses.emplace_back(std::move(lits));
  }
  return Formula{f.num_variables(), std::move(clauses)};
}

bool is_orientation_normalized(const Formula& f) {
  const OccurrenceTable occ(f);
  for (Var x = 1; x <= f.num_variables(); ++x)
    if (occ.occ(Literal{x, false}) > occ.occ(Literal{x, true})) return false;
  return true;
}

std::vector<Var> pure_variables(const Formula& f) {
  const OccurrenceTable occ(f);
  std::vector<Var> out;
  for (Var x = 1; x <= f.num_variables(); ++x) {
    const bool pos = occ.occ(Literal{x, true}) > 0;
    const bool neg = occ.occ(Literal{x, false}) > 0;
    if (pos != neg) out.push_back(x);
  }
  return out;
}

PureEliminationResult eliminate_pure_literals(const Formula& f) {
  PureEliminationResult r;
  std::vector<Clause> current(f.begin(), f.end());
  while (true) {
    const Formula g{f.num_variables(), current};
    const OccurrenceTable occ(g);
    std::vector<bool> pure_slot(2 * (std::size_t{f.num_variables()} + 1), false);
    bool found = false;
    for (Var x = 1; x <= f.num_variables(); ++x) {
      const Literal pos{x, true};
      const std::size_t p = occ.occ(pos);
      const std::size_t n = occ.occ(~pos);
      if ((p > 0) == (n > 0)) continue;
      const Literal pure = p > 0 ? pos : ~pos;
      pure_slot[pure.index()] = true;
      r.assigned.push_back(pure);
      found = true;
    }
    if (!found) break;
    std::vector<Clause> kept;
    for (auto& c : current) {
      const bool hit = std::any_of(c.begin(), c.end(), [&](Literal l) { return pure_slot[l.index()]; });
      if (hit)
        ++r.removed_clauses;
      else
        kept.push_back(std::move(c));
    }
    current = std::move(kept);
  }
  r.formula = Formula{f.num_variables(), std::move(current)};
  return r;
}

}  // namespace cnflab
