#include "cnflab/sparsify.hpp"

#include <algorithm>
#include <cmath>

#include "cnflab/conflict.hpp"
#include "cnflab/numerics.hpp"

namespace cnflab {

AssignmentDistribution lower_bound_distribution(const Formula& f, const DistributionOptions& options) {
  const auto width = f.uniform_width();
  if (!width || *width == 0) throw Error("lower-bound distribution needs a k-uniform formula with k >= 1");
  const std::size_t k = *width;
  const ConflictStats stats = conflict_stats(f);
  if (stats.e == 0) throw Error("conflict-free: trivially satisfiable");
  if (!is_orientation_normalized(f))
    throw Error("formula is not orientation-normalized (need occ(~x) <= occ(x)); normalize first");

  const double e = static_cast<double>(stats.e);
  std::vector<double> probs(std::size_t{f.num_variables()} + 1, 0.5);
  probs[0] = 0.0;
  for (Var x = 1; x <= f.num_variables(); ++x) {
    const std::size_t pos = stats.occ_pos[x];
    const std::size_t neg = stats.occ_neg[x];
    if ((pos > 0) != (neg > 0) && !options.allow_pure)
      throw Error("variable " + std::to_string(x) +
                  " is pure; apply pure-literal elimination before the lower-bound distribution");
    const double root = std::pow(static_cast<double>(pos) / (16.0 * e), 1.0 / static_cast<double>(k));
    probs[x] = std::min(1.0, std::max(0.5, root));
  }
  return AssignmentDistribution{std::move(probs)};
}

namespace {

bool is_bad(const Clause& c, const AssignmentDistribution& dist) {
  return std::any_of(c.begin(), c.end(), [&](Literal u) { return dist.p(u) < 0.5; });
}

}  // namespace

ClausePartition classify_clauses(const Formula& f, const AssignmentDistribution& dist) {
  ClausePartition part;
  for (std::size_t i = 0; i < f.size(); ++i) (is_bad(f[i], dist) ? part.bad : part.good).push_back(i);
  return part;
}

double bad_mass(const Formula& f, const AssignmentDistribution& dist) {
  double mass = 0.0;
  for (const auto& c : f)
    if (is_bad(c, dist)) mass += clause_unsat_prob(c, dist);
  return mass;
}

SparsifyTrace sparsification_process(const Formula& f, const SparsifyOptions& options) {
  SparsifyTrace trace;
  trace.distribution = lower_bound_distribution(f, DistributionOptions{options.allow_pure});
  const auto& dist = trace.distribution;
  trace.k = *f.uniform_width();
  trace.threshold = 1.0 / (8.0 * static_cast<double>(trace.k));

  const std::size_t m = f.size();
  const Var n = f.num_variables();
  std::vector<Clause> current(f.begin(), f.end());
  std::vector<double> prob(m);
  std::vector<bool> good(m);
  // Good clause ids containing each literal slot, kept ascending.
  std::vector<std::vector<std::size_t>> holders(2 * (std::size_t{n} + 1));
  for (std::size_t i = 0; i < m; ++i) {
    prob[i] = clause_unsat_prob(current[i], dist);
    good[i] = !is_bad(current[i], dist);
    if (!good[i]) {
      trace.bad_clauses.push_back(i);
      continue;
    }
    for (Literal u : current[i]) holders[u.index()].push_back(i);
  }

  bool done = false;
  while (!done) {
    std::optional<Literal> violating;
    double violating_sum = 0.0;
    for (Var x = 1; x <= n && !violating; ++x) {
      for (bool positive : {true, false}) {
        const Literal u{x, positive};
        double sum = 0.0;
        for (std::size_t i : holders[u.index()]) sum += prob[i];
        if (sum > trace.threshold) {
          violating = u;
          violating_sum = sum;
          break;
        }
      }
    }
    if (!violating) break;

    const Literal u = *violating;
    auto& ids = holders[u.index()];
    std::size_t target = ids.front();
    for (std::size_t i : ids)
      if (prob[i] > prob[target]) target = i;

    trace.steps.push_back(SparsifyStep{u, target, current[target], violating_sum, prob[target]});
    current[target] = current[target].without(u);
    prob[target] = clause_unsat_prob(current[target], dist);
    ids.erase(std::find(ids.begin(), ids.end(), target));

    if (current[target].empty()) {
      trace.emptied_clauses.push_back(target);
      if (!trace.empty_clause) {
        trace.empty_clause = target;
        if (options.short_circuit) done = true;
      }
    }
  }

  trace.outcome = trace.empty_clause ? SparsifyOutcome::EmptyClause : SparsifyOutcome::Fixpoint;
  trace.final_formula = Formula{n, std::move(current)};
  return trace;
}

QSequence q_sequence(double e, std::size_t k) {
  if (!(e >= 1.0)) throw Error("q-sequence needs e >= 1");
  if (k < 2) throw Error("q-sequence needs k >= 2");
  QSequence seq;
  const double kk = static_cast<double>(k);
  seq.target = 1.0 / (128.0 * kk * e);
  const double log_target = -std::log(128.0 * kk * e);
  const double t_star = kk / (kk + 1.0);
  // log of q^k (1 - q) prod_{i<l} (1 - q_i)
  double log_prefix = 0.0;
  auto log_lhs = [&](double q) { return kk * std::log(q) + std::log1p(-q) + log_prefix; };

  for (std::size_t l = 1; l <= k; ++l) {
    double q;
    if (log_lhs(0.5) >= log_target) {
      q = 0.5;
    } else if (log_lhs(t_star) < log_target) {
      seq.infeasible_at = l;
      return seq;
    } else {
      // q^k (1-q) increases on [1/2, t*]: smallest root by bisection, keeping
      // the feasible endpoint.
      double lo = 0.5;
      double hi = t_star;
      for (int it = 0; it < 200 && hi - lo > 1e-16; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (log_lhs(mid) >= log_target)
          hi = mid;
        else
          lo = mid;
      }
      q = hi;
      if (!seq.ell_star) seq.ell_star = l;
    }
    seq.q.push_back(q);
    log_prefix += std::log1p(-q);
  }
  return seq;
}

double lower_bound_estimate(std::size_t k) {
  if (k < 2) throw Error("lower-bound estimate needs k >= 2");
  const double s = static_cast<double>(S_k(k));
  return std::exp2(2.0 * static_cast<double>(k) - s) / (128.0 * static_cast<double>(k));
}

}  // namespace cnflab
