#include "cnflab/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "cnflab/rng.hpp"

namespace cnflab {

namespace {

struct MaskClause {
  std::uint64_t pos = 0;
  std::uint64_t neg = 0;
  [[nodiscard]] bool satisfied_by(std::uint64_t a) const { return ((a & pos) | (~a & neg)) != 0; }
  [[nodiscard]] std::uint64_t vars() const { return pos | neg; }
};

}  // namespace

OracleResult brute_force_sat(const Formula& f, Var cap) {
  const Var n = f.num_variables();
  if (n > cap || n > 62)
    throw Error("brute force capped at " + std::to_string(std::min<Var>(cap, 62)) + " variables, formula has " +
                std::to_string(n) + "; dedup clauses or use a smaller n");
  OracleResult r;
  std::vector<MaskClause> clauses;
  clauses.reserve(f.size());
  for (const auto& c : f) {
    MaskClause m;
    for (Literal l : c) (l.positive() ? m.pos : m.neg) |= std::uint64_t{1} << (l.var() - 1);
    if (m.vars() == 0) {
      r.sat = false;  // the empty clause
      return r;
    }
    clauses.push_back(m);
  }

  const std::uint64_t end = std::uint64_t{1} << n;
  std::size_t last_failed = 0;
  std::uint64_t a = 0;
  while (a < end) {
    ++r.assignments_checked;
    const MaskClause* failed = nullptr;
    if (!clauses.empty() && !clauses[last_failed].satisfied_by(a)) {
      failed = &clauses[last_failed];
    } else {
      for (std::size_t i = 0; i < clauses.size(); ++i) {
        if (!clauses[i].satisfied_by(a)) {
          failed = &clauses[i];
          last_failed = i;
          break;
        }
      }
    }
    if (!failed) {
      r.sat = true;
      Assignment w(std::size_t{n} + 1, false);
      for (Var x = 1; x <= n; ++x) w[x] = ((a >> (x - 1)) & 1) != 0;
      r.witness = std::move(w);
      return r;
    }
    // Every assignment that keeps the bits at and above the failed clause's
    // lowest variable also fails it.
    const std::uint64_t low = failed->vars() & (~failed->vars() + 1);
    a = (a | (low - 1)) + 1;
  }
  return r;
}

MonteCarloEstimate monte_carlo_sat_prob(const Formula& f, const AssignmentDistribution& dist,
                                        std::uint64_t trials, std::uint64_t seed) {
  if (trials == 0) throw Error("Monte Carlo estimate needs at least one trial");
  const Var n = f.num_variables();
  std::vector<double> p(std::size_t{n} + 1, 0.0);
  for (Var x = 1; x <= n; ++x) p[x] = dist.p(x);
  Rng rng(seed);
  Assignment a(std::size_t{n} + 1, false);
  MonteCarloEstimate out;
  out.trials = trials;
  for (std::uint64_t t = 0; t < trials; ++t) {
    for (Var x = 1; x <= n; ++x) a[x] = uniform_unit(rng) < p[x];
    if (satisfies(a, f)) ++out.satisfied;
  }
  const double est = static_cast<double>(out.satisfied) / static_cast<double>(trials);
  const double half = 1.96 * std::sqrt(est * (1.0 - est) / static_cast<double>(trials));
  out.estimate = est;
  out.ci_low = std::max(0.0, est - half);
  out.ci_high = std::min(1.0, est + half);
  return out;
}

}  // namespace cnflab
