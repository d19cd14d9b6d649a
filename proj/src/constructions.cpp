#include "cnflab/constructions.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "cnflab/rng.hpp"

namespace cnflab {

namespace {

constexpr std::size_t kMaxCompleteWidth = 20;

// Floyd's algorithm: uniform size-m subset of {1..n}.
std::vector<Var> sample_subset(Rng& rng, Var n, std::size_t m) {
  std::vector<Var> chosen;
  chosen.reserve(m);
  for (std::uint64_t j = n - m + 1; j <= n; ++j) {
    const Var t = static_cast<Var>(1 + uniform_below(rng, j));
    if (std::find(chosen.begin(), chosen.end(), t) == chosen.end())
      chosen.push_back(t);
    else
      chosen.push_back(static_cast<Var>(j));
  }
  return chosen;
}

Clause monotone_clause(const std::vector<Var>& vars, bool positive) {
  std::vector<Literal> lits;
  lits.reserve(vars.size());
  for (Var v : vars) lits.emplace_back(v, positive);
  return Clause{std::move(lits)};
}

// Every sign pattern over vars; bit i of the mask negates vars[i].
std::vector<std::vector<Literal>> sign_patterns(const std::vector<Var>& vars) {
  const std::size_t m = vars.size();
  std::vector<std::vector<Literal>> out;
  out.reserve(std::size_t{1} << m);
  for (std::size_t mask = 0; mask < (std::size_t{1} << m); ++mask) {
    std::vector<Literal> lits;
    lits.reserve(m);
    for (std::size_t i = 0; i < m; ++i) lits.emplace_back(vars[i], ((mask >> i) & 1) == 0);
    out.push_back(std::move(lits));
  }
  return out;
}

}  // namespace

std::size_t ceil_count(double x) {
  const double nearest = std::round(x);
  if (std::abs(x - nearest) <= 1e-9 * std::max(1.0, std::abs(x))) return static_cast<std::size_t>(nearest);
  return static_cast<std::size_t>(std::ceil(x));
}

void LkParams::validate() const {
  if (!(rho > 0.0 && rho < 1.0)) throw Error("rho must lie in (0,1)");
  if (k == 0) throw Error("k must be >= 1");
  if (ell == 0) throw Error("ell must be >= 1");
  if (ell > k) throw Error("ell must not exceed k");
  if (!(c > 0.0)) throw Error("c must be positive");
  if (variables() < k) throw Error("n must be >= k");
}

LkSizes lk_target_sizes(const LkParams& p) {
  p.validate();
  const double k2 = static_cast<double>(p.k * p.k);
  const double neg = p.c * k2 * std::pow(p.rho, -static_cast<double>(p.k));
  const double pos = p.c * k2 * std::pow(1.0 - p.rho, -static_cast<double>(p.ell));
  const double budget = static_cast<double>(p.clause_budget);
  if (!(neg + pos <= budget))
    throw Error("clause budget exceeded: |F+| = " + std::to_string(pos) + ", |F-| = " +
                std::to_string(neg) + ", budget " + std::to_string(p.clause_budget));
  return LkSizes{ceil_count(pos), ceil_count(neg)};
}

Formula complete_kcnf(std::size_t k) {
  if (k == 0) throw Error("complete k-CNF needs k >= 1");
  if (k > kMaxCompleteWidth) throw Error("complete k-CNF capped at k <= 20");
  std::vector<Var> vars(k);
  for (std::size_t i = 0; i < k; ++i) vars[i] = static_cast<Var>(i + 1);
  std::vector<Clause> clauses;
  for (auto& lits : sign_patterns(vars)) clauses.emplace_back(std::move(lits));
  return Formula{static_cast<Var>(k), std::move(clauses)};
}

Formula kcnfify(const Formula& f, std::size_t k) {
  std::size_t extra = 0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (f[i].width() > k)
      throw Error("clause " + std::to_string(i) + " has width " + std::to_string(f[i].width()) +
                  " > target width " + std::to_string(k));
    extra += k - f[i].width();
  }
  if (extra == 0) return f;

  Var next = f.num_variables() + 1;
  std::vector<Clause> out;
  for (const auto& c : f) {
    const std::size_t pad = k - c.width();
    if (pad == 0) {
      out.push_back(c);
      continue;
    }
    if (pad > kMaxCompleteWidth) throw Error("k-CNFification padding beyond 20 fresh variables");
    std::vector<Var> fresh(pad);
    for (auto& v : fresh) v = next++;
    for (auto& pattern : sign_patterns(fresh)) {
      std::vector<Literal> lits(c.begin(), c.end());
      lits.insert(lits.end(), pattern.begin(), pattern.end());
      out.emplace_back(std::move(lits));
    }
  }
  return Formula{next - 1, std::move(out)};
}

Formula random_lk(const LkParams& p) {
  const LkSizes sizes = lk_target_sizes(p);
  const Var n = p.variables();
  Rng rng(p.seed);
  std::vector<Clause> clauses;
  clauses.reserve(sizes.positive + sizes.negative);
  for (std::size_t i = 0; i < sizes.positive; ++i)
    clauses.push_back(monotone_clause(sample_subset(rng, n, p.ell), true));
  for (std::size_t i = 0; i < sizes.negative; ++i)
    clauses.push_back(monotone_clause(sample_subset(rng, n, p.k), false));
  Formula f{n, std::move(clauses)};
  return p.dedup ? dedup_clauses(f) : f;
}

LkParams unbalanced_params(double a, std::size_t k, double c, std::uint64_t seed) {
  if (!(a > 1.0)) throw Error("unbalanced formula needs a > 1");
  LkParams p;
  p.ell = k;
  p.k = k;
  p.rho = 1.0 / a;
  p.c = c;
  p.seed = seed;
  return p;
}

Formula unbalanced_formula(double a, std::size_t k, double c, std::uint64_t seed) {
  return random_lk(unbalanced_params(a, k, c, seed));
}

LkParams low_product_params(std::size_t k, double c, std::uint64_t seed) {
  if (k < 5) throw Error("low-product construction needs k >= 5");
  LkParams p;
  p.k = k;
  p.ell = ceil_count(0.2055 * static_cast<double>(k));
  p.rho = static_cast<double>(k) / static_cast<double>(k + p.ell);
  p.c = c;
  p.seed = seed;
  return p;
}

Formula low_product_formula(std::size_t k, double c, std::uint64_t seed) {
  return kcnfify(random_lk(low_product_params(k, c, seed)), k);
}

LkParams sparse_conflict_params(std::size_t k, double c, std::uint64_t seed) {
  if (k < 3) throw Error("sparse-conflict construction needs k >= 3");
  LkParams p;
  p.k = k;
  p.ell = ceil_count(0.333 * static_cast<double>(k));
  p.rho = 0.6298;
  p.c = c;
  p.seed = seed;
  return p;
}

Formula sparse_conflict_formula(std::size_t k, double c, std::uint64_t seed) {
  return kcnfify(random_lk(sparse_conflict_params(k, c, seed)), k);
}

double kcnfify_conflict_bound(std::size_t ell, std::size_t k, std::size_t pos, std::size_t neg) {
  const double m = static_cast<double>(k - ell);
  return std::pow(4.0, m) * static_cast<double>(pos) +
         std::pow(2.0, m) * static_cast<double>(pos) * static_cast<double>(neg);
}

double kcnfify_product_bound(std::size_t ell, std::size_t k, std::size_t pos, std::size_t neg) {
  const double m = static_cast<double>(k - ell);
  return std::max(std::pow(4.0, m), std::pow(2.0, m) * static_cast<double>(pos) * static_cast<double>(neg));
}

Formula dedup_clauses(const Formula& f) {
  std::set<std::vector<int>> seen;
  std::vector<Clause> out;
  for (const auto& c : f) {
    std::vector<int> key;
    for (Literal l : c) key.push_back(l.to_dimacs());
    if (seen.insert(std::move(key)).second) out.push_back(c);
  }
  return Formula{f.num_variables(), std::move(out)};
}

}  // namespace cnflab
