#include <gtest/gtest.h>

#include <cmath>

#include "cnflab/certify.hpp"
#include "cnflab/conflict.hpp"
#include "cnflab/constructions.hpp"
#include "cnflab/numerics.hpp"
#include "cnflab/sparsify.hpp"
#include "test_support.hpp"

using namespace cnflab;
using namespace cnflab::testing;

namespace {

// k=5: C1 = (x a1..a4), C2 = (x b1..b4), C3 = (~x c1..c4); x = 1.
Formula five_wide_example() {
  return make_formula(13, {{1, 2, 3, 4, 5}, {1, 6, 7, 8, 9}, {-1, 10, 11, 12, 13}});
}

// Random normalized k-uniform formula with at least one conflict.
std::optional<Formula> engine_input(TestRng& rng, Var n, std::size_t m, std::size_t k) {
  const Formula f = normalize_orientation(random_uniform_formula(rng, n, m, k));
  if (conflict_stats(f).e == 0) return std::nullopt;
  return f;
}

}  // namespace

TEST(LowerBoundDistribution, CompleteTwoCnfIsUniformHalf) {
  const auto d = lower_bound_distribution(complete_kcnf(2));
  EXPECT_EQ(d.p(Var{1}), 0.5);
  EXPECT_EQ(d.p(Var{2}), 0.5);
}

TEST(LowerBoundDistribution, FiveWideExample) {
  const auto d = lower_bound_distribution(five_wide_example(), {.allow_pure = true});
  EXPECT_NEAR(d.p(Var{1}), std::pow(2.0, -0.8), 1e-15);
  EXPECT_NEAR(d.p(Var{1}), 0.5743491775, 1e-10);
  EXPECT_EQ(d.p(Var{2}), 0.5);
}

TEST(LowerBoundDistribution, Errors) {
  EXPECT_THROW((void)lower_bound_distribution(make_formula(3, {{1, 2}, {1, 3}})), Error);
  try {
    (void)lower_bound_distribution(make_formula(4, {{1, 2}, {3, 4}}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("conflict-free"), std::string::npos);
  }
  EXPECT_THROW((void)lower_bound_distribution(make_formula(3, {{1, 2}, {-1, 3}})), Error);
  EXPECT_THROW((void)lower_bound_distribution(make_formula(3, {{1, 2}, {-1, -2, 3}})), Error);
  EXPECT_THROW((void)lower_bound_distribution(make_formula(2, {{-1, 2}, {-1, -2}, {1, 2}})), Error);
}

TEST(LowerBoundDistribution, ProbabilitiesFollowTheFormula) {
  TestRng rng(31);
  for (int it = 0; it < 200; ++it) {
    const std::size_t k = pick(rng, 2, 5);
    const auto f = engine_input(rng, 8, pick(rng, 2, 30), k);
    if (!f) continue;
    const auto d = lower_bound_distribution(*f, {.allow_pure = true});
    const ConflictStats s = conflict_stats(*f);
    for (Var x = 1; x <= f->num_variables(); ++x) {
      const double expect = std::min(
          1.0, std::max(0.5, std::pow(double(s.occ_pos[x]) / (16.0 * double(s.e)), 1.0 / double(k))));
      EXPECT_DOUBLE_EQ(d.p(x), expect);
      EXPECT_GE(d.p(x), 0.5);
      EXPECT_LE(d.p(x), 1.0);
    }
  }
}

TEST(ClassifyClauses, Examples) {
  const Formula k2 = complete_kcnf(2);
  const auto part = classify_clauses(k2, lower_bound_distribution(k2));
  EXPECT_EQ(part.good.size(), 4u);
  EXPECT_TRUE(part.bad.empty());

  const Formula f = five_wide_example();
  const auto d = lower_bound_distribution(f, {.allow_pure = true});
  const auto p5 = classify_clauses(f, d);
  EXPECT_EQ(p5.good, (std::vector<std::size_t>{0, 1}));
  EXPECT_EQ(p5.bad, (std::vector<std::size_t>{2}));
  EXPECT_NEAR(d.p(Literal::from_dimacs(-1)), 1 - std::pow(2.0, -0.8), 1e-15);
}

TEST(ClassifyClauses, UniformHalfHasNoBadClauses) {
  TestRng rng(32);
  for (int it = 0; it < 50; ++it) {
    const Formula f = random_formula(rng, 6, pick(rng, 1, 20), 1, 4);
    const auto d = AssignmentDistribution::uniform(6, 0.5);
    EXPECT_TRUE(classify_clauses(f, d).bad.empty());
    EXPECT_EQ(bad_mass(f, d), 0.0);
  }
}

TEST(BadMass, Examples) {
  const Formula k2 = complete_kcnf(2);
  EXPECT_EQ(bad_mass(k2, lower_bound_distribution(k2)), 0.0);
  const Formula f = five_wide_example();
  const double mass = bad_mass(f, lower_bound_distribution(f, {.allow_pure = true}));
  EXPECT_NEAR(mass, 0.03589682359, 1e-9);
  EXPECT_LE(mass, 0.125);
}

TEST(BadMass, AtMostOneEighthOnRandomInputs) {
  TestRng rng(33);
  int checked = 0;
  for (int it = 0; it < 400; ++it) {
    const std::size_t k = pick(rng, 2, 5);
    const auto f = engine_input(rng, static_cast<Var>(pick(rng, k, 10)), pick(rng, 2, 60), k);
    if (!f) continue;
    ++checked;
    EXPECT_LE(bad_mass(*f, lower_bound_distribution(*f, {.allow_pure = true})), 0.125);
  }
  EXPECT_GT(checked, 300);
}

TEST(Sparsification, CompleteTwoCnfReachesEmptyClause) {
  const SparsifyTrace t = sparsification_process(complete_kcnf(2));
  EXPECT_EQ(t.outcome, SparsifyOutcome::EmptyClause);
  ASSERT_TRUE(t.empty_clause);
  EXPECT_TRUE(t.final_formula[*t.empty_clause].empty());
  EXPECT_DOUBLE_EQ(t.threshold, 1.0 / 16.0);
}

TEST(Sparsification, SatisfiableInputCanStillReachEmptyClause) {
  // x=1, y=2, z=3
  const Formula f = make_formula(3, {{1, 2}, {-1, 3}});
  const SparsifyTrace t = sparsification_process(f, {.allow_pure = true});
  EXPECT_EQ(t.outcome, SparsifyOutcome::EmptyClause);
  ASSERT_FALSE(t.steps.empty());
  EXPECT_EQ(t.steps[0].removed, Literal::from_dimacs(1));
  EXPECT_EQ(t.steps[0].clause, 0u);
  EXPECT_DOUBLE_EQ(t.steps[0].literal_sum, 0.25);
  EXPECT_EQ(t.steps[0].before, Clause::from_dimacs({1, 2}));
}

TEST(Sparsification, QuietInputIsAFixpoint) {
  const Formula f = make_formula(11, {{1, 2, 3, 4, 5, 6}, {-1, 7, 8, 9, 10, 11}});
  const SparsifyTrace t = sparsification_process(f, {.allow_pure = true});
  EXPECT_EQ(t.outcome, SparsifyOutcome::Fixpoint);
  EXPECT_TRUE(t.steps.empty());
  EXPECT_EQ(t.final_formula, f);
}

TEST(Sparsification, ShortCircuitOffRunsToFixpoint) {
  const SparsifyTrace a = sparsification_process(complete_kcnf(3));
  const SparsifyTrace b = sparsification_process(complete_kcnf(3), {.short_circuit = false});
  EXPECT_EQ(b.outcome, SparsifyOutcome::EmptyClause);
  EXPECT_EQ(a.empty_clause, b.empty_clause);
  ASSERT_LE(a.steps.size(), b.steps.size());
  for (std::size_t i = 0; i < a.steps.size(); ++i) EXPECT_EQ(a.steps[i].clause, b.steps[i].clause);
}

TEST(Sparsification, PureVariableNeedsOption) {
  EXPECT_THROW((void)sparsification_process(make_formula(3, {{1, 2}, {-1, 3}})), Error);
}

TEST(Sparsification, TraceInvariantsOnRandomInputs) {
  TestRng rng(34);
  for (int it = 0; it < 300; ++it) {
    const std::size_t k = pick(rng, 2, 5);
    const auto f = engine_input(rng, static_cast<Var>(pick(rng, k, 10)), pick(rng, 2, 40), k);
    if (!f) continue;
    const SparsifyTrace t = sparsification_process(*f, {.short_circuit = false, .allow_pure = true});
    EXPECT_LE(t.steps.size(), f->total_literals());
    std::vector<bool> bad(f->size(), false);
    for (std::size_t i : t.bad_clauses) bad[i] = true;
    for (const auto& step : t.steps) {
      EXPECT_FALSE(bad[step.clause]);
      EXPECT_TRUE(step.before.contains(step.removed));
      EXPECT_GT(step.literal_sum, t.threshold);
    }
    for (std::size_t i : t.bad_clauses) EXPECT_EQ(t.final_formula[i], (*f)[i]);
    // Loop condition is false at the end.
    for (Var x = 1; x <= f->num_variables(); ++x)
      for (bool pos : {true, false}) {
        const Literal u{x, pos};
        double sum = 0.0;
        for (std::size_t i = 0; i < f->size(); ++i)
          if (!bad[i] && t.final_formula[i].contains(u)) sum += clause_unsat_prob(t.final_formula[i], t.distribution);
        EXPECT_LE(sum, t.threshold);
      }
    const SparsifyTrace again = sparsification_process(*f, {.short_circuit = false, .allow_pure = true});
    EXPECT_EQ(again.final_formula, t.final_formula);
    EXPECT_EQ(again.steps.size(), t.steps.size());
  }
}

TEST(Sparsification, FixpointSatisfiesLocalLemmaAndOracle) {
  TestRng rng(35);
  int fixpoints = 0;
  for (int it = 0; it < 1500; ++it) {
    const std::size_t k = pick(rng, 3, 6);
    const auto f = engine_input(rng, 14, pick(rng, 2, 10), k);
    if (!f) continue;
    const SparsifyTrace t = sparsification_process(*f, {.allow_pure = true});
    const bool sat = naive_sat(*f);
    if (!sat) {
      EXPECT_EQ(t.outcome, SparsifyOutcome::EmptyClause);
    }
    if (t.outcome == SparsifyOutcome::Fixpoint) {
      ++fixpoints;
      EXPECT_TRUE(sat);
      for (double s : conflict_neighbourhood_sums(t.final_formula, t.distribution)) EXPECT_LE(s, 0.25 + 1e-12);
    }
  }
  EXPECT_GT(fixpoints, 20);
}

TEST(QSequence, AllHalfWhenConflictsAreAbundant) {
  const QSequence q = q_sequence(1e6, 10);
  ASSERT_EQ(q.q.size(), 10u);
  for (double v : q.q) EXPECT_EQ(v, 0.5);
  EXPECT_FALSE(q.ell_star);
  EXPECT_FALSE(q.infeasible_at);
}

TEST(QSequence, Errors) {
  EXPECT_THROW((void)q_sequence(0.5, 4), Error);
  EXPECT_THROW((void)q_sequence(10, 1), Error);
}

TEST(QSequence, StructuralProperties) {
  for (std::size_t k : {2, 3, 5, 8, 10, 12, 16, 20}) {
    for (double e : {1.0, 3.0, 10.0, 50.0, 300.0, 2000.0, 1e5}) {
      const QSequence q = q_sequence(e, k);
      const double kk = double(k);
      EXPECT_NEAR(q.target, 1.0 / (128.0 * kk * e), 1e-18);
      if (!q.infeasible_at) {
        EXPECT_EQ(q.q.size(), k);
      } else {
        EXPECT_EQ(q.q.size() + 1, *q.infeasible_at);
      }
      double prefix = 1.0;
      for (std::size_t l = 0; l < q.q.size(); ++l) {
        EXPECT_GE(q.q[l], 0.5);
        EXPECT_LE(q.q[l], kk / (kk + 1) + 1e-15);
        if (l > 0) {
          EXPECT_GE(q.q[l], q.q[l - 1]);
        }
        prefix *= 1.0 - q.q[l];
        const double lhs = std::pow(q.q[l], kk) * prefix;
        EXPECT_GE(lhs, q.target * (1 - 1e-12));
        if (q.q[l] > 0.5) {
          EXPECT_NEAR(lhs / q.target, 1.0, 1e-9);
        }
        if (l > 0 && q.q[l - 1] > 0.5) {
          EXPECT_NEAR(q.q[l - 1], f_k(k, q.q[l]), 1e-9);
        }
      }
      if (q.ell_star) {
        EXPECT_GT(q.q[*q.ell_star - 1], 0.5);
        for (std::size_t l = 0; l + 1 < *q.ell_star; ++l) EXPECT_EQ(q.q[l], 0.5);
      }
    }
  }
}

TEST(LowerBoundEstimate, Values) {
  EXPECT_DOUBLE_EQ(lower_bound_estimate(2), 0.03125);
  EXPECT_DOUBLE_EQ(lower_bound_estimate(10), 25.6);
  EXPECT_THROW((void)lower_bound_estimate(1), Error);
  // Exponential base once the 128k factor is removed.
  const double growth = std::pow(lower_bound_estimate(500) * 128.0 * 500.0, 1.0 / 500.0);
  EXPECT_NEAR(growth, 2.69, 0.005);
}

TEST(LowerBoundEstimate, HoldsForUnsatisfiableFormulas) {
  for (std::size_t k = 2; k <= 5; ++k)
    EXPECT_GE(double(conflict_stats(complete_kcnf(k)).e), lower_bound_estimate(k));
}
