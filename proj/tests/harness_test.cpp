#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <unistd.h>

#include "cli.hpp"
#include "cnflab/certify.hpp"
#include "cnflab/conflict.hpp"
#include "cnflab/constructions.hpp"
#include "cnflab/dimacs.hpp"
#include "cnflab/experiment.hpp"
#include "cnflab/oracle.hpp"
#include "cnflab/sparsify.hpp"
#include "test_support.hpp"

using namespace cnflab;
using namespace cnflab::testing;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

// Lowest satisfying assignment by plain enumeration.
std::optional<std::uint64_t> naive_first_model(const Formula& f) {
  const auto cl = as_ints(f);
  for (std::uint64_t a = 0; a < (std::uint64_t{1} << f.num_variables()); ++a) {
    bool all = true;
    for (const auto& c : cl) {
      bool sat = false;
      for (int lit : c)
        if ((lit > 0) == bool((a >> (std::abs(lit) - 1)) & 1)) sat = true;
      if (!sat) {
        all = false;
        break;
      }
    }
    if (all) return a;
  }
  return std::nullopt;
}

Formula rename(const Formula& f, const std::vector<Var>& perm) {
  std::vector<Clause> out;
  for (const Clause& c : f) {
    std::vector<Literal> lits;
    for (Literal u : c) lits.emplace_back(perm[u.var()], u.positive());
    out.emplace_back(std::move(lits));
  }
  return Formula{f.num_variables(), std::move(out)};
}

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun cli_run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

class TempDir {
 public:
  TempDir() {
    path_ = fs::temp_directory_path() / ("cnflab_test_" + std::to_string(::getpid()));
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  [[nodiscard]] std::string file(const std::string& name) const { return (path_ / name).string(); }

 private:
  fs::path path_;
};

void write_text(const std::string& path, const std::string& text) {
  std::ofstream(path) << text;
}

}  // namespace

TEST(BruteForce, Examples) {
  const OracleResult k2 = brute_force_sat(complete_kcnf(2));
  EXPECT_FALSE(k2.sat);
  EXPECT_FALSE(k2.witness);

  const OracleResult single = brute_force_sat(make_formula(2, {{1, 2}}));
  ASSERT_TRUE(single.sat);
  EXPECT_TRUE((*single.witness)[1]);
  EXPECT_FALSE((*single.witness)[2]);

  EXPECT_FALSE(brute_force_sat(make_formula(2, {{1}, {}})).sat);
  EXPECT_TRUE(brute_force_sat(Formula{}).sat);
  EXPECT_THROW((void)brute_force_sat(Formula{27, {}}), Error);
  EXPECT_THROW((void)brute_force_sat(Formula{10, {}}, 9), Error);
}

TEST(BruteForce, MatchesPlainEnumerationAndWitnessIsLowest) {
  TestRng rng(51);
  for (int it = 0; it < 400; ++it) {
    const Var n = static_cast<Var>(pick(rng, 1, 10));
    const Formula f = random_formula(rng, n, pick(rng, 0, 40), 1, 4);
    const OracleResult r = brute_force_sat(f);
    const auto first = naive_first_model(f);
    ASSERT_EQ(r.sat, first.has_value());
    if (r.sat) {
      ASSERT_TRUE(r.witness);
      EXPECT_TRUE(satisfies(*r.witness, f));
      for (Var x = 1; x <= n; ++x) EXPECT_EQ((*r.witness)[x], bool((*first >> (x - 1)) & 1));
    }
  }
}

TEST(BruteForce, VerdictInvariantUnderReorderingOrientationAndRenaming) {
  TestRng rng(52);
  for (int it = 0; it < 200; ++it) {
    const Var n = 8;
    const Formula f = random_uniform_formula(rng, n, pick(rng, 5, 40), 3);
    std::vector<Clause> shuffled(f.begin(), f.end());
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    std::vector<Var> perm(n + 1);
    for (Var x = 0; x <= n; ++x) perm[x] = x;
    std::shuffle(perm.begin() + 1, perm.end(), rng);
    const bool sat = brute_force_sat(f).sat;
    EXPECT_EQ(brute_force_sat(Formula{n, shuffled}).sat, sat);
    EXPECT_EQ(brute_force_sat(normalize_orientation(f)).sat, sat);
    EXPECT_EQ(brute_force_sat(rename(f, perm)).sat, sat);
  }
}

TEST(BruteForce, SmallMaxDegreeImpliesSatisfiable) {
  // Formulas whose conflict degree stays below 2^k/e are satisfiable.
  TestRng rng(53);
  int checked = 0;
  for (int it = 0; it < 3000; ++it) {
    const std::size_t k = pick(rng, 2, 5);
    const Formula f = random_uniform_formula(rng, 12, pick(rng, 2, 30), k);
    const double limit = std::floor(std::exp2(double(k)) / std::exp(1.0)) - 1;
    if (double(conflict_stats(f).delta) > limit) continue;
    ++checked;
    EXPECT_TRUE(brute_force_sat(f).sat);
  }
  EXPECT_GT(checked, 200);
}

TEST(MonteCarlo, Examples) {
  const auto half = AssignmentDistribution::uniform(2, 0.5);
  EXPECT_EQ(monte_carlo_sat_prob(Formula{}, half, 100, 1).estimate, 1.0);
  EXPECT_EQ(monte_carlo_sat_prob(complete_kcnf(2), AssignmentDistribution::uniform(2, 0.9), 1000, 1).estimate, 0.0);
  const MonteCarloEstimate m = monte_carlo_sat_prob(make_formula(1, {{1}}), half, 100000, 7);
  EXPECT_NEAR(m.estimate, 0.5, 0.01);
  EXPECT_LE(m.ci_low, m.estimate);
  EXPECT_GE(m.ci_high, m.estimate);
  EXPECT_NEAR(m.ci_high - m.ci_low, 2 * 1.96 * std::sqrt(0.25 / 100000), 1e-4);
  EXPECT_EQ(m.trials, 100000u);
  const MonteCarloEstimate again = monte_carlo_sat_prob(make_formula(1, {{1}}), half, 100000, 7);
  EXPECT_EQ(again.satisfied, m.satisfied);
}

TEST(GenerateVerified, FindsUnsatisfiableFormula) {
  LkParams p;
  p.ell = 3;
  p.k = 3;
  p.rho = 0.5;
  p.c = 2;
  p.n = 9;
  p.seed = 11;
  const VerifiedFormula v = generate_verified(p);
  EXPECT_FALSE(brute_force_sat(v.formula).sat);
  EXPECT_FALSE(v.report.oracle.sat);
  EXPECT_LE(v.report.retries, 40u);
  ASSERT_TRUE(v.report.lower_bound);
  EXPECT_GE(double(v.report.stats.e), *v.report.lower_bound);
  ASSERT_TRUE(v.report.monte_carlo);
  EXPECT_LT(v.report.monte_carlo->estimate, 0.01);
  EXPECT_FALSE(v.report.counting.pass);

  const VerifiedFormula w = generate_verified(p);
  EXPECT_EQ(w.formula, v.formula);
  EXPECT_EQ(w.report.seed, v.report.seed);
}

TEST(GenerateVerified, ErrorPathWhenCountingCertificatePasses) {
  LkParams p;
  p.ell = 3;
  p.k = 3;
  p.rho = 0.5;
  p.c = 0.01;
  p.n = 9;
  p.seed = 3;
  ASSERT_TRUE(counting_certificate(random_lk(p), 0.5).pass);
  LkParams doubled = p;
  doubled.c = 0.02;
  ASSERT_TRUE(counting_certificate(random_lk(doubled), 0.5).pass);
  try {
    (void)generate_verified(p, 3, 0);
    FAIL() << "expected GenerateError";
  } catch (const GenerateError& e) {
    EXPECT_TRUE(e.last_report().oracle.sat);
    EXPECT_TRUE(e.last_report().c_doubled);
  }
}

TEST(GenerateVerified, RejectsOversizedInstances) {
  LkParams p;
  p.ell = 3;
  p.k = 3;
  p.n = 30;
  EXPECT_THROW((void)generate_verified(p), Error);
}

TEST(Cli, GenerateComplete) {
  const CliRun r = cli_run({"generate", "complete", "-k", "3"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(parse_dimacs(r.out).formula, complete_kcnf(3));
}

TEST(Cli, GenerateWritesSidecarAndAnalyzeReportsStats) {
  TempDir dir;
  const std::string path = dir.file("lk.cnf");
  const CliRun g = cli_run({"generate", "lk", "-k", "3", "--rho", "0.5", "-c", "1", "-n", "9", "--seed", "7", "-o", path});
  ASSERT_EQ(g.code, 0) << g.err;
  const json side = json::parse(g.out);
  EXPECT_EQ(side["schema"], "cnflab/1");
  EXPECT_EQ(side["seed"], 7);
  EXPECT_EQ(side["sizes"]["positive"], 72);
  EXPECT_TRUE(fs::exists(path + ".json"));
  const auto doc = read_dimacs_file(path);
  ASSERT_TRUE(doc.tag);
  EXPECT_EQ(doc.tag->seed, 7u);

  const CliRun a = cli_run({"analyze", path});
  ASSERT_EQ(a.code, 0) << a.err;
  const json stats = json::parse(a.out)["stats"];
  EXPECT_EQ(stats["e"], conflict_stats(doc.formula).e);
  EXPECT_TRUE(stats["ineq1"].contains("lhs"));
  EXPECT_TRUE(stats["ineq1"].contains("rhs"));
}

TEST(Cli, SeedFallsBackToEnvironment) {
  ::setenv("CNFLAB_SEED", "5", 1);
  const CliRun a = cli_run({"generate", "lk", "-k", "2", "-c", "0.5"});
  ::unsetenv("CNFLAB_SEED");
  const CliRun b = cli_run({"generate", "lk", "-k", "2", "-c", "0.5", "--seed", "5"});
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
}

TEST(Cli, CertifyExitCodes) {
  TempDir dir;
  const std::string k2 = dir.file("k2.cnf");
  write_dimacs_file(k2, complete_kcnf(2));
  const CliRun fail = cli_run({"certify", k2, "-m", "lll"});
  EXPECT_EQ(fail.code, 1);
  EXPECT_EQ(json::parse(fail.out)["certificate"]["verdict"], "fail");

  const std::string small = dir.file("small.cnf");
  write_text(small, "p cnf 3 2\n1 2 0\n-1 -2 -3 0\n");
  const CliRun pass = cli_run({"certify", small, "-m", "counting", "--rho", "0.5"});
  EXPECT_EQ(pass.code, 0);
  EXPECT_DOUBLE_EQ(json::parse(pass.out)["certificate"]["max_value"].get<double>(), 0.375);

  const std::string dist = dir.file("dist.json");
  write_text(dist, R"({"1": 0.5, "2": 0.5})");
  EXPECT_EQ(cli_run({"certify", k2, "--dist", dist}).code, 1);
  EXPECT_EQ(cli_run({"certify", k2, "--dist", "auto"}).code, 1);
  EXPECT_EQ(cli_run({"certify", k2, "-m", "thm2ii", "-a", "1.2"}).code, 1);
  EXPECT_EQ(cli_run({"certify", k2, "-m", "bogus"}).code, 2);
  EXPECT_EQ(cli_run({"certify", k2, "-m", "counting"}).code, 3);
}

TEST(Cli, SparsifyEmitsJsonLines) {
  TempDir dir;
  const std::string k2 = dir.file("k2.cnf");
  write_dimacs_file(k2, complete_kcnf(2));
  const CliRun r = cli_run({"sparsify", k2});
  EXPECT_EQ(r.code, 1);
  std::istringstream lines(r.out);
  std::string line;
  std::vector<json> events;
  while (std::getline(lines, line)) events.push_back(json::parse(line));
  ASSERT_GE(events.size(), 3u);
  EXPECT_EQ(events.front()["event"], "preprocess");
  EXPECT_EQ(events.back()["outcome"], "empty_clause");
  EXPECT_EQ(cli_run({"sparsify", k2, "--short-circuit", "off"}).code, 1);
  EXPECT_EQ(cli_run({"sparsify", k2, "--short-circuit", "maybe"}).code, 2);

  const std::string pure = dir.file("pure.cnf");
  write_text(pure, "p cnf 3 2\n1 2 0\n-1 3 0\n");
  const CliRun p = cli_run({"sparsify", pure});
  EXPECT_EQ(p.code, 0);
  EXPECT_NE(p.out.find("satisfiable"), std::string::npos);
}

TEST(Cli, VerifyAndNumerics) {
  TempDir dir;
  const std::string k3 = dir.file("k3.cnf");
  write_dimacs_file(k3, complete_kcnf(3));
  const CliRun v = cli_run({"verify", k3});
  EXPECT_EQ(v.code, 0);
  EXPECT_EQ(json::parse(v.out)["verdict"], "UNSAT");

  const CliRun n = cli_run({"numerics", "--k-max", "10", "--tol", "1e-8"});
  ASSERT_EQ(n.code, 0) << n.err;
  EXPECT_NE(n.out.find("cnflab/1"), std::string::npos);
}

TEST(Cli, ExperimentGenerateVerified) {
  const CliRun r = cli_run({"experiment", "lemma4", "-k", "3", "--rho", "0.5", "-c", "2", "--seed", "11"});
  ASSERT_EQ(r.code, 0) << r.err;
  const json j = json::parse(r.out);
  EXPECT_EQ(j["schema"], "cnflab/1");
  EXPECT_EQ(j["oracle"]["verdict"], "UNSAT");
  const CliRun q = cli_run({"experiment", "qseq", "-k", "10", "-e", "30"});
  EXPECT_EQ(q.code, 0);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(cli_run({}).code, 2);
  EXPECT_EQ(cli_run({"bogus"}).code, 2);
  EXPECT_EQ(cli_run({"generate", "complete", "--no-such-flag"}).code, 2);
  EXPECT_EQ(cli_run({"generate", "nonsense"}).code, 2);
  EXPECT_EQ(cli_run({"analyze", "/nonexistent/file.cnf"}).code, 3);
  EXPECT_EQ(cli_run({"--help"}).code, 0);
}
