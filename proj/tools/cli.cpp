#include "cli.hpp"

#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "cnflab/certify.hpp"
#include "cnflab/conflict.hpp"
#include "cnflab/constructions.hpp"
#include "cnflab/dimacs.hpp"
#include "cnflab/experiment.hpp"
#include "cnflab/json.hpp"
#include "cnflab/numerics.hpp"
#include "cnflab/oracle.hpp"
#include "cnflab/sparsify.hpp"

namespace cnflab::cli {

namespace {

using nlohmann::json;

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag) {
  if (flag) return *flag;
  if (const char* env = std::getenv("CNFLAB_SEED")) {
    try {
      std::size_t used = 0;
      const auto v = std::stoull(env, &used);
      if (used == std::string(env).size()) return v;
    } catch (const std::exception&) {
    }
    throw Error(std::string("CNFLAB_SEED is not an unsigned integer: '") + env + "'");
  }
  return 0;
}

struct GenerateArgs {
  std::string family;
  std::size_t k = 3;
  std::size_t ell = 0;
  double rho = 0.5;
  double c = 1.0;
  double a = 2.0;
  std::optional<Var> n;
  bool dedup = false;
  std::string input;
  std::string output;
  std::optional<std::uint64_t> seed;
};

struct CertifyArgs {
  std::string input;
  std::string method = "lll";
  double rho = 0.5;
  std::string dist;
  double a = 1.2;
  bool strict = false;
};

struct ExperimentArgs {
  std::string kind;
  std::size_t k = 3;
  std::optional<std::size_t> ell;
  double rho = 0.5;
  double c = 2.0;
  std::optional<Var> n;
  std::size_t max_retries = 20;
  std::uint64_t mc_trials = 10'000;
  double e = 1.0;
  std::optional<std::uint64_t> seed;
};

int do_generate(const GenerateArgs& g, std::ostream& out) {
  const std::uint64_t seed = resolve_seed(g.seed);
  Formula f;
  json params;
  json sizes = json::object();
  auto lk_run = [&](const LkParams& p) {
    const LkSizes s = lk_target_sizes(p);
    sizes = {{"positive", s.positive}, {"negative", s.negative}};
    params = to_json(p);
  };

  if (g.family == "complete") {
    f = complete_kcnf(g.k);
    params = {{"k", g.k}};
  } else if (g.family == "lk") {
    LkParams p;
    p.ell = g.ell == 0 ? g.k : g.ell;
    p.k = g.k;
    p.rho = g.rho;
    p.c = g.c;
    p.n = g.n;
    p.seed = seed;
    p.dedup = g.dedup;
    lk_run(p);
    f = random_lk(p);
  } else if (g.family == "unbalanced") {
    LkParams p = unbalanced_params(g.a, g.k, g.c, seed);
    p.n = g.n;
    p.dedup = g.dedup;
    lk_run(p);
    params["a"] = g.a;
    f = random_lk(p);
  } else if (g.family == "low-product") {
    LkParams p = low_product_params(g.k, g.c, seed);
    p.n = g.n;
    p.dedup = g.dedup;
    lk_run(p);
    f = kcnfify(random_lk(p), g.k);
  } else if (g.family == "sparse-conflict") {
    LkParams p = sparse_conflict_params(g.k, g.c, seed);
    p.n = g.n;
    p.dedup = g.dedup;
    lk_run(p);
    f = kcnfify(random_lk(p), g.k);
  } else if (g.family == "kcnfify") {
    if (g.input.empty()) throw CLI::ValidationError("kcnfify needs --input");
    f = kcnfify(read_dimacs_file(g.input).formula, g.k);
    params = {{"k", g.k}, {"input", g.input}};
  } else {
    throw CLI::ValidationError("unknown family '" + g.family + "'");
  }

  const GeneratorTag tag{g.family, seed};
  sizes["clauses"] = f.size();
  sizes["variables"] = f.num_variables();
  json sidecar{{"schema", kSchema}, {"generator", g.family}, {"params", params},
               {"seed", seed},      {"sizes", sizes},        {"stats", to_json(conflict_stats(f))}};
  if (g.output.empty()) {
    out << write_dimacs(f, tag);
  } else {
    write_dimacs_file(g.output, f, tag);
    std::ofstream side(g.output + ".json");
    if (!side) throw Error("cannot write '" + g.output + ".json'");
    side << sidecar.dump(2) << '\n';
    out << sidecar.dump(2) << '\n';
  }
  return kOk;
}

int do_certify(const CertifyArgs& a, std::ostream& out) {
  Formula f = read_dimacs_file(a.input).formula;
  json report{{"schema", kSchema}, {"input", a.input}};
  Certificate cert;
  if (a.method == "lll") {
    AssignmentDistribution dist;
    if (a.dist.empty()) {
      dist = AssignmentDistribution::uniform(f.num_variables(), a.rho);
      report["distribution"] = {{"uniform", a.rho}};
    } else if (a.dist == "auto") {
      // Orientation changes neither satisfiability nor the conflict graph.
      if (!is_orientation_normalized(f)) {
        f = normalize_orientation(f);
        report["normalized"] = true;
      }
      dist = lower_bound_distribution(f, DistributionOptions{true});
      report["distribution"] = "auto";
    } else {
      std::ifstream in(a.dist);
      if (!in) throw Error("cannot open distribution file '" + a.dist + "'");
      dist = distribution_from_json(json::parse(in), f.num_variables(), a.rho);
      report["distribution"] = a.dist;
    }
    cert = lll_certificate(f, dist);
  } else if (a.method == "counting") {
    cert = counting_certificate(f, a.rho);
    report["rho"] = a.rho;
  } else if (a.method == "thm2ii") {
    cert = truncation_certificate(f, a.a, TruncationCertificateOptions{a.strict});
    report["a"] = a.a;
    report["strict"] = a.strict;
  } else {
    throw CLI::ValidationError("unknown method '" + a.method + "'");
  }
  report["certificate"] = to_json(cert);
  out << report.dump(2) << '\n';
  return cert.pass ? kOk : kCertificateFail;
}

int do_sparsify(const std::string& input, const std::string& short_circuit, std::ostream& out) {
  if (short_circuit != "on" && short_circuit != "off")
    throw CLI::ValidationError("--short-circuit must be 'on' or 'off'");
  const Formula original = read_dimacs_file(input).formula;
  if (!original.uniform_width()) throw Error("sparsification needs a k-uniform formula");

  json pre{{"schema", kSchema}, {"event", "preprocess"}};
  Formula f = original;
  if (!is_orientation_normalized(f)) {
    f = normalize_orientation(f);
    pre["normalized"] = true;
  }
  const PureEliminationResult pure = eliminate_pure_literals(f);
  json assigned = json::array();
  for (Literal l : pure.assigned) assigned.push_back(l.to_dimacs());
  pre["pure_literals"] = assigned;
  pre["removed_clauses"] = pure.removed_clauses;
  f = pure.formula;
  out << pre.dump() << '\n';

  if (f.empty() || conflict_stats(f).e == 0) {
    json j{{"schema", kSchema}, {"outcome", "satisfiable"},
           {"reason", f.empty() ? "pure-literal elimination removed every clause" : "conflict-free"}};
    out << j.dump() << '\n';
    return kOk;
  }
  if (!is_orientation_normalized(f)) f = normalize_orientation(f);

  const SparsifyTrace trace = sparsification_process(f, SparsifyOptions{short_circuit == "on", false});
  for (std::size_t i = 0; i < trace.steps.size(); ++i) out << to_json(trace.steps[i], i).dump() << '\n';
  out << sparsify_outcome_json(trace).dump() << '\n';
  return trace.outcome == SparsifyOutcome::Fixpoint ? kOk : kCertificateFail;
}

int do_experiment(const ExperimentArgs& x, std::ostream& out) {
  if (x.kind == "lemma4") {
    LkParams p;
    p.k = x.k;
    p.ell = x.ell.value_or(x.k);
    p.rho = x.rho;
    p.c = x.c;
    p.n = x.n;
    p.seed = resolve_seed(x.seed);
    try {
      const VerifiedFormula v = generate_verified(p, x.max_retries, x.mc_trials);
      out << to_json(v.report).dump(2) << '\n';
      return kOk;
    } catch (const GenerateError& e) {
      json j = to_json(e.last_report());
      j["error"] = e.what();
      out << j.dump(2) << '\n';
      return kCertificateFail;
    }
  }
  if (x.kind == "qseq") {
    json j{{"schema", kSchema}, {"k", x.k}, {"e", x.e}, {"q_sequence", to_json(q_sequence(x.e, x.k))},
           {"lower_bound_estimate", lower_bound_estimate(x.k)}};
    out << j.dump(2) << '\n';
    return kOk;
  }
  throw CLI::ValidationError("unknown experiment '" + x.kind + "'");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"cnflab: conflict statistics, constructions and certificates for CNF formulas"};
  app.name("cnflab");
  app.require_subcommand(1);

  GenerateArgs gen;
  auto* generate = app.add_subcommand("generate", "Generate a formula family as DIMACS");
  generate->add_option("family", gen.family, "complete | lk | unbalanced | low-product | sparse-conflict | kcnfify")
      ->required();
  generate->add_option("-k", gen.k, "Clause width");
  generate->add_option("-l,--ell", gen.ell, "Positive clause width (lk; default k)");
  generate->add_option("--rho", gen.rho, "Probability rho (lk)");
  generate->add_option("-c", gen.c, "Scale constant");
  generate->add_option("-a", gen.a, "Imbalance base (unbalanced)");
  generate->add_option("-n", gen.n, "Variable count (default k^2)");
  generate->add_flag("--dedup", gen.dedup, "Remove repeated clauses");
  generate->add_option("-i,--input", gen.input, "Input DIMACS (kcnfify)");
  generate->add_option("-o,--output", gen.output, "Output DIMACS path; sidecar JSON at <path>.json");
  generate->add_option("--seed", gen.seed, "RNG seed (env CNFLAB_SEED)");

  std::string analyze_input;
  auto* analyze = app.add_subcommand("analyze", "Conflict statistics of a DIMACS formula");
  analyze->add_option("input", analyze_input)->required();

  CertifyArgs cert;
  auto* certify = app.add_subcommand("certify", "Satisfiability certificates");
  certify->add_option("input", cert.input)->required();
  certify->add_option("-m,--method", cert.method, "lll | counting | thm2ii");
  certify->add_option("--rho", cert.rho, "Uniform probability (lll, counting)");
  certify->add_option("--dist", cert.dist, "Per-variable JSON map file, or 'auto'");
  certify->add_option("-a", cert.a, "Base a in (1, sqrt 2) (thm2ii)");
  certify->add_flag("--strict", cert.strict, "thm2ii: exact conflict sums instead of occurrence caps");

  std::string sparsify_input;
  std::string short_circuit = "on";
  auto* sparsify = app.add_subcommand("sparsify", "Run the literal-deletion sparsification process");
  sparsify->add_option("input", sparsify_input)->required();
  sparsify->add_option("--short-circuit", short_circuit, "on | off");

  std::size_t k_max = 50;
  double tol = 1e-10;
  auto* numerics = app.add_subcommand("numerics", "S_k table, limit integral and exponent bases");
  numerics->add_option("--k-max", k_max, "Largest k in the S_k table");
  numerics->add_option("--tol", tol, "Quadrature tolerance (>= 1e-10)");

  std::string verify_input;
  Var cap = kDefaultOracleCap;
  auto* verify = app.add_subcommand("verify", "Exhaustive satisfiability check");
  verify->add_option("input", verify_input)->required();
  verify->add_option("--cap", cap, "Variable cap");

  ExperimentArgs exp;
  auto* experiment = app.add_subcommand("experiment", "End-to-end experiments");
  experiment->add_option("kind", exp.kind, "lemma4 | qseq")->required();
  experiment->add_option("-k", exp.k, "Clause width");
  experiment->add_option("-l,--ell", exp.ell, "Positive clause width (default k)");
  experiment->add_option("--rho", exp.rho, "Probability rho");
  experiment->add_option("-c", exp.c, "Scale constant");
  experiment->add_option("-n", exp.n, "Variable count (default k^2)");
  experiment->add_option("--max-retries", exp.max_retries, "Retries per round");
  experiment->add_option("--mc-trials", exp.mc_trials, "Monte Carlo trials (0 disables)");
  experiment->add_option("-e", exp.e, "Conflict count (qseq)");
  experiment->add_option("--seed", exp.seed, "Master seed (env CNFLAB_SEED)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return kUsage;
  }

  try {
    if (*generate) return do_generate(gen, out);
    if (*analyze) {
      const Formula f = read_dimacs_file(analyze_input).formula;
      json j{{"schema", kSchema}, {"input", analyze_input}, {"clauses", f.size()},
             {"variables", f.num_variables()}, {"stats", to_json(conflict_stats(f))}};
      out << j.dump(2) << '\n';
      return kOk;
    }
    if (*certify) return do_certify(cert, out);
    if (*sparsify) return do_sparsify(sparsify_input, short_circuit, out);
    if (*numerics) {
      out << to_json(numerics_report(k_max, tol)).dump(2) << '\n';
      return kOk;
    }
    if (*verify) {
      const Formula f = read_dimacs_file(verify_input).formula;
      json j = to_json(brute_force_sat(f, cap));
      j["schema"] = kSchema;
      j["input"] = verify_input;
      out << j.dump(2) << '\n';
      return kOk;
    }
    if (*experiment) return do_experiment(exp, out);
  } catch (const CLI::ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kRuntimeError;
  }
  return kUsage;
}

}  // namespace cnflab::cli
