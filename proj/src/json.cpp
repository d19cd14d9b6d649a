#include "cnflab/json.hpp"

namespace cnflab {

using nlohmann::json;

namespace {

json clause_json(const Clause& c) {
  json lits = json::array();
  for (Literal l : c) lits.push_back(l.to_dimacs());
  return lits;
}

json per_variable(const std::vector<std::size_t>& table) {
  json out = json::object();
  for (std::size_t x = 1; x < table.size(); ++x) out[std::to_string(x)] = table[x];
  return out;
}

}  // namespace

json to_json(const ConflictStats& s) {
  json occ = json::object();
  json products = json::object();
  for (std::size_t x = 1; x < s.occ_pos.size(); ++x) {
    occ[std::to_string(x)] = s.occ_pos[x];
    occ["-" + std::to_string(x)] = s.occ_neg[x];
    products[std::to_string(x)] = s.occ_products[x];
  }
  return json{{"e", s.e},
              {"delta", s.delta},
              {"occ", occ},
              {"var_degree", per_variable(s.var_degree)},
              {"d_max", s.d_max},
              {"occ_products", products},
              {"k", s.k},
              {"ineq1", {{"lhs", s.ineq1_lhs}, {"rhs", s.ineq1_rhs}, {"holds", s.ineq1_lhs >= s.ineq1_rhs}}}};
}

json to_json(const LkParams& p) {
  return json{{"ell", p.ell}, {"k", p.k},          {"rho", p.rho},    {"c", p.c},
              {"n", p.variables()}, {"seed", p.seed}, {"dedup", p.dedup}};
}

json to_json(const Certificate& c) {
  json j{{"method", to_string(c.method)}, {"verdict", c.pass ? "pass" : "fail"}, {"max_value", c.max_value}};
  if (c.witness) {
    json w{{"value", c.witness->value}, {"threshold", c.witness->threshold}, {"reason", c.witness->reason}};
    if (c.witness->clause) w["clause"] = *c.witness->clause;
    if (c.witness->variable) w["variable"] = *c.witness->variable;
    j["witness"] = w;
  }
  return j;
}

json to_json(const OracleResult& r) {
  json j{{"verdict", r.sat ? "SAT" : "UNSAT"}, {"assignments_checked", r.assignments_checked}};
  if (r.witness) {
    json lits = json::array();
    for (std::size_t x = 1; x < r.witness->size(); ++x) lits.push_back((*r.witness)[x] ? int(x) : -int(x));
    j["witness"] = lits;
  }
  return j;
}

json to_json(const MonteCarloEstimate& m) {
  return json{{"estimate", m.estimate}, {"ci95", {m.ci_low, m.ci_high}}, {"trials", m.trials},
              {"satisfied", m.satisfied}};
}

json to_json(const ExperimentReport& r) {
  json j{{"schema", kSchema},
         {"params", to_json(r.params)},
         {"master_seed", r.master_seed},
         {"seed", r.seed},
         {"retries", r.retries},
         {"c_doubled", r.c_doubled},
         {"sizes", {{"positive", r.sizes.positive}, {"negative", r.sizes.negative}}},
         {"stats", to_json(r.stats)},
         {"oracle", to_json(r.oracle)},
         {"certificates", {{"counting", to_json(r.counting)}}}};
  if (r.lll) j["certificates"]["lll"] = to_json(*r.lll);
  json bounds{{"kcnfify_conflicts", r.kcnfify_conflicts}, {"kcnfify_conflict_bound", r.kcnfify_conflict_bound},
              {"kcnfify_bound_holds", static_cast<double>(r.kcnfify_conflicts) <= r.kcnfify_conflict_bound}};
  if (r.lower_bound) {
    bounds["lower_bound_estimate"] = *r.lower_bound;
    bounds["e_at_least_lower_bound"] = static_cast<double>(r.stats.e) >= *r.lower_bound;
  }
  j["bounds"] = bounds;
  if (r.monte_carlo) j["monte_carlo"] = to_json(*r.monte_carlo);
  return j;
}

json to_json(const NumericsReport& r) {
  json table = json::object();
  for (const auto& [k, s] : r.s_table) table[std::to_string(k)] = s;
  auto grid = [](const GridMinimum& g) { return json{{"base", g.value}, {"rho", g.rho}, {"lambda", g.lambda}}; };
  return json{{"schema", kSchema},
              {"s_table", table},
              {"limit_integral",
               {{"value", r.limit_integral.value},
                {"error_bound", r.limit_integral.error_bound},
                {"tail_cutoff", r.limit_integral.tail_cutoff},
                {"evaluations", r.limit_integral.evaluations}}},
              {"bases", {{"lower", r.lower_base}, {"conflict_upper", grid(r.conflict_upper)},
                         {"product_upper", grid(r.product_upper)}}}};
}

json to_json(const QSequence& q) {
  json j{{"q", q.q}, {"target", q.target}};
  j["ell_star"] = q.ell_star ? json(*q.ell_star) : json(nullptr);
  if (q.infeasible_at) j["infeasible_at"] = *q.infeasible_at;
  return j;
}

json to_json(const SparsifyStep& step, std::size_t index) {
  return json{{"step", index},
              {"literal", step.removed.to_dimacs()},
              {"clause", step.clause},
              {"before", clause_json(step.before)},
              {"literal_sum", step.literal_sum},
              {"clause_prob", step.clause_prob}};
}

json sparsify_outcome_json(const SparsifyTrace& trace) {
  json j{{"schema", kSchema},
         {"outcome", trace.outcome == SparsifyOutcome::EmptyClause ? "empty_clause" : "fixpoint"},
         {"steps", trace.steps.size()},
         {"k", trace.k},
         {"threshold", trace.threshold},
         {"bad_clauses", trace.bad_clauses.size()},
         {"emptied_clauses", trace.emptied_clauses}};
  if (trace.empty_clause) j["empty_clause"] = *trace.empty_clause;
  return j;
}

AssignmentDistribution distribution_from_json(const json& j, Var num_variables, double fallback) {
  std::vector<double> probs(std::size_t{num_variables} + 1, fallback);
  probs[0] = 0.0;
  if (!j.is_object()) throw Error("distribution JSON must be an object mapping variable to probability");
  for (const auto& [key, value] : j.items()) {
    std::size_t x = 0;
    try {
      x = std::stoul(key);
    } catch (const std::exception&) {
      throw Error("distribution key '" + key + "' is not a variable index");
    }
    if (x == 0 || x > num_variables) throw Error("distribution names variable " + key + " outside the formula");
    probs[x] = value.get<double>();
  }
  return AssignmentDistribution{std::move(probs)};
}

}  // namespace cnflab
