#include "cnflab/formula.hpp"

#include <algorithm>
#include <cstdlib>

namespace cnflab {

Literal::Literal(Var var, bool positive) : var_{var}, positive_{positive} {
  if (var == 0) throw Error("literal variable index must be >= 1");
}

Literal Literal::from_dimacs(int code) {
  if (code == 0) throw Error("literal code 0 is the DIMACS clause terminator");
  return Literal{static_cast<Var>(std::abs(code)), code > 0};
}

int Literal::to_dimacs() const {
  const int v = static_cast<int>(var_);
  return positive_ ? v : -v;
}

Clause::Clause(std::vector<Literal> literals) : literals_{std::move(literals)} {
  std::sort(literals_.begin(), literals_.end());
  for (std::size_t i = 1; i < literals_.size(); ++i) {
    if (literals_[i] == literals_[i - 1])
      throw Error("duplicate literal " + to_string(literals_[i]) + " in clause");
    if (literals_[i].var() == literals_[i - 1].var())
      throw Error("tautological clause: variable " + std::to_string(literals_[i].var()) +
                  " occurs in both polarities");
  }
}

Clause Clause::from_dimacs(std::initializer_list<int> codes) {
  std::vector<Literal> lits;
  lits.reserve(codes.size());
  for (int c : codes) lits.push_back(Literal::from_dimacs(c));
  return Clause{std::move(lits)};
}

bool Clause::contains(Literal lit) const {
  return std::binary_search(literals_.begin(), literals_.end(), lit);
}

std::size_t Clause::count_negative() const {
  return static_cast<std::size_t>(
      std::count_if(literals_.begin(), literals_.end(), [](Literal l) { return l.negative(); }));
}

Clause Clause::without(Literal lit) const {
  Clause out;
  out.literals_.reserve(literals_.size());
  bool found = false;
  for (Literal l : literals_) {
    if (l == lit) {
      found = true;
      continue;
    }
    out.literals_.push_back(l);
  }
  if (!found) throw Error("literal " + to_string(lit) + " not in clause " + to_string(*this));
  return out;
}

bool clauses_conflict(const Clause& c, const Clause& d) {
  // Both sides are sorted by variable: merge.
  auto i = c.begin();
  auto j = d.begin();
  while (i != c.end() && j != d.end()) {
    if (i->var() < j->var()) {
      ++i;
    } else if (j->var() < i->var()) {
      ++j;
    } else {
      if (i->positive() != j->positive()) return true;
      ++i;
      ++j;
    }
  }
  return false;
}

Formula::Formula(Var num_variables, std::vector<Clause> clauses)
    : num_variables_{num_variables}, clauses_{std::move(clauses)} {
  for (std::size_t i = 0; i < clauses_.size(); ++i) {
    if (clauses_[i].max_var() > num_variables_)
      throw Error("clause " + std::to_string(i) + " uses variable " +
                  std::to_string(clauses_[i].max_var()) + " beyond num_variables " +
                  std::to_string(num_variables_));
  }
}

std::size_t Formula::max_width() const {
  std::size_t w = 0;
  for (const auto& c : clauses_) w = std::max(w, c.width());
  return w;
}

std::size_t Formula::total_literals() const {
  std::size_t n = 0;
  for (const auto& c : clauses_) n += c.width();
  return n;
}

bool Formula::has_empty_clause() const {
  return std::any_of(clauses_.begin(), clauses_.end(), [](const Clause& c) { return c.empty(); });
}

std::optional<std::size_t> Formula::uniform_width() const {
  if (clauses_.empty()) return std::nullopt;
  const std::size_t k = clauses_.front().width();
  for (const auto& c : clauses_)
    if (c.width() != k) return std::nullopt;
  return k;
}

bool Formula::is_uniform(std::size_t k) const {
  return std::all_of(clauses_.begin(), clauses_.end(),
                     [k](const Clause& c) { return c.width() == k; });
}

std::string to_string(Literal lit) { return std::to_string(lit.to_dimacs()); }

std::string to_string(const Clause& c) {
  std::string s = "(";
  bool first = true;
  for (Literal l : c) {
    if (!first) s += ' ';
    s += to_string(l);
    first = false;
  }
  return s + ")";
}

bool satisfies(const Assignment& a, const Clause& c) {
  return std::any_of(c.begin(), c.end(), [&](Literal l) { return a.at(l.var()) == l.positive(); });
}

bool satisfies(const Assignment& a, const Formula& f) {
  return std::all_of(f.begin(), f.end(), [&](const Clause& c) { return satisfies(a, c); });
}

}  // namespace cnflab
