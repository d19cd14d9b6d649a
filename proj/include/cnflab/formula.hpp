#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace cnflab {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Variables are dense indices 1..n.
using Var = std::uint32_t;

class Literal {
 public:
  Literal(Var var, bool positive);

  // Signed DIMACS encoding: 3 is x3, -3 is its negation.
  static Literal from_dimacs(int code);

  [[nodiscard]] Var var() const { return var_; }
  [[nodiscard]] bool positive() const { return positive_; }
  [[nodiscard]] bool negative() const { return !positive_; }
  [[nodiscard]] int to_dimacs() const;

  // Dense table slot: 2*var for x, 2*var+1 for its negation.
  [[nodiscard]] std::size_t index() const { return 2 * std::size_t{var_} + (positive_ ? 0 : 1); }

  Literal operator~() const { return Literal{var_, !positive_}; }

  friend bool operator==(Literal, Literal) = default;
  // Variable ascending, positive before negative.
  friend std::strong_ordering operator<=>(Literal a, Literal b) {
    if (auto c = a.var_ <=> b.var_; c != 0) return c;
    return b.positive_ <=> a.positive_;
  }

 private:
  Var var_;
  bool positive_;
};

// A set of literals: no duplicates and no complementary pair. Literals are
// kept sorted, so equal sets compare equal. The empty clause is allowed.
class Clause {
 public:
  Clause() = default;
  explicit Clause(std::vector<Literal> literals);
  static Clause from_dimacs(std::initializer_list<int> codes);

  [[nodiscard]] std::span<const Literal> literals() const { return literals_; }
  [[nodiscard]] std::size_t width() const { return literals_.size(); }
  [[nodiscard]] bool empty() const { return literals_.empty(); }
  [[nodiscard]] bool contains(Literal lit) const;
  [[nodiscard]] std::size_t count_negative() const;
  [[nodiscard]] std::size_t count_positive() const { return width() - count_negative(); }
  [[nodiscard]] bool all_positive() const { return count_negative() == 0; }
  [[nodiscard]] bool all_negative() const { return count_negative() == width(); }
  [[nodiscard]] Var max_var() const { return literals_.empty() ? 0 : literals_.back().var(); }

  [[nodiscard]] Clause without(Literal lit) const;

  auto begin() const { return literals_.begin(); }
  auto end() const { return literals_.end(); }

  friend bool operator==(const Clause&, const Clause&) = default;

 private:
  std::vector<Literal> literals_;
};

// Some variable appears positively in one clause and negatively in the other.
[[nodiscard]] bool clauses_conflict(const Clause& c, const Clause& d);

// An ordered multiset of clauses over variables 1..num_variables.
class Formula {
 public:
  Formula() = default;
  Formula(Var num_variables, std::vector<Clause> clauses);

  [[nodiscard]] Var num_variables() const { return num_variables_; }
  [[nodiscard]] std::span<const Clause> clauses() const { return clauses_; }
  [[nodiscard]] const Clause& operator[](std::size_t i) const { return clauses_[i]; }
  [[nodiscard]] std::size_t size() const { return clauses_.size(); }
  [[nodiscard]] bool empty() const { return clauses_.empty(); }

  [[nodiscard]] std::size_t max_width() const;
  [[nodiscard]] std::size_t total_literals() const;
  [[nodiscard]] bool has_empty_clause() const;
  // Width shared by every clause; nullopt for mixed widths or no clauses.
  [[nodiscard]] std::optional<std::size_t> uniform_width() const;
  [[nodiscard]] bool is_uniform(std::size_t k) const;

  auto begin() const { return clauses_.begin(); }
  auto end() const { return clauses_.end(); }

  friend bool operator==(const Formula&, const Formula&) = default;

 private:
  Var num_variables_ = 0;
  std::vector<Clause> clauses_;
};

[[nodiscard]] std::string to_string(Literal lit);
[[nodiscard]] std::string to_string(const Clause& c);

// Truth assignment indexed by variable; slot 0 is unused.
using Assignment = std::vector<bool>;

[[nodiscard]] bool satisfies(const Assignment& a, const Clause& c);
[[nodiscard]] bool satisfies(const Assignment& a, const Formula& f);

}  // namespace cnflab
