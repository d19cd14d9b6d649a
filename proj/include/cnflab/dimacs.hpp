#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

#include "cnflab/formula.hpp"

namespace cnflab {

class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_{line} {}
  [[nodiscard]] std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Written as "c generator=<name> seed=<seed>" above the header.
struct GeneratorTag {
  std::string name;
  std::uint64_t seed = 0;
  friend bool operator==(const GeneratorTag&, const GeneratorTag&) = default;
};

struct DimacsDocument {
  Formula formula;
  std::optional<GeneratorTag> tag;
};

// Accepts comment lines, a "p cnf <vars> <clauses>" header and zero-terminated
// clauses (a clause may span lines). Violations throw ParseError.
[[nodiscard]] DimacsDocument parse_dimacs(std::string_view text);
[[nodiscard]] DimacsDocument read_dimacs_file(const std::string& path);

// Canonical form: optional generator comment, header, one clause per line with
// literals sorted by variable.
[[nodiscard]] std::string write_dimacs(const Formula& f, const std::optional<GeneratorTag>& tag = {});
void write_dimacs_file(const std::string& path, const Formula& f,
                       const std::optional<GeneratorTag>& tag = {});

}  // namespace cnflab
