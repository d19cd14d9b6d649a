#include "cnflab/dimacs.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <vector>

namespace cnflab {

namespace {

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

template <typename T>
std::optional<T> parse_number(std::string_view tok) {
  T value{};
  const auto* end = tok.data() + tok.size();
  auto [ptr, ec] = std::from_chars(tok.data(), end, value);
  if (ec != std::errc{} || ptr != end) return std::nullopt;
  return value;
}

std::optional<GeneratorTag> parse_tag(std::string_view comment) {
  GeneratorTag tag;
  bool has_name = false;
  bool has_seed = false;
  for (auto tok : split_ws(comment)) {
    if (tok.starts_with("generator=")) {
      tag.name = std::string(tok.substr(10));
      has_name = true;
    } else if (tok.starts_with("seed=")) {
      auto s = parse_number<std::uint64_t>(tok.substr(5));
      if (!s) return std::nullopt;
      tag.seed = *s;
      has_seed = true;
    }
  }
  if (has_name && has_seed) return tag;
  return std::nullopt;
}

}  // namespace

DimacsDocument parse_dimacs(std::string_view text) {
  DimacsDocument doc;
  std::optional<Var> num_vars;
  std::size_t declared_clauses = 0;
  std::vector<Clause> clauses;
  std::vector<Literal> pending;
  std::size_t pending_line = 0;
  std::size_t line_no = 0;

  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = text.substr(pos, nl - pos);
    pos = nl + 1;
    ++line_no;

    auto toks = split_ws(line);
    if (toks.empty()) continue;
    if (toks[0] == "c" || toks[0].starts_with("c")) {
      if (!num_vars && !doc.tag && toks[0] == "c") doc.tag = parse_tag(line.substr(line.find('c') + 1));
      continue;
    }
    if (toks[0] == "%") break;
    if (toks[0] == "p") {
      if (num_vars) throw ParseError(line_no, "duplicate problem header");
      if (toks.size() != 4 || toks[1] != "cnf")
        throw ParseError(line_no, "malformed header, expected 'p cnf <vars> <clauses>'");
      auto v = parse_number<Var>(toks[2]);
      auto m = parse_number<std::size_t>(toks[3]);
      if (!v || !m) throw ParseError(line_no, "malformed header, counts must be non-negative integers");
      num_vars = *v;
      declared_clauses = *m;
      continue;
    }
    if (!num_vars) throw ParseError(line_no, "clause data before 'p cnf' header");
    for (auto tok : toks) {
      auto code = parse_number<long long>(tok);
      if (!code) throw ParseError(line_no, "invalid literal '" + std::string(tok) + "'");
      if (*code == 0) {
        try {
          clauses.emplace_back(std::move(pending));
        } catch (const Error& e) {
          throw ParseError(pending_line ? pending_line : line_no, e.what());
        }
        pending.clear();
        pending_line = 0;
        continue;
      }
      const long long var = *code < 0 ? -*code : *code;
      if (var > static_cast<long long>(*num_vars))
        throw ParseError(line_no, "literal " + std::string(tok) + " out of range (header declares " +
                                      std::to_string(*num_vars) + " variables)");
      if (pending.empty()) pending_line = line_no;
      pending.push_back(Literal{static_cast<Var>(var), *code > 0});
    }
  }
  if (!num_vars) throw ParseError(line_no, "missing 'p cnf' header");
  if (!pending.empty()) throw ParseError(line_no, "last clause is not terminated by 0");
  if (clauses.size() != declared_clauses)
    throw ParseError(line_no, "header declares " + std::to_string(declared_clauses) +
                                  " clauses, found " + std::to_string(clauses.size()));
  doc.formula = Formula{*num_vars, std::move(clauses)};
  return doc;
}

DimacsDocument read_dimacs_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_dimacs(ss.str());
}

std::string write_dimacs(const Formula& f, const std::optional<GeneratorTag>& tag) {
  std::ostringstream out;
  if (tag) out << "c generator=" << tag->name << " seed=" << tag->seed << '\n';
  out << "p cnf " << f.num_variables() << ' ' << f.size() << '\n';
  for (const auto& c : f) {
    for (Literal l : c) out << l.to_dimacs() << ' ';
    out << "0\n";
  }
  return out.str();
}

void write_dimacs_file(const std::string& path, const Formula& f,
                       const std::optional<GeneratorTag>& tag) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path + "'");
  out << write_dimacs(f, tag);
}

}  // namespace cnflab
