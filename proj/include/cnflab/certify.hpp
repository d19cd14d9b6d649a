#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cnflab/formula.hpp"

namespace cnflab {

// Independent per-variable probability of being set true; p(~x) = 1 - p(x).
class AssignmentDistribution {
 public:
  AssignmentDistribution() = default;
  // probs[x] for x = 1..n; probs[0] is ignored.
  explicit AssignmentDistribution(std::vector<double> probs);
  static AssignmentDistribution uniform(Var num_variables, double p);

  [[nodiscard]] Var num_variables() const {
    return probs_.empty() ? 0 : static_cast<Var>(probs_.size() - 1);
  }
  [[nodiscard]] double p(Var x) const;
  [[nodiscard]] double p(Literal u) const { return u.positive() ? p(u.var()) : 1.0 - p(u.var()); }
  [[nodiscard]] const std::vector<double>& table() const { return probs_; }

 private:
  std::vector<double> probs_{0.0};
};

// Pr[alpha does not satisfy c] = prod over literals of (1 - p(u)).
[[nodiscard]] double clause_unsat_prob(const Clause& c, const AssignmentDistribution& dist);

// Threshold slack applied on the pass side of every certificate comparison.
inline constexpr double kCertificateEpsilon = 1e-12;

enum class CertificateMethod { Lll, Counting, Truncation };
[[nodiscard]] std::string to_string(CertificateMethod m);

struct CertificateWitness {
  std::optional<std::size_t> clause;  // index into the checked formula
  std::optional<Var> variable;        // occurrence-cap violations
  double value = 0.0;                 // the computed sum / expectation / count
  double threshold = 0.0;
  std::string reason;
};

struct Certificate {
  bool pass = false;
  CertificateMethod method = CertificateMethod::Lll;
  std::optional<CertificateWitness> witness;  // set on fail
  double max_value = 0.0;                     // largest checked quantity
};

// Pass iff every clause's conflict-neighbourhood sum of Pr[alpha !|= D] is at
// most 1/4. Pass implies f satisfiable. Throws on an empty clause.
[[nodiscard]] Certificate lll_certificate(const Formula& f, const AssignmentDistribution& dist);

// Per-clause conflict-neighbourhood sums used by lll_certificate.
[[nodiscard]] std::vector<double> conflict_neighbourhood_sums(const Formula& f,
                                                              const AssignmentDistribution& dist);

// For an (ell,k)-CNF: pass iff rho^k |F-| + (1-rho)^ell |F+| < 1.
[[nodiscard]] Certificate counting_certificate(const Formula& f, double rho);

struct LkShape {
  std::size_t positive = 0;
  std::size_t negative = 0;
  std::optional<std::size_t> ell;
  std::optional<std::size_t> k;
};
// Throws unless every clause is monotone and each polarity has one width.
[[nodiscard]] LkShape lk_shape(const Formula& f);

// Removals as (clause index, literal). Order and multiplicity of clauses kept.
using TruncationRule = std::vector<std::pair<std::size_t, Literal>>;
[[nodiscard]] Formula truncate(const Formula& f, const TruncationRule& rule);

// Clauses with at least k/2 negative literals lose all positive literals.
[[nodiscard]] Formula half_negative_truncation(const Formula& f);

// Clauses with fewer than lambda*k positive literals lose all of them.
[[nodiscard]] Formula lambda_truncation(const Formula& f, double lambda);

struct TruncationCertificateParams {
  double a = 1.2;
  double b = 0.0;  // sqrt(a^4 / (a^2 - 1))
  double p = 0.0;  // 1 / a^2
  double cap_positive = 0.0;  // b^k / (8k), bound on occ(x)
  double cap_negative = 0.0;  // a^k / (8k), bound on occ(~x)
};
[[nodiscard]] TruncationCertificateParams truncation_certificate_params(double a, std::size_t k);

struct TruncationCertificateOptions {
  // Strict mode skips the occurrence caps and checks the exact conflict sums
  // of the truncation under p = 1/a^2.
  bool strict = false;
};

// Orientation-normalizes f, checks occurrence caps, truncates with the
// half-negative rule and verifies the per-clause bound under p = 1/a^2.
[[nodiscard]] Certificate truncation_certificate(const Formula& f, double a,
                                             const TruncationCertificateOptions& options = {});

}  // namespace cnflab
