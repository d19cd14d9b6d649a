#include "cnflab/certify.hpp"

#include <algorithm>
#include <cmath>

#include "cnflab/conflict.hpp"

namespace cnflab {

AssignmentDistribution::AssignmentDistribution(std::vector<double> probs) : probs_{std::move(probs)} {
  if (probs_.empty()) probs_.push_back(0.0);
  for (std::size_t x = 1; x < probs_.size(); ++x)
    if (!(probs_[x] >= 0.0 && probs_[x] <= 1.0))
      throw Error("probability of variable " + std::to_string(x) + " outside [0,1]");
}

AssignmentDistribution AssignmentDistribution::uniform(Var num_variables, double p) {
  std::vector<double> probs(std::size_t{num_variables} + 1, p);
  probs[0] = 0.0;
  return AssignmentDistribution{std::move(probs)};
}

double AssignmentDistribution::p(Var x) const {
  if (x == 0 || x >= probs_.size())
    throw Error("distribution has no probability for variable " + std::to_string(x));
  return probs_[x];
}

double clause_unsat_prob(const Clause& c, const AssignmentDistribution& dist) {
  double prob = 1.0;
  for (Literal u : c) prob *= 1.0 - dist.p(u);
  return prob;
}

std::string to_string(CertificateMethod m) {
  switch (m) {
    case CertificateMethod::Lll:
      return "lll";
    case CertificateMethod::Counting:
      return "counting";
    case CertificateMethod::Truncation:
      return "thm2ii";
  }
  return "?";
}

std::vector<double> conflict_neighbourhood_sums(const Formula& f, const AssignmentDistribution& dist) {
  std::vector<double> unsat(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) unsat[i] = clause_unsat_prob(f[i], dist);
  const auto neighbors = conflict_neighbors(f);
  std::vector<double> sums(f.size(), 0.0);
  for (std::size_t i = 0; i < f.size(); ++i)
    for (std::size_t j : neighbors[i]) sums[i] += unsat[j];
  return sums;
}

Certificate lll_certificate(const Formula& f, const AssignmentDistribution& dist) {
  for (std::size_t i = 0; i < f.size(); ++i)
    if (f[i].empty()) throw Error("local lemma certificate requires no empty clause (clause " + std::to_string(i) + ")");
  Certificate cert;
  cert.method = CertificateMethod::Lll;
  const auto sums = conflict_neighbourhood_sums(f, dist);
  constexpr double threshold = 0.25;
  cert.pass = true;
  for (std::size_t i = 0; i < sums.size(); ++i) {
    cert.max_value = std::max(cert.max_value, sums[i]);
    if (cert.pass && sums[i] > threshold - kCertificateEpsilon) {
      cert.pass = false;
      cert.witness = CertificateWitness{i, std::nullopt, sums[i], threshold,
                                        "conflict-neighbourhood sum exceeds 1/4"};
    }
  }
  return cert;
}

LkShape lk_shape(const Formula& f) {
  LkShape s;
  for (std::size_t i = 0; i < f.size(); ++i) {
    const Clause& c = f[i];
    if (c.empty()) continue;
    std::optional<std::size_t>* width = nullptr;
    if (c.all_positive()) {
      ++s.positive;
      width = &s.ell;
    } else if (c.all_negative()) {
      ++s.negative;
      width = &s.k;
    } else {
      throw Error("not an (l,k)-CNF: clause " + std::to_string(i) + " " + to_string(c) +
                  " mixes polarities");
    }
    if (!*width) *width = c.width();
    if (**width != c.width())
      throw Error("not an (l,k)-CNF: clause " + std::to_string(i) + " has width " +
                  std::to_string(c.width()) + ", expected " + std::to_string(**width));
  }
  return s;
}

Certificate counting_certificate(const Formula& f, double rho) {
  if (!(rho > 0.0 && rho < 1.0)) throw Error("rho must lie in (0,1)");
  [[maybe_unused]] const LkShape shape = lk_shape(f);
  // The empty clause is never satisfied and contributes 1.
  const auto dist = AssignmentDistribution::uniform(f.num_variables(), rho);
  double expected = 0.0;
  for (const auto& c : f) expected += clause_unsat_prob(c, dist);
  Certificate cert;
  cert.method = CertificateMethod::Counting;
  cert.max_value = expected;
  cert.pass = expected < 1.0 - kCertificateEpsilon;
  if (!cert.pass)
    cert.witness = CertificateWitness{std::nullopt, std::nullopt, expected, 1.0,
                                      "expected number of unsatisfied clauses is not below 1"};
  return cert;
}

Formula truncate(const Formula& f, const TruncationRule& rule) {
  std::vector<Clause> clauses(f.begin(), f.end());
  for (const auto& [index, lit] : rule) {
    if (index >= clauses.size())
      throw Error("truncation names clause " + std::to_string(index) + " of " + std::to_string(clauses.size()));
    if (!clauses[index].contains(lit))
      throw Error("truncation removes literal " + to_string(lit) + " absent from clause " +
                  std::to_string(index));
    clauses[index] = clauses[index].without(lit);
  }
  return Formula{f.num_variables(), std::move(clauses)};
}

namespace {

Clause negative_part(const Clause& c) {
  std::vector<Literal> lits;
  for (Literal l : c)
    if (l.negative()) lits.push_back(l);
  return Clause{std::move(lits)};
}

}  // namespace

Formula half_negative_truncation(const Formula& f) {
  const auto k = f.uniform_width();
  if (!k && !f.empty()) throw Error("half-negative truncation needs a uniform-width formula");
  std::vector<Clause> out;
  out.reserve(f.size());
  for (const auto& c : f) {
    if (2 * c.count_negative() >= *k)
      out.push_back(negative_part(c));
    else
      out.push_back(c);
  }
  return Formula{f.num_variables(), std::move(out)};
}

Formula lambda_truncation(const Formula& f, double lambda) {
  if (!(lambda >= 0.0 && lambda <= 1.0)) throw Error("lambda must lie in [0,1]");
  const auto k = f.uniform_width();
  if (!k && !f.empty()) throw Error("lambda truncation needs a uniform-width formula");
  std::vector<Clause> out;
  out.reserve(f.size());
  for (const auto& c : f) {
    if (static_cast<double>(c.count_positive()) < lambda * static_cast<double>(*k))
      out.push_back(negative_part(c));
    else
      out.push_back(c);
  }
  return Formula{f.num_variables(), std::move(out)};
}

TruncationCertificateParams truncation_certificate_params(double a, std::size_t k) {
  if (!(a > 1.0 && a < std::sqrt(2.0))) throw Error("a must lie in (1, sqrt 2)");
  TruncationCertificateParams t;
  t.a = a;
  t.p = 1.0 / (a * a);
  t.b = std::sqrt(a * a * a * a / (a * a - 1.0));
  const double kk = static_cast<double>(k);
  if (k > 0) {
    t.cap_positive = std::pow(t.b, kk) / (8.0 * kk);
    t.cap_negative = std::pow(a, kk) / (8.0 * kk);
  }
  return t;
}

Certificate truncation_certificate(const Formula& input, double a, const TruncationCertificateOptions& options) {
  Certificate cert;
  cert.method = CertificateMethod::Truncation;
  const auto width = input.uniform_width();
  if (!width && !input.empty()) throw Error("truncation certificate needs a k-uniform formula");
  const std::size_t k = width.value_or(0);
  const TruncationCertificateParams t = truncation_certificate_params(a, k);
  if (input.empty()) {
    cert.pass = true;
    return cert;
  }
  if (k == 0) {
    cert.witness = CertificateWitness{0, std::nullopt, 1.0, 0.25, "formula consists of empty clauses"};
    return cert;
  }

  const Formula f = normalize_orientation(input);
  const OccurrenceTable occ(f);
  if (!options.strict) {
    for (Var x = 1; x <= f.num_variables(); ++x) {
      const double pos = static_cast<double>(occ.occ(Literal{x, true}));
      const double neg = static_cast<double>(occ.occ(Literal{x, false}));
      if (pos > t.cap_positive) {
        cert.witness = CertificateWitness{std::nullopt, x, pos, t.cap_positive, "occ(x) exceeds b^k/(8k)"};
        return cert;
      }
      if (neg > t.cap_negative) {
        cert.witness = CertificateWitness{std::nullopt, x, neg, t.cap_negative, "occ(~x) exceeds a^k/(8k)"};
        return cert;
      }
    }
  }

  const Formula truncated = half_negative_truncation(f);
  constexpr double threshold = 0.25;
  std::vector<double> sums;
  if (options.strict) {
    for (std::size_t i = 0; i < truncated.size(); ++i) {
      if (truncated[i].empty()) {
        cert.witness = CertificateWitness{i, std::nullopt, 1.0, threshold, "truncation produced the empty clause"};
        return cert;
      }
    }
    sums = conflict_neighbourhood_sums(truncated, AssignmentDistribution::uniform(f.num_variables(), t.p));
  } else {
    // Each clause D containing ~x is unsatisfied with probability at most
    // p^(k/2); each clause containing y positively lies in F_k and is
    // unsatisfied with probability at most p^(k/2) (1-p)^(k/2).
    const OccurrenceTable occ_trunc(truncated);
    const double half = static_cast<double>(k) / 2.0;
    const double neg_clause_bound = std::pow(t.p, half);
    const double mixed_clause_bound = std::pow(t.p, half) * std::pow(1.0 - t.p, half);
    sums.resize(truncated.size(), 0.0);
    for (std::size_t i = 0; i < truncated.size(); ++i) {
      for (Literal u : truncated[i]) {
        const double count = static_cast<double>(occ_trunc.occ(~u));
        sums[i] += count * (u.positive() ? neg_clause_bound : mixed_clause_bound);
      }
    }
  }
  cert.pass = true;
  for (std::size_t i = 0; i < sums.size(); ++i) {
    cert.max_value = std::max(cert.max_value, sums[i]);
    if (cert.pass && sums[i] > threshold - kCertificateEpsilon) {
      cert.pass = false;
      cert.witness = CertificateWitness{i, std::nullopt, sums[i], threshold,
                                        "per-clause bound on the truncation exceeds 1/4"};
    }
  }
  return cert;
}

}  // namespace cnflab
