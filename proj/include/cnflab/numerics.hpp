#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <vector>

namespace cnflab {

// f_k(t) = t (1-t)^(1/k) on [0,1].
[[nodiscard]] double f_k(std::size_t k, double t);

// ell-fold iterate of f_k; log_space evaluates ln f = ln t + ln(1-t)/k.
[[nodiscard]] double iterate_f(std::size_t k, std::size_t ell, double t, bool log_space = false);

// Maximizer k/(k+1) of f_k.
[[nodiscard]] double t_star(std::size_t k);

// Orbit t*_k, f_k(t*_k), f_k^(2)(t*_k), ... extended on demand; strictly
// decreasing, so threshold counts are binary searches.
class FkOrbit {
 public:
  explicit FkOrbit(std::size_t k, std::size_t max_steps = 100'000'000);

  // min{ell : f_k^(ell)(t*_k) <= t}, t in (0,1].
  [[nodiscard]] std::size_t threshold_count(double t);
  [[nodiscard]] std::size_t k() const { return k_; }
  [[nodiscard]] const std::vector<double>& values() const { return values_; }

 private:
  std::size_t k_;
  std::size_t max_steps_;
  std::vector<double> values_;
};

// min{ell : f_k^(ell)(t*_k) <= 1/2}.
[[nodiscard]] std::size_t S_k(std::size_t k);

// min{ell : f_k^(ell)(t*_k) <= t}; s_k(t) = S_k(t)/k.
[[nodiscard]] std::size_t S_k_t(std::size_t k, double t);
[[nodiscard]] double s_k_t(std::size_t k, double t);

struct IntegralEstimate {
  double value = 0.0;
  double error_bound = 0.0;
  double tail_cutoff = 0.0;  // delta: [1-delta, 1] handled by the analytic bound
  std::size_t evaluations = 0;
};

// -1/(x ln(1-x)), continued by 0 at x = 1.
[[nodiscard]] double limit_integrand(double x);

// -integral_{1/2}^{1} dx / (x ln(1-x)) to absolute error tol >= 1e-10.
[[nodiscard]] IntegralEstimate limit_integral(double tol = 1e-10);

struct BinomialBounds {
  double lower = 0.0;  // a^b / b! * e^(-b^2/a)
  double exact = 0.0;  // C(a,b)
  double upper = 0.0;  // a^b / b!
  double log_lower = 0.0;
  double log_exact = 0.0;
  double log_upper = 0.0;
  bool lower_strict = false;  // lower < exact
  bool upper_holds = false;   // exact <= upper
};

// Requires a >= 1, b >= 1, b/a <= 0.75. Values may overflow to inf; the log
// fields and the flags stay exact enough to compare.
[[nodiscard]] BinomialBounds binomial_bounds_check(std::uint64_t a, std::uint64_t b);

// max{4^(1-l) (1-rho)^(-l), 2^(1-l) rho^(-1) (1-rho)^(-l)}, l = ell/k.
[[nodiscard]] double conflict_base(double rho, double lambda);
// max{4^(1-l), 2^(1-l) rho^(-1) (1-rho)^(-l)}.
[[nodiscard]] double product_base(double rho, double lambda);

struct GridMinimum {
  double value = 0.0;
  double rho = 0.0;
  double lambda = 0.0;
};

using BaseFunction = double (*)(double rho, double lambda);

// Grid over rho in (0,1), lambda in (0,1] at `coarse` spacing, then one pass at
// `fine` spacing within one coarse cell of the incumbent.
[[nodiscard]] GridMinimum minimize_base(BaseFunction base, double coarse = 1e-3, double fine = 1e-5);

struct SandwichResult {
  bool holds = false;
  double lower = 0.0;   // L(t1,t2) - 1/k
  double middle = 0.0;  // s_k(t2) - s_k(t1)
  double upper = 0.0;   // U(t1,t2) + 1/k
};

// L - 1/k <= s_k(t2) - s_k(t1) <= U + 1/k for 0 < t2 < t1 < 1, with
// L = (ln t2 - ln t1)/ln(1-t1), U = (ln t2 - ln t1)/ln(1-t2).
[[nodiscard]] SandwichResult sandwich_check(std::size_t k, double t1, double t2);
[[nodiscard]] SandwichResult sandwich_check(FkOrbit& orbit, double t1, double t2);

struct NumericsReport {
  std::map<std::size_t, std::size_t> s_table;
  IntegralEstimate limit_integral;
  double lower_base = 0.0;  // 2^(2 - I)
  GridMinimum conflict_upper;
  GridMinimum product_upper;
};

[[nodiscard]] NumericsReport numerics_report(std::size_t k_max, double tol);

}  // namespace cnflab
