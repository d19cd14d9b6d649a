#include "cnflab/numerics.hpp"

#include <algorithm>
#include <cmath>

#include "cnflab/formula.hpp"

namespace cnflab {

double f_k(std::size_t k, double t) {
  if (k == 0) throw Error("f_k needs k >= 1");
  if (!(t >= 0.0 && t <= 1.0)) throw Error("f_k is defined on [0,1]");
  return t * std::pow(1.0 - t, 1.0 / static_cast<double>(k));
}

double iterate_f(std::size_t k, std::size_t ell, double t, bool log_space) {
  if (k == 0) throw Error("f_k needs k >= 1");
  if (!(t >= 0.0 && t <= 1.0)) throw Error("f_k is defined on [0,1]");
  if (!log_space) {
    for (std::size_t i = 0; i < ell; ++i) t = f_k(k, t);
    return t;
  }
  if (t == 0.0 || (t == 1.0 && ell > 0)) return 0.0;
  const double inv_k = 1.0 / static_cast<double>(k);
  double log_t = std::log(t);
  for (std::size_t i = 0; i < ell; ++i) log_t += std::log1p(-std::exp(log_t)) * inv_k;
  return std::exp(log_t);
}

double t_star(std::size_t k) {
  if (k == 0) throw Error("t*_k needs k >= 1");
  const double kk = static_cast<double>(k);
  return kk / (kk + 1.0);
}

FkOrbit::FkOrbit(std::size_t k, std::size_t max_steps) : k_{k}, max_steps_{max_steps} {
  values_.push_back(t_star(k));
}

std::size_t FkOrbit::threshold_count(double t) {
  if (!(t > 0.0 && t <= 1.0)) throw Error("threshold t must lie in (0,1]");
  while (values_.back() > t) {
    if (values_.size() > max_steps_)
      throw Error("f_k orbit did not reach " + std::to_string(t) + " within the step limit");
    values_.push_back(f_k(k_, values_.back()));
  }
  const auto it = std::partition_point(values_.begin(), values_.end(), [t](double v) { return v > t; });
  return static_cast<std::size_t>(it - values_.begin());
}

std::size_t S_k(std::size_t k) {
  if (k < 2) throw Error("S_k needs k >= 2");
  return S_k_t(k, 0.5);
}

std::size_t S_k_t(std::size_t k, double t) {
  FkOrbit orbit(k);
  return orbit.threshold_count(t);
}

double s_k_t(std::size_t k, double t) {
  return static_cast<double>(S_k_t(k, t)) / static_cast<double>(k);
}

double limit_integrand(double x) {
  if (!(x > 0.0 && x <= 1.0)) throw Error("integrand defined on (0,1]");
  if (x == 1.0) return 0.0;
  return -1.0 / (x * std::log1p(-x));
}

namespace {

// Integrand in u = 1 - x.
double tail_form(double u) { return -1.0 / ((1.0 - u) * std::log(u)); }

struct Simpson {
  std::size_t evaluations = 0;
  double error = 0.0;

  double eval(double u) {
    ++evaluations;
    return tail_form(u);
  }

  double recurse(double a, double b, double fa, double fm, double fb, double whole, double eps, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = eval(lm);
    const double frm = eval(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double diff = left + right - whole;
    if (depth <= 0 || std::abs(diff) <= 15.0 * eps) {
      error += std::abs(diff) / 15.0;
      return left + right + diff / 15.0;
    }
    return recurse(a, m, fa, flm, fm, left, eps / 2.0, depth - 1) +
           recurse(m, b, fm, frm, fb, right, eps / 2.0, depth - 1);
  }
};

}  // namespace

IntegralEstimate limit_integral(double tol) {
  if (!(tol >= 1e-10)) throw Error("quadrature tolerance must be >= 1e-10");
  // Tail on u in [0, delta]: 0 <= integral <= delta / (|ln delta| (1 - delta)).
  double delta = tol;
  auto tail_bound = [](double d) { return d / (-std::log(d) * (1.0 - d)); };
  while (tail_bound(delta) >= tol / 10.0) delta /= 2.0;

  Simpson s;
  const double a = delta;
  const double b = 0.5;
  const double fa = s.eval(a);
  const double fb = s.eval(b);
  const double fm = s.eval(0.5 * (a + b));
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  const double value = s.recurse(a, b, fa, fm, fb, whole, tol / 2.0, 60);

  IntegralEstimate out;
  out.value = value;
  out.tail_cutoff = delta;
  out.error_bound = s.error + tail_bound(delta);
  out.evaluations = s.evaluations;
  return out;
}

BinomialBounds binomial_bounds_check(std::uint64_t a, std::uint64_t b) {
  if (a < 1 || b < 1) throw Error("binomial bounds need a >= 1 and b >= 1");
  if (4 * b > 3 * a) throw Error("binomial bounds need b/a <= 0.75");
  const double ad = static_cast<double>(a);
  const double bd = static_cast<double>(b);
  BinomialBounds r;
  r.log_upper = bd * std::log(ad) - std::lgamma(bd + 1.0);
  r.log_lower = r.log_upper - bd * bd / ad;
  // C(a,b) = a^b/b! * prod_{j<b} (1 - j/a)
  double log_ratio = 0.0;
  for (std::uint64_t j = 1; j < b; ++j) log_ratio += std::log1p(-static_cast<double>(j) / ad);
  r.log_exact = r.log_upper + log_ratio;
  r.lower_strict = log_ratio > -bd * bd / ad;
  r.upper_holds = log_ratio <= 0.0;

  r.upper = std::exp(r.log_upper);
  r.lower = std::exp(r.log_lower);
  // Multiplicative form keeps small cases exact.
  double exact = 1.0;
  for (std::uint64_t j = 0; j < b && std::isfinite(exact); ++j)
    exact = exact * static_cast<double>(a - j) / static_cast<double>(j + 1);
  r.exact = std::isfinite(exact) ? exact : std::exp(r.log_exact);
  return r;
}

double conflict_base(double rho, double lambda) {
  if (!(rho > 0.0 && rho < 1.0)) throw Error("rho must lie in (0,1)");
  if (!(lambda > 0.0 && lambda <= 1.0)) throw Error("lambda must lie in (0,1]");
  const double common = std::pow(1.0 - rho, -lambda);
  const double first = std::pow(4.0, 1.0 - lambda) * common;
  const double second = std::pow(2.0, 1.0 - lambda) / rho * common;
  return std::max(first, second);
}

double product_base(double rho, double lambda) {
  if (!(rho > 0.0 && rho < 1.0)) throw Error("rho must lie in (0,1)");
  if (!(lambda > 0.0 && lambda <= 1.0)) throw Error("lambda must lie in (0,1]");
  const double first = std::pow(4.0, 1.0 - lambda);
  const double second = std::pow(2.0, 1.0 - lambda) / rho * std::pow(1.0 - rho, -lambda);
  return std::max(first, second);
}

GridMinimum minimize_base(BaseFunction base, double coarse, double fine) {
  GridMinimum best{INFINITY, 0.0, 0.0};
  auto visit = [&](double rho, double lambda) {
    const double v = base(rho, lambda);
    if (v < best.value) best = GridMinimum{v, rho, lambda};
  };
  const auto steps = static_cast<long>(std::llround(1.0 / coarse));
  for (long i = 1; i < steps; ++i)
    for (long j = 1; j <= steps; ++j) visit(static_cast<double>(i) * coarse, static_cast<double>(j) * coarse);

  const GridMinimum incumbent = best;
  const auto span = static_cast<long>(std::llround(coarse / fine));
  for (long i = -span; i <= span; ++i) {
    const double rho = incumbent.rho + static_cast<double>(i) * fine;
    if (!(rho > 0.0 && rho < 1.0)) continue;
    for (long j = -span; j <= span; ++j) {
      const double lambda = incumbent.lambda + static_cast<double>(j) * fine;
      if (!(lambda > 0.0 && lambda <= 1.0)) continue;
      visit(rho, lambda);
    }
  }
  return best;
}

SandwichResult sandwich_check(FkOrbit& orbit, double t1, double t2) {
  if (!(t2 > 0.0 && t2 < t1 && t1 < 1.0)) throw Error("sandwich check needs 0 < t2 < t1 < 1");
  const double k = static_cast<double>(orbit.k());
  const double log_ratio = std::log(t2) - std::log(t1);
  SandwichResult r;
  r.lower = log_ratio / std::log1p(-t1) - 1.0 / k;
  r.upper = log_ratio / std::log1p(-t2) + 1.0 / k;
  const double s2 = static_cast<double>(orbit.threshold_count(t2)) / k;
  const double s1 = static_cast<double>(orbit.threshold_count(t1)) / k;
  r.middle = s2 - s1;
  r.holds = r.lower <= r.middle && r.middle <= r.upper;
  return r;
}

SandwichResult sandwich_check(std::size_t k, double t1, double t2) {
  FkOrbit orbit(k);
  return sandwich_check(orbit, t1, t2);
}

NumericsReport numerics_report(std::size_t k_max, double tol) {
  NumericsReport r;
  for (std::size_t k = 2; k <= k_max; ++k) r.s_table[k] = S_k(k);
  r.limit_integral = limit_integral(tol);
  r.lower_base = std::exp2(2.0 - r.limit_integral.value);
  r.conflict_upper = minimize_base(&conflict_base);
  r.product_upper = minimize_base(&product_base);
  return r;
}

}  // namespace cnflab
