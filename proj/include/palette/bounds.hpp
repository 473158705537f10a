#pragma once

#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <vector>

#include "palette/extremal.hpp"

namespace palette {

// Closed-form growth rates as functions of the palette ratio b = ell/k:
//   krsg(b)       = 4 (b-2)^(b-2) (b-1)^(2-2b) b^b   (degeneracy route)
//   containers(b) = 2 b / (b-2)                      (containers route)
//   r_rate(b)     = krsg(b) / 4                      (bipartite lower bound)
//   f(b)          = 2 (b-2)^((b-2)/2) (b-1)^(1-b) b^(b/2)
struct RateFunctions {
  double b = 0;
  double krsg = 0;
  double containers = 0;
  double r_rate = 0;
  double f = 0;
};

inline RateFunctions eval_rates(double b) {
  if (!(b > 2.0)) throw std::domain_error("eval_rates: needs b > 2");
  // log-domain keeps large b (and the b->2 endpoint, where (b-2)ln(b-2) -> 0)
  // well behaved
  const double log_r = (b - 2) * std::log(b - 2) + (2 - 2 * b) * std::log(b - 1) + b * std::log(b);
  const double r_rate = std::exp(log_r);
  const double f =
      2.0 * std::exp(0.5 * (b - 2) * std::log(b - 2) + (1 - b) * std::log(b - 1) +
                     0.5 * b * std::log(b));
  return {b, 4.0 * r_rate, 2.0 * b / (b - 2.0), r_rate, f};
}

/// Solves ((b-2)(b-1)^{-2} b)^{b-1} = 1/2 on (2,4] by bisection; at the root
/// the krsg and containers rates coincide.
inline double crossover() {
  auto excess = [](double b) {
    return std::pow((b - 2.0) * b / ((b - 1.0) * (b - 1.0)), b - 1.0) - 0.5;
  };
  double lo = 2.0 + 1e-12, hi = 4.0;
  while (hi - lo > 1e-10) {
    const double mid = 0.5 * (lo + hi);
    (excess(mid) < 0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

struct BoundReport {
  GroundParams params;
  int m_value_used = 0;
  double exp_lower = 0;            // exp((k-1)^2 / ell)
  BracketValue factorial_lower;    // exact transversal-count bound
  BracketValue factorial_upper;
  double min_degree_d = 0;         // degree threshold forcing non-choosability
};

inline BoundReport bound_report(GroundParams p, int m_value) {
  if (p.k < 2) throw std::domain_error("bound_report: needs k >= 2");
  if (m_value < 2) throw std::domain_error("bound_report: needs M >= 2");
  BoundReport r;
  r.params = p;
  r.m_value_used = m_value;
  r.exp_lower = std::exp(static_cast<double>(p.k - 1) * (p.k - 1) / p.ell);
  r.factorial_lower = lower_bound_r(p);
  r.factorial_upper = upper_bound_r(p);
  const double ln_m = std::log(static_cast<double>(m_value));
  const double root = 1.0 + std::sqrt(1.0 + 1.0 / (3.0 * ln_m));
  r.min_degree_d = 12.0 * m_value * m_value * ln_m * std::log(static_cast<double>(p.k)) * root * root;
  return r;
}

/// log(lower_bound_r(k, floor(b k)))/k for k = 2..k_max, computed with
/// log-gamma so large k cannot overflow; approaches log(r_rate(b)).
inline std::vector<double> rate_convergence(double b, int k_max) {
  if (!(b > 2.0)) throw std::domain_error("rate_convergence: needs b > 2");
  if (k_max < 2 || k_max > 500)
    throw std::domain_error("rate_convergence: needs 2 <= k_max <= 500");
  std::vector<double> out;
  out.reserve(k_max - 1);
  for (int k = 2; k <= k_max; ++k) {
    const int ell = static_cast<int>(b * k);
    const double log_ratio = std::lgamma(ell + 1.0) + std::lgamma(ell - 2 * k + 2.0) -
                             std::lgamma(ell - k + 1.0) - std::lgamma(ell - k + 2.0);
    out.push_back(log_ratio / k);
  }
  return out;
}

/// CSV rows (b,krsg,containers,r_rate); doubles printed to round-trip exactly.
inline std::string emit_curves(double b_from, double b_to, double step) {
  if (!(step > 0)) throw std::invalid_argument("emit_curves: step must be positive");
  if (!(2.0 < b_from && b_from < b_to))
    throw std::invalid_argument("emit_curves: needs 2 < b_from < b_to");
  std::string out = "b,krsg,containers,r_rate\n";
  char buf[160];
  for (int i = 0;; ++i) {
    const double b = b_from + i * step;
    if (b > b_to + step * 1e-9) break;
    const RateFunctions r = eval_rates(b);
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g\n", r.b, r.krsg, r.containers,
                  r.r_rate);
    out += buf;
  }
  return out;
}

}  // namespace palette
