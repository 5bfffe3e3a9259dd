#pragma once

// Reference formulas for the tests, written out in the expanded textbook form
// so they share no code path with the library's grouped / rationalised forms.

#include <algorithm>
#include <cmath>
#include <vector>

#include "swipt/params.hpp"

namespace swipt::testing {

/// SNR with the denominator expanded as a polynomial in rho (epsilon = 1).
inline double snr_expanded(const SystemParams& p, double h_sq, double g_sq, double rho) {
  const double s_r = p.sigma_r_sq(), s_p = p.sigma_p_sq(), s_d = p.sigma_d_sq();
  const double den = -g_sq * s_r * rho * rho + (g_sq * (s_r + s_p) - s_d) * rho + s_d +
                     s_p * s_d / (h_sq * p.p_s() + s_r);
  return p.p_s() * h_sq * g_sq * rho * (1.0 - rho) / den;
}

/// Two-branch root of a1 rho^2 + b1 rho + c1 = 0 (1/2 when a1 == 0).
inline double full_rho_two_branch(const SystemParams& p, double h_sq, double g_sq) {
  const double s_p = p.sigma_p_sq(), s_d = p.sigma_d_sq();
  const double tail = s_p * s_d / (h_sq * p.p_s() + p.sigma_r_sq());
  const double a1 = s_d - g_sq * s_p;
  const double b1 = -2.0 * (s_d + tail);
  const double c1 = s_d + tail;
  if (a1 == 0.0) return 0.5;
  return (-b1 - std::sqrt(b1 * b1 - 4.0 * a1 * c1)) / (2.0 * a1);
}

/// The two-branch root in extended precision; the cancellation in
/// -b1 - sqrt(.) costs about eps * c1 / |a1| relative, which long double keeps
/// below 1e-13 for |a1| > 1e-6 c1.
inline long double full_rho_two_branch_ld(const SystemParams& p, double h_sq, double g_sq) {
  const long double s_p = p.sigma_p_sq(), s_d = p.sigma_d_sq();
  const long double tail = s_p * s_d / (static_cast<long double>(h_sq) * p.p_s() + p.sigma_r_sq());
  const long double a1 = s_d - g_sq * s_p;
  const long double c1 = s_d + tail;
  const long double b1 = -2.0L * c1;
  if (a1 == 0.0L) return 0.5L;
  return (-b1 - std::sqrt(b1 * b1 - 4.0L * a1 * c1)) / (2.0L * a1);
}

/// b2 - sqrt(c2 / a2) evaluated literally.
inline double partial_rho_literal(const SystemParams& p, double h_sq, double gamma_0) {
  const double s_r = p.sigma_r_sq(), s_p = p.sigma_p_sq(), s_d = p.sigma_d_sq();
  const double a = p.p_s() * h_sq + s_r;
  const double a2 = (p.p_s() * h_sq - gamma_0 * s_r) / s_d;
  const double b2 = 1.0 + s_p / a;
  const double c2 = b2 * (a2 * s_p / a + gamma_0 * s_p / s_d);
  return b2 - std::sqrt(c2 / a2);
}

/// Literal F(rho) = P_s h rho (1 - rho) - gamma_0 (-rho^2 s_r + rho s_r + rho s_p).
inline double f_literal(const SystemParams& p, double h_sq, double gamma_0, double rho) {
  return p.p_s() * h_sq * rho * (1.0 - rho) -
         gamma_0 * (-rho * rho * p.sigma_r_sq() + rho * p.sigma_r_sq() + rho * p.sigma_p_sq());
}

/// One-sample Kolmogorov-Smirnov statistic against Exponential(mean).
inline double ks_exponential(std::vector<double> samples, double mean) {
  std::sort(samples.begin(), samples.end());
  const double n = static_cast<double>(samples.size());
  double d = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double cdf = -std::expm1(-samples[i] / mean);
    d = std::max({d, static_cast<double>(i + 1) / n - cdf, cdf - static_cast<double>(i) / n});
  }
  return d;
}

/// Asymptotic 1% critical value of the KS statistic, c(0.01) / sqrt(n) with
/// c(0.01) = sqrt(-ln(0.005) / 2) = 1.6276.
inline double ks_critical_1pct(std::size_t n) {
  return std::sqrt(-std::log(0.005) / 2.0) / std::sqrt(static_cast<double>(n));
}

/// The headline operating point: P_s = 40 dBm, noise -20 / -20 / -17 dBm, R = 3.
inline SystemParams headline_params(double p_s_dbm = 40.0) {
  return validate(nlohmann::json{{"p_s_dbm", p_s_dbm},
                                 {"sigma_r_sq_dbm", -20.0},
                                 {"sigma_p_sq_dbm", -20.0},
                                 {"sigma_d_sq_dbm", -17.0},
                                 {"rate_bps_hz", 3.0}});
}

}  // namespace swipt::testing
