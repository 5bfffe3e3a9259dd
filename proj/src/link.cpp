#include "swipt/link.hpp"

#include <cmath>
#include <stdexcept>

namespace swipt {

namespace {

// Relay input power P_s |h|^2 + sigma_r^2.
double relay_input(const SystemParams& params, double h_sq) {
  return params.p_s() * h_sq + params.sigma_r_sq();
}

}  // namespace

double harvested_power(const SystemParams& params, double h_sq, double rho) {
  return params.epsilon() * rho * relay_input(params, h_sq);
}

double harvested_energy(const SystemParams& params, double h_sq, double rho) {
  return harvested_power(params, h_sq, rho) * params.block_duration() / 2.0;
}

double snr(const SystemParams& params, double h_sq, double g_sq, double rho) {
  if (!(rho >= 0.0 && rho <= 1.0)) {
    throw std::domain_error("snr: rho outside [0, 1]");
  }
  const double a = relay_input(params, h_sq);
  const double s_r = params.sigma_r_sq();
  const double s_p = params.sigma_p_sq();
  const double s_d = params.effective_sigma_d_sq();
  const double split = rho * (1.0 - rho);

  const double numerator = params.p_s() * h_sq * g_sq * split;
  const double denominator =
      g_sq * s_r * split + g_sq * s_p * rho + s_d * ((1.0 - rho) + s_p / a);
  return numerator / denominator;
}

double snr_via_beta(const SystemParams& params, double h_sq, double g_sq, double rho) {
  if (!(rho > 0.0 && rho < 1.0)) {
    throw std::domain_error("snr_via_beta: rho must lie in (0, 1)");
  }
  const double a = relay_input(params, h_sq);
  const double p_r = harvested_power(params, h_sq, rho);
  const double beta_sq = 1.0 / ((1.0 - rho) * a + params.sigma_p_sq());

  const double denominator = g_sq * params.sigma_r_sq() +
                             g_sq * params.sigma_p_sq() / (1.0 - rho) +
                             params.sigma_d_sq() / (p_r * beta_sq * (1.0 - rho));
  return params.p_s() * h_sq * g_sq / denominator;
}

LinkCoefficientsFull full_coefficients(const SystemParams& params, double h_sq,
                                       double g_sq) {
  const double a = relay_input(params, h_sq);
  const double s_p = params.sigma_p_sq();
  const double s_d = params.effective_sigma_d_sq();
  const double tail = s_p * s_d / a;

  LinkCoefficientsFull coeffs{};
  coeffs.a1 = s_d - g_sq * s_p;
  coeffs.c1 = s_d + tail;
  coeffs.b1 = -2.0 * coeffs.c1;
  coeffs.c1_minus_a1 = tail + g_sq * s_p;
  return coeffs;
}

LinkCoefficientsPartial partial_coefficients(const SystemParams& params, double h_sq,
                                             double gamma_0) {
  const double a = relay_input(params, h_sq);
  const double s_p = params.sigma_p_sq();
  const double s_d = params.effective_sigma_d_sq();

  LinkCoefficientsPartial coeffs{};
  coeffs.a2 = (params.p_s() * h_sq - gamma_0 * params.sigma_r_sq()) / s_d;
  coeffs.b2 = 1.0 + s_p / a;
  coeffs.c2 = coeffs.b2 * (coeffs.a2 * s_p / a + gamma_0 * s_p / s_d);
  return coeffs;
}

double f_of_rho(const SystemParams& params, double h_sq, double gamma_0, double rho) {
  // rho * ((P_s|h|^2 - gamma_0 s_r)(1 - rho) - gamma_0 s_p)
  const double margin = params.p_s() * h_sq - gamma_0 * params.sigma_r_sq();
  return rho * (margin * (1.0 - rho) - gamma_0 * params.sigma_p_sq());
}

double sigma0_sq(const SystemParams& params, double h_sq, double rho) {
  const double s_d = params.effective_sigma_d_sq();
  return s_d * (1.0 - rho) + params.sigma_p_sq() * s_d / relay_input(params, h_sq);
}

std::optional<double> rho_max(const SystemParams& params, double h_sq, double gamma_0) {
  const double margin = params.p_s() * h_sq - gamma_0 * params.sigma_r_sq();
  if (margin == 0.0) return std::nullopt;
  return (margin - gamma_0 * params.sigma_p_sq()) / margin;
}

double h_threshold(const SystemParams& params, double gamma_0) {
  return gamma_0 * (params.sigma_r_sq() + params.sigma_p_sq()) / params.p_s();
}

double w_ratio(const SystemParams& params, double h_sq, double gamma_0, double rho) {
  return f_of_rho(params, h_sq, gamma_0, rho) / sigma0_sq(params, h_sq, rho);
}

double conditional_outage(const SystemParams& params, double h_sq, double rho,
                          double lambda_g, double gamma_0) {
  const double f = f_of_rho(params, h_sq, gamma_0, rho);
  if (!(f > 0.0) || rho >= 1.0) return 1.0;
  const double threshold = gamma_0 * sigma0_sq(params, h_sq, rho) / f;
  return -std::expm1(-threshold / lambda_g);
}

}  // namespace swipt
