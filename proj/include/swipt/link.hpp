#pragma once

#include <optional>

#include "swipt/params.hpp"

namespace swipt {

/// Relay transmit power funded by the harvested energy:
/// P_r = epsilon * rho * (P_s |h|^2 + sigma_r^2), in mW.
double harvested_power(const SystemParams& params, double h_sq, double rho);

/// Energy harvested over the first half-block, P_r * T / 2 (mJ for T in s).
double harvested_energy(const SystemParams& params, double h_sq, double rho);

/// End-to-end SNR of the power-splitting AF link as a rational function of rho
/// after substituting P_r:
///
///              P_s |h|^2 |g|^2 rho (1 - rho)
///   ------------------------------------------------------------
///   |g|^2 s_r rho (1 - rho) + |g|^2 s_p rho + s_d' (1 - rho + s_p / A)
///
/// with A = P_s |h|^2 + s_r and s_d' = sigma_d^2 / epsilon. Expanding the
/// denominator gives the familiar -|g|^2 s_r rho^2 + (|g|^2 (s_r + s_p) - s_d) rho
/// + s_d + s_p s_d / A. The grouped form avoids cancellation near rho = 1.
/// Defined on the closed interval [0, 1]; zero at both ends.
double snr(const SystemParams& params, double h_sq, double g_sq, double rho);

/// Same SNR evaluated literally through the AF normalisation factor
/// beta(rho)^2 = 1 / ((1 - rho) A + s_p) and P_r. Only defined on the open
/// interval (0, 1); throws std::domain_error otherwise. Kept as an
/// independent algebraic route for cross-checking snr().
double snr_via_beta(const SystemParams& params, double h_sq, double g_sq, double rho);

/// Coefficients of f(rho) = a1 rho^2 + b1 rho + c1, the numerator of dSNR/drho
/// (up to a positive factor).
struct LinkCoefficientsFull {
  double a1;
  double b1;
  double c1;
  /// c1 - a1, computed without cancellation.
  double c1_minus_a1;

  /// b1^2 - 4 a1 c1, evaluated as 4 c1 (c1 - a1) > 0.
  double discriminant() const { return 4.0 * c1 * c1_minus_a1; }
};

LinkCoefficientsFull full_coefficients(const SystemParams& params, double h_sq,
                                       double g_sq);

/// dW/drho = a2 - c2 / (rho - b2)^2.
struct LinkCoefficientsPartial {
  double a2;
  double b2;
  double c2;
};

LinkCoefficientsPartial partial_coefficients(const SystemParams& params, double h_sq,
                                             double gamma_0);

/// F(rho) = P_s |h|^2 rho (1 - rho) - gamma_0 (-rho^2 s_r + rho s_r + rho s_p).
/// The outage event gamma(rho) < gamma_0 is |g|^2 F(rho) < gamma_0 sigma0^2(rho).
double f_of_rho(const SystemParams& params, double h_sq, double gamma_0, double rho);

/// sigma0^2(rho) = s_d' (1 - rho) + s_p s_d' / (P_s |h|^2 + s_r), s_d' = sigma_d^2 / epsilon.
double sigma0_sq(const SystemParams& params, double h_sq, double rho);

/// Root of F on (0, 1): the upper end of the feasible set {0 < rho < rho_max}.
/// Empty optional when P_s |h|^2 == gamma_0 s_r (degenerate channel), which
/// callers treat like rho_max <= 0.
std::optional<double> rho_max(const SystemParams& params, double h_sq, double gamma_0);

/// H0 = gamma_0 (s_r + s_p) / P_s. For |h|^2 <= H0 no split avoids outage.
double h_threshold(const SystemParams& params, double gamma_0);

/// W(rho) = F(rho) / sigma0^2(rho). Outage given h is monotone decreasing in W.
double w_ratio(const SystemParams& params, double h_sq, double gamma_0, double rho);

/// Outage probability given |h|^2, averaged over |g|^2 ~ Exp(lambda_g):
/// 1 - exp(-gamma_0 sigma0^2 / (F lambda_g)) when F(rho) > 0, exactly 1 otherwise
/// (which includes rho = 1).
double conditional_outage(const SystemParams& params, double h_sq, double rho,
                          double lambda_g, double gamma_0);

}  // namespace swipt
