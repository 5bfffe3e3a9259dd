#pragma once

#include <json.hpp>

namespace swipt {

/// Decibel-milliwatts to linear milliwatts. Throws std::invalid_argument on
/// non-finite input.
double dbm_to_linear(double x_dbm);

/// Linear milliwatts to dBm. Throws std::invalid_argument unless x > 0.
double linear_to_dbm(double x_mw);

/// SNR threshold for a fixed rate: 2^rate - 1. Requires rate > 0.
double snr_threshold(double rate_bps_hz);

/// Static system parameters of the power-splitting AF relay link.
///
/// All powers and noise variances are linear milliwatts. Instances are only
/// obtainable through validation, so every live object satisfies
///   p_s, sigma_r_sq, sigma_p_sq, sigma_d_sq > 0,  0 < epsilon <= 1,  rate > 0.
/// The SNR threshold is derived from the rate on every call and never stored.
class SystemParams {
 public:
  /// Validating constructor from linear quantities.
  static SystemParams from_linear(double p_s, double sigma_r_sq,
                                  double sigma_p_sq, double sigma_d_sq,
                                  double rate, double epsilon = 1.0,
                                  double block_duration = 1.0);

  double p_s() const { return p_s_; }
  double sigma_r_sq() const { return sigma_r_sq_; }
  double sigma_p_sq() const { return sigma_p_sq_; }
  double sigma_d_sq() const { return sigma_d_sq_; }
  double epsilon() const { return epsilon_; }
  double rate() const { return rate_; }
  double block_duration() const { return block_duration_; }
  double gamma_0() const { return snr_threshold(rate_); }

  /// Destination noise as seen through the harvesting efficiency. The
  /// efficiency only ever enters the link budget as sigma_d^2 / epsilon.
  double effective_sigma_d_sq() const { return sigma_d_sq_ / epsilon_; }

  /// Copy with a different source power (linear mW), revalidated.
  SystemParams with_p_s(double p_s) const;

  friend bool operator==(const SystemParams&, const SystemParams&) = default;

 private:
  SystemParams() = default;

  double p_s_ = 0.0;
  double sigma_r_sq_ = 0.0;
  double sigma_p_sq_ = 0.0;
  double sigma_d_sq_ = 0.0;
  double epsilon_ = 1.0;
  double rate_ = 0.0;
  double block_duration_ = 1.0;
};

/// Builds SystemParams from a flat JSON config with dBm-valued powers:
///   p_s_dbm, sigma_r_sq_dbm, sigma_p_sq_dbm, sigma_d_sq_dbm, rate_bps_hz,
///   epsilon (default 1), block_duration_s (default 1).
/// Errors are std::invalid_argument naming the offending field.
SystemParams validate(const nlohmann::json& raw);

/// Re-checks every invariant; returns an identical copy for valid input.
SystemParams validate(const SystemParams& params);

/// Inverse of validate(json): the dBm-valued config document.
nlohmann::json to_config(const SystemParams& params);

}  // namespace swipt
