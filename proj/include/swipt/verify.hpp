#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "swipt/channel.hpp"
#include "swipt/params.hpp"

namespace swipt::verify {

/// A randomized problem instance for the oracle batteries.
struct Instance {
  SystemParams params;
  double h_sq;
  double g_sq;
};

/// P_s log-uniform on [20, 50] dBm, each noise variance log-uniform on
/// [-30, -10] dBm, |h|^2 and |g|^2 log-uniform on [0.01, 10], rate uniform on
/// [1, 4] bit/s/Hz, epsilon = 1.
Instance random_instance(RngStream& rng);

struct Options {
  bool quick = false;
  /// Test hook: offset added to the closed-form full-CSI split before it is
  /// checked. Any non-zero value large against the grid step must fail.
  double full_rho_fault = 0.0;
  std::uint64_t seed = 2014;
  unsigned workers = 0;
};

struct BatteryResult {
  std::string name;
  bool passed;
  std::uint64_t checks;
  /// Worst observed discrepancy, human readable.
  std::string detail;
};

/// Closed-form full-CSI split vs 1e-4 grid search on snr().
BatteryResult full_csi_battery(const Options& options);

/// Closed-form partial-CSI split vs 1e-4 grid search on w_ratio() over the
/// feasible set; infeasible instances must return rho = 1.
BatteryResult partial_csi_battery(const Options& options);

/// snr() against snr_via_beta() and the coefficient identities
/// b1 = -2 c1, b1^2 - 4 a1 c1 = 4 c1 (c1 - a1).
BatteryResult identity_battery(const Options& options);

/// Monte Carlo against the semi-analytic estimator for partial CSI and the
/// fixed 0.4 / 0.6 / 0.8 splits at P_s = 40 dBm, lambda_h = lambda_g = 1.5,
/// sigma_r^2 = sigma_p^2 = -20 dBm, sigma_d^2 = -17 dBm, R = 3.
BatteryResult estimator_battery(const Options& options);

std::vector<BatteryResult> run_all(const Options& options);

}  // namespace swipt::verify
