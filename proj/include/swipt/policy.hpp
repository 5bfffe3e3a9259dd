#pragma once

#include <string>
#include <string_view>
#include <variant>

#include "swipt/channel.hpp"
#include "swipt/params.hpp"

namespace swipt {

/// Constant split ratio regardless of the channel.
class FixedPolicy {
 public:
  /// Throws std::invalid_argument unless 0 < rho0 < 1.
  explicit FixedPolicy(double rho0);

  double rho0() const { return rho0_; }

  friend bool operator==(const FixedPolicy&, const FixedPolicy&) = default;

 private:
  double rho0_;
};

/// Relay knows |h|^2 and |g|^2 and maximises the instantaneous SNR.
struct FullCsiPolicy {
  friend bool operator==(const FullCsiPolicy&, const FullCsiPolicy&) = default;
};

/// Relay knows |h|^2 and only the mean of |g|^2; minimises the outage
/// averaged over g.
struct PartialCsiPolicy {
  friend bool operator==(const PartialCsiPolicy&, const PartialCsiPolicy&) = default;
};

using Policy = std::variant<FixedPolicy, FullCsiPolicy, PartialCsiPolicy>;

/// "fixed:<rho0>", "full_csi" or "partial_csi".
std::string policy_name(const Policy& policy);

/// Inverse of policy_name. Throws std::invalid_argument listing the valid names.
Policy parse_policy(std::string_view name);

struct PolicyDecision {
  double rho;
  /// False iff rho == 1: the relay only harvests and nothing is forwarded.
  bool transmitting;
};

/// SNR-maximising split for known |h|^2 and |g|^2, in the rationalised form
/// c1 / (c1 + sqrt(c1 (c1 - a1))). Equals the root
/// (-b1 - sqrt(b1^2 - 4 a1 c1)) / (2 a1) for a1 != 0 and 1/2 for a1 == 0,
/// without the branch or the cancellation as a1 -> 0. Result is in (0, 1).
double full_csi_rho(const SystemParams& params, double h_sq, double g_sq);

/// W-maximising split for known |h|^2. For |h|^2 <= H0 the feasible set is
/// empty and the relay harvests everything (rho = 1, not transmitting).
/// Otherwise returns b2 - sqrt(c2 / a2), evaluated as
///   b2 (P_s |h|^2 - gamma_0 (s_r + s_p)) / s_d / (a2 (b2 + sqrt(c2 / a2)))
/// which is the same number without cancellation when rho* is small.
PolicyDecision partial_csi_rho(const SystemParams& params, double h_sq, double gamma_0);

PolicyDecision fixed_rho(const FixedPolicy& policy);

/// Applies any policy to one channel realization.
PolicyDecision decide(const Policy& policy, const SystemParams& params,
                      const ChannelRealization& channel, double gamma_0);

/// Grid-search oracle for full_csi_rho: argmax of snr() over
/// {step, 2 step, ..., 1 - step}, ties to the smaller rho. Requires 0 < step <= 1e-3.
double oracle_grid_full(const SystemParams& params, double h_sq, double g_sq, double step);

/// Grid-search oracle for partial_csi_rho: argmax of w_ratio() over the grid
/// points strictly inside (0, rho_max), ties to the smaller rho. Returns
/// {1, false} when |h|^2 <= H0. If the feasible interval is non-empty but
/// narrower than one grid step, the same number of points is laid uniformly
/// over (0, rho_max) instead.
PolicyDecision oracle_grid_partial(const SystemParams& params, double h_sq, double gamma_0,
                                   double step);

}  // namespace swipt
