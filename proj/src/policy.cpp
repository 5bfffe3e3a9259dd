#include "swipt/policy.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>

#include "swipt/link.hpp"

namespace swipt {

namespace {

constexpr const char* kValidNames = "fixed:0.4, fixed:0.6, fixed:0.8, full_csi, partial_csi";

std::string shortest(double value) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

long grid_count(double step) {
  if (!(step > 0.0 && step <= 1e-3)) {
    throw std::invalid_argument("grid step must lie in (0, 1e-3]");
  }
  return static_cast<long>(std::ceil(1.0 / step - 1e-9)) - 1;
}

}  // namespace

FixedPolicy::FixedPolicy(double rho0) : rho0_(rho0) {
  if (!(rho0 > 0.0 && rho0 < 1.0)) {
    throw std::invalid_argument("fixed split ratio must lie strictly inside (0, 1)");
  }
}

std::string policy_name(const Policy& policy) {
  struct Visitor {
    std::string operator()(const FixedPolicy& p) const { return "fixed:" + shortest(p.rho0()); }
    std::string operator()(const FullCsiPolicy&) const { return "full_csi"; }
    std::string operator()(const PartialCsiPolicy&) const { return "partial_csi"; }
  };
  return std::visit(Visitor{}, policy);
}

Policy parse_policy(std::string_view name) {
  if (name == "full_csi") return FullCsiPolicy{};
  if (name == "partial_csi") return PartialCsiPolicy{};
  constexpr std::string_view prefix = "fixed:";
  if (name.starts_with(prefix)) {
    const auto digits = name.substr(prefix.size());
    double rho0 = 0.0;
    const auto res = std::from_chars(digits.data(), digits.data() + digits.size(), rho0);
    if (res.ec == std::errc{} && res.ptr == digits.data() + digits.size() && rho0 > 0.0 &&
        rho0 < 1.0) {
      return FixedPolicy(rho0);
    }
  }
  throw std::invalid_argument("unknown policy \"" + std::string(name) +
                              "\"; valid names: " + kValidNames +
                              " (fixed:<rho> accepts any rho in (0, 1))");
}

double full_csi_rho(const SystemParams& params, double h_sq, double g_sq) {
  const auto coeffs = full_coefficients(params, h_sq, g_sq);
  return coeffs.c1 / (coeffs.c1 + std::sqrt(coeffs.c1 * coeffs.c1_minus_a1));
}

PolicyDecision partial_csi_rho(const SystemParams& params, double h_sq, double gamma_0) {
  if (h_sq <= h_threshold(params, gamma_0)) {
    return {1.0, false};
  }
  const auto coeffs = partial_coefficients(params, h_sq, gamma_0);
  const double excess =
      params.p_s() * h_sq - gamma_0 * (params.sigma_r_sq() + params.sigma_p_sq());
  const double numerator = coeffs.b2 * excess / params.effective_sigma_d_sq();
  const double rho =
      numerator / (coeffs.a2 * (coeffs.b2 + std::sqrt(coeffs.c2 / coeffs.a2)));
  return {rho, true};
}

PolicyDecision fixed_rho(const FixedPolicy& policy) { return {policy.rho0(), true}; }

PolicyDecision decide(const Policy& policy, const SystemParams& params,
                      const ChannelRealization& channel, double gamma_0) {
  struct Visitor {
    const SystemParams& params;
    const ChannelRealization& channel;
    double gamma_0;

    PolicyDecision operator()(const FixedPolicy& p) const { return fixed_rho(p); }
    PolicyDecision operator()(const FullCsiPolicy&) const {
      return {full_csi_rho(params, channel.h_sq, channel.g_sq), true};
    }
    PolicyDecision operator()(const PartialCsiPolicy&) const {
      return partial_csi_rho(params, channel.h_sq, gamma_0);
    }
  };
  return std::visit(Visitor{params, channel, gamma_0}, policy);
}

double oracle_grid_full(const SystemParams& params, double h_sq, double g_sq, double step) {
  const long count = grid_count(step);
  double best_rho = step;
  double best = snr(params, h_sq, g_sq, step);
  for (long k = 2; k <= count; ++k) {
    const double rho = static_cast<double>(k) * step;
    const double value = snr(params, h_sq, g_sq, rho);
    if (value > best) {
      best = value;
      best_rho = rho;
    }
  }
  return best_rho;
}

PolicyDecision oracle_grid_partial(const SystemParams& params, double h_sq, double gamma_0,
                                   double step) {
  const long count = grid_count(step);
  if (h_sq <= h_threshold(params, gamma_0)) return {1.0, false};
  const auto upper = rho_max(params, h_sq, gamma_0);
  if (!upper || *upper <= 0.0) return {1.0, false};

  // Points k * spacing for k = 1, 2, ... strictly below rho_max.
  double spacing = step;
  if (*upper <= step) spacing = *upper / static_cast<double>(count + 1);

  double best_rho = 0.0;
  double best = 0.0;
  bool found = false;
  for (long k = 1; k <= count; ++k) {
    const double rho = static_cast<double>(k) * spacing;
    if (rho >= *upper) break;
    const double value = w_ratio(params, h_sq, gamma_0, rho);
    if (!found || value > best) {
      best = value;
      best_rho = rho;
      found = true;
    }
  }
  return {best_rho, true};
}

}  // namespace swipt
