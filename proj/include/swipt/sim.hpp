#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "swipt/channel.hpp"
#include "swipt/params.hpp"
#include "swipt/policy.hpp"

namespace swipt {

/// Realizations per batch. Batch b of a run always draws from
/// substream(seed, b), so results do not depend on how batches are spread
/// over threads.
inline constexpr std::uint64_t kBatchSize = 1u << 16;

struct OutageEstimate {
  double p_out = 0.0;
  double std_err = 0.0;
  std::uint64_t n = 0;
  /// Mean rho over transmitting realizations; NaN if none transmitted.
  double mean_rho = 0.0;
  double harvest_only_fraction = 0.0;
};

/// Monte Carlo outage of several policies on common channel draws. Every
/// realization is scored under each policy; outage iff snr < gamma_0, so a
/// harvest-only decision (rho = 1, snr = 0) is always an outage.
/// `workers` == 0 means hardware concurrency. Bit-identical for any worker count.
std::vector<OutageEstimate> outage_mc_common(const SystemParams& params,
                                             const FadingParams& fading,
                                             std::span<const Policy> policies, double gamma_0,
                                             std::uint64_t n, std::uint64_t seed,
                                             unsigned workers = 0);

OutageEstimate outage_mc(const SystemParams& params, const FadingParams& fading,
                         const Policy& policy, double gamma_0, std::uint64_t n,
                         std::uint64_t seed, unsigned workers = 0);

/// Samples |h|^2 only and averages the analytic conditional outage over g.
/// Only valid for policies whose rho does not depend on g; FullCsiPolicy is
/// rejected with std::invalid_argument. std_err is the sample standard
/// deviation of the conditional probabilities over sqrt(n_h).
OutageEstimate outage_semi_analytic(const SystemParams& params, const FadingParams& fading,
                                    const Policy& policy, double gamma_0, std::uint64_t n_h,
                                    std::uint64_t seed, unsigned workers = 0);

/// -ln(p_out_x / p_out_ref). Throws std::domain_error ("insufficient
/// resolution") unless both probabilities lie strictly inside (0, 1).
double gain_eta(double p_out_x, double p_out_ref);

/// A (p_s_dbm, p_out) curve sorted by increasing p_s_dbm.
using OutageCurve = std::vector<std::pair<double, double>>;

/// Horizontal distance in dB between two outage curves at the outage level
/// curve_dyn reaches at `at_p_s_dbm`. Both curves are interpolated linearly in
/// ln(p_out) versus dBm. Positive when the base curve needs more power.
/// Throws std::domain_error ("extrapolation refused") when the base curve never
/// reaches that level, std::invalid_argument on malformed curves.
double horizontal_gain_db(const OutageCurve& curve_dyn, const OutageCurve& curve_base,
                          double at_p_s_dbm);

enum class SweepVariable { PsDbm, LambdaG, LambdaH };

std::string_view to_string(SweepVariable variable);
SweepVariable parse_sweep_variable(std::string_view name);

struct SweepSpec {
  SweepVariable variable = SweepVariable::PsDbm;
  std::vector<double> values;
  SystemParams params;
  FadingParams fading;
  std::vector<Policy> policies;
  std::uint64_t n = 1;
  std::uint64_t seed = 0;
};

/// Throws std::invalid_argument if values are empty or not strictly
/// increasing, no policies are given, or n == 0.
void validate(const SweepSpec& spec);

struct SweepRow {
  double value;
  Policy policy;
  OutageEstimate estimate;
};

struct SweepResult {
  SweepVariable variable;
  std::vector<SweepRow> rows;
  std::uint64_t seed;
  std::uint64_t n;
};

/// Runs outage_mc_common at every sweep value; all policies at a value share
/// the channel draws of substream(seed, value index). Rows are ordered by value,
/// then by the order of spec.policies.
SweepResult run_sweep(const SweepSpec& spec, unsigned workers = 0);

/// Gains against the fixed rho = 0.4 baseline at one sweep value. Entries are
/// NaN where gain_eta reports insufficient resolution or the policy is absent.
struct GainRow {
  double sweep_value;
  double eta_full;
  double eta_par;
  double eta_06;
  double eta_08;
};

/// Throws std::invalid_argument when fixed:0.4 is not part of the sweep.
std::vector<GainRow> compute_gains(const SweepResult& result);

}  // namespace swipt
