#include "swipt/sim.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>

#include "swipt/link.hpp"

namespace swipt {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::uint64_t batch_count(std::uint64_t n) { return (n + kBatchSize - 1) / kBatchSize; }

std::uint64_t batch_length(std::uint64_t n, std::uint64_t batch) {
  return std::min(kBatchSize, n - batch * kBatchSize);
}

// Runs task(batch) for every batch index; each index is handled exactly once.
// Tasks write only to their own slot, so no synchronisation beyond the counter.
template <typename Task>
void for_each_batch(std::uint64_t batches, unsigned workers, Task&& task) {
  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  const auto threads = static_cast<unsigned>(std::min<std::uint64_t>(workers, batches));
  if (threads <= 1) {
    for (std::uint64_t b = 0; b < batches; ++b) task(b);
    return;
  }
  std::atomic<std::uint64_t> next{0};
  auto drain = [&] {
    for (std::uint64_t b = next.fetch_add(1); b < batches; b = next.fetch_add(1)) task(b);
  };
  std::vector<std::jthread> pool;
  pool.reserve(threads - 1);
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(drain);
  drain();
}

struct PolicyTally {
  std::uint64_t outages = 0;
  std::uint64_t transmitting = 0;
  double rho_sum = 0.0;
};

// Running mean / sum of squared deviations, merged with Chan's update.
struct Moments {
  std::uint64_t count = 0;
  double mean = 0.0;
  double m2 = 0.0;

  void push(double x) {
    ++count;
    const double delta = x - mean;
    mean += delta / static_cast<double>(count);
    m2 += delta * (x - mean);
  }

  void merge(const Moments& other) {
    if (other.count == 0) return;
    const double total = static_cast<double>(count + other.count);
    const double delta = other.mean - mean;
    mean += delta * static_cast<double>(other.count) / total;
    m2 += other.m2 + delta * delta * static_cast<double>(count) *
                         static_cast<double>(other.count) / total;
    count += other.count;
  }
};

}  // namespace

std::vector<OutageEstimate> outage_mc_common(const SystemParams& params,
                                             const FadingParams& fading,
                                             std::span<const Policy> policies, double gamma_0,
                                             std::uint64_t n, std::uint64_t seed,
                                             unsigned workers) {
  if (n == 0) throw std::invalid_argument("realization count must be at least 1");
  if (policies.empty()) throw std::invalid_argument("at least one policy is required");

  const std::size_t k = policies.size();
  const std::uint64_t batches = batch_count(n);
  std::vector<PolicyTally> tallies(batches * k);

  for_each_batch(batches, workers, [&](std::uint64_t batch) {
    RngStream rng = substream(seed, batch);
    PolicyTally* slot = &tallies[batch * k];
    const std::uint64_t len = batch_length(n, batch);
    for (std::uint64_t i = 0; i < len; ++i) {
      const ChannelRealization channel = sample_channel(rng, fading);
      for (std::size_t p = 0; p < k; ++p) {
        const PolicyDecision decision = decide(policies[p], params, channel, gamma_0);
        const double gamma = snr(params, channel.h_sq, channel.g_sq, decision.rho);
        if (gamma < gamma_0) ++slot[p].outages;
        if (decision.transmitting) {
          ++slot[p].transmitting;
          slot[p].rho_sum += decision.rho;
        }
      }
    }
  });

  std::vector<OutageEstimate> estimates(k);
  for (std::size_t p = 0; p < k; ++p) {
    PolicyTally total;
    for (std::uint64_t b = 0; b < batches; ++b) {
      const auto& t = tallies[b * k + p];
      total.outages += t.outages;
      total.transmitting += t.transmitting;
      total.rho_sum += t.rho_sum;
    }
    const double count = static_cast<double>(n);
    auto& est = estimates[p];
    est.n = n;
    est.p_out = static_cast<double>(total.outages) / count;
    est.std_err = std::sqrt(est.p_out * (1.0 - est.p_out) / count);
    est.mean_rho = total.transmitting > 0
                       ? total.rho_sum / static_cast<double>(total.transmitting)
                       : kNaN;
    est.harvest_only_fraction = static_cast<double>(n - total.transmitting) / count;
  }
  return estimates;
}

OutageEstimate outage_mc(const SystemParams& params, const FadingParams& fading,
                         const Policy& policy, double gamma_0, std::uint64_t n,
                         std::uint64_t seed, unsigned workers) {
  return outage_mc_common(params, fading, std::span(&policy, 1), gamma_0, n, seed, workers)
      .front();
}

OutageEstimate outage_semi_analytic(const SystemParams& params, const FadingParams& fading,
                                    const Policy& policy, double gamma_0, std::uint64_t n_h,
                                    std::uint64_t seed, unsigned workers) {
  if (std::holds_alternative<FullCsiPolicy>(policy)) {
    throw std::invalid_argument(
        "semi-analytic outage needs a split ratio independent of g; full_csi is not");
  }
  if (n_h == 0) throw std::invalid_argument("realization count must be at least 1");

  struct BatchResult {
    Moments moments;
    PolicyTally tally;
  };
  const std::uint64_t batches = batch_count(n_h);
  std::vector<BatchResult> results(batches);

  for_each_batch(batches, workers, [&](std::uint64_t batch) {
    RngStream rng = substream(seed, batch);
    auto& out = results[batch];
    const std::uint64_t len = batch_length(n_h, batch);
    for (std::uint64_t i = 0; i < len; ++i) {
      const double h_sq = sample_exponential(rng, fading.lambda_h());
      // g is irrelevant to the decision for the admitted policies.
      const PolicyDecision decision = decide(policy, params, {h_sq, 0.0}, gamma_0);
      out.moments.push(
          conditional_outage(params, h_sq, decision.rho, fading.lambda_g(), gamma_0));
      if (decision.transmitting) {
        ++out.tally.transmitting;
        out.tally.rho_sum += decision.rho;
      }
    }
  });

  Moments moments;
  PolicyTally tally;
  for (const auto& r : results) {
    moments.merge(r.moments);
    tally.transmitting += r.tally.transmitting;
    tally.rho_sum += r.tally.rho_sum;
  }

  const double count = static_cast<double>(n_h);
  OutageEstimate est;
  est.n = n_h;
  est.p_out = moments.mean;
  const double variance = n_h > 1 ? moments.m2 / (count - 1.0) : 0.0;
  est.std_err = std::sqrt(variance / count);
  est.mean_rho =
      tally.transmitting > 0 ? tally.rho_sum / static_cast<double>(tally.transmitting) : kNaN;
  est.harvest_only_fraction = static_cast<double>(n_h - tally.transmitting) / count;
  return est;
}

double gain_eta(double p_out_x, double p_out_ref) {
  auto interior = [](double p) { return p > 0.0 && p < 1.0; };
  if (!interior(p_out_x) || !interior(p_out_ref)) {
    throw std::domain_error("insufficient resolution: outage estimate is 0 or 1");
  }
  return -std::log(p_out_x / p_out_ref);
}

namespace {

void check_curve(const OutageCurve& curve, const char* name) {
  if (curve.size() < 2) {
    throw std::invalid_argument(std::string(name) + " needs at least two points");
  }
  for (std::size_t i = 0; i < curve.size(); ++i) {
    if (!(curve[i].second > 0.0)) {
      throw std::invalid_argument(std::string(name) + " has a non-positive outage value");
    }
    if (i > 0 && !(curve[i].first > curve[i - 1].first)) {
      throw std::invalid_argument(std::string(name) + " must be sorted by increasing p_s");
    }
  }
}

}  // namespace

double horizontal_gain_db(const OutageCurve& curve_dyn, const OutageCurve& curve_base,
                          double at_p_s_dbm) {
  check_curve(curve_dyn, "dynamic curve");
  check_curve(curve_base, "base curve");
  if (at_p_s_dbm < curve_dyn.front().first || at_p_s_dbm > curve_dyn.back().first) {
    throw std::domain_error("extrapolation refused: operating point outside dynamic curve");
  }

  // ln p_out of the dynamic policy at the operating point.
  double target = std::log(curve_dyn.back().second);
  for (std::size_t i = 1; i < curve_dyn.size(); ++i) {
    const auto [x0, p0] = curve_dyn[i - 1];
    const auto [x1, p1] = curve_dyn[i];
    if (at_p_s_dbm <= x1) {
      const double t = (at_p_s_dbm - x0) / (x1 - x0);
      target = std::log(p0) + t * (std::log(p1) - std::log(p0));
      break;
    }
  }

  // First segment of the base curve that brackets the target level.
  for (std::size_t i = 1; i < curve_base.size(); ++i) {
    const auto [x0, p0] = curve_base[i - 1];
    const auto [x1, p1] = curve_base[i];
    const double l0 = std::log(p0);
    const double l1 = std::log(p1);
    if ((l0 - target) * (l1 - target) <= 0.0) {
      if (l0 == l1) return x0 - at_p_s_dbm;
      const double crossing = x0 + (target - l0) / (l1 - l0) * (x1 - x0);
      return crossing - at_p_s_dbm;
    }
  }
  throw std::domain_error("extrapolation refused: base curve never reaches the target outage");
}

std::string_view to_string(SweepVariable variable) {
  switch (variable) {
    case SweepVariable::PsDbm: return "p_s_dbm";
    case SweepVariable::LambdaG: return "lambda_g";
    case SweepVariable::LambdaH: return "lambda_h";
  }
  return "?";
}

SweepVariable parse_sweep_variable(std::string_view name) {
  if (name == "p_s_dbm") return SweepVariable::PsDbm;
  if (name == "lambda_g") return SweepVariable::LambdaG;
  if (name == "lambda_h") return SweepVariable::LambdaH;
  throw std::invalid_argument("unknown sweep variable \"" + std::string(name) +
                              "\"; valid: p_s_dbm, lambda_g, lambda_h");
}

void validate(const SweepSpec& spec) {
  if (spec.values.empty()) throw std::invalid_argument("sweep values must not be empty");
  for (std::size_t i = 1; i < spec.values.size(); ++i) {
    if (!(spec.values[i] > spec.values[i - 1])) {
      throw std::invalid_argument("sweep values must be strictly increasing");
    }
  }
  if (spec.policies.empty()) throw std::invalid_argument("at least one policy is required");
  if (spec.n == 0) throw std::invalid_argument("n must be at least 1");
}

SweepResult run_sweep(const SweepSpec& spec, unsigned workers) {
  validate(spec);
  SweepResult result{spec.variable, {}, spec.seed, spec.n};
  result.rows.reserve(spec.values.size() * spec.policies.size());

  for (std::size_t v = 0; v < spec.values.size(); ++v) {
    const double value = spec.values[v];
    SystemParams params = spec.params;
    FadingParams fading = spec.fading;
    try {
      switch (spec.variable) {
        case SweepVariable::PsDbm: params = params.with_p_s(dbm_to_linear(value)); break;
        case SweepVariable::LambdaG: fading = FadingParams(fading.lambda_h(), value); break;
        case SweepVariable::LambdaH: fading = FadingParams(value, fading.lambda_g()); break;
      }
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument(std::string(to_string(spec.variable)) + "=" +
                                  std::to_string(value) + ": " + e.what());
    }

    const auto estimates = outage_mc_common(params, fading, spec.policies, params.gamma_0(),
                                            spec.n, substream_seed(spec.seed, v), workers);
    for (std::size_t p = 0; p < spec.policies.size(); ++p) {
      result.rows.push_back({value, spec.policies[p], estimates[p]});
    }
  }
  return result;
}

std::vector<GainRow> compute_gains(const SweepResult& result) {
  const Policy reference = FixedPolicy(0.4);
  const Policy fixed06 = FixedPolicy(0.6);
  const Policy fixed08 = FixedPolicy(0.8);

  std::vector<GainRow> gains;
  bool saw_reference = false;
  for (std::size_t i = 0; i < result.rows.size();) {
    const double value = result.rows[i].value;
    std::size_t end = i;
    while (end < result.rows.size() && result.rows[end].value == value) ++end;

    auto find = [&](const Policy& policy) -> const OutageEstimate* {
      for (std::size_t j = i; j < end; ++j) {
        if (result.rows[j].policy == policy) return &result.rows[j].estimate;
      }
      return nullptr;
    };
    const OutageEstimate* ref = find(reference);
    if (ref != nullptr) {
      saw_reference = true;
      auto eta = [&](const Policy& policy) {
        const OutageEstimate* est = find(policy);
        if (est == nullptr) return kNaN;
        try {
          return gain_eta(est->p_out, ref->p_out);
        } catch (const std::domain_error&) {
          return kNaN;
        }
      };
      gains.push_back({value, eta(FullCsiPolicy{}), eta(PartialCsiPolicy{}), eta(fixed06),
                       eta(fixed08)});
    }
    i = end;
  }
  if (!saw_reference) {
    throw std::invalid_argument("gain computation needs the fixed:0.4 reference policy");
  }
  return gains;
}

}  // namespace swipt
