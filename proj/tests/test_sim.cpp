#include <doctest.h>

#include <cmath>
#include <vector>

#include "oracles.hpp"
#include "swipt/link.hpp"
#include "swipt/sim.hpp"

using namespace swipt;
using swipt::testing::headline_params;

namespace {

bool same(const OutageEstimate& a, const OutageEstimate& b) {
  auto eq = [](double x, double y) { return x == y || (std::isnan(x) && std::isnan(y)); };
  return a.n == b.n && eq(a.p_out, b.p_out) && eq(a.std_err, b.std_err) &&
         eq(a.mean_rho, b.mean_rho) && eq(a.harvest_only_fraction, b.harvest_only_fraction);
}

const std::vector<Policy> kAllPolicies = {FullCsiPolicy{}, PartialCsiPolicy{}, FixedPolicy(0.4),
                                          FixedPolicy(0.6), FixedPolicy(0.8)};

}  // namespace

TEST_CASE("near-total harvesting on weak channels is always in outage") {
  const SystemParams p = headline_params();
  const auto est = outage_mc(p, FadingParams(1e-6, 1e-6), FixedPolicy(0.999999), p.gamma_0(),
                             20000, 1);
  CHECK(est.p_out > 0.99);
  CHECK(est.harvest_only_fraction == 0.0);
  CHECK(est.mean_rho == doctest::Approx(0.999999).epsilon(1e-12));
}

TEST_CASE("Monte Carlo estimate is bit deterministic across worker counts") {
  const SystemParams p = headline_params(20.0);
  const FadingParams fading(0.5, 0.5);
  const std::uint64_t n = 5 * kBatchSize + 123;
  const auto one = outage_mc_common(p, fading, kAllPolicies, p.gamma_0(), n, 9, 1);
  const auto four = outage_mc_common(p, fading, kAllPolicies, p.gamma_0(), n, 9, 4);
  const auto again = outage_mc_common(p, fading, kAllPolicies, p.gamma_0(), n, 9, 3);
  for (std::size_t i = 0; i < kAllPolicies.size(); ++i) {
    CHECK(same(one[i], four[i]));
    CHECK(same(one[i], again[i]));
    CHECK(one[i].n == n);
    CHECK(one[i].std_err ==
          doctest::Approx(std::sqrt(one[i].p_out * (1 - one[i].p_out) / n)).epsilon(1e-15));
  }
  // A single-policy run sees the same channel draws as the shared run.
  CHECK(same(outage_mc(p, fading, kAllPolicies[2], p.gamma_0(), n, 9, 2), one[2]));
}

TEST_CASE("Monte Carlo rejects empty runs") {
  const SystemParams p = headline_params();
  CHECK_THROWS_AS(outage_mc(p, FadingParams(1, 1), FullCsiPolicy{}, 7.0, 0, 1),
                  std::invalid_argument);
  CHECK_THROWS_AS(outage_mc_common(p, FadingParams(1, 1), {}, 7.0, 10, 1),
                  std::invalid_argument);
}

TEST_CASE("full CSI never loses to any other policy on common draws") {
  const SystemParams p = headline_params(15.0);
  const FadingParams fading(0.3, 0.3);
  const auto est = outage_mc_common(p, fading, kAllPolicies, p.gamma_0(), 200000, 5);
  for (std::size_t i = 1; i < est.size(); ++i) {
    const double sigma = std::hypot(est[0].std_err, est[i].std_err);
    CHECK(est[0].p_out <= est[i].p_out + 3.0 * sigma);
  }
  const double fixed_best = std::min({est[2].p_out, est[3].p_out, est[4].p_out});
  CHECK(est[1].p_out <= fixed_best + 3.0 * std::hypot(est[1].std_err, est[2].std_err));
  CHECK(est[1].harvest_only_fraction > 0.0);
  CHECK(est[0].harvest_only_fraction == 0.0);
}

TEST_CASE("semi-analytic estimator") {
  const SystemParams p = headline_params();
  const FadingParams headline(1.5, 1.5);

  CHECK_THROWS_AS(outage_semi_analytic(p, headline, FullCsiPolicy{}, 7.0, 100, 1),
                  std::invalid_argument);
  CHECK_THROWS_AS(outage_semi_analytic(p, headline, PartialCsiPolicy{}, 7.0, 0, 1),
                  std::invalid_argument);

  const auto weak = outage_semi_analytic(p, FadingParams(1e-9, 1.5), PartialCsiPolicy{},
                                         p.gamma_0(), 10000, 1);
  CHECK(weak.p_out > 0.999);
  CHECK(weak.harvest_only_fraction > 0.999);

  const auto a = outage_semi_analytic(p, headline, FixedPolicy(0.6), p.gamma_0(), 300000, 3, 1);
  const auto b = outage_semi_analytic(p, headline, FixedPolicy(0.6), p.gamma_0(), 300000, 3, 4);
  CHECK(same(a, b));

  const auto single = outage_semi_analytic(p, headline, FixedPolicy(0.6), p.gamma_0(), 1, 3);
  CHECK(single.std_err == 0.0);
  CHECK(single.p_out >= 0.0);
  CHECK(single.p_out <= 1.0);
}

TEST_CASE("semi-analytic and Monte Carlo agree") {
  struct Case {
    double p_s_dbm, lambda_h, lambda_g;
  };
  const std::vector<Policy> policies = {PartialCsiPolicy{}, FixedPolicy(0.4), FixedPolicy(0.6),
                                        FixedPolicy(0.8)};
  for (const Case c : {Case{40.0, 1.5, 1.5}, Case{20.0, 0.5, 2.0}, Case{10.0, 3.0, 0.2},
                       Case{25.0, 1.0, 1.0}}) {
    const SystemParams p = headline_params(c.p_s_dbm);
    const FadingParams fading(c.lambda_h, c.lambda_g);
    const auto mc = outage_mc_common(p, fading, policies, p.gamma_0(), 1000000, 77);
    for (std::size_t i = 0; i < policies.size(); ++i) {
      const auto semi = outage_semi_analytic(p, fading, policies[i], p.gamma_0(), 1000000, 78);
      const double combined = std::hypot(mc[i].std_err, semi.std_err);
      CAPTURE(c.p_s_dbm);
      CAPTURE(policy_name(policies[i]));
      CHECK(std::abs(mc[i].p_out - semi.p_out) <= 3.0 * combined);
    }
  }
}

TEST_CASE("gain_eta") {
  CHECK(gain_eta(0.01, 0.01) == 0.0);
  CHECK(gain_eta(0.01 / std::exp(1.0), 0.01) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(gain_eta(0.02, 0.01) < 0.0);
  CHECK_THROWS_AS(gain_eta(0.0, 0.01), std::domain_error);
  CHECK_THROWS_AS(gain_eta(0.01, 1.0), std::domain_error);
}

TEST_CASE("horizontal gain") {
  OutageCurve dyn, shifted;
  for (double x = 30.0; x <= 56.0; x += 2.0) {
    dyn.emplace_back(x, std::pow(10.0, -x / 10.0));
    shifted.emplace_back(x, std::pow(10.0, -(x - 2.0) / 10.0));
  }
  CHECK(horizontal_gain_db(dyn, dyn, 50.0) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(horizontal_gain_db(dyn, shifted, 50.0) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(horizontal_gain_db(dyn, shifted, 41.0) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(horizontal_gain_db(shifted, dyn, 50.0) == doctest::Approx(-2.0).epsilon(1e-12));

  // Base curve stops at 50 dBm, so the crossing near 52 dBm is out of range.
  OutageCurve truncated(shifted.begin(), shifted.begin() + 11);
  REQUIRE(truncated.back().first == 50.0);
  CHECK_THROWS_AS(horizontal_gain_db(dyn, truncated, 50.0), std::domain_error);
  CHECK_THROWS_AS(horizontal_gain_db(dyn, shifted, 60.0), std::domain_error);

  OutageCurve with_zero = dyn;
  with_zero.back().second = 0.0;
  CHECK_THROWS_AS(horizontal_gain_db(with_zero, shifted, 40.0), std::invalid_argument);
}

TEST_CASE("sweep layout") {
  std::vector<double> values;
  for (int v = 30; v <= 50; v += 2) values.push_back(v);
  const SweepSpec spec{.variable = SweepVariable::PsDbm,
                       .values = values,
                       .params = headline_params(),
                       .fading = FadingParams(1.5, 1.5),
                       .policies = kAllPolicies,
                       .n = 1000,
                       .seed = 4};
  const SweepResult result = run_sweep(spec);
  REQUIRE(result.rows.size() == 55);
  for (std::size_t i = 0; i < result.rows.size(); ++i) {
    CHECK(result.rows[i].value == values[i / 5]);
    CHECK(result.rows[i].policy == kAllPolicies[i % 5]);
    CHECK(result.rows[i].estimate.n == 1000);
  }

  const SweepSpec tiny{.variable = SweepVariable::LambdaG,
                       .values = {2.0},
                       .params = headline_params(),
                       .fading = FadingParams(1.5, 1.5),
                       .policies = {FixedPolicy(0.6)},
                       .n = 1,
                       .seed = 4};
  const auto one = run_sweep(tiny);
  REQUIRE(one.rows.size() == 1);
  CHECK((one.rows[0].estimate.p_out == 0.0 || one.rows[0].estimate.p_out == 1.0));
}

TEST_CASE("sweep rows do not depend on worker count or on later values") {
  SweepSpec spec{.variable = SweepVariable::LambdaH,
                 .values = {0.5, 1.0, 2.0},
                 .params = headline_params(15.0),
                 .fading = FadingParams(1.5, 1.5),
                 .policies = kAllPolicies,
                 .n = 3 * kBatchSize + 7,
                 .seed = 12};
  const auto a = run_sweep(spec, 1);
  const auto b = run_sweep(spec, 3);
  spec.values = {0.5, 1.0};
  const auto c = run_sweep(spec, 2);
  REQUIRE(a.rows.size() == b.rows.size());
  for (std::size_t i = 0; i < a.rows.size(); ++i) CHECK(same(a.rows[i].estimate, b.rows[i].estimate));
  for (std::size_t i = 0; i < c.rows.size(); ++i) CHECK(same(a.rows[i].estimate, c.rows[i].estimate));
}

TEST_CASE("sweep validation") {
  const auto base = [] {
    return SweepSpec{.variable = SweepVariable::PsDbm,
                     .values = {30.0, 40.0},
                     .params = headline_params(),
                     .fading = FadingParams(1.5, 1.5),
                     .policies = {FullCsiPolicy{}},
                     .n = 10,
                     .seed = 1};
  };
  auto spec = base();
  spec.values = {};
  CHECK_THROWS_AS(run_sweep(spec), std::invalid_argument);
  spec = base();
  spec.values = {40.0, 30.0};
  CHECK_THROWS_AS(run_sweep(spec), std::invalid_argument);
  spec = base();
  spec.n = 0;
  CHECK_THROWS_AS(run_sweep(spec), std::invalid_argument);
  spec = base();
  spec.policies = {};
  CHECK_THROWS_AS(run_sweep(spec), std::invalid_argument);
  spec = base();
  spec.variable = SweepVariable::LambdaG;
  spec.values = {-1.0, 1.0};
  CHECK_THROWS_AS(run_sweep(spec), std::invalid_argument);

  CHECK(parse_sweep_variable("lambda_h") == SweepVariable::LambdaH);
  CHECK(to_string(SweepVariable::PsDbm) == "p_s_dbm");
  CHECK_THROWS_AS(parse_sweep_variable("distance"), std::invalid_argument);
}

TEST_CASE("fixed-split outage falls with every sweep variable") {
  const std::vector<Policy> fixed = {FixedPolicy(0.4), FixedPolicy(0.6), FixedPolicy(0.8)};
  for (auto variable : {SweepVariable::PsDbm, SweepVariable::LambdaH, SweepVariable::LambdaG}) {
    const std::vector<double> values = variable == SweepVariable::PsDbm
                                           ? std::vector<double>{0.0, 5.0, 10.0, 15.0}
                                           : std::vector<double>{0.1, 0.2, 0.4, 0.8};
    const SweepSpec spec{.variable = variable,
                         .values = values,
                         .params = headline_params(5.0),
                         .fading = FadingParams(0.2, 0.2),
                         .policies = fixed,
                         .n = 200000,
                         .seed = 21};
    const auto result = run_sweep(spec);
    for (std::size_t i = fixed.size(); i < result.rows.size(); ++i) {
      const auto& now = result.rows[i].estimate;
      const auto& before = result.rows[i - fixed.size()].estimate;
      CHECK(now.p_out <= before.p_out + 3.0 * std::hypot(now.std_err, before.std_err));
    }
  }
}

TEST_CASE("gains from a sweep") {
  const SweepSpec spec{.variable = SweepVariable::LambdaG,
                       .values = {0.5, 1.0},
                       .params = headline_params(20.0),
                       .fading = FadingParams(0.5, 0.5),
                       .policies = kAllPolicies,
                       .n = 100000,
                       .seed = 8};
  const auto result = run_sweep(spec);
  const auto gains = compute_gains(result);
  REQUIRE(gains.size() == 2);
  for (std::size_t v = 0; v < gains.size(); ++v) {
    const auto& rows = result.rows;
    const double ref = rows[v * 5 + 2].estimate.p_out;
    CHECK(gains[v].sweep_value == spec.values[v]);
    CHECK(gains[v].eta_full == doctest::Approx(-std::log(rows[v * 5].estimate.p_out / ref)));
    CHECK(gains[v].eta_par == doctest::Approx(-std::log(rows[v * 5 + 1].estimate.p_out / ref)));
    CHECK(gains[v].eta_06 == doctest::Approx(-std::log(rows[v * 5 + 3].estimate.p_out / ref)));
    CHECK(gains[v].eta_08 == doctest::Approx(-std::log(rows[v * 5 + 4].estimate.p_out / ref)));
  }

  SweepSpec no_ref = spec;
  no_ref.policies = {FullCsiPolicy{}, FixedPolicy(0.6)};
  CHECK_THROWS_AS(compute_gains(run_sweep(no_ref)), std::invalid_argument);

  // Zero outage events give NaN rather than an infinite gain.
  SweepSpec sparse = spec;
  sparse.params = headline_params(60.0);
  sparse.n = 10;
  const auto nan_gains = compute_gains(run_sweep(sparse));
  CHECK(std::isnan(nan_gains[0].eta_full));
}
