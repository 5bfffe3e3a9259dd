#include "swipt/params.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace swipt {

namespace {

void require_positive(double value, const char* field) {
  if (!std::isfinite(value) || value <= 0.0) {
    throw std::invalid_argument(std::string(field) + " must be positive and finite");
  }
}

double required_number(const nlohmann::json& raw, const char* key, const char* field) {
  if (!raw.contains(key)) {
    throw std::invalid_argument(std::string("missing ") + field + " (key \"" + key + "\")");
  }
  const auto& value = raw.at(key);
  if (!value.is_number()) {
    throw std::invalid_argument(std::string(field) + " must be a number");
  }
  return value.get<double>();
}

double optional_number(const nlohmann::json& raw, const char* key, double fallback) {
  if (!raw.contains(key)) return fallback;
  const auto& value = raw.at(key);
  if (!value.is_number()) {
    throw std::invalid_argument(std::string(key) + " must be a number");
  }
  return value.get<double>();
}

}  // namespace

double dbm_to_linear(double x_dbm) {
  if (!std::isfinite(x_dbm)) {
    throw std::invalid_argument("dbm_to_linear: non-finite input");
  }
  return std::pow(10.0, x_dbm / 10.0);
}

double linear_to_dbm(double x_mw) {
  if (!(x_mw > 0.0) || !std::isfinite(x_mw)) {
    throw std::invalid_argument("linear_to_dbm: power must be positive and finite");
  }
  return 10.0 * std::log10(x_mw);
}

double snr_threshold(double rate_bps_hz) {
  if (!(rate_bps_hz > 0.0) || !std::isfinite(rate_bps_hz)) {
    throw std::invalid_argument("rate must be positive");
  }
  return std::exp2(rate_bps_hz) - 1.0;
}

SystemParams SystemParams::from_linear(double p_s, double sigma_r_sq, double sigma_p_sq,
                                       double sigma_d_sq, double rate, double epsilon,
                                       double block_duration) {
  require_positive(p_s, "p_s");
  require_positive(sigma_r_sq, "sigma_r_sq");
  require_positive(sigma_p_sq, "sigma_p_sq");
  require_positive(sigma_d_sq, "sigma_d_sq");
  require_positive(rate, "rate");
  require_positive(block_duration, "block_duration");
  if (!(epsilon > 0.0 && epsilon <= 1.0)) {
    throw std::invalid_argument("epsilon out of range (0, 1]");
  }

  SystemParams params;
  params.p_s_ = p_s;
  params.sigma_r_sq_ = sigma_r_sq;
  params.sigma_p_sq_ = sigma_p_sq;
  params.sigma_d_sq_ = sigma_d_sq;
  params.rate_ = rate;
  params.epsilon_ = epsilon;
  params.block_duration_ = block_duration;
  return params;
}

SystemParams SystemParams::with_p_s(double p_s) const {
  return from_linear(p_s, sigma_r_sq_, sigma_p_sq_, sigma_d_sq_, rate_, epsilon_,
                     block_duration_);
}

SystemParams validate(const nlohmann::json& raw) {
  if (!raw.is_object()) {
    throw std::invalid_argument("system config must be a JSON object");
  }
  const double p_s_dbm = required_number(raw, "p_s_dbm", "p_s");
  const double sr_dbm = required_number(raw, "sigma_r_sq_dbm", "sigma_r_sq");
  const double sp_dbm = required_number(raw, "sigma_p_sq_dbm", "sigma_p_sq");
  const double sd_dbm = required_number(raw, "sigma_d_sq_dbm", "sigma_d_sq");
  const double rate = required_number(raw, "rate_bps_hz", "rate");
  const double epsilon = optional_number(raw, "epsilon", 1.0);
  const double block = optional_number(raw, "block_duration_s", 1.0);

  auto to_mw = [](double dbm, const char* field) {
    if (!std::isfinite(dbm)) {
      throw std::invalid_argument(std::string(field) + " must be finite");
    }
    return dbm_to_linear(dbm);
  };
  return SystemParams::from_linear(to_mw(p_s_dbm, "p_s"), to_mw(sr_dbm, "sigma_r_sq"),
                                   to_mw(sp_dbm, "sigma_p_sq"), to_mw(sd_dbm, "sigma_d_sq"),
                                   rate, epsilon, block);
}

SystemParams validate(const SystemParams& params) {
  return SystemParams::from_linear(params.p_s(), params.sigma_r_sq(), params.sigma_p_sq(),
                                   params.sigma_d_sq(), params.rate(), params.epsilon(),
                                   params.block_duration());
}

nlohmann::json to_config(const SystemParams& params) {
  return {
      {"p_s_dbm", linear_to_dbm(params.p_s())},
      {"sigma_r_sq_dbm", linear_to_dbm(params.sigma_r_sq())},
      {"sigma_p_sq_dbm", linear_to_dbm(params.sigma_p_sq())},
      {"sigma_d_sq_dbm", linear_to_dbm(params.sigma_d_sq())},
      {"rate_bps_hz", params.rate()},
      {"epsilon", params.epsilon()},
      {"block_duration_s", params.block_duration()},
  };
}

}  // namespace swipt
