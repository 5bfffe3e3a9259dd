#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "swipt/sim.hpp"

namespace swipt::cli {

inline constexpr std::uint64_t kDefaultSeed = 2014;
inline constexpr std::uint64_t kDefaultRealizations = 1000000;
inline constexpr double kDefaultLambda = 1.5;

enum ExitCode : int {
  kSuccess = 0,
  kConfigError = 1,
  kVerificationFailure = 2,
  kRuntimeError = 3,
};

enum class Command { Point, Sweep, Gains, Verify };

/// Command-line flags. Unset optionals fall back to the config file, then to
/// the documented defaults.
struct Flags {
  std::string config_path;
  std::string out_path;
  std::string gains_out_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> n;
  unsigned workers = 0;
  bool quick = false;
  double inject_fault = 0.0;
};

/// Fully resolved run: config file merged with flag overrides.
struct RunConfig {
  Command command;
  nlohmann::json system;  // the params-module keys, as given
  SystemParams params;
  FadingParams fading;
  std::vector<Policy> policies;
  std::optional<SweepVariable> sweep_variable;
  std::vector<double> sweep_values;
  std::uint64_t n;
  std::uint64_t seed;
  std::string out_path;
  std::string gains_out_path;
  unsigned workers;
  bool quick;
  double inject_fault;

  /// The effective configuration that determines results. Excludes output
  /// paths and the worker count, neither of which affects any number.
  nlohmann::json echo() const;
};

/// Merges a parsed config document with flags. Throws std::invalid_argument
/// on any config problem.
RunConfig resolve(Command command, const nlohmann::json& document, const Flags& flags);

/// Reads and resolves the config file named in flags (may be empty for verify).
RunConfig load(Command command, const Flags& flags);

/// Sweep CSV: provenance comment lines, then
/// sweep_var,sweep_value,policy,p_out,std_err,mean_rho,harvest_only_fraction,n,seed
std::string sweep_csv(const SweepResult& result, const nlohmann::json& echo);

/// Gains CSV: provenance comment lines, then sweep_value,eta_full,eta_par,eta_rho06,eta_rho08
std::string gains_csv(const SweepResult& result, const std::vector<GainRow>& gains,
                      const nlohmann::json& echo);

/// Point CSV: provenance, then policy,p_out,std_err,mean_rho,harvest_only_fraction,n,seed
std::string point_csv(const RunConfig& config, const std::vector<OutageEstimate>& estimates);

int cmd_point(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_sweep(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_gains(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_verify(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Entry point shared by the executable and the tests.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace swipt::cli
