#include "cli.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include "swipt/verify.hpp"

namespace swipt::cli {

namespace {

namespace fs = std::filesystem;

const char* const kSystemKeys[] = {"p_s_dbm",        "sigma_r_sq_dbm", "sigma_p_sq_dbm",
                                   "sigma_d_sq_dbm", "rate_bps_hz",    "epsilon",
                                   "block_duration_s"};

// Operating point used by `verify` when no config file is given.
nlohmann::json headline_system() {
  return {{"p_s_dbm", 40.0},
          {"sigma_r_sq_dbm", -20.0},
          {"sigma_p_sq_dbm", -20.0},
          {"sigma_d_sq_dbm", -17.0},
          {"rate_bps_hz", 3.0}};
}

std::vector<Policy> default_policies() {
  return {FullCsiPolicy{}, PartialCsiPolicy{}, FixedPolicy(0.4), FixedPolicy(0.6),
          FixedPolicy(0.8)};
}

std::string num(double value) {
  if (std::isnan(value)) return "nan";
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

double number_field(const nlohmann::json& doc, const char* key, double fallback) {
  if (!doc.contains(key)) return fallback;
  if (!doc.at(key).is_number()) throw std::invalid_argument(std::string(key) + " must be a number");
  return doc.at(key).get<double>();
}

std::uint64_t count_field(const nlohmann::json& doc, const char* key, std::uint64_t fallback) {
  if (!doc.contains(key)) return fallback;
  const auto& v = doc.at(key);
  if (v.is_number_unsigned()) return v.get<std::uint64_t>();
  if (v.is_number_integer() && v.get<std::int64_t>() >= 0) return v.get<std::uint64_t>();
  throw std::invalid_argument(std::string(key) + " must be a non-negative integer");
}

std::string string_field(const nlohmann::json& doc, const char* key) {
  if (!doc.contains(key)) return {};
  if (!doc.at(key).is_string()) throw std::invalid_argument(std::string(key) + " must be a string");
  return doc.at(key).get<std::string>();
}

void require_writable_target(const std::string& path) {
  if (path.empty()) return;
  const fs::path parent = fs::path(path).parent_path();
  if (!parent.empty() && !fs::is_directory(parent)) {
    throw std::invalid_argument("output directory does not exist: " + parent.string());
  }
}

bool has_reference(const std::vector<Policy>& policies) {
  const Policy reference = FixedPolicy(0.4);
  for (const auto& p : policies) {
    if (p == reference) return true;
  }
  return false;
}

std::string provenance(const char* what, std::uint64_t seed, std::uint64_t n,
                       const nlohmann::json& echo) {
  std::ostringstream os;
  os << "# swipt_sim " << what << '\n'
     << "# seed=" << seed << '\n'
     << "# n=" << n << '\n'
     << "# config=" << echo.dump() << '\n';
  return os.str();
}

// Writes the whole document or nothing: a temporary file is renamed into place.
void emit(const std::string& path, const std::string& content, std::ostream& out) {
  if (path.empty()) {
    out << content;
    return;
  }
  const std::string tmp = path + ".tmp";
  {
    std::ofstream file(tmp, std::ios::binary | std::ios::trunc);
    if (!file) throw std::runtime_error("cannot open " + tmp + " for writing");
    file << content;
    if (!file.flush()) throw std::runtime_error("write failed: " + tmp);
  }
  fs::rename(tmp, path);
}

SweepSpec sweep_spec(const RunConfig& config) {
  return SweepSpec{.variable = *config.sweep_variable,
                   .values = config.sweep_values,
                   .params = config.params,
                   .fading = config.fading,
                   .policies = config.policies,
                   .n = config.n,
                   .seed = config.seed};
}

// Summary goes next to the CSV destination without corrupting it.
std::ostream& summary_stream(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return config.out_path.empty() ? err : out;
}

void print_sweep_summary(const SweepResult& result, std::ostream& os) {
  os << "sweep over " << to_string(result.variable) << ", n=" << result.n
     << " per point, seed=" << result.seed << '\n';
  for (const auto& row : result.rows) {
    os << "  " << to_string(result.variable) << '=' << num(row.value) << "  "
       << policy_name(row.policy) << "  p_out=" << num(row.estimate.p_out)
       << " +/- " << num(row.estimate.std_err) << '\n';
  }
}

}  // namespace

nlohmann::json RunConfig::echo() const {
  nlohmann::json names = nlohmann::json::array();
  for (const auto& p : policies) names.push_back(policy_name(p));
  nlohmann::json doc = {{"system", system},
                        {"lambda_h", fading.lambda_h()},
                        {"lambda_g", fading.lambda_g()},
                        {"policies", names},
                        {"n", n},
                        {"seed", seed}};
  if (sweep_variable) {
    doc["sweep"] = {{"variable", std::string(to_string(*sweep_variable))},
                    {"values", sweep_values}};
  }
  return doc;
}

RunConfig resolve(Command command, const nlohmann::json& document, const Flags& flags) {
  if (!document.is_object()) throw std::invalid_argument("config must be a JSON object");

  nlohmann::json system = nlohmann::json::object();
  for (const char* key : kSystemKeys) {
    if (document.contains(key)) system[key] = document.at(key);
  }
  if (command == Command::Verify && system.empty()) system = headline_system();
  const SystemParams params = validate(system);

  const FadingParams fading(number_field(document, "lambda_h", kDefaultLambda),
                            number_field(document, "lambda_g", kDefaultLambda));

  std::vector<Policy> policies;
  if (document.contains("policies")) {
    const auto& list = document.at("policies");
    if (!list.is_array()) throw std::invalid_argument("policies must be a list of names");
    for (const auto& name : list) {
      if (!name.is_string()) throw std::invalid_argument("policy names must be strings");
      policies.push_back(parse_policy(name.get<std::string>()));
    }
    if (policies.empty()) throw std::invalid_argument("policies must not be empty");
  } else {
    policies = default_policies();
  }

  std::optional<SweepVariable> variable;
  std::vector<double> values;
  if (command == Command::Sweep || command == Command::Gains) {
    if (!document.contains("sweep") || !document.at("sweep").is_object()) {
      throw std::invalid_argument("missing sweep section {\"variable\", \"values\"}");
    }
    const auto& sweep = document.at("sweep");
    variable = parse_sweep_variable(string_field(sweep, "variable"));
    if (!sweep.contains("values") || !sweep.at("values").is_array()) {
      throw std::invalid_argument("sweep.values must be a list of numbers");
    }
    for (const auto& v : sweep.at("values")) {
      if (!v.is_number()) throw std::invalid_argument("sweep.values must be a list of numbers");
      values.push_back(v.get<double>());
    }
  }

  RunConfig config{.command = command,
                   .system = system,
                   .params = params,
                   .fading = fading,
                   .policies = std::move(policies),
                   .sweep_variable = variable,
                   .sweep_values = std::move(values),
                   .n = flags.n.value_or(count_field(document, "n", kDefaultRealizations)),
                   .seed = flags.seed.value_or(count_field(document, "seed", kDefaultSeed)),
                   .out_path = flags.out_path.empty() ? string_field(document, "out")
                                                      : flags.out_path,
                   .gains_out_path = flags.gains_out_path.empty()
                                         ? string_field(document, "gains_out")
                                         : flags.gains_out_path,
                   .workers = flags.workers,
                   .quick = flags.quick,
                   .inject_fault = flags.inject_fault};

  if (config.n == 0) throw std::invalid_argument("n must be at least 1");
  if (variable) validate(sweep_spec(config));
  if (command == Command::Gains && !has_reference(config.policies)) {
    throw std::invalid_argument("gains need the fixed:0.4 reference policy");
  }
  if (!config.gains_out_path.empty() && !has_reference(config.policies)) {
    throw std::invalid_argument("gains_out needs the fixed:0.4 reference policy");
  }
  require_writable_target(config.out_path);
  require_writable_target(config.gains_out_path);
  return config;
}

RunConfig load(Command command, const Flags& flags) {
  nlohmann::json document = nlohmann::json::object();
  if (!flags.config_path.empty()) {
    std::ifstream file(flags.config_path);
    if (!file) throw std::invalid_argument("cannot read config file " + flags.config_path);
    try {
      document = nlohmann::json::parse(file);
    } catch (const nlohmann::json::parse_error& e) {
      throw std::invalid_argument("config file is not valid JSON: " + std::string(e.what()));
    }
  } else if (command != Command::Verify) {
    throw std::invalid_argument("--config is required");
  }
  return resolve(command, document, flags);
}

std::string sweep_csv(const SweepResult& result, const nlohmann::json& echo) {
  std::ostringstream os;
  os << provenance("sweep", result.seed, result.n, echo);
  os << "sweep_var,sweep_value,policy,p_out,std_err,mean_rho,harvest_only_fraction,n,seed\n";
  for (const auto& row : result.rows) {
    const auto& e = row.estimate;
    os << to_string(result.variable) << ',' << num(row.value) << ',' << policy_name(row.policy)
       << ',' << num(e.p_out) << ',' << num(e.std_err) << ',' << num(e.mean_rho) << ','
       << num(e.harvest_only_fraction) << ',' << e.n << ',' << result.seed << '\n';
  }
  return os.str();
}

std::string gains_csv(const SweepResult& result, const std::vector<GainRow>& gains,
                      const nlohmann::json& echo) {
  std::ostringstream os;
  os << provenance("gains", result.seed, result.n, echo);
  os << "# sweep_var=" << to_string(result.variable) << '\n';
  os << "sweep_value,eta_full,eta_par,eta_rho06,eta_rho08\n";
  for (const auto& g : gains) {
    os << num(g.sweep_value) << ',' << num(g.eta_full) << ',' << num(g.eta_par) << ','
       << num(g.eta_06) << ',' << num(g.eta_08) << '\n';
  }
  return os.str();
}

std::string point_csv(const RunConfig& config, const std::vector<OutageEstimate>& estimates) {
  std::ostringstream os;
  os << provenance("point", config.seed, config.n, config.echo());
  os << "policy,p_out,std_err,mean_rho,harvest_only_fraction,n,seed\n";
  for (std::size_t i = 0; i < estimates.size(); ++i) {
    const auto& e = estimates[i];
    os << policy_name(config.policies[i]) << ',' << num(e.p_out) << ',' << num(e.std_err)
       << ',' << num(e.mean_rho) << ',' << num(e.harvest_only_fraction) << ',' << e.n << ','
       << config.seed << '\n';
  }
  return os.str();
}

int cmd_point(const RunConfig& config, std::ostream& out, std::ostream& err) {
  const auto estimates =
      outage_mc_common(config.params, config.fading, config.policies, config.params.gamma_0(),
                       config.n, config.seed, config.workers);
  emit(config.out_path, point_csv(config, estimates), out);

  auto& summary = summary_stream(config, out, err);
  summary << "operating point: P_s=" << num(linear_to_dbm(config.params.p_s()))
          << " dBm, lambda_h=" << num(config.fading.lambda_h())
          << ", lambda_g=" << num(config.fading.lambda_g()) << ", n=" << config.n << '\n';
  for (std::size_t i = 0; i < estimates.size(); ++i) {
    summary << "  " << policy_name(config.policies[i]) << "  p_out=" << num(estimates[i].p_out)
            << " +/- " << num(estimates[i].std_err) << '\n';
  }
  return kSuccess;
}

int cmd_sweep(const RunConfig& config, std::ostream& out, std::ostream& err) {
  const SweepResult result = run_sweep(sweep_spec(config), config.workers);
  const auto echo = config.echo();
  const std::string csv = sweep_csv(result, echo);
  std::string gains;
  if (!config.gains_out_path.empty()) gains = gains_csv(result, compute_gains(result), echo);

  emit(config.out_path, csv, out);
  if (!gains.empty()) emit(config.gains_out_path, gains, out);
  print_sweep_summary(result, summary_stream(config, out, err));
  return kSuccess;
}

int cmd_gains(const RunConfig& config, std::ostream& out, std::ostream& err) {
  const SweepResult result = run_sweep(sweep_spec(config), config.workers);
  const auto gains = compute_gains(result);
  emit(config.out_path, gains_csv(result, gains, config.echo()), out);

  auto& summary = summary_stream(config, out, err);
  summary << "gains vs fixed:0.4 over " << to_string(result.variable) << '\n';
  for (const auto& g : gains) {
    if (std::isnan(g.eta_full) || std::isnan(g.eta_par) || std::isnan(g.eta_06) ||
        std::isnan(g.eta_08)) {
      err << "warning: " << to_string(result.variable) << '=' << num(g.sweep_value)
          << " has an outage estimate of 0 or 1; increase n\n";
    }
    summary << "  " << num(g.sweep_value) << "  eta_full=" << num(g.eta_full)
            << " eta_par=" << num(g.eta_par) << " eta_0.6=" << num(g.eta_06)
            << " eta_0.8=" << num(g.eta_08) << '\n';
  }
  return kSuccess;
}

int cmd_verify(const RunConfig& config, std::ostream& out, std::ostream&) {
  verify::Options options;
  options.quick = config.quick;
  options.full_rho_fault = config.inject_fault;
  options.seed = config.seed;
  options.workers = config.workers;

  bool all = true;
  for (const auto& battery : verify::run_all(options)) {
    out << (battery.passed ? "PASS " : "FAIL ") << battery.name << " (" << battery.checks
        << " checks): " << battery.detail << '\n';
    all = all && battery.passed;
  }
  return all ? kSuccess : kVerificationFailure;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Power-splitting AF relay outage simulator"};
  app.require_subcommand(1);

  Flags flags;
  std::uint64_t seed = 0;
  std::uint64_t n = 0;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", flags.config_path, "JSON config file");
    sub->add_option("--out", flags.out_path, "output CSV path (stdout if omitted)");
    sub->add_option("--seed", seed, "64-bit seed (default 2014)");
    sub->add_option("--n", n, "realizations per point (default 1e6)");
    sub->add_option("--workers", flags.workers, "threads; 0 = all cores")
        ->check(CLI::NonNegativeNumber);
  };

  CLI::App* point = app.add_subcommand("point", "outage of each policy at one operating point");
  CLI::App* sweep = app.add_subcommand("sweep", "outage sweep over p_s_dbm, lambda_g or lambda_h");
  CLI::App* gains = app.add_subcommand("gains", "eta gains vs fixed:0.4 along a sweep");
  CLI::App* verify = app.add_subcommand("verify", "closed-form vs oracle batteries");
  for (CLI::App* sub : {point, sweep, gains, verify}) add_common(sub);
  sweep->add_option("--gains-out", flags.gains_out_path, "also write the gains CSV here");
  verify->add_flag("--quick", flags.quick, "reduced instance counts");
  verify->add_option("--inject-fault", flags.inject_fault)->group("");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kConfigError;
  }

  CLI::App* chosen = app.get_subcommands().front();
  if (chosen->count("--seed") > 0) flags.seed = seed;
  if (chosen->count("--n") > 0) flags.n = n;
  const Command command = chosen == point   ? Command::Point
                          : chosen == sweep ? Command::Sweep
                          : chosen == gains ? Command::Gains
                                            : Command::Verify;

  std::optional<RunConfig> config;
  try {
    config = load(command, flags);
  } catch (const std::invalid_argument& e) {
    err << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const nlohmann::json::exception& e) {
    err << "config error: " << e.what() << '\n';
    return kConfigError;
  }

  try {
    switch (command) {
      case Command::Point: return cmd_point(*config, out, err);
      case Command::Sweep: return cmd_sweep(*config, out, err);
      case Command::Gains: return cmd_gains(*config, out, err);
      case Command::Verify: return cmd_verify(*config, out, err);
    }
  } catch (const std::invalid_argument& e) {
    err << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const std::exception& e) {
    err << "runtime error: " << e.what() << '\n';
    return kRuntimeError;
  }
  return kRuntimeError;
}

}  // namespace swipt::cli
