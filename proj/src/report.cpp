#include "wtp/report.hpp"

#include <cmath>
#include <iomanip>
#include <sstream>
#include <stdexcept>

#include "wtp/checks.hpp"
#include "wtp/error.hpp"
#include "wtp/estimator.hpp"
#include "wtp/sofic.hpp"
#include "wtp/sponge.hpp"
#include "wtp/variational.hpp"

namespace wtp {

namespace {

using json = nlohmann::json;

EstimatorOptions estimator_options(const RunConfig& config, const RunOptions& options) {
  return EstimatorOptions{config.estimator.budget, options.threads};
}

json series_json(const EstimateSeries& series) {
  json out = json::array();
  for (const auto& e : series.entries) {
    out.push_back({{"n", e.n}, {"rate", e.rate}, {"fekete_bound", e.fekete_bound}});
  }
  return out;
}

const Potential* potential_of(const RunConfig& config) {
  return config.potential ? &*config.potential : nullptr;
}

bool same_exponents(const Exponents& a, const Exponents& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (std::abs(a[i] - b[i]) > 1e-15) return false;
  }
  return true;
}

void require_finite(const json& node) {
  if (node.is_number_float() && !std::isfinite(node.get<double>())) {
    throw std::logic_error("non-finite number in report");
  }
  if (node.is_structured()) {
    for (const auto& child : node) require_finite(child);
  }
}

// Sofic closed form, or nullopt with a warning explaining why not.
std::optional<SoficDimensionReport> try_sofic(const RunConfig& config, json& warnings) {
  if (config.potential) {
    warnings.push_back("no closed form for sofic pressure with a potential; using the estimator");
    return std::nullopt;
  }
  try {
    return sofic_dimension_report(config.chain, config.exponents);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::NotAligned && e.code() != ErrorCode::UpperLevelsNotFullShift) throw;
    warnings.push_back(std::string("closed form unavailable, using the estimator: ") + e.what());
    return std::nullopt;
  }
}

json sofic_closed_form(const SoficDimensionReport& d, json& warnings) {
  warnings.push_back(d.warning);
  return {{"h_a_nats", d.h_a_nats},
          {"bracket_value", d.bracket_value},
          {"h_over_log_m1", d.h_over_log_m1}};
}

void fill_estimate(const RunConfig& config, const RunOptions& options, json& body) {
  const EstimateSeries series =
      entropy_estimate(config.chain, config.exponents, potential_of(config),
                       config.estimator.n_max, estimator_options(config, options));
  body["estimate_series"] = series_json(series);
  body["fekete_bound"] = series.fekete_bound;
}

void run_entropy(const RunConfig& config, const RunOptions& options, json& body) {
  json& warnings = body["warnings"];
  const Potential* pot = potential_of(config);
  if (config.chain.is_sofic()) {
    if (auto d = try_sofic(config, warnings)) {
      body["closed_form"] = sofic_closed_form(*d, warnings);
      return;
    }
    fill_estimate(config, options, body);
    return;
  }
  const DigitSystem& sys = config.chain.system();
  if (pot && pot->window() != 1) {
    warnings.push_back("closed form needs a window-1 potential; using the estimator");
    fill_estimate(config, options, body);
    return;
  }
  const ZTable z = kp_recursion(sys, config.exponents, pot);
  body["closed_form"] = {{"h_a_nats", std::log(z.z0())}, {"z0", z.z0()}};
}

void run_dimension(const RunConfig& config, const RunOptions& options, json& body) {
  json& warnings = body["warnings"];
  if (config.chain.is_sofic()) {
    if (auto d = try_sofic(config, warnings)) {
      body["closed_form"] = sofic_closed_form(*d, warnings);
      return;
    }
    fill_estimate(config, options, body);
    return;
  }
  const DigitSystem& sys = config.chain.system();
  const Exponents geometric = exponents_from_bases(sys.bases());
  if (!same_exponents(geometric, config.exponents)) {
    warnings.push_back("dimensions use exponents derived from the bases, not the configured ones");
  }
  if (config.potential) {
    warnings.push_back("dimensions ignore the potential");
  }
  const double z0 = kp_recursion(sys, geometric).z0();
  body["closed_form"] = {{"h_a_nats", std::log(z0)},
                         {"z0", z0},
                         {"hausdorff_dimension", hausdorff_dimension(sys)},
                         {"minkowski_dimension", minkowski_dimension(sys)}};
}

json distribution_json(const DigitSystem& sys, const SymbolDistribution& p) {
  json out = json::array();
  for (std::size_t k = 0; k < sys.size(); ++k) {
    out.push_back({{"digit", sys.digits()[k]}, {"p", p.p[k]}});
  }
  return out;
}

RunStatus run_variational(const RunConfig& config, json& body) {
  if (config.chain.is_sofic()) {
    throw Error(ErrorCode::UnsupportedCombination,
                "variational optimization is only implemented for sponge (full-shift) chains");
  }
  const DigitSystem& sys = config.chain.system();
  const Potential* pot = potential_of(config);
  const double closed = std::log(kp_recursion(sys, config.exponents, pot).z0());
  body["closed_form"] = {{"h_a_nats", closed}};

  OptimizerOptions opts;
  opts.max_iterations = config.optimizer.max_iters;
  opts.tolerance = config.optimizer.tolerance;
  BernoulliOptimum best;
  RunStatus status = RunStatus::Ok;
  try {
    best = maximize_bernoulli(sys, config.exponents, pot, opts);
  } catch (const DidNotConverge& e) {
    best = e.best();
    status = RunStatus::DidNotConverge;
    body["warnings"].push_back(std::string("optimizer did not converge: ") + e.what());
  }
  const SymbolDistribution rec = optimal_measure_from_recursion(sys, config.exponents, pot);
  const double rec_value = bernoulli_objective(sys, config.exponents, rec, pot).value;
  body["variational"] = {{"value", best.value.value},
                         {"gap_to_closed_form", closed - best.value.value},
                         {"iterations", best.iterations},
                         {"converged", best.converged},
                         {"level_terms", best.value.level_terms},
                         {"potential_term", best.value.potential_term},
                         {"distribution", distribution_json(sys, best.distribution)},
                         {"recursion_measure_value", rec_value},
                         {"recursion_measure_gap", closed - rec_value},
                         {"recursion_measure_total_variation",
                          total_variation(best.distribution, rec)}};
  return status;
}

RunStatus run_check(const RunConfig& config, const RunOptions& options, json& body) {
  CheckOptions opts;
  opts.estimator = estimator_options(config, options);
  opts.n_max = std::min<std::size_t>(config.estimator.n_max, 6);
  const auto results =
      run_property_suite(config.chain, config.exponents, potential_of(config), opts);
  bool all = true;
  json checks = json::array();
  for (const auto& r : results) {
    checks.push_back({{"name", r.name}, {"passed", r.passed}, {"detail", r.detail}});
    all = all && r.passed;
  }
  body["checks"] = checks;
  body["checks_passed"] = all;
  return all ? RunStatus::Ok : RunStatus::CheckFailed;
}

}  // namespace

std::optional<Command> parse_command(std::string_view name) {
  if (name == "entropy") return Command::Entropy;
  if (name == "dimension") return Command::Dimension;
  if (name == "estimate") return Command::Estimate;
  if (name == "variational") return Command::Variational;
  if (name == "check") return Command::Check;
  return std::nullopt;
}

std::string_view to_string(Command command) {
  switch (command) {
    case Command::Entropy: return "entropy";
    case Command::Dimension: return "dimension";
    case Command::Estimate: return "estimate";
    case Command::Variational: return "variational";
    case Command::Check: return "check";
  }
  return "unknown";
}

Report run(const RunConfig& config, Command command, const RunOptions& options) {
  Report report;
  json& body = report.body;
  body["estimate_series"] = json::array();
  body["warnings"] = json::array();
  switch (command) {
    case Command::Entropy:
      run_entropy(config, options, body);
      break;
    case Command::Dimension:
      run_dimension(config, options, body);
      break;
    case Command::Estimate: {
      fill_estimate(config, options, body);
      json discard = json::array();
      if (config.chain.is_sofic()) {
        if (auto d = try_sofic(config, discard)) body["closed_form"] = sofic_closed_form(*d, body["warnings"]);
      } else if (!config.potential || config.potential->window() == 1) {
        const double z0 = kp_recursion(config.chain.system(), config.exponents,
                                       potential_of(config)).z0();
        body["closed_form"] = {{"h_a_nats", std::log(z0)}, {"z0", z0}};
      }
      if (!body.contains("closed_form")) {
        body["warnings"].push_back("no closed form for this configuration; series only");
      }
      break;
    }
    case Command::Variational:
      report.status = run_variational(config, body);
      break;
    case Command::Check:
      report.status = run_check(config, options, body);
      break;
  }
  body["provenance"] = {{"tool", "wtp"},
                        {"version", kToolVersion},
                        {"command", std::string(to_string(command))},
                        {"config", config.echo}};
  require_finite(body);
  return report;
}

std::string render_table(const json& report) {
  std::ostringstream out;
  out << std::setprecision(12);
  auto scalars = [&](const char* title, const json& obj) {
    out << title << '\n';
    for (auto it = obj.begin(); it != obj.end(); ++it) {
      if (!it.value().is_primitive()) continue;
      out << "  " << std::left << std::setw(36) << it.key() << ' ' << it.value().dump() << '\n';
    }
  };
  if (report.contains("closed_form")) scalars("closed form", report.at("closed_form"));
  if (report.contains("variational")) scalars("variational", report.at("variational"));
  if (report.contains("checks")) {
    out << "checks\n";
    for (const auto& c : report.at("checks")) {
      out << "  " << (c.at("passed").get<bool>() ? "PASS " : "FAIL ") << std::left
          << std::setw(32) << c.at("name").get<std::string>() << ' '
          << c.at("detail").get<std::string>() << '\n';
    }
  }
  const json& series = report.at("estimate_series");
  if (!series.empty()) {
    out << std::right << std::setw(4) << "N" << std::setw(22) << "log S_N / N" << std::setw(22)
        << "Fekete bound" << '\n';
    for (const auto& e : series) {
      out << std::setw(4) << e.at("n").get<std::size_t>() << std::setw(22)
          << e.at("rate").get<double>() << std::setw(22) << e.at("fekete_bound").get<double>()
          << '\n';
    }
  }
  for (const auto& w : report.at("warnings")) out << "warning: " << w.get<std::string>() << '\n';
  return out.str();
}

}  // namespace wtp
