#pragma once

// Command dispatch for the CLI. A report is a JSON object:
//
//   closed_form      optional; h_a_nats plus z0 / bracket_value / dimensions
//   estimate_series  list of {n, rate, fekete_bound}
//   variational      optional; value, gap_to_closed_form, distribution, ...
//   checks           list of {name, passed, detail} (check command)
//   warnings         list of strings
//   provenance       {tool, version, command, config}
//
// Numbers are written in shortest round-trip form, which never needs more
// than 17 significant digits.

#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

#include "wtp/config.hpp"

namespace wtp {

inline constexpr const char* kToolVersion = "0.1.0";

enum class Command { Entropy, Dimension, Estimate, Variational, Check };

std::optional<Command> parse_command(std::string_view name);
std::string_view to_string(Command command);

struct RunOptions {
  /// Estimator threads; 0 means all available cores.
  unsigned threads = 0;
};

enum class RunStatus {
  Ok,
  /// Optimizer hit its iteration cap; the report holds its best value.
  DidNotConverge,
  /// At least one property of the check suite failed.
  CheckFailed,
};

struct Report {
  nlohmann::json body;
  RunStatus status = RunStatus::Ok;
};

/// Throws Error for computation failures (UnsupportedCombination,
/// ComplexityBudgetExceeded, ...).
Report run(const RunConfig& config, Command command, const RunOptions& options = {});

/// Aligned text: closed form lines, then the estimate series as columns.
std::string render_table(const nlohmann::json& report);

}  // namespace wtp
