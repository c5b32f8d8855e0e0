#pragma once

// JSON run configuration.
//
//   {
//     "system": {"sponge": {"bases": [2, 3], "digits": [[0, 0], [1, 1], [0, 2]]}}
//            | {"sofic": {"bases": [...], "vertices": ["1", ...],
//                         "edges": [["1", "2", [0, 0, 0]], ...]}},
//     "exponents": "from-bases" | [a_1, ..., a_{r-1}] | {"from_bases": [m_1, ..., m_r]},
//     "potential": {"window": k, "table": [{"word": [[...], ...], "value": x}, ...],
//                   "default": x},
//     "estimator": {"n_max": 12, "budget": 10000000},
//     "optimizer": {"max_iters": 100000, "tolerance": 1e-12}
//   }
//
// Only "system" is required. {"from_bases": [...]} derives the exponents
// from a base vector other than the label bases.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include <json.hpp>

#include "wtp/potential.hpp"
#include "wtp/symbolic.hpp"
#include "wtp/weights.hpp"

namespace wtp {

struct EstimatorConfig {
  std::size_t n_max = 12;
  std::uint64_t budget = 10'000'000;
};

struct OptimizerConfig {
  int max_iters = 100000;
  double tolerance = 1e-12;
};

struct RunConfig {
  Chain chain;
  Exponents exponents;
  std::optional<Potential> potential;
  EstimatorConfig estimator;
  OptimizerConfig optimizer;
  /// Normalized document with defaults filled in; parsing it again gives the
  /// same configuration.
  nlohmann::json echo;
};

/// Throws Error(ParseError) with a JSON-pointer path for malformed input and
/// Error(ValidationError) when a module validator rejects the content.
RunConfig parse_config(const nlohmann::json& document);
RunConfig parse_config_text(const std::string& text);
RunConfig parse_config_file(const std::filesystem::path& path);

/// Rebuilds the config with a different n_max / budget (echo updated too).
RunConfig with_estimator(const RunConfig& config, EstimatorConfig estimator);

}  // namespace wtp
