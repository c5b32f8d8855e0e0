#pragma once

#include <cmath>
#include <optional>
#include <string>

#include "oracles.hpp"
#include "wtp/config.hpp"
#include "wtp/error.hpp"
#include "wtp/symbolic.hpp"

namespace fixtures {

inline std::string data_path(const std::string& name) {
  return std::string(WTP_TEST_DATA) + "/" + name;
}

inline wtp::DigitSystem carpet() {
  return wtp::DigitSystem::validate({2, 3}, {{0, 0}, {1, 1}, {0, 2}});
}

/// log_3 2, the carpet exponent.
inline double carpet_a() { return std::log(2.0) / std::log(3.0); }

inline wtp::RunConfig sofic6() { return wtp::parse_config_file(data_path("sofic6.json")); }

inline std::vector<oracle::Edge> oracle_edges(const wtp::LabeledGraph& g) {
  std::vector<oracle::Edge> out;
  for (const auto& e : g.edges) {
    out.push_back({static_cast<int>(e.source), static_cast<int>(e.target), e.label});
  }
  return out;
}

/// Error code thrown by f, or nullopt when it returns normally.
template <class F>
std::optional<wtp::ErrorCode> code_of(F&& f) {
  try {
    f();
  } catch (const wtp::Error& e) {
    return e.code();
  }
  return std::nullopt;
}

inline const double kGolden = (1.0 + std::sqrt(5.0)) / 2.0;

}  // namespace fixtures
