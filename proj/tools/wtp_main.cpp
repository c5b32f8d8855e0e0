// wtp <command> --config <path> [--n-max K] [--threads T] [--format json|table]
//
// Exit codes: 0 success, 1 validation error, 2 computation error,
// 3 invariant-suite failure. The report goes to stdout, diagnostics to stderr.

#include <charconv>
#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "wtp/config.hpp"
#include "wtp/error.hpp"
#include "wtp/report.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kValidation = 1;
constexpr int kComputation = 2;
constexpr int kCheckFailed = 3;

std::optional<std::uint64_t> budget_from_env() {
  const char* raw = std::getenv("WTP_BUDGET");
  if (!raw) return std::nullopt;
  const std::string text(raw);
  std::uint64_t value = 0;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || end != text.data() + text.size() || value == 0) {
    throw wtp::Error(wtp::ErrorCode::ValidationError,
                     "WTP_BUDGET must be a positive integer, got \"" + text + "\"");
  }
  return value;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Weighted topological entropy and pressure of symbolic chains"};
  std::string command_name;
  std::string config_path;
  std::optional<std::size_t> n_max;
  unsigned threads = 0;
  std::string format = "json";
  app.add_option("command", command_name, "entropy | dimension | estimate | variational | check")
      ->required();
  app.add_option("--config", config_path, "JSON run configuration")->required();
  app.add_option("--n-max", n_max, "largest N for the estimator")->check(CLI::PositiveNumber);
  app.add_option("--threads", threads, "estimator threads (0 = all cores)");
  app.add_option("--format", format, "json or table")->check(CLI::IsMember({"json", "table"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kValidation;
  }

  const auto command = wtp::parse_command(command_name);
  if (!command) {
    std::cerr << "wtp: unknown command \"" << command_name << "\"\n";
    return kValidation;
  }

  try {
    wtp::RunConfig config = wtp::parse_config_file(config_path);
    wtp::EstimatorConfig est = config.estimator;
    if (n_max) est.n_max = *n_max;
    if (auto budget = budget_from_env()) est.budget = *budget;
    config = wtp::with_estimator(config, est);

    const wtp::Report report = wtp::run(config, *command, wtp::RunOptions{threads});
    if (format == "table") {
      std::cout << wtp::render_table(report.body);
    } else {
      std::cout << report.body.dump(2) << '\n';
      // the table already lists warnings
      for (const auto& w : report.body.at("warnings")) {
        std::cerr << "wtp: warning: " << w.get<std::string>() << '\n';
      }
    }
    switch (report.status) {
      case wtp::RunStatus::Ok: return kOk;
      case wtp::RunStatus::DidNotConverge: return kComputation;
      case wtp::RunStatus::CheckFailed: return kCheckFailed;
    }
    return kOk;
  } catch (const wtp::Error& e) {
    std::cerr << "wtp: " << e.what() << '\n';
    return wtp::is_validation_error(e.code()) ? kValidation : kComputation;
  } catch (const std::exception& e) {
    std::cerr << "wtp: internal error: " << e.what() << '\n';
    return kComputation;
  }
}
